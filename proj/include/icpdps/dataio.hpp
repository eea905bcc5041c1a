#pragma once

#include <string>
#include <vector>

#include "icpdps/core.hpp"
#include "icpdps/problems.hpp"
#include "icpdps/solvers.hpp"

namespace icpdps {

struct ImageBuffer {
  std::size_t n1 = 0, n2 = 0;  // rows, columns
  Vec data;                    // row-major intensities, nominally [0, 255]
};

// Formats by extension: ".pgm" binary 8-bit graymap (values clipped and
// rounded on save; returns the clip count), ".f64" raw little-endian doubles
// with a small dimension header (exact round trip, never clips).
std::size_t save_image(const std::string &path, const ImageBuffer &img);
ImageBuffer load_image(const std::string &path);

ImageBuffer add_gaussian_noise(const ImageBuffer &img, double std_dev, std::uint64_t seed);

// Poisson counts of the projected image plus background: b = Pois(Tx) + c.
// Background entries must be strictly positive (keeps b > 0 and the KL
// conjugate finite); a non-positive c is rejected rather than floored.
PetData poisson_measurements(const ImageBuffer &img, const LinearOp &radon, const Vec &c,
                             std::uint64_t seed);

// standard 10-ellipse head phantom, midpoint-rasterized, scaled to [0, 255]
ImageBuffer shepp_logan(std::size_t n1, std::size_t n2);

ImageBuffer downsample(const ImageBuffer &img, std::size_t factor);  // block average

// CSV schema: i,elapsed_s,gap_db,target_db,certificate_lhs,C0 with "nan"
// sentinels; 17 significant digits so finite values round trip exactly.
void write_trace(const std::string &path, const std::vector<IterationRecord> &rows);
std::vector<IterationRecord> read_trace(const std::string &path);

}  // namespace icpdps
