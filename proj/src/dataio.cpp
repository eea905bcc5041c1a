#include "icpdps/dataio.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace icpdps {

namespace {

bool has_suffix(const std::string &s, const std::string &suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

constexpr char kRawMagic[4] = {'I', 'M', 'F', '8'};

std::size_t save_pgm(const std::string &path, const ImageBuffer &img) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "P5\n" << img.n2 << " " << img.n1 << "\n255\n";
  std::size_t clipped = 0;
  std::vector<unsigned char> row(img.data.size());
  for (std::size_t k = 0; k < img.data.size(); ++k) {
    double v = std::round(img.data[k]);
    if (v < 0.0 || v > 255.0) {
      ++clipped;
      v = std::min(255.0, std::max(0.0, v));
    }
    row[k] = static_cast<unsigned char>(v);
  }
  f.write(reinterpret_cast<const char *>(row.data()), row.size());
  if (!f) throw std::runtime_error("write failed: " + path);
  return clipped;
}

ImageBuffer load_pgm(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string magic;
  f >> magic;
  if (magic != "P5") throw std::runtime_error("unsupported image format: " + path);
  std::size_t w = 0, h = 0;
  int maxval = 0;
  f >> w >> h >> maxval;
  if (maxval != 255) throw std::runtime_error("only 8-bit graymaps supported: " + path);
  f.get();  // single whitespace after the header
  ImageBuffer img;
  img.n1 = h;
  img.n2 = w;
  std::vector<unsigned char> raw(w * h);
  f.read(reinterpret_cast<char *>(raw.data()), raw.size());
  if (!f) throw std::runtime_error("truncated image: " + path);
  img.data.resize(w * h);
  for (std::size_t k = 0; k < raw.size(); ++k) img.data[k] = raw[k];
  return img;
}

std::size_t save_raw(const std::string &path, const ImageBuffer &img) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::uint64_t n1 = img.n1, n2 = img.n2;
  f.write(kRawMagic, 4);
  f.write(reinterpret_cast<const char *>(&n1), 8);
  f.write(reinterpret_cast<const char *>(&n2), 8);
  f.write(reinterpret_cast<const char *>(img.data.data()), img.data.size() * sizeof(double));
  if (!f) throw std::runtime_error("write failed: " + path);
  return 0;
}

ImageBuffer load_raw(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, kRawMagic, 4) != 0)
    throw std::runtime_error("bad raw image header: " + path);
  std::uint64_t n1 = 0, n2 = 0;
  f.read(reinterpret_cast<char *>(&n1), 8);
  f.read(reinterpret_cast<char *>(&n2), 8);
  ImageBuffer img;
  img.n1 = n1;
  img.n2 = n2;
  img.data.resize(n1 * n2);
  f.read(reinterpret_cast<char *>(img.data.data()), img.data.size() * sizeof(double));
  if (!f) throw std::runtime_error("truncated raw image: " + path);
  return img;
}

}  // namespace

std::size_t save_image(const std::string &path, const ImageBuffer &img) {
  if (img.data.size() != img.n1 * img.n2) throw std::invalid_argument("save_image: dims");
  if (has_suffix(path, ".pgm")) return save_pgm(path, img);
  if (has_suffix(path, ".f64")) return save_raw(path, img);
  throw std::runtime_error("unsupported image extension: " + path);
}

ImageBuffer load_image(const std::string &path) {
  if (has_suffix(path, ".pgm")) return load_pgm(path);
  if (has_suffix(path, ".f64")) return load_raw(path);
  throw std::runtime_error("unsupported image extension: " + path);
}

ImageBuffer add_gaussian_noise(const ImageBuffer &img, double std_dev, std::uint64_t seed) {
  if (std_dev < 0.0) throw std::invalid_argument("add_gaussian_noise: std_dev >= 0");
  ImageBuffer out = img;
  if (std_dev == 0.0) return out;
  Rng rng(seed);
  for (double &v : out.data) v += std_dev * rng.normal();
  return out;
}

PetData poisson_measurements(const ImageBuffer &img, const LinearOp &radon, const Vec &c,
                             std::uint64_t seed) {
  if (radon.domain_dim != img.data.size())
    throw std::invalid_argument("poisson_measurements: dims");
  if (c.size() != radon.codomain_dim) throw std::invalid_argument("poisson_measurements: c dims");
  for (double v : c)
    if (v <= 0.0) throw std::invalid_argument("poisson_measurements: background must be > 0");
  const Vec rates = radon(img.data);
  for (double r : rates)
    if (r < -1e-12) throw std::invalid_argument("poisson_measurements: negative rate");
  Rng rng(seed);
  PetData d;
  d.T = radon;
  d.c = c;
  d.n1 = img.n1;
  d.n2 = img.n2;
  d.b.resize(rates.size());
  for (std::size_t j = 0; j < rates.size(); ++j)
    d.b[j] = static_cast<double>(rng.poisson(std::max(0.0, rates[j]))) + c[j];
  return d;
}

ImageBuffer shepp_logan(std::size_t n1, std::size_t n2) {
  if (n1 < 16 || n2 < 16) throw std::invalid_argument("shepp_logan: dims >= 16");
  // canonical ellipse table: intensity, semi-axes, center, rotation (degrees)
  struct Ellipse {
    double A, a, b, x0, y0, phi_deg;
  };
  static const Ellipse table[10] = {
      {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
      {-0.98, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
      {-0.02, 0.1100, 0.3100, 0.22, 0.0, -18.0},
      {-0.02, 0.1600, 0.4100, -0.22, 0.0, 18.0},
      {0.01, 0.2100, 0.2500, 0.0, 0.35, 0.0},
      {0.01, 0.0460, 0.0460, 0.0, 0.10, 0.0},
      {0.01, 0.0460, 0.0460, 0.0, -0.10, 0.0},
      {0.01, 0.0460, 0.0230, -0.08, -0.605, 0.0},
      {0.01, 0.0230, 0.0230, 0.0, -0.606, 0.0},
      {0.01, 0.0230, 0.0460, 0.06, -0.605, 0.0},
  };
  ImageBuffer img;
  img.n1 = n1;
  img.n2 = n2;
  img.data.assign(n1 * n2, 0.0);
  double maxv = 0.0;
  for (std::size_t r = 0; r < n1; ++r) {
    const double v = 1.0 - 2.0 * (static_cast<double>(r) + 0.5) / static_cast<double>(n1);
    for (std::size_t col = 0; col < n2; ++col) {
      const double u = 2.0 * (static_cast<double>(col) + 0.5) / static_cast<double>(n2) - 1.0;
      double s = 0.0;
      for (const Ellipse &e : table) {
        const double th = e.phi_deg * M_PI / 180.0;
        const double du = u - e.x0, dv = v - e.y0;
        const double p = du * std::cos(th) + dv * std::sin(th);
        const double q = -du * std::sin(th) + dv * std::cos(th);
        if ((p * p) / (e.a * e.a) + (q * q) / (e.b * e.b) <= 1.0) s += e.A;
      }
      s = std::max(0.0, s);
      img.data[r * n2 + col] = s;
      maxv = std::max(maxv, s);
    }
  }
  if (maxv > 0.0) scale(img.data, 255.0 / maxv);
  return img;
}

ImageBuffer downsample(const ImageBuffer &img, std::size_t factor) {
  if (factor == 0) throw std::invalid_argument("downsample: factor >= 1");
  if (img.n1 % factor != 0 || img.n2 % factor != 0)
    throw std::invalid_argument("downsample: dims not divisible by factor");
  ImageBuffer out;
  out.n1 = img.n1 / factor;
  out.n2 = img.n2 / factor;
  out.data.assign(out.n1 * out.n2, 0.0);
  const double inv = 1.0 / static_cast<double>(factor * factor);
  for (std::size_t r = 0; r < img.n1; ++r)
    for (std::size_t c = 0; c < img.n2; ++c)
      out.data[(r / factor) * out.n2 + c / factor] += img.data[r * img.n2 + c] * inv;
  return out;
}

void write_trace(const std::string &path, const std::vector<IterationRecord> &rows) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "i,elapsed_s,gap_db,target_db,certificate_lhs,C0\n";
  f.precision(17);
  for (const auto &r : rows) {
    f << r.i << ',' << r.elapsed_s << ',' << r.gap_db << ',' << r.target_db << ','
      << r.certificate_lhs << ',' << r.C0 << '\n';
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<IterationRecord> read_trace(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("empty trace: " + path);
  std::vector<IterationRecord> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    IterationRecord r;
    double *fields[5] = {&r.elapsed_s, &r.gap_db, &r.target_db, &r.certificate_lhs, &r.C0};
    std::getline(ss, tok, ',');
    r.i = std::stol(tok);
    for (double *fp : fields) {
      if (!std::getline(ss, tok, ',')) break;
      *fp = std::stod(tok);
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace icpdps
