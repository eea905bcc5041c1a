#pragma once

#include "icpdps/core.hpp"
#include "icpdps/operators.hpp"

namespace icpdps {

// Unitary 2-D discrete Fourier transform on the 2-channel real representation.
// Input: real image of n1*n2 entries, or an interleaved (re, im) spectrum of
// 2*n1*n2 entries. Normalisation 1/sqrt(n1*n2) both ways, so the adjoint is
// the inverse and ||F x|| = ||x||.
Vec dft2_apply(const Vec &img, std::size_t n1, std::size_t n2);           // real -> spectrum
Vec dft2_apply_c(const Vec &freq, std::size_t n1, std::size_t n2);        // complex -> complex
Vec dft2_adjoint(const Vec &freq, std::size_t n1, std::size_t n2);        // spectrum -> complex image
Vec dft2_adjoint_real(const Vec &freq, std::size_t n1, std::size_t n2,
                      double *imag_max = nullptr);                        // drops imaginary part

// Forward-difference gradient with Neumann boundary conditions on a row-major
// n1 x n2 image. Output layout: 2 channels per pixel, channel 0 the vertical
// difference, channel 1 the horizontal difference. ||D|| <= sqrt(8).
LinearOp grad_op(std::size_t n1, std::size_t n2);

// 4-angle discrete Radon transform: all row sums, column sums, main-diagonal
// (constant r-c) sums, and anti-diagonal (constant r+c) sums, in that order.
// Codomain dimension n1 + n2 + 2*(n1 + n2 - 1).
LinearOp radon4_op(std::size_t n1, std::size_t n2);

// Archimedean-spiral Fourier sampling mask, Hermitian-symmetrised, with DC
// and a small centre disc always included. Entries are 0/1.
Vec spiral_mask(std::size_t n1, std::size_t n2, double turns = 14.0, double thickness = 1.2,
                double center_fill_radius = 4.0);

double mask_selected_fraction(const Vec &mask);
bool mask_is_hermitian(const Vec &mask, std::size_t n1, std::size_t n2);

}  // namespace icpdps
