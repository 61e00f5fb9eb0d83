#pragma once

#include <vector>

#include "hartree3d/field.hpp"
#include "hartree3d/grid.hpp"

namespace hartree3d {

// |k|^2 at each spectral index, x-fastest layout. Cached per grid size.
const std::vector<double>& laplacian_symbol(const Grid& grid);

// sqrt(h^3 sum_j |u(x_j)|^2); equals the spectral l2 norm by Parseval.
double l2_norm(const Field& u);

// sqrt( sum_k (1 + |k|^2)^s |uhat(k)|^2 )
double sobolev_norm(const Field& u, double s);

// sqrt( sum_{k != 0} |k|^{2s} |uhat(k)|^2 )
double homogeneous_sobolev_norm(const Field& u, double s);

double linf_norm(const Field& u);

// Critical regularity for the nonlinearity exponent p: s_c = 3/2 - 1/p.
double critical_exponent(int p);

// Emulates the amplitude/frequency scaling that fixes the homogeneous H^s
// norm at s = critical_exponent(p). Returns B / A where
//   A = sum_{k != 0} |k|^{2s} |uhat(k)|^2
//   B = sum_{k != 0} lambda^{-3} (|k|/lambda)^{2s} lambda^{2(3 - 1/p)} |uhat(k)|^2
// so B / A = lambda^{3 - 2s - 2/p}, equal to 1 exactly when s = s_c.
double scaling_ratio(const Field& u, int p, double lambda, double s);
double scaling_ratio(const Field& u, int p, double lambda);

// uhat(k) -> e^{-i |k|^2 t} uhat(k)
Field free_propagate(const Field& u, double t);
void free_propagate_inplace(Field& u, double t);

// Modes with any wavenumber component exceeding floor(M/3) in magnitude are
// dropped by the 2/3 rule; the mask holds 1 for kept modes, 0 for dropped.
std::vector<unsigned char> dealias_mask(const Grid& grid);
void apply_dealias(Field& u);

// Periodic lattice convolution (f * g)(x_j) = h^3 sum_l f(x_j - x_l) g(x_l),
// computed spectrally: conv_hat = (2 pi)^{3/2} fhat ghat. Exact on the
// lattice up to round-off (the quadrature sum IS the discrete convolution).
Field convolve(const Field& f, const Field& g);

} // namespace hartree3d
