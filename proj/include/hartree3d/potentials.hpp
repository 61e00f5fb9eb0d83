#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hartree3d/grid.hpp"

namespace hartree3d {

// A real kernel sampled on the grid, x-fastest layout. The resolution
// parameter n is kept for reporting; kinds without one store n = 0.
struct Mollifier {
    std::string kind;
    int n = 0;
    std::vector<double> values;
};

// Indicator of the closed cube [-pi/n, pi/n]^3 scaled to unit integral,
// value (n / 2 pi)^3 inside. Requires 2 n <= m so the cube spans at least
// one grid cell per dimension. Boundary lattice points are included, so for
// 2 n | m the lattice integral per dimension is 1 + n / m rather than 1.
Mollifier box_mollifier(const Grid& grid, int n);

// C2 bump n^3 Psi(n x) with Psi(y) = prod_i (1/pi) psi(y_i / pi) and
// psi(t) = (35/32) (1 - t^2)^3 on [-1, 1]. Unit integral in the continuum,
// support [-pi/n, pi/n]^3. Requires 2 n <= m.
Mollifier smooth_mollifier(const Grid& grid, int n);

// Box indicator raised to the pointwise power 2 / (p + 1): value
// (n / 2 pi)^{6 / (p + 1)} on the same cube. p = 1 reproduces the box.
Mollifier power_mollifier(const Grid& grid, int n, int p);

// 1 / |x| with the minimal-image distance; the singular cell at the origin
// carries the exact cell average of 1 / |x| over one grid cell.
Mollifier coulomb_potential(const Grid& grid);

// Unit-mass lattice delta: h^{-3} at the origin, zero elsewhere. Convolving
// with it is the identity on lattice functions.
Mollifier discrete_delta(const Grid& grid);

struct MollifierStats {
    std::size_t support_count = 0;
    double max_value = 0.0;
    double l1 = 0.0;       // h^3 sum |omega|
    double integral = 0.0; // h^3 sum omega
};
MollifierStats mollifier_stats(const Grid& grid, const Mollifier& omega);

// Plain Fourier coefficients c_q = omega_hat(q) / (2 pi)^{3/2} along the
// first axis, q = 0 .. m/2, normalized by c_0.
std::vector<double> fourier_axis_profile(const Grid& grid, const Mollifier& omega);

// max_q |c_q| - c_0 over the full lattice; nonpositive whenever omega >= 0.
double hausdorff_young_margin(const Grid& grid, const Mollifier& omega);

// Distance between the lattice box profile at axis frequency k (a Dirichlet
// ratio) and the half-width pi/n continuum value sinc(k pi / n).
struct FourierGap {
    double discrete;
    double continuum;
    double gap;
};
FourierGap box_fourier_gap(const Grid& grid, int n, int k);

} // namespace hartree3d
