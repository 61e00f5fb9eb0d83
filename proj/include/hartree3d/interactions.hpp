#pragma once

#include <array>
#include <string>
#include <vector>

#include "hartree3d/grid.hpp"
#include "hartree3d/potentials.hpp"
#include "hartree3d/rng.hpp"

namespace hartree3d {

// Interaction kernel families for the order-(2p+1) nonlinearity. With
// x_0 = 0 and offsets y_1 .. y_p:
//   Local:       product of lattice deltas (pointwise |u|^{2p} u limit)
//   PairwiseSum: (1/(p+1)) sum_{i=0..p} prod_{j != i} omega(x_i - x_j)
//   FullProduct: prod over all pairs 0 <= i < j <= p of omega(x_i - x_j)
enum class Family { Local, PairwiseSum, FullProduct };

std::string family_name(Family family);

struct InteractionSpec {
    Family family = Family::PairwiseSum;
    Mollifier omega;        // ignored for Local
    int p = 1;              // nonlinearity order 2p+1
    double mu = 1.0;        // sign of the coupling
    double lambda = 1.0;    // coupling strength
    double prefactor = 1.0; // normalization factor folded into the kernel
};

// mu * lambda * prefactor, the scalar multiplying the nonlinear term.
double coupling(const InteractionSpec& spec);

// Kernel value at centered integer offsets y_1 .. y_p (literal definition,
// used by the nested-sum reference evaluator and the Monte Carlo estimate).
double kernel_value(const Grid& grid, const InteractionSpec& spec,
                    const std::vector<std::array<int, 3>>& y);

// L1 norm of prefactor * V over (y_1 .. y_p), mu and lambda excluded.
// method records which route produced the value:
//   "delta_convention"  Local family, unit-mass delta kernel
//   "separable_exact"   PairwiseSum with omega >= 0, and FullProduct p = 1:
//                       the lattice sum factors into (h^3 sum |omega|)^p
//   "convolution_exact" FullProduct p = 2 via h^3 sum |omega| (|omega|*|omega|)
//   "monte_carlo"       seeded lattice sampling, standard_error reported
struct L1Result {
    double value = 0.0;
    double standard_error = 0.0;
    std::string method;
};
L1Result l1_norm(const Grid& grid, const InteractionSpec& spec);

// Forced Monte Carlo route (cross-checks the exact routes in tests).
L1Result l1_norm_monte_carlo(const Grid& grid, const InteractionSpec& spec,
                             std::size_t samples, std::uint64_t seed);

// Divides prefactor by the measured L1 norm and returns that measurement.
// Idempotent up to round-off: a second call measures 1.
double normalize_to_unit_l1(const Grid& grid, InteractionSpec& spec);

// Combinatorial lattice counts for the closed-cube box kernel, used as
// independent checks on the measured norms.
// Per-dimension support count: min(2 floor(m / 2n) + 1, m).
int box_support_count_1d(int m, int n);
// Pairs (a, b), |a| <= J, |b| <= J, |a - b| <= J with J = floor(m / 2n):
// 3 J^2 + 3 J + 1 (no wrap for 2 n <= m with n >= 2).
long long box_pair_count_1d(int m, int n);
// Closed forms for the box and box-power kernels built from those counts.
double v1_box_l1_formula(int m, int n, int p);
double v2_box_l1_formula(int m, int n);
double v2_power_l1_formula(int m, int n, int p);

} // namespace hartree3d
