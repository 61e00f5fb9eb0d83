#pragma once

#include <array>
#include <vector>

#include "hartree3d/field.hpp"
#include "hartree3d/grid.hpp"
#include "hartree3d/interactions.hpp"

namespace hartree3d {

// Real effective multiplier N[u](x) with the evolution equation written as
// i u_t = -Lap u + N[u] u; the coupling mu * lambda * prefactor is included
// in N. The raw assembly is complex; imag_residual records the largest
// imaginary part relative to the largest magnitude before the real part is
// taken (it is round-off for a correctly assembled multiplier).
struct MultiplierResult {
    std::vector<double> values;
    double imag_residual = 0.0;
};

// Fast pseudo-spectral evaluator with the kernel transform cached.
//
// PairwiseSum, any p, with g = |u|^2 and Phi = omega * g:
//   N = c [ Phi^p / (p+1) + p/(p+1) omega * (Phi^{p-1} g) ]
// FullProduct, p = 2, mode sum over the kernel's Fourier series:
//   N = c sum_q c_q |F_q|^2,  F_q = omega * (g e^{i q.x})
// (p = 1 collapses to the pairwise formula; p >= 3 has no fast path here.)
// Local: N = c g^p.
//
// The dealias flag applies the 2/3-rule mask to the transforms feeding each
// convolution and to the returned product's spectrum; with it off the
// evaluator reproduces the exact lattice quadrature of the kernel up to
// round-off, which is what the reference evaluators below check.
class NonlinearEvaluator {
public:
    // mode_cutoff limits the FullProduct mode sum to |q|_inf <= cutoff;
    // 0 keeps the full lattice, which is required for lattice exactness.
    NonlinearEvaluator(const Grid& grid, InteractionSpec spec, int mode_cutoff = 0);

    const Grid& grid() const { return grid_; }
    const InteractionSpec& spec() const { return spec_; }

    MultiplierResult multiplier(const Field& u, bool dealias) const;
    Field apply(const Field& u, bool dealias) const;

    // N[u] u - N[v] v assembled in first-difference form: every term carries
    // a factor of w = u - v (g_u - g_v = Re(w conj(u)) + Re(v conj(w)),
    // powers telescoped), so the result scales with ||w|| instead of being a
    // difference of O(||u||) quantities. Agrees with apply(u) - apply(v) up
    // to round-off at O(1) amplitudes.
    Field apply_difference(const Field& u, const Field& v, bool dealias) const;

    // FullProduct diagnostics: number of modes kept and the l1 tail of the
    // kernel coefficients dropped by the cutoff (0 when the sum is full).
    std::size_t mode_count() const { return modes_.size(); }
    double mode_tail_l1() const { return mode_tail_l1_; }

private:
    std::vector<cplx> convolve_omega_real(const std::vector<double>& f, bool dealias) const;
    std::vector<cplx> convolve_omega_complex(const std::vector<cplx>& f, bool dealias) const;
    void shifted_kernel_product(const std::vector<cplx>& ghat, std::array<int, 3> q,
                                bool dealias, std::vector<cplx>& out) const;

    Grid grid_;
    InteractionSpec spec_;
    std::vector<cplx> omega_hat_;
    std::vector<unsigned char> mask_;
    std::vector<std::array<int, 3>> modes_;
    std::vector<cplx> mode_coeff_;
    double mode_tail_l1_ = 0.0;
};

// Literal nested lattice quadrature of the kernel definition,
//   N(x) = c h^{3p} sum_{x_1..x_p} V(x - x_1, .., x - x_p) prod_l g(x_l),
// with no Fourier shortcut and no factorization. Cost (M^3)^{p+1}; throws
// ValidationError beyond the evaluation budget.
std::vector<double> reference_multiplier(const Field& u, const InteractionSpec& spec);

// Direct-quadrature route using the per-term factorization of the pairwise
// sum (convolutions as O(M^6) sums, still no FFT). Local and PairwiseSum.
std::vector<double> reference_multiplier_factorized(const Field& u,
                                                    const InteractionSpec& spec);

} // namespace hartree3d
