#pragma once

#include <vector>

#include "hartree3d/field.hpp"
#include "hartree3d/nonlinear.hpp"
#include "hartree3d/potentials.hpp"

namespace hartree3d {

struct ObservableRecord {
    double t = 0.0;
    double mass = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double total_energy = 0.0;
    double h1 = 0.0;
    double hsc = 0.0;
    double linf = 0.0;
};

// h^3 sum_j |u(x_j)|^2
double mass(const Field& u);

// sum_k |k|^2 |uhat(k)|^2
double kinetic_energy(const Field& u);

// (1/(p+1)) h^3 sum_j N[u] g, g = |u|^2, coupling included in N. The kernel
// is symmetric under permuting its p+1 points, which makes this the
// Hamiltonian whose variation in conj(u) is N[u] u for every family.
double potential_energy(const Field& u, const NonlinearEvaluator& ev);

double total_energy(const Field& u, const std::vector<NonlinearEvaluator>& evs);

// sc is the Sobolev index reported in the hsc column.
ObservableRecord observe(double t, const Field& u,
                         const std::vector<NonlinearEvaluator>& evs, double sc);

// Variational consistency of the potential energy: the real pairing
// 2 Re <N[u] u, v> against the centered difference
// [E_pot(u + eps v) - E_pot(u - eps v)] / (2 eps).
struct GradientCheck {
    double pairing = 0.0;
    double difference = 0.0;
    double rel_error = 0.0;
};
GradientCheck gradient_consistency(const Field& u, const Field& v,
                                   const std::vector<NonlinearEvaluator>& evs, double eps);

// Convolution bounds with Phi = |omega| * g:
//   h^3 sum Phi g    <= ||omega||_1   (h^3 sum g^2)
//   h^3 sum Phi^2 g  <= ||omega||_1^2 (h^3 sum g^3)
// Equality holds exactly for constant fields. margins = rhs - lhs.
struct YoungCheck {
    double lhs_quartic = 0.0;
    double rhs_quartic = 0.0;
    double margin_quartic = 0.0;
    double lhs_sextic = 0.0;
    double rhs_sextic = 0.0;
    double margin_sextic = 0.0;
};
YoungCheck young_check(const Field& u, const Mollifier& omega);

// For the cubic/quintic pair with omega >= 0 and lambda2 > 0,
//   E = kinetic + (lambda1/2) h^3 sum Phi g + (lambda2/3) h^3 sum Phi^2 g
// the pointwise bound (lambda2/3) t^2 + (lambda1/2) t >= -3 lambda1^2 /
// (16 lambda2) on t >= 0 gives kinetic <= E + 3 lambda1^2/(16 lambda2) mass.
struct KineticBoundCheck {
    double kinetic = 0.0;
    double energy = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};
KineticBoundCheck kinetic_bound_check(const Field& u, const Mollifier& omega,
                                      double lambda1, double lambda2);

// sup_x |(omega * g)(x) - g(x)|: how far the kernel is from the delta limit
// when tested against this state.
double mollifier_gap_sup(const Field& u, const Mollifier& omega);

} // namespace hartree3d
