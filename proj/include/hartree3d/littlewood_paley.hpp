#pragma once

#include "hartree3d/field.hpp"
#include "hartree3d/grid.hpp"

namespace hartree3d {

// Dyadic frequency profile phi : [0, inf) -> [0, 1]:
//
//   phi(r) = 1                    r <= 1
//   phi(r) = q26(s(2 - r))        1 < r < 2,  s(t) = t^2 (3 - 2t)
//   phi(r) = 0                    r >= 2
//
// s is the cubic smoothstep, so phi is C1 at both joins. q26 rounds to 26
// fractional bits: with transition values on the 2^-26 grid, a value t and
// its complement 1-t are both exact doubles and t + (1-t) == 1.0 exactly.
// That makes the partition of unity over dyadic bands bit-exact at every
// lattice wavenumber (at most two consecutive bands are nonzero at any k,
// and their weights are exact complements), at the cost of 2^-26-sized steps
// inside the transition zone.
double dyadic_profile(double r);

// Band weight at |k| = knorm for dyadic band_m in {1, 2, 4, 8, ...}:
//   band 1:      phi(knorm)
//   band M >= 2: phi(knorm / M) - phi(2 knorm / M)
double band_weight(int band_m, double knorm);

// Smallest dyadic band count: bands 1..max_band(grid) cover every lattice
// wavenumber (the top band's profile is identically 1 on the lattice tail).
int max_band(const Grid& grid);

// Frequency projections (spectral multipliers by band weights).
Field lp_project(const Field& u, int band_m);
Field lp_project_up_to(const Field& u, int band_m);

// Equivalence constants between ||u||_{H^s}^2 and the dyadic square sum
// sum_M M^{2s} ||P_M u||_{L2}^2, computed by scanning the lattice:
//   rho(k) = sum_M M^{2s} phi_M(k)^2 / (1 + |k|^2)^s
// The dyadic sum equals sum_k rho(k) (1+|k|^2)^s |uhat(k)|^2, so it lies in
// [lower, upper] * ||u||_{H^s}^2 for every field on the grid.
struct EquivalenceBounds {
    double lower;
    double upper;
};
EquivalenceBounds lp_equivalence_bounds(const Grid& grid, double s);

} // namespace hartree3d
