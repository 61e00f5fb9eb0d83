#include "hartree3d/observables.hpp"

#include <algorithm>
#include <cmath>

#include "hartree3d/errors.hpp"
#include "hartree3d/kernels.hpp"
#include "hartree3d/spectral.hpp"

namespace hartree3d {

namespace {

std::vector<double> abs2_of(const Field& u) {
    std::vector<double> g(u.grid().size());
    kernels::abs2(u.phys().data(), g.data(), g.size());
    return g;
}

// (omega * g)(x) as a real array, via the convolution theorem.
std::vector<double> convolve_real(const Grid& grid, const std::vector<double>& omega,
                                  const std::vector<double>& g) {
    std::vector<cplx> a(grid.size());
    std::vector<cplx> b(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        a[i] = omega[i];
        b[i] = g[i];
    }
    to_spectral(grid, a.data(), a.data());
    to_spectral(grid, b.data(), b.data());
    const double factor = std::pow(kTwoPi, 1.5);
    for (std::size_t i = 0; i < grid.size(); ++i) a[i] *= factor * b[i];
    to_physical(grid, a.data(), a.data());
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = a[i].real();
    return out;
}

} // namespace

double mass(const Field& u) {
    return u.grid().cell_volume() * kernels::sum_abs2(u.phys().data(), u.phys().size());
}

double kinetic_energy(const Field& u) {
    const std::vector<double>& sym = laplacian_symbol(u.grid());
    return kernels::weighted_sum_abs2(u.spec().data(), sym.data(), sym.size());
}

double potential_energy(const Field& u, const NonlinearEvaluator& ev) {
    const MultiplierResult n = ev.multiplier(u, false);
    const std::vector<double> g = abs2_of(u);
    const double quad = kernels::dot(n.values.data(), g.data(), g.size());
    return u.grid().cell_volume() * quad / (ev.spec().p + 1.0);
}

double total_energy(const Field& u, const std::vector<NonlinearEvaluator>& evs) {
    double e = kinetic_energy(u);
    for (const NonlinearEvaluator& ev : evs) e += potential_energy(u, ev);
    return e;
}

ObservableRecord observe(double t, const Field& u,
                         const std::vector<NonlinearEvaluator>& evs, double sc) {
    ObservableRecord rec;
    rec.t = t;
    rec.mass = mass(u);
    rec.kinetic = kinetic_energy(u);
    rec.potential = 0.0;
    for (const NonlinearEvaluator& ev : evs) rec.potential += potential_energy(u, ev);
    rec.total_energy = rec.kinetic + rec.potential;
    rec.h1 = sobolev_norm(u, 1.0);
    rec.hsc = sobolev_norm(u, sc);
    rec.linf = linf_norm(u);
    return rec;
}

GradientCheck gradient_consistency(const Field& u, const Field& v,
                                   const std::vector<NonlinearEvaluator>& evs, double eps) {
    if (!(eps > 0.0)) throw ValidationError("gradient_consistency: eps must be positive");
    const Grid& grid = u.grid();
    double pairing = 0.0;
    for (const NonlinearEvaluator& ev : evs) {
        const Field nu = ev.apply(u, false);
        double acc = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            acc += (std::conj(nu.phys()[i]) * v.phys()[i]).real();
        }
        pairing += 2.0 * grid.cell_volume() * acc;
    }
    const Field up = add(u, scale(v, eps));
    const Field um = sub(u, scale(v, eps));
    double e_plus = 0.0;
    double e_minus = 0.0;
    for (const NonlinearEvaluator& ev : evs) {
        e_plus += potential_energy(up, ev);
        e_minus += potential_energy(um, ev);
    }
    GradientCheck out;
    out.pairing = pairing;
    out.difference = (e_plus - e_minus) / (2.0 * eps);
    const double denom = std::max({std::abs(out.pairing), std::abs(out.difference), 1e-300});
    out.rel_error = std::abs(out.pairing - out.difference) / denom;
    return out;
}

YoungCheck young_check(const Field& u, const Mollifier& omega) {
    const Grid& grid = u.grid();
    if (omega.values.size() != grid.size()) {
        throw ValidationError("young_check: mollifier does not match the grid size");
    }
    std::vector<double> abs_omega(omega.values.size());
    double sum_abs = 0.0;
    for (std::size_t i = 0; i < omega.values.size(); ++i) {
        abs_omega[i] = std::abs(omega.values[i]);
        sum_abs += abs_omega[i];
    }
    const double l1 = grid.cell_volume() * sum_abs;
    const std::vector<double> g = abs2_of(u);
    const std::vector<double> phi = convolve_real(grid, abs_omega, g);
    double lhs4 = 0.0;
    double lhs6 = 0.0;
    double sum_g2 = 0.0;
    double sum_g3 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        lhs4 += phi[i] * g[i];
        lhs6 += phi[i] * phi[i] * g[i];
        sum_g2 += g[i] * g[i];
        sum_g3 += g[i] * g[i] * g[i];
    }
    const double h3 = grid.cell_volume();
    YoungCheck out;
    out.lhs_quartic = h3 * lhs4;
    out.rhs_quartic = l1 * h3 * sum_g2;
    out.margin_quartic = out.rhs_quartic - out.lhs_quartic;
    out.lhs_sextic = h3 * lhs6;
    out.rhs_sextic = l1 * l1 * h3 * sum_g3;
    out.margin_sextic = out.rhs_sextic - out.lhs_sextic;
    return out;
}

KineticBoundCheck kinetic_bound_check(const Field& u, const Mollifier& omega,
                                      double lambda1, double lambda2) {
    const Grid& grid = u.grid();
    if (omega.values.size() != grid.size()) {
        throw ValidationError("kinetic_bound_check: mollifier does not match the grid size");
    }
    if (!(lambda2 > 0.0)) {
        throw ValidationError("kinetic_bound_check: lambda2 must be positive");
    }
    for (double v : omega.values) {
        if (v < 0.0) throw ValidationError("kinetic_bound_check: kernel must be nonnegative");
    }
    const std::vector<double> g = abs2_of(u);
    const std::vector<double> phi = convolve_real(grid, omega.values, g);
    double quartic = 0.0;
    double sextic = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        quartic += phi[i] * g[i];
        sextic += phi[i] * phi[i] * g[i];
    }
    const double h3 = grid.cell_volume();
    KineticBoundCheck out;
    out.kinetic = kinetic_energy(u);
    out.energy = out.kinetic + 0.5 * lambda1 * h3 * quartic + (lambda2 / 3.0) * h3 * sextic;
    out.bound = out.energy + 3.0 * lambda1 * lambda1 / (16.0 * lambda2) * mass(u);
    out.margin = out.bound - out.kinetic;
    return out;
}

double mollifier_gap_sup(const Field& u, const Mollifier& omega) {
    const Grid& grid = u.grid();
    if (omega.values.size() != grid.size()) {
        throw ValidationError("mollifier_gap_sup: mollifier does not match the grid size");
    }
    const std::vector<double> g = abs2_of(u);
    const std::vector<double> phi = convolve_real(grid, omega.values, g);
    double sup = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        sup = std::max(sup, std::abs(phi[i] - g[i]));
    }
    return sup;
}

} // namespace hartree3d
