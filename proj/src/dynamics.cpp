#include "hartree3d/dynamics.hpp"

#include <cmath>
#include <limits>

#include "hartree3d/errors.hpp"
#include "hartree3d/kernels.hpp"
#include "hartree3d/spectral.hpp"

namespace hartree3d {

namespace {

std::vector<double> combined_multiplier(const Field& u,
                                        const std::vector<NonlinearEvaluator>& evs,
                                        bool dealias) {
    std::vector<double> total(u.grid().size(), 0.0);
    for (const NonlinearEvaluator& ev : evs) {
        const MultiplierResult part = ev.multiplier(u, dealias);
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += part.values[i];
    }
    return total;
}

// -i sum_ev N[u] u, the nonlinear right-hand side in u_t = i Lap u - i N u.
Field nonlinear_rhs(const Field& u, const std::vector<NonlinearEvaluator>& evs, bool dealias) {
    const std::vector<double> n = combined_multiplier(u, evs, dealias);
    std::vector<cplx> phys(u.grid().size());
    const std::vector<cplx>& up = u.phys();
    for (std::size_t i = 0; i < phys.size(); ++i) {
        phys[i] = cplx(0.0, -1.0) * n[i] * up[i];
    }
    Field out = Field::from_physical(u.grid(), std::move(phys));
    if (dealias) apply_dealias(out);
    return out;
}

} // namespace

Field strang_step(const Field& u, double dt, const std::vector<NonlinearEvaluator>& evs,
                  bool dealias) {
    Field v = free_propagate(u, 0.5 * dt);
    const std::vector<double> n = combined_multiplier(v, evs, dealias);
    kernels::expi_multiply(v.phys_mut().data(), n.data(), -dt, n.size());
    v.sync_from_physical();
    if (dealias) apply_dealias(v);
    return free_propagate(v, 0.5 * dt);
}

Field rk4_step(const Field& u, double dt, const std::vector<NonlinearEvaluator>& evs,
               bool dealias) {
    // Integrating-factor RK4: with P_t the free propagator,
    //   k1 = F(u),              k2 = F(P_{dt/2}(u + dt/2 k1)),
    //   k3 = F(P_{dt/2} u + dt/2 k2),  k4 = F(P_dt u + dt P_{dt/2} k3),
    //   u' = P_dt u + dt/6 (P_dt k1 + 2 P_{dt/2} (k2 + k3) + k4)
    auto f = [&](const Field& w) { return nonlinear_rhs(w, evs, dealias); };
    const Field k1 = f(u);
    const Field eu = free_propagate(u, 0.5 * dt);
    const Field k2 = f(free_propagate(add(u, scale(k1, 0.5 * dt)), 0.5 * dt));
    const Field k3 = f(add(eu, scale(k2, 0.5 * dt)));
    const Field e2u = free_propagate(u, dt);
    const Field k4 = f(add(e2u, scale(free_propagate(k3, 0.5 * dt), dt)));
    Field acc = add(free_propagate(k1, dt),
                    add(scale(free_propagate(add(k2, k3), 0.5 * dt), 2.0), k4));
    Field out = add(e2u, scale(acc, dt / 6.0));
    if (dealias) apply_dealias(out);
    return out;
}

EvolveResult evolve(const Field& u0, const std::vector<NonlinearEvaluator>& evs,
                    const EvolveOptions& opt) {
    if (!(opt.dt > 0.0)) throw ValidationError("evolve: dt must be positive");
    if (!(opt.t_final > 0.0)) throw ValidationError("evolve: t_final must be positive");
    if (opt.snapshot_stride < 1) throw ValidationError("evolve: snapshot_stride must be >= 1");
    const bool use_rk4 = opt.integrator == "rk4";
    if (!use_rk4 && opt.integrator != "strang") {
        throw ValidationError("evolve: integrator must be strang or rk4");
    }
    const std::size_t steps =
        static_cast<std::size_t>(std::llround(opt.t_final / opt.dt));
    if (steps < 1) throw ValidationError("evolve: t_final shorter than one step");

    Field u = u0;
    if (opt.dealias) apply_dealias(u);
    EvolveResult res{{}, {}, {}, u, 0.0, steps};
    res.t_final_effective = static_cast<double>(steps) * opt.dt;

    auto record = [&](std::size_t step, const Field& state) {
        res.records.push_back(observe(static_cast<double>(step) * opt.dt, state, evs, opt.sc));
        res.record_steps.push_back(step);
        if (opt.keep_snapshots) res.snapshots.push_back(state);
    };
    record(0, u);
    double prev_l2 = l2_norm(u);
    for (std::size_t s = 1; s <= steps; ++s) {
        u = use_rk4 ? rk4_step(u, opt.dt, evs, opt.dealias)
                    : strang_step(u, opt.dt, evs, opt.dealias);
        const double cur_l2 = l2_norm(u);
        if (!std::isfinite(cur_l2) || cur_l2 > 10.0 * prev_l2) {
            throw NumericalError("evolve: solution norm blew up at t = " +
                                 std::to_string(static_cast<double>(s) * opt.dt));
        }
        prev_l2 = cur_l2;
        if (s % static_cast<std::size_t>(opt.snapshot_stride) == 0 || s == steps) {
            record(s, u);
        }
    }
    res.final_state = u;
    return res;
}

PicardResult picard_iterate(const Field& u0, const std::vector<NonlinearEvaluator>& evs,
                            double t_final, int iterations, int quad_nodes, double s,
                            bool dealias) {
    if (!(t_final > 0.0)) throw ValidationError("picard_iterate: t_final must be positive");
    if (iterations < 1) throw ValidationError("picard_iterate: need at least one iteration");
    if (quad_nodes < 1) throw ValidationError("picard_iterate: need at least one interval");
    const Grid& grid = u0.grid();
    const std::size_t nodes = static_cast<std::size_t>(quad_nodes) + 1;
    const double dt = t_final / quad_nodes;

    std::vector<Field> curr;
    curr.reserve(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        curr.push_back(free_propagate(u0, static_cast<double>(i) * dt));
    }
    std::vector<Field> prev = curr; // u^{m-1}; equals u^0 before the first update

    PicardResult out{{}, {}, curr.back(), t_final, false};
    const cplx minus_i(0.0, -1.0);

    for (int m = 1; m <= iterations; ++m) {
        // Integrand at the nodes: N-difference for m >= 2, plain N[u^0] first.
        auto integrand = [&](std::size_t i) {
            if (m == 1) {
                Field total(grid);
                for (const NonlinearEvaluator& ev : evs) {
                    total = add(total, ev.apply(curr[i], dealias));
                }
                return total;
            }
            Field total(grid);
            for (const NonlinearEvaluator& ev : evs) {
                total = add(total, ev.apply_difference(curr[i], prev[i], dealias));
            }
            return total;
        };
        std::vector<Field> w;
        w.reserve(nodes);
        w.push_back(Field(grid));
        Field partial(grid);
        Field d_prev = integrand(0);
        for (std::size_t i = 1; i < nodes; ++i) {
            const Field d_here = integrand(i);
            partial = add(free_propagate(partial, dt),
                          scale(add(free_propagate(d_prev, dt), d_here), 0.5 * dt));
            w.push_back(scale(partial, minus_i));
            d_prev = d_here;
        }
        double sup = 0.0;
        for (const Field& wi : w) sup = std::max(sup, sobolev_norm(wi, s));
        out.increment_norms.push_back(sup);
        if (m >= 2) {
            const double prev_norm = out.increment_norms[static_cast<std::size_t>(m) - 2];
            double ratio;
            if (prev_norm > 0.0) {
                ratio = sup / prev_norm;
            } else {
                ratio = sup == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            }
            out.ratios.push_back(ratio);
            if (!(ratio <= 10.0)) {
                out.diverged = true;
            }
        }
        prev = curr;
        for (std::size_t i = 0; i < nodes; ++i) curr[i] = add(curr[i], w[i]);
        if (out.diverged) break;
    }
    out.final_state = curr.back();
    return out;
}

} // namespace hartree3d
