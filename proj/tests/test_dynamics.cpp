#include <cmath>
#include <vector>

#include <doctest.h>

#include "hartree3d/dynamics.hpp"
#include "hartree3d/field.hpp"
#include "hartree3d/grid.hpp"
#include "hartree3d/interactions.hpp"
#include "hartree3d/nonlinear.hpp"
#include "hartree3d/observables.hpp"
#include "hartree3d/potentials.hpp"
#include "hartree3d/rng.hpp"
#include "hartree3d/spectral.hpp"

using namespace hartree3d;

namespace {

std::vector<NonlinearEvaluator> one_pairwise(const Grid& grid, int p) {
    InteractionSpec spec{Family::PairwiseSum, box_mollifier(grid, 2), p, 1.0, 1.0, 1.0};
    normalize_to_unit_l1(grid, spec);
    std::vector<NonlinearEvaluator> evs;
    evs.emplace_back(grid, spec);
    return evs;
}

} // namespace

TEST_CASE("splitting integrator reproduces the exact plane-wave phase") {
    const Grid grid(16);
    const Field u0 = Field::plane_wave(grid, {1, 0, 0}, cplx(2.0, 0.0));
    const auto evs = one_pairwise(grid, 1);

    EvolveOptions opt;
    opt.t_final = 0.1;
    opt.dt = 1e-3;
    opt.dealias = false;
    opt.sc = critical_exponent(1);
    const EvolveResult res = evolve(u0, evs, opt);

    // Unit-L1 kernel and |u|^2 = 4 give a constant multiplier 4, so the
    // solution is u0 e^{-i (1 + 4) t}.
    const Field exact = scale(u0, std::exp(cplx(0.0, -5.0 * res.t_final_effective)));
    CHECK(l2_distance(res.final_state, exact) < 1e-10);
}

TEST_CASE("splitting integrator conserves mass to round-off without masking") {
    const Grid grid(8);
    const Field u0 = add(Field::plane_wave(grid, {1, 0, 0}, cplx(1.0, 0.0)),
                         Field::plane_wave(grid, {2, 1, 0}, cplx(0.5, 0.0)));
    const auto evs = one_pairwise(grid, 2);

    EvolveOptions opt;
    opt.t_final = 0.2;
    opt.dt = 1e-3;
    opt.dealias = false;
    opt.snapshot_stride = 20;
    const EvolveResult res = evolve(u0, evs, opt);
    const double m0 = res.records.front().mass;
    for (const ObservableRecord& r : res.records) {
        CHECK(std::abs(r.mass - m0) <= 1e-12 * m0);
    }
}

TEST_CASE("splitting steps compose reversibly") {
    const Grid grid(8);
    Rng rng(139);
    Field u = Field::random(grid, rng);
    apply_dealias(u); // start on the resolved set
    const auto evs = one_pairwise(grid, 2);
    const Field u0 = u;
    const int steps = 50;
    const double dt = 1e-3;
    for (int s = 0; s < steps; ++s) u = strang_step(u, dt, evs, false);
    for (int s = 0; s < steps; ++s) u = strang_step(u, -dt, evs, false);
    CHECK(l2_distance(u, u0) / l2_norm(u0) < 1e-11);
}

TEST_CASE("Runge-Kutta stepping converges at fourth order on the exact phase") {
    const Grid grid(8);
    const Field u0 = Field::plane_wave(grid, {1, 0, 0}, cplx(2.0, 0.0));
    std::vector<NonlinearEvaluator> evs;
    evs.emplace_back(grid, InteractionSpec{Family::Local, {}, 1, -1.0, 1.0, 1.0});
    const double t_final = 0.5;
    // Multiplier is -|u|^2 = -4, so u(t) = u0 e^{-i (1 - 4) t}.
    const Field exact = scale(u0, std::exp(cplx(0.0, 3.0 * t_final)));

    std::vector<double> errs;
    for (double dt : {2.5e-2, 1.25e-2, 6.25e-3}) {
        Field u = u0;
        const int steps = static_cast<int>(std::llround(t_final / dt));
        for (int s = 0; s < steps; ++s) u = rk4_step(u, dt, evs, false);
        errs.push_back(l2_distance(u, exact));
    }
    const double s1 = std::log2(errs[0] / errs[1]);
    const double s2 = std::log2(errs[1] / errs[2]);
    CHECK(s1 == doctest::Approx(4.0).epsilon(0.1));
    CHECK(s2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("evolution guard reports the blow-up time") {
    const Grid grid(8);
    const Field u0 = Field::plane_wave(grid, {1, 0, 0}, cplx(3.0, 0.0));
    std::vector<NonlinearEvaluator> evs;
    evs.emplace_back(grid, InteractionSpec{Family::Local, {}, 2, -1.0, 1.0, 1.0});
    EvolveOptions opt;
    opt.t_final = 100.0;
    opt.dt = 10.0; // absurd step: the explicit stages amplify immediately
    opt.integrator = "rk4";
    CHECK_THROWS_AS((void)evolve(u0, evs, opt), NumericalError);
}

TEST_CASE("evolution records land on the stride, the start, and the end") {
    const Grid grid(8);
    const Field u0 = Field::plane_wave(grid, {1, 0, 0}, cplx(1.0, 0.0));
    const auto evs = one_pairwise(grid, 1);
    EvolveOptions opt;
    opt.t_final = 0.05;
    opt.dt = 1e-3; // 50 steps
    opt.snapshot_stride = 20;
    opt.keep_snapshots = true;
    const EvolveResult res = evolve(u0, evs, opt);
    CHECK(res.steps == 50);
    CHECK(res.t_final_effective == doctest::Approx(0.05).epsilon(1e-12));
    REQUIRE(res.record_steps.size() == 4);
    CHECK(res.record_steps[0] == 0);
    CHECK(res.record_steps[1] == 20);
    CHECK(res.record_steps[2] == 40);
    CHECK(res.record_steps[3] == 50);
    CHECK(res.snapshots.size() == res.records.size());
    CHECK(l2_distance(res.snapshots.back(), res.final_state) == 0.0);
}

TEST_CASE("first Duhamel increment matches a direct quadrature") {
    const Grid grid(8);
    const Field u0 = scale(add(Field::plane_wave(grid, {1, 0, 0}, cplx(1.0, 0.0)),
                               Field::plane_wave(grid, {2, 1, 0}, cplx(0.5, 0.0))),
                           0.05);
    const auto evs = one_pairwise(grid, 2);
    const double t_final = 0.1;
    const int nodes = 8;

    const PicardResult pr = picard_iterate(u0, evs, t_final, 1, nodes, 1.0, false);

    // Direct composite trapezoid for
    //   w(T) = -i int_0^T e^{i(T-s) Lap} N[u0_free(s)] u0_free(s) ds.
    const double dt = t_final / nodes;
    Field acc(grid);
    for (int i = 0; i <= nodes; ++i) {
        const double s = i * dt;
        const Field us = free_propagate(u0, s);
        Field integrand(grid);
        for (const NonlinearEvaluator& ev : evs) {
            integrand = add(integrand, ev.apply(us, false));
        }
        const Field propagated = free_propagate(integrand, t_final - s);
        const double weight = (i == 0 || i == nodes) ? 0.5 * dt : dt;
        acc = add(acc, scale(propagated, weight));
    }
    const Field w_direct = scale(acc, cplx(0.0, -1.0));
    const Field expect = add(free_propagate(u0, t_final), w_direct);
    CHECK(l2_distance(pr.final_state, expect) / l2_norm(expect) < 1e-12);
}

TEST_CASE("Duhamel iteration contracts for small data and matches the integrator") {
    const Grid grid(8);
    Field seed = add(Field::plane_wave(grid, {1, 0, 0}, cplx(1.0, 0.0)),
                     Field::plane_wave(grid, {2, 1, 0}, cplx(0.5, 0.0)));
    const Field u0 = scale(seed, 1e-2 / sobolev_norm(seed, 1.0));
    const auto evs = one_pairwise(grid, 2);
    const double t_final = 0.1;

    const PicardResult pr = picard_iterate(u0, evs, t_final, 4, 32, 1.0, false);
    CHECK_FALSE(pr.diverged);
    REQUIRE(pr.ratios.size() == 3);
    for (double r : pr.ratios) CHECK(r < 1.0);

    EvolveOptions opt;
    opt.t_final = t_final;
    opt.dt = 1e-3;
    opt.dealias = false;
    const EvolveResult res = evolve(u0, evs, opt);
    const double dist = sobolev_norm(sub(pr.final_state, res.final_state), 1.0);
    CHECK(dist < 1e-9); // both solve the same tiny-amplitude flow
}
