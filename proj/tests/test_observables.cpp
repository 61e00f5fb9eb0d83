#include <cmath>
#include <vector>

#include <doctest.h>

#include "hartree3d/field.hpp"
#include "hartree3d/grid.hpp"
#include "hartree3d/interactions.hpp"
#include "hartree3d/nonlinear.hpp"
#include "hartree3d/observables.hpp"
#include "hartree3d/potentials.hpp"
#include "hartree3d/rng.hpp"
#include "hartree3d/spectral.hpp"

using namespace hartree3d;

TEST_CASE("mass equals the squared L2 norm") {
    const Grid grid(8);
    Rng rng(101);
    const Field u = Field::random(grid, rng);
    CHECK(mass(u) == doctest::Approx(l2_norm(u) * l2_norm(u)).epsilon(1e-13));
}

TEST_CASE("kinetic energy of a frozen plane wave") {
    const Grid grid(16);
    const Field u = Field::plane_wave(grid, {1, 0, 0}, cplx(2.0, 0.0));
    CHECK(kinetic_energy(u) == doctest::Approx(992.2008537695941).epsilon(1e-13));
    const Field v = Field::plane_wave(grid, {2, 1, 0}, cplx(1.0, 0.0));
    CHECK(kinetic_energy(v) == doctest::Approx(5.0 * 248.05021344239853).epsilon(1e-13));
}

TEST_CASE("pairwise potential energy equals the closed convolution form") {
    const Grid grid(8);
    Rng rng(103);
    const Field u = Field::random(grid, rng);
    for (int p : {1, 2}) {
        InteractionSpec spec{Family::PairwiseSum, box_mollifier(grid, 2), p, -1.0, 2.0, 0.7};
        const NonlinearEvaluator ev(grid, spec);
        const double e = potential_energy(u, ev);

        // Independent route: E = c/(p+1) h^3 sum (omega*g)^p g.
        std::vector<cplx> gp(grid.size());
        for (std::size_t i = 0; i < gp.size(); ++i) gp[i] = std::norm(u.phys()[i]);
        const Field g = Field::from_physical(grid, std::move(gp));
        std::vector<cplx> wp(grid.size());
        for (std::size_t i = 0; i < wp.size(); ++i) wp[i] = spec.omega.values[i];
        const Field w = Field::from_physical(grid, std::move(wp));
        const Field phi = convolve(w, g);
        double acc = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            acc += std::pow(phi.phys()[i].real(), p) * g.phys()[i].real();
        }
        const double expect =
            coupling(spec) / (p + 1) * grid.cell_volume() * acc;
        CHECK(e == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("local potential energy is the pointwise moment") {
    const Grid grid(8);
    Rng rng(107);
    const Field u = Field::random(grid, rng);
    InteractionSpec spec{Family::Local, {}, 2, 1.0, 1.0, 1.0};
    const NonlinearEvaluator ev(grid, spec);
    double acc = 0.0;
    for (const cplx& z : u.phys()) acc += std::pow(std::norm(z), 3);
    CHECK(potential_energy(u, ev) ==
          doctest::Approx(grid.cell_volume() * acc / 3.0).epsilon(1e-12));
}

TEST_CASE("energy gradient pairing matches the centered difference") {
    const Grid grid(8);
    Rng rng(109);
    const Field u = Field::random(grid, rng);
    const Field v = Field::random(grid, rng);

    std::vector<NonlinearEvaluator> evs;
    evs.emplace_back(grid, InteractionSpec{Family::PairwiseSum, box_mollifier(grid, 2), 2,
                                           -1.0, 1.0, 1.0});
    evs.emplace_back(grid, InteractionSpec{Family::Local, {}, 1, 1.0, 0.5, 1.0});

    const GradientCheck gc = gradient_consistency(u, v, evs, 1e-4);
    CHECK(gc.rel_error < 1e-6);

    // Quadratic convergence of the centered difference in eps.
    const GradientCheck c2 = gradient_consistency(u, v, evs, 1e-2);
    const GradientCheck c3 = gradient_consistency(u, v, evs, 1e-3);
    const double e2 = std::abs(c2.difference - c2.pairing);
    const double e3 = std::abs(c3.difference - c3.pairing);
    REQUIRE(e3 > 0.0);
    const double slope = std::log10(e2 / e3);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("convolution bounds: nonnegative margins, equality for constants") {
    const Grid grid(16);
    const Mollifier w = box_mollifier(grid, 2);
    Rng rng(113);
    for (int rep = 0; rep < 10; ++rep) {
        const Field u = Field::random(grid, rng);
        const YoungCheck yc = young_check(u, w);
        CHECK(yc.margin_quartic >= -1e-12 * std::max(1.0, yc.rhs_quartic));
        CHECK(yc.margin_sextic >= -1e-12 * std::max(1.0, yc.rhs_sextic));
    }
    const Field c = Field::plane_wave(grid, {0, 0, 0}, cplx(0.9, 0.4));
    const YoungCheck eq = young_check(c, w);
    CHECK(std::abs(eq.margin_quartic) <= 1e-12 * eq.rhs_quartic);
    CHECK(std::abs(eq.margin_sextic) <= 1e-12 * eq.rhs_sextic);
}

TEST_CASE("kinetic control from the defocusing quintic term") {
    const Grid grid(8);
    Rng rng(127);
    const Mollifier w = box_mollifier(grid, 2);
    for (int rep = 0; rep < 5; ++rep) {
        const Field u = Field::random(grid, rng);
        for (auto [l1, l2] : {std::pair{-1.0, 1.0}, std::pair{1.0, 1.0}, std::pair{-2.0, 0.5}}) {
            const KineticBoundCheck kb = kinetic_bound_check(u, w, l1, l2);
            CHECK(kb.margin >= -1e-9 * std::max(1.0, std::abs(kb.bound)));
            CHECK(kb.bound == doctest::Approx(kb.energy + 3.0 * l1 * l1 / (16.0 * l2) *
                                                              mass(u)).epsilon(1e-12));
        }
    }
    const Field u = Field::random(grid, rng);
    CHECK_THROWS_AS((void)kinetic_bound_check(u, w, 1.0, 0.0), ValidationError);
}

TEST_CASE("kernel smoothing gap shrinks as the kernel localizes") {
    const Grid grid(32);
    const Field u = add(Field::plane_wave(grid, {1, 0, 0}, cplx(1.0, 0.0)),
                        Field::plane_wave(grid, {2, 1, 0}, cplx(0.5, 0.0)));
    double prev = 1e300;
    for (int n : {2, 4, 8}) {
        Mollifier w = box_mollifier(grid, n);
        // Normalize to unit lattice integral so the gap isolates smoothing.
        const double integral = mollifier_stats(grid, w).integral;
        for (double& v : w.values) v /= integral;
        const double gap = mollifier_gap_sup(u, w);
        CHECK(gap <= prev * (1.0 + 1e-12));
        prev = gap;
    }
    CHECK(prev < 0.2); // n = 8 is already close to the delta limit
}

TEST_CASE("observable record carries consistent totals") {
    const Grid grid(8);
    Rng rng(131);
    const Field u = Field::random(grid, rng);
    std::vector<NonlinearEvaluator> evs;
    evs.emplace_back(grid, InteractionSpec{Family::PairwiseSum, box_mollifier(grid, 2), 1,
                                           1.0, 1.0, 1.0});
    const ObservableRecord r = observe(0.25, u, evs, 1.0);
    CHECK(r.t == 0.25);
    CHECK(r.mass == doctest::Approx(mass(u)).epsilon(1e-13));
    CHECK(r.total_energy ==
          doctest::Approx(r.kinetic + r.potential).epsilon(1e-12));
    CHECK(r.h1 == doctest::Approx(sobolev_norm(u, 1.0)).epsilon(1e-13));
    CHECK(r.hsc == doctest::Approx(sobolev_norm(u, 1.0)).epsilon(1e-13));
    CHECK(r.linf == doctest::Approx(linf_norm(u)).epsilon(1e-13));
}
