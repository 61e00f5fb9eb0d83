#include <cmath>
#include <vector>

#include <doctest.h>

#include "hartree3d/grid.hpp"
#include "hartree3d/interactions.hpp"
#include "hartree3d/potentials.hpp"

using namespace hartree3d;

namespace {

// Composite Simpson on [0,1]^2, the independent oracle for the origin-cell
// average of 1/|x| (panels must be even).
double corner_integral_simpson(int panels) {
    auto f = [](double s, double t) { return 1.0 / std::sqrt(1.0 + s * s + t * t); };
    const double h = 1.0 / panels;
    auto w1 = [&](int i) {
        if (i == 0 || i == panels) return 1.0;
        return (i % 2 == 1) ? 4.0 : 2.0;
    };
    double sum = 0.0;
    for (int a = 0; a <= panels; ++a) {
        for (int b = 0; b <= panels; ++b) {
            sum += w1(a) * w1(b) * f(a * h, b * h);
        }
    }
    return 1.5 * sum * h * h / 9.0;
}

} // namespace

TEST_CASE("box kernel: frozen counts and exact dyadic integral at m=32, n=2") {
    const Grid grid(32);
    const Mollifier box = box_mollifier(grid, 2);
    const MollifierStats st = mollifier_stats(grid, box);
    CHECK(st.support_count == 4913); // 17^3
    CHECK(st.max_value == doctest::Approx(0.032251534433199495).epsilon(1e-15));
    // Closed-cube membership keeps both boundary planes: per-dimension
    // lattice integral 1 + n/m = 1.0625, so the closed form is 1.0625^3.
    // The measured sum accumulates one rounding per term over 4913 terms.
    CHECK(st.integral == doctest::Approx(1.199462890625).epsilon(1e-12));
    CHECK(st.l1 == st.integral);
}

TEST_CASE("box kernel: n=1 wraps to the whole torus with integral exactly 1") {
    const Grid grid(8);
    const Mollifier box = box_mollifier(grid, 1);
    const MollifierStats st = mollifier_stats(grid, box);
    CHECK(st.support_count == 512);
    CHECK(st.integral == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("box kernel requires at least one cell of support per dimension") {
    const Grid grid(8);
    CHECK_THROWS_AS((void)box_mollifier(grid, 5), ValidationError);
    CHECK_NOTHROW((void)box_mollifier(grid, 4));
}

TEST_CASE("smooth kernel: near-unit integral and C2 taper inside the box support") {
    const Grid grid(32);
    const Mollifier sm = smooth_mollifier(grid, 2);
    const MollifierStats st = mollifier_stats(grid, sm);
    // The bump integrates to exactly 1 in the continuum; the lattice sum of a
    // C2 compactly supported function converges at fourth order, so m = 32 is
    // already within a percent.
    CHECK(std::abs(st.integral - 1.0) < 1e-2);
    CHECK(st.l1 == st.integral); // nonnegative
    // Support is contained in the closed box of half-width pi/n.
    const Mollifier box = box_mollifier(grid, 2);
    for (std::size_t i = 0; i < sm.values.size(); ++i) {
        if (sm.values[i] != 0.0) CHECK(box.values[i] > 0.0);
    }
}

TEST_CASE("power kernel: p=1 reproduces the box kernel bitwise") {
    const Grid grid(16);
    const Mollifier box = box_mollifier(grid, 2);
    const Mollifier pow1 = power_mollifier(grid, 2, 1);
    CHECK(pow1.values == box.values);
    // p = 2 keeps the support and takes the 2/3 power of the value.
    const Mollifier pow2 = power_mollifier(grid, 2, 2);
    const double expect = std::pow(2.0 / kTwoPi, 2.0);
    CHECK(pow2.values[0] == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("coulomb kernel: exact neighbor value and oracle-checked origin cell") {
    const Grid grid(16);
    const Mollifier c = coulomb_potential(grid);
    CHECK(c.values[grid.index(1, 0, 0)] == doctest::Approx(1.0 / grid.h()).epsilon(1e-15));
    // Origin cell holds the exact cell average 2 K / h with
    // K = int_{[0,1]^3} dx/|x|; compare against an independent Simpson rule.
    const double k_simpson = corner_integral_simpson(256);
    CHECK(c.values[0] == doctest::Approx(2.0 * k_simpson / grid.h()).epsilon(1e-8));
    // Minimal-image symmetry is exact on the lattice.
    for (int i = 1; i < 16; ++i) {
        CHECK(c.values[grid.index(i, 3, 5)] ==
              c.values[grid.index(grid.wrap(-i), grid.wrap(-3), grid.wrap(-5))]);
    }
}

TEST_CASE("lattice delta: unit mass, single site") {
    const Grid grid(8);
    const Mollifier d = discrete_delta(grid);
    const MollifierStats st = mollifier_stats(grid, d);
    CHECK(st.support_count == 1);
    CHECK(st.l1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.values[0] == doctest::Approx(1.0 / grid.cell_volume()).epsilon(1e-15));
}

TEST_CASE("axis transform profile agrees with the Dirichlet-ratio closed form") {
    const Grid grid(32);
    const std::vector<double> prof = fourier_axis_profile(grid, box_mollifier(grid, 2));
    REQUIRE(prof.size() == 17);
    CHECK(prof[0] == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 1; k <= 4; ++k) {
        const FourierGap g = box_fourier_gap(grid, 2, k);
        CHECK(prof[static_cast<std::size_t>(k)] == doctest::Approx(g.discrete).epsilon(1e-12));
        // The lattice ratio approaches sinc(k pi / n). At even k the
        // continuum transform sits on a sinc zero while the Dirichlet ratio
        // leaves +-1/17 (one over the per-dimension support count), which is
        // the worst case at m = 32.
        CHECK(std::abs(g.gap) <= 1.0 / 17.0 + 1e-12);
    }
}

TEST_CASE("nonnegative kernels have transform peak at frequency zero") {
    const Grid grid(16);
    for (const Mollifier& w :
         {box_mollifier(grid, 2), smooth_mollifier(grid, 2), power_mollifier(grid, 2, 2),
          coulomb_potential(grid), discrete_delta(grid)}) {
        CHECK(hausdorff_young_margin(grid, w) <= 1e-12);
    }
}

TEST_CASE("pairwise-sum L1 norms: exact route matches the counting formula") {
    const Grid grid(32);
    for (int n : {1, 2, 4}) {
        for (int p : {1, 2, 3}) {
            InteractionSpec spec{Family::PairwiseSum, box_mollifier(grid, n), p, 1.0, 1.0,
                                 1.0};
            const L1Result r = l1_norm(grid, spec);
            CHECK(r.method == "separable_exact");
            CHECK(r.value ==
                  doctest::Approx(v1_box_l1_formula(32, n, p)).epsilon(1e-12));
        }
    }
}

TEST_CASE("full-product L1 norms: convolution route matches the counting formulas") {
    const Grid grid(16);
    {
        InteractionSpec spec{Family::FullProduct, box_mollifier(grid, 2), 2, 1.0, 1.0, 1.0};
        const L1Result r = l1_norm(grid, spec);
        CHECK(r.method == "convolution_exact");
        CHECK(r.value == doctest::Approx(v2_box_l1_formula(16, 2)).epsilon(1e-10));
    }
    {
        InteractionSpec spec{Family::FullProduct, power_mollifier(grid, 2, 2), 2, 1.0, 1.0,
                             1.0};
        const L1Result r = l1_norm(grid, spec);
        CHECK(r.method == "convolution_exact");
        CHECK(r.value == doctest::Approx(v2_power_l1_formula(16, 2, 2)).epsilon(1e-10));
    }
    {
        // p = 1 full product is a single pair factor: separable route.
        InteractionSpec spec{Family::FullProduct, box_mollifier(grid, 2), 1, 1.0, 1.0, 1.0};
        const L1Result r = l1_norm(grid, spec);
        CHECK(r.method == "separable_exact");
        CHECK(r.value == doctest::Approx(v1_box_l1_formula(16, 2, 1)).epsilon(1e-12));
    }
}

TEST_CASE("power-kernel counting factor approaches the continuum overlap constant") {
    // (n/m)^6 N^3 with N = 3J^2 + 3J + 1, J = m/(2n): as m grows this tends
    // to 27/64 from above at rate O(1/J).
    const double c = v2_power_l1_formula(512, 2, 2);
    CHECK(c > 27.0 / 64.0);
    CHECK(c / (27.0 / 64.0) < 1.025);
}

TEST_CASE("Monte Carlo route brackets the exact value within four standard errors") {
    const Grid grid(8);
    InteractionSpec spec{Family::PairwiseSum, box_mollifier(grid, 2), 2, 1.0, 1.0, 1.0};
    const L1Result exact = l1_norm(grid, spec);
    const L1Result mc = l1_norm_monte_carlo(grid, spec, 200000, 0x9e3779b97f4a7c15ull);
    CHECK(mc.method == "monte_carlo");
    REQUIRE(mc.standard_error > 0.0);
    CHECK(std::abs(mc.value - exact.value) < 4.0 * mc.standard_error);
}

TEST_CASE("unit-L1 normalization is idempotent") {
    const Grid grid(16);
    InteractionSpec spec{Family::PairwiseSum, box_mollifier(grid, 2), 2, -1.0, 2.5, 1.0};
    const double before = normalize_to_unit_l1(grid, spec);
    CHECK(before == doctest::Approx(v1_box_l1_formula(16, 2, 2)).epsilon(1e-12));
    CHECK(l1_norm(grid, spec).value == doctest::Approx(1.0).epsilon(1e-12));
    const double again = normalize_to_unit_l1(grid, spec);
    CHECK(again == doctest::Approx(1.0).epsilon(1e-12));
    // mu and lambda are untouched by normalization.
    CHECK(spec.mu == -1.0);
    CHECK(spec.lambda == 2.5);
}

TEST_CASE("kernel values at integer offsets match the definitions") {
    const Grid grid(8);
    const Mollifier box = box_mollifier(grid, 2);
    const double b = box.values[0];

    InteractionSpec local{Family::Local, {}, 2, 1.0, 1.0, 3.0};
    CHECK(kernel_value(grid, local, {{0, 0, 0}, {0, 0, 0}}) ==
          doctest::Approx(3.0 * std::pow(grid.cell_volume(), -2.0)).epsilon(1e-12));
    CHECK(kernel_value(grid, local, {{1, 0, 0}, {0, 0, 0}}) == 0.0);

    // One offset: (1/2)[omega(-y) + omega(y)] = omega(y) for an even kernel.
    InteractionSpec v1{Family::PairwiseSum, box, 1, 1.0, 1.0, 1.0};
    CHECK(kernel_value(grid, v1, {{1, 1, 0}}) == doctest::Approx(b).epsilon(1e-12));
    CHECK(kernel_value(grid, v1, {{4, 0, 0}}) == 0.0); // outside the cube

    // Full product with two offsets multiplies all three pair factors.
    InteractionSpec v2{Family::FullProduct, box, 2, 1.0, 1.0, 1.0};
    CHECK(kernel_value(grid, v2, {{1, 0, 0}, {0, 1, 0}}) ==
          doctest::Approx(b * b * b).epsilon(1e-12));
}
