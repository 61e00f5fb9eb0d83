#include <cmath>
#include <string>

#include <doctest.h>

#include "hartree3d/config.hpp"
#include "hartree3d/errors.hpp"
#include "hartree3d/experiments.hpp"
#include "hartree3d/spectral.hpp"

using namespace hartree3d;

namespace {

RunConfig tiny_base() {
    RunConfig cfg;
    cfg.m = 8;
    cfg.p = 1;
    cfg.t_final = 0.05;
    cfg.dt = 5e-3;
    cfg.snapshot_stride = 5;
    cfg.dealias = false;
    cfg.family = "v1";
    cfg.mollifier = "box";
    cfg.n = 2;
    cfg.initial = "two_mode";
    return cfg;
}

} // namespace

TEST_CASE("kernel-resolution sweep: distances shrink and the delta row vanishes") {
    RunConfig cfg = tiny_base();
    cfg.n_values = "1,2,4";
    const json r = convergence_study(cfg);
    REQUIRE(r.at("rows").size() == 4); // three resolutions plus the delta row
    CHECK(r.at("monotone_within_slack").get<bool>());
    CHECK(r.at("delta_distance").get<double>() < 1e-8);
    const double d1 = r.at("rows")[0].at("distance_sup_hsc").get<double>();
    const double d4 = r.at("rows")[2].at("distance_sup_hsc").get<double>();
    CHECK(d4 < d1);
    CHECK(r.at("rows")[3].at("kernel").get<std::string>() == "delta");
}

TEST_CASE("studies are byte-deterministic across repeated runs") {
    RunConfig cfg = tiny_base();
    cfg.n_values = "1,2";
    const json a = convergence_study(cfg);
    const json b = convergence_study(cfg);
    CHECK(a.dump() == b.dump());
}

TEST_CASE("convergence study validates its inputs") {
    RunConfig cfg = tiny_base();
    cfg.family = "local";
    CHECK_THROWS_AS((void)convergence_study(cfg), ValidationError);

    RunConfig mixed_cfg = tiny_base();
    mixed_cfg.p2 = 0;
    CHECK_THROWS_AS((void)mixed_convergence_study(mixed_cfg), ValidationError);
}

TEST_CASE("two-term sweep converges jointly") {
    RunConfig cfg = tiny_base();
    cfg.p = 1;
    cfg.p2 = 2;
    cfg.family2 = "v1";
    cfg.mollifier2 = "box";
    cfg.mu2 = 1.0;
    cfg.n_values = "2,4";
    const json r = mixed_convergence_study(cfg);
    REQUIRE(r.at("rows").size() == 3);
    CHECK(r.at("monotone_within_slack").get<bool>());
    CHECK(r.at("delta_distance").get<double>() < 1e-8);
    // Each row carries both interaction terms.
    CHECK(r.at("rows")[0].at("interactions").size() == 2);
}

TEST_CASE("long-time study keeps the H1 norm under the energy bound") {
    RunConfig cfg = tiny_base();
    cfg.p = 1;
    cfg.mu = -1.0; // focusing cubic
    cfg.p2 = 2;
    cfg.family2 = "v1";
    cfg.mollifier2 = "box";
    cfg.n2 = cfg.n;
    cfg.mu2 = 1.0; // defocusing quintic
    cfg.t_long = 0.5;
    cfg.dt = 5e-3;
    const json r = gwp_longtime_study(cfg);
    CHECK(r.at("all_bounded").get<bool>());
    CHECK(r.at("min_margin").get<double>() > 0.0);
    CHECK(r.at("mass_drift_max").get<double>() < 1e-10);

    // The guard rails reject configurations the bound does not cover.
    RunConfig bad = cfg;
    bad.mu2 = -1.0;
    CHECK_THROWS_AS((void)gwp_longtime_study(bad), ValidationError);
    bad = cfg;
    bad.p2 = 1;
    CHECK_THROWS_AS((void)gwp_longtime_study(bad), ValidationError);
}

TEST_CASE("order study: exact-phase route measures fourth order for rk4") {
    RunConfig cfg = tiny_base();
    cfg.family = "local";
    cfg.p = 1;
    cfg.mu = -1.0;
    cfg.initial = "plane";
    cfg.amp1 = 2.0;
    cfg.integrator = "rk4";
    cfg.t_final = 0.5;
    cfg.dt_values = "0.025,0.0125,0.00625";
    const json r = order_study(cfg);
    CHECK(r.at("route").get<std::string>() == "exact_phase");
    REQUIRE(r.contains("slope"));
    CHECK(r.at("slope").get<double>() == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("order study: self-reference route measures second order for splitting") {
    RunConfig cfg = tiny_base();
    cfg.t_final = 0.08;
    cfg.dt_values = "0.008,0.004,0.002";
    cfg.integrator = "strang";
    const json r = order_study(cfg);
    CHECK(r.at("route").get<std::string>() == "self_reference");
    REQUIRE(r.contains("slope"));
    CHECK(r.at("slope").get<double>() == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("Duhamel study reports contraction and closeness to the integrator") {
    RunConfig cfg = tiny_base();
    cfg.p = 2;
    cfg.initial = "two_mode";
    cfg.amp1 = 5e-3;
    cfg.amp2 = 2e-3;
    cfg.t_final = 0.1;
    cfg.dt = 1e-3;
    cfg.picard_iterations = 4;
    cfg.picard_quad_nodes = 32;
    const json r = picard_study(cfg);
    CHECK(r.at("contracting").get<bool>());
    CHECK_FALSE(r.at("diverged").get<bool>());
    CHECK(r.at("distance_h1").get<double>() < 1e-8);
}

TEST_CASE("kernel report carries measured norms, formulas, and normalization") {
    RunConfig cfg = tiny_base();
    cfg.m = 16;
    cfg.family = "v1";
    cfg.mollifier = "box";
    cfg.n = 2;
    cfg.p = 2;
    const json r = potential_info(cfg);
    CHECK(r.contains("l1_measured"));
    CHECK(r.at("l1_method").get<std::string>() == "separable_exact");
    CHECK(r.at("l1_measured").get<double>() ==
          doctest::Approx(r.at("l1_count_formula").get<double>()).epsilon(1e-12));
    CHECK(r.at("normalize").at("l1_after").get<double>() ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.at("kernel_stats").at("support_count").get<int>() == 9 * 9 * 9);

    RunConfig loc = cfg;
    loc.family = "local";
    const json rl = potential_info(loc);
    CHECK(rl.at("l1_method").get<std::string>() == "delta_convention");
}

TEST_CASE("invariant checks all hold on a small grid") {
    RunConfig cfg;
    cfg.m = 8;
    const json r = invariant_checks(cfg);
    CHECK(r.at("all_hold").get<bool>());
    CHECK(r.at("checks").at("partition_unity_max_deviation").at("value").get<double>() ==
          0.0);
}

TEST_CASE("single evolution output is self-consistent") {
    RunConfig cfg = tiny_base();
    cfg.p = 2;
    const SimulationOutput out = run_simulation(cfg);
    CHECK(out.snapshots.empty()); // no snapshot path set
    REQUIRE_FALSE(out.records.empty());
    CHECK(out.report.at("records").size() == out.records.size());
    CHECK(out.report.at("t_final_effective").get<double>() ==
          doctest::Approx(cfg.t_final).epsilon(1e-12));
    // The embedded configuration echo round-trips.
    const RunConfig echo = parse_config_text(out.report.at("config").get<std::string>());
    CHECK(echo == cfg);

    RunConfig snap = cfg;
    snap.snapshot_path = "states.bin";
    const SimulationOutput with_snaps = run_simulation(snap);
    CHECK(with_snaps.snapshots.size() == with_snaps.records.size());
}

TEST_CASE("initial data builders") {
    const Grid grid(8);
    RunConfig cfg = tiny_base();
    cfg.initial = "plane";
    cfg.amp1 = 2.0;
    const Field p = make_initial(grid, cfg);
    CHECK(std::abs(p.coefficient({1, 0, 0}) - cplx(2.0, 0.0) * 15.749609945722419) < 1e-12);

    cfg.initial = "random";
    const Field r1 = make_initial(grid, cfg);
    const Field r2 = make_initial(grid, cfg);
    CHECK(l2_distance(r1, r2) == 0.0); // same seed, same field

    cfg.initial = "vortex";
    CHECK_THROWS_AS((void)make_initial(grid, cfg), ValidationError);
}
