#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "hartree3d/config.hpp"
#include "hartree3d/errors.hpp"
#include "hartree3d/field.hpp"
#include "hartree3d/io.hpp"
#include "hartree3d/observables.hpp"
#include "hartree3d/rng.hpp"

using namespace hartree3d;
namespace fs = std::filesystem;

namespace {

// Scratch directory for round-trip tests; removed on destruction.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("hartree3d_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

} // namespace

TEST_CASE("config serialization round-trips every field") {
    RunConfig cfg;
    cfg.m = 32;
    cfg.p = 3;
    cfg.p2 = 1;
    cfg.t_final = 2.5;
    cfg.dt = 1.25e-4;
    cfg.integrator = "rk4";
    cfg.snapshot_stride = 7;
    cfg.dealias = false;
    cfg.seed = 99;
    cfg.family = "v2";
    cfg.mollifier = "smooth";
    cfg.n = 4;
    cfg.mu = -1.0;
    cfg.lambda = 0.75;
    cfg.normalize = false;
    cfg.family2 = "v1";
    cfg.mollifier2 = "coulomb";
    cfg.n2 = 1;
    cfg.mu2 = -1.0;
    cfg.lambda2 = 2.0;
    cfg.initial = "random";
    cfg.amp1 = 0.1;
    cfg.k1 = {2, -1, 3};
    cfg.amp2 = 0.25;
    cfg.k2 = {0, 1, -2};
    cfg.n_values = "2,4,8";
    cfg.dt_values = "0.01,0.005";
    cfg.t_long = 3.0;
    cfg.picard_iterations = 5;
    cfg.picard_quad_nodes = 48;
    cfg.mode_cutoff = 2;
    cfg.snapshot_path = "snap.bin";

    const RunConfig back = parse_config_text(config_to_string(cfg));
    CHECK(back == cfg);

    const RunConfig defaults;
    CHECK(parse_config_text(config_to_string(defaults)) == defaults);
}

TEST_CASE("config parser rejects malformed input") {
    CHECK_THROWS_WITH_AS((void)parse_config_text("m = 8\nbogus_key = 1\n"),
                         doctest::Contains("bogus_key"), ValidationError);
    CHECK_THROWS_WITH_AS((void)parse_config_text("m = 8\nm = 16\n"),
                         doctest::Contains("duplicate"), ValidationError);
    CHECK_THROWS_AS((void)parse_config_text("m eight\n"), ValidationError);
    CHECK_THROWS_WITH_AS((void)parse_config_text("m = 24\n"),
                         doctest::Contains("power of two"), ValidationError);
    CHECK_THROWS_AS((void)parse_config_text("integrator = euler\n"), ValidationError);
    CHECK_THROWS_AS((void)parse_config_text("mu = 0.5\n"), ValidationError);

    // Comments and blank lines are fine.
    const RunConfig cfg = parse_config_text("# comment\n\nm = 8\n");
    CHECK(cfg.m == 8);
}

TEST_CASE("list parsing") {
    CHECK(parse_int_list("1,2, 4") == std::vector<int>{1, 2, 4});
    const std::vector<double> ds = parse_double_list("0.5,1e-3");
    REQUIRE(ds.size() == 2);
    CHECK(ds[0] == 0.5);
    CHECK(ds[1] == 1e-3);
    CHECK_THROWS_AS((void)parse_int_list("1,,2"), ValidationError);
    CHECK_THROWS_AS((void)parse_int_list(""), ValidationError);
    CHECK_THROWS_AS((void)parse_double_list("0.1,abc"), ValidationError);
}

TEST_CASE("full-precision formatting survives a string round-trip") {
    const double samples[] = {0.1,       1.0 / 3.0, 992.2008537695941, 1e-300,
                              -2.5e17,   0.0,       6.25e-2};
    for (double v : samples) {
        CHECK(std::stod(io::format_full(v)) == v);
    }
    // The exact layout: scientific, 16 digits after the point, signed exponent.
    CHECK(io::format_full(0.5) == "5.0000000000000000e-01");
    CHECK(io::format_full(-0.25) == "-2.5000000000000000e-01");
}

TEST_CASE("observable records render as a fixed-layout CSV") {
    ObservableRecord r{};
    r.t = 0.5;
    r.mass = 2.0;
    r.kinetic = 1.0;
    r.potential = -0.25;
    r.total_energy = 0.75;
    r.h1 = 3.0;
    r.hsc = 2.5;
    r.linf = 0.125;
    const std::string csv = io::observables_csv({r});
    const std::string header = "t,mass,kinetic,potential,total_energy,h1,hsc,linf";
    CHECK(csv.substr(0, header.size()) == header);
    const std::string line =
        "5.0000000000000000e-01,2.0000000000000000e+00,1.0000000000000000e+00,"
        "-2.5000000000000000e-01,7.5000000000000000e-01,3.0000000000000000e+00,"
        "2.5000000000000000e+00,1.2500000000000000e-01";
    CHECK(csv.find(line) != std::string::npos);
    // One header line plus one data line, newline-terminated.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("snapshot files round-trip bit for bit") {
    TempDir tmp;
    const Grid grid(4);
    Rng rng(7);
    std::vector<std::pair<double, Field>> snaps;
    snaps.emplace_back(0.0, Field::random(grid, rng));
    snaps.emplace_back(0.25, Field::random(grid, rng));

    const fs::path file = tmp.path / "states.bin";
    io::write_snapshots(file.string(), grid, snaps);

    const io::SnapshotFile in = io::read_snapshots(file.string());
    CHECK(in.m == 4);
    REQUIRE(in.snapshots.size() == 2);
    for (std::size_t s = 0; s < 2; ++s) {
        CHECK(in.snapshots[s].first == snaps[s].first);
        const std::vector<cplx>& a = in.snapshots[s].second;
        const std::vector<cplx>& b = snaps[s].second.phys();
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].real() == b[i].real());
            CHECK(a[i].imag() == b[i].imag());
        }
    }

    // Corrupt the magic bytes and expect a format error.
    std::string raw = io::read_text_file(file.string());
    raw[0] = 'X';
    const fs::path badfile = tmp.path / "bad.bin";
    io::write_text_file(badfile.string(), raw);
    CHECK_THROWS_AS((void)io::read_snapshots(badfile.string()), IoError);

    // Truncated payload is also rejected.
    const fs::path shortfile = tmp.path / "short.bin";
    io::write_text_file(shortfile.string(), raw.substr(0, raw.size() / 2));
    CHECK_THROWS_AS((void)io::read_snapshots(shortfile.string()), IoError);

    CHECK_THROWS_AS((void)io::read_snapshots((tmp.path / "missing.bin").string()),
                    IoError);
}

TEST_CASE("json reports gain a meta block but stay deterministic without it") {
    TempDir tmp;
    nlohmann::json r;
    r["task"] = "demo";
    r["value"] = 1.5;

    const fs::path f1 = tmp.path / "a.json";
    const fs::path f2 = tmp.path / "b.json";
    io::write_json_report(f1.string(), r);
    io::write_json_report(f2.string(), r);

    nlohmann::json a = nlohmann::json::parse(io::read_text_file(f1.string()));
    nlohmann::json b = nlohmann::json::parse(io::read_text_file(f2.string()));
    REQUIRE(a.contains("meta"));
    CHECK(a.at("meta").contains("version"));
    CHECK(a.at("meta").contains("timestamp"));
    CHECK(a.at("meta").contains("threads"));
    CHECK(a.at("value").get<double>() == 1.5);
    a.erase("meta");
    b.erase("meta");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("text file helpers report failures") {
    CHECK_THROWS_AS((void)io::read_text_file("/nonexistent/really/not/here.txt"), IoError);
    CHECK_THROWS_AS((void)parse_config_file("/nonexistent/really/not/here.conf"), IoError);
}
