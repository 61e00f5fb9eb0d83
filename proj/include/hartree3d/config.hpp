#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hartree3d {

// Flat key = value configuration ('#' starts a comment, blank lines ignored;
// no sections, no key aliases). Unknown and duplicate keys are rejected.
// config_to_string echoes every key including defaults and round-trips
// through parse_config_text.
struct RunConfig {
    int m = 16;
    int p = 2;
    int p2 = 0; // order of the second interaction; 0 disables it
    double t_final = 1.0;
    double dt = 1e-3;
    std::string integrator = "strang"; // strang | rk4
    int snapshot_stride = 100;
    bool dealias = true;
    std::uint64_t seed = 1234;
    std::string family = "v1";     // local | v1 | v2
    std::string mollifier = "box"; // box | smooth | power | coulomb | delta
    int n = 2;
    double mu = 1.0;
    double lambda = 1.0;
    bool normalize = true;
    std::string family2 = "local";
    std::string mollifier2 = "box";
    int n2 = 2;
    double mu2 = 1.0;
    double lambda2 = 1.0;
    std::string initial = "two_mode"; // plane | two_mode | random
    double amp1 = 1.0;
    std::array<int, 3> k1 = {1, 0, 0};
    double amp2 = 0.5;
    std::array<int, 3> k2 = {2, 1, 0};
    std::string n_values = "2,4,8,16";
    std::string dt_values = "0.004,0.002,0.001";
    double t_long = 10.0;
    int picard_iterations = 6;
    int picard_quad_nodes = 64;
    int mode_cutoff = 0; // full-product mode sum: 0 keeps the full lattice
    std::string snapshot_path;

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);
std::string config_to_string(const RunConfig& cfg);

// Range/choice checks shared by the file parser and the CLI overrides;
// throws ValidationError naming the offending key.
void validate_config(const RunConfig& cfg);

// Comma-separated lists used by the study configurations.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

} // namespace hartree3d
