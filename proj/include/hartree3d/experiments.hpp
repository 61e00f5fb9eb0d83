#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hartree3d/config.hpp"
#include "hartree3d/dynamics.hpp"
#include "hartree3d/field.hpp"
#include "hartree3d/interactions.hpp"
#include "hartree3d/nonlinear.hpp"

namespace hartree3d {

using json = nlohmann::json;

// Builders shared by the CLI and the studies. p matters only for the
// power-law kernel, whose exponent depends on the nonlinearity order.
Mollifier make_mollifier(const Grid& grid, const std::string& kind, int n, int p);
InteractionSpec make_interaction(const Grid& grid, const std::string& family,
                                 const std::string& mollifier, int n, int p, double mu,
                                 double lambda, bool normalize);
std::vector<NonlinearEvaluator> make_evaluators(const Grid& grid, const RunConfig& cfg);
Field make_initial(const Grid& grid, const RunConfig& cfg);

// Single evolution; the report summarizes drifts, the records feed the CSV
// writer, and snapshots are kept when cfg.snapshot_path is set.
struct SimulationOutput {
    json report;
    std::vector<ObservableRecord> records;
    std::vector<std::pair<double, Field>> snapshots;
};
SimulationOutput run_simulation(const RunConfig& cfg);

// Kernel-resolution sweep against the pointwise-limit reference: one row per
// n in cfg.n_values, each normalized to unit kernel L1 norm, plus a lattice
// delta row that must reproduce the reference to round-off. Rows run
// concurrently; inner kernels stay serial inside row threads, so reports are
// identical for any thread count.
json convergence_study(const RunConfig& cfg);

// Same sweep for the two-term nonlinearity (orders p and p2).
json mixed_convergence_study(const RunConfig& cfg);

// Long-time H1 control for the cubic/quintic pair with a shared nonnegative
// kernel and positive quintic coupling: checks the record-wise H1 norm
// against sqrt(M0 + E0 + 3 lambda1^2/(16 lambda2) M0).
json gwp_longtime_study(const RunConfig& cfg);

// Step-size refinement of the configured integrator. Plane-wave data with a
// constant multiplier is compared against the exact phase rotation;
// otherwise the reference is the same integrator at min(dt)/8. Rows below
// the round-off floor are flagged and excluded from the slope fit.
json order_study(const RunConfig& cfg);

// Duhamel iteration diagnostics plus a comparison against evolve().
json picard_study(const RunConfig& cfg);

// Kernel norms, closed-form counting checks, Fourier profile.
json potential_info(const RunConfig& cfg);

// Structural identities: dyadic partition exactness, projection
// reconstruction, norm equivalence bounds, scaling ratios, kernel transform
// bounds, convolution inequalities, multiplier reality.
json invariant_checks(const RunConfig& cfg);

} // namespace hartree3d
