#pragma once

#include <string>
#include <vector>

#include "hartree3d/field.hpp"
#include "hartree3d/nonlinear.hpp"
#include "hartree3d/observables.hpp"

namespace hartree3d {

// One Strang step for i u_t = -Lap u + N[u] u:
//   half free flow, full nonlinear phase rotation with N frozen at the
//   substep entry (exact for that substep since the phase rotation preserves
//   |u|, hence N), half free flow.
// Preserves mass exactly up to round-off when dealias is off.
Field strang_step(const Field& u, double dt, const std::vector<NonlinearEvaluator>& evs,
                  bool dealias);

// Classical four-stage Runge-Kutta in the interaction frame v = e^{-it Lap} u
// (the linear flow is integrated exactly; only the nonlinear part is stepped).
Field rk4_step(const Field& u, double dt, const std::vector<NonlinearEvaluator>& evs,
               bool dealias);

struct EvolveOptions {
    double t_final = 1.0;
    double dt = 1e-3;
    int snapshot_stride = 100; // record every this many steps (plus step 0 and the last)
    bool dealias = true;
    std::string integrator = "strang"; // strang | rk4
    bool keep_snapshots = false;       // also store the state at each record
    double sc = 1.0;                   // Sobolev index for the hsc column
};

struct EvolveResult {
    std::vector<ObservableRecord> records;
    std::vector<std::size_t> record_steps;
    std::vector<Field> snapshots;
    Field final_state;
    double t_final_effective = 0.0;
    std::size_t steps = 0;
};

// Fixed-step evolution over round(t_final / dt) steps (the effective final
// time n dt is reported). Throws NumericalError if the L2 norm becomes
// non-finite or grows by more than a factor of 10 in a single step.
EvolveResult evolve(const Field& u0, const std::vector<NonlinearEvaluator>& evs,
                    const EvolveOptions& opt);

// Iteration of the Duhamel map, tracked in first-difference form:
//   u^0(t) = e^{it Lap} u0
//   w^{m+1}(t) = -i int_0^t e^{i(t-s) Lap} [ N[u^m] u^m - N[u^{m-1}] u^{m-1} ](s) ds
//   u^{m+1} = u^m + w^{m+1}
// The integrand difference comes from apply_difference, so small increments
// are computed without catastrophic cancellation. Time integrals use the
// composite trapezoid rule on quad_nodes equal intervals, accumulated
// recursively so node i reuses the propagated partial sum at node i-1.
struct PicardResult {
    std::vector<double> increment_norms; // sup over nodes of ||w^m||_{H^s}
    std::vector<double> ratios;          // consecutive increment ratios
    Field final_state;                   // u^{(K)} at t_final
    double t_final = 0.0;
    bool diverged = false; // a ratio exceeded 10; iteration stopped early
};
PicardResult picard_iterate(const Field& u0, const std::vector<NonlinearEvaluator>& evs,
                            double t_final, int iterations, int quad_nodes, double s,
                            bool dealias);

} // namespace hartree3d
