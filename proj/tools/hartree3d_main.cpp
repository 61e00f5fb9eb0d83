#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hartree3d/config.hpp"
#include "hartree3d/errors.hpp"
#include "hartree3d/experiments.hpp"
#include "hartree3d/grid.hpp"
#include "hartree3d/io.hpp"
#include "hartree3d/kernels.hpp"
#include "hartree3d/version.hpp"

namespace fs = std::filesystem;
using hartree3d::json;
using hartree3d::RunConfig;

namespace {

// Per-subcommand option set. A configuration file (when given) is loaded
// first; any option passed explicitly on the command line overrides that key.
struct Cli {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 0;
    RunConfig cfg; // staging area for command-line overrides
    CLI::App* cmd = nullptr;

    void attach(CLI::App* c) {
        cmd = c;
        c->add_option("--config", config_path, "key = value configuration file");
        c->add_option("--out-dir", out_dir, "directory for reports (created if missing)");
        c->add_option("--threads", threads,
                      "worker thread budget (default: HARTREE3D_THREADS, else all cores)");
        c->add_option("--m", cfg.m, "grid points per dimension (power of two, >= 4)");
        c->add_option("--p", cfg.p, "nonlinearity order parameter (degree 2p+1)");
        c->add_option("--p2", cfg.p2, "second term order (0 disables the second term)");
        c->add_option("--t-final,--t_final", cfg.t_final, "integration time");
        c->add_option("--dt", cfg.dt, "time step");
        c->add_option("--integrator", cfg.integrator, "strang | rk4");
        c->add_option("--snapshot-stride,--snapshot_stride", cfg.snapshot_stride,
                      "record observables every this many steps");
        c->add_flag("--dealias,!--no-dealias", cfg.dealias,
                    "2/3-rule masking of nonlinear products");
        c->add_option("--seed", cfg.seed, "random seed");
        c->add_option("--family", cfg.family, "interaction family: local | v1 | v2");
        c->add_option("--mollifier", cfg.mollifier,
                      "kernel kind: box | smooth | power | coulomb | delta");
        c->add_option("--n", cfg.n, "kernel resolution (support half-width pi/n)");
        c->add_option("--mu", cfg.mu, "coupling sign (+1 | -1)");
        c->add_option("--lambda", cfg.lambda, "coupling strength (> 0)");
        c->add_flag("--normalize,!--no-normalize", cfg.normalize,
                    "scale kernels to unit L1 norm");
        c->add_option("--family2", cfg.family2, "second term family");
        c->add_option("--mollifier2", cfg.mollifier2, "second term kernel kind");
        c->add_option("--n2", cfg.n2, "second term kernel resolution");
        c->add_option("--mu2", cfg.mu2, "second term coupling sign");
        c->add_option("--lambda2", cfg.lambda2, "second term coupling strength");
        c->add_option("--initial", cfg.initial, "initial data: plane | two_mode | random");
        c->add_option("--amp1", cfg.amp1, "first mode amplitude");
        c->add_option("--k1", cfg.k1, "first mode wavenumber (three integers)");
        c->add_option("--amp2", cfg.amp2, "second mode amplitude");
        c->add_option("--k2", cfg.k2, "second mode wavenumber (three integers)");
        c->add_option("--n-values,--n_values", cfg.n_values,
                      "comma-separated kernel resolutions for sweeps");
        c->add_option("--dt-values,--dt_values", cfg.dt_values,
                      "comma-separated time steps for the order study");
        c->add_option("--t-long,--t_long", cfg.t_long, "long-run integration time");
        c->add_option("--picard-iterations,--picard_iterations", cfg.picard_iterations,
                      "Duhamel iterations");
        c->add_option("--picard-quad-nodes,--picard_quad_nodes", cfg.picard_quad_nodes,
                      "trapezoid intervals per Duhamel integral");
        c->add_option("--mode-cutoff,--mode_cutoff", cfg.mode_cutoff,
                      "full-product mode sum cutoff (0 keeps every mode)");
        c->add_option("--snapshot-path,--snapshot_path", cfg.snapshot_path,
                      "state container file name (enables snapshot output)");
    }

    RunConfig resolve() const {
        RunConfig merged;
        if (!config_path.empty()) merged = hartree3d::parse_config_file(config_path);
        auto passed = [&](const std::string& name) { return cmd->count(name) > 0; };
        if (passed("--m")) merged.m = cfg.m;
        if (passed("--p")) merged.p = cfg.p;
        if (passed("--p2")) merged.p2 = cfg.p2;
        if (passed("--t-final")) merged.t_final = cfg.t_final;
        if (passed("--dt")) merged.dt = cfg.dt;
        if (passed("--integrator")) merged.integrator = cfg.integrator;
        if (passed("--snapshot-stride")) merged.snapshot_stride = cfg.snapshot_stride;
        if (passed("--dealias")) merged.dealias = cfg.dealias;
        if (passed("--seed")) merged.seed = cfg.seed;
        if (passed("--family")) merged.family = cfg.family;
        if (passed("--mollifier")) merged.mollifier = cfg.mollifier;
        if (passed("--n")) merged.n = cfg.n;
        if (passed("--mu")) merged.mu = cfg.mu;
        if (passed("--lambda")) merged.lambda = cfg.lambda;
        if (passed("--normalize")) merged.normalize = cfg.normalize;
        if (passed("--family2")) merged.family2 = cfg.family2;
        if (passed("--mollifier2")) merged.mollifier2 = cfg.mollifier2;
        if (passed("--n2")) merged.n2 = cfg.n2;
        if (passed("--mu2")) merged.mu2 = cfg.mu2;
        if (passed("--lambda2")) merged.lambda2 = cfg.lambda2;
        if (passed("--initial")) merged.initial = cfg.initial;
        if (passed("--amp1")) merged.amp1 = cfg.amp1;
        if (passed("--k1")) merged.k1 = cfg.k1;
        if (passed("--amp2")) merged.amp2 = cfg.amp2;
        if (passed("--k2")) merged.k2 = cfg.k2;
        if (passed("--n-values")) merged.n_values = cfg.n_values;
        if (passed("--dt-values")) merged.dt_values = cfg.dt_values;
        if (passed("--t-long")) merged.t_long = cfg.t_long;
        if (passed("--picard-iterations")) merged.picard_iterations = cfg.picard_iterations;
        if (passed("--picard-quad-nodes")) merged.picard_quad_nodes = cfg.picard_quad_nodes;
        if (passed("--mode-cutoff")) merged.mode_cutoff = cfg.mode_cutoff;
        if (passed("--snapshot-path")) merged.snapshot_path = cfg.snapshot_path;
        hartree3d::validate_config(merged);
        return merged;
    }

    void apply_threads() const {
        int t = threads;
        if (cmd->count("--threads") == 0) {
            if (const char* env = std::getenv("HARTREE3D_THREADS")) {
                t = std::atoi(env);
                if (t < 1) {
                    throw hartree3d::ValidationError(
                        "HARTREE3D_THREADS must be a positive integer");
                }
            }
        }
        if (t > 0) hartree3d::kernels::set_thread_budget(t);
    }
};

void run_study(const Cli& c, const std::string& name, json (*fn)(const RunConfig&),
               const std::function<void(const json&)>& summarize) {
    const RunConfig cfg = c.resolve();
    c.apply_threads();
    const json report = fn(cfg);
    fs::create_directories(c.out_dir);
    const fs::path path = fs::path(c.out_dir) / (name + ".json");
    hartree3d::io::write_json_report(path.string(), report);
    if (summarize) summarize(report);
    std::cout << "wrote " << path.string() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral integrator for Schrodinger equations with local, "
                 "pairwise-sum, and full-product nonlinearities on the 3-torus"};
    app.set_version_flag("--version", std::string(hartree3d::kVersion));
    app.require_subcommand(1);

    int exit_code = 0;

    Cli sim;
    CLI::App* c_sim = app.add_subcommand(
        "simulate", "run one evolution; writes simulate.json and observables.csv");
    sim.attach(c_sim);
    c_sim->callback([&] {
        const RunConfig cfg = sim.resolve();
        sim.apply_threads();
        hartree3d::SimulationOutput out = hartree3d::run_simulation(cfg);
        fs::create_directories(sim.out_dir);
        const fs::path dir(sim.out_dir);
        hartree3d::io::write_json_report((dir / "simulate.json").string(), out.report);
        hartree3d::io::write_observables_csv((dir / "observables.csv").string(), out.records);
        if (!cfg.snapshot_path.empty()) {
            fs::path sp(cfg.snapshot_path);
            if (sp.is_relative()) sp = dir / sp;
            hartree3d::io::write_snapshots(sp.string(), hartree3d::Grid(cfg.m), out.snapshots);
            std::cout << "wrote " << sp.string() << "\n";
        }
        std::cout << "simulate: steps=" << out.report["steps"]
                  << " mass_drift=" << out.report["mass_drift_max"]
                  << " energy_drift=" << out.report["energy_drift_max"] << "\n";
        std::cout << "wrote " << (dir / "simulate.json").string() << "\n";
        std::cout << "wrote " << (dir / "observables.csv").string() << "\n";
    });

    Cli conv;
    CLI::App* c_conv = app.add_subcommand(
        "converge", "kernel-resolution sweep against the pointwise-limit reference");
    conv.attach(c_conv);
    c_conv->callback([&] {
        run_study(conv, "converge", hartree3d::convergence_study, [](const json& r) {
            for (const json& row : r.at("rows")) {
                std::cout << "kernel=" << row.at("kernel").get<std::string>();
                if (row.contains("n")) std::cout << " n=" << row.at("n");
                std::cout << " distance=" << row.at("distance_sup_hsc") << "\n";
            }
            std::cout << "monotone_within_slack=" << r.at("monotone_within_slack") << "\n";
        });
    });

    Cli mixed;
    CLI::App* c_mixed = app.add_subcommand(
        "mixed-converge", "joint kernel-resolution sweep for the two-term nonlinearity");
    mixed.attach(c_mixed);
    c_mixed->callback([&] {
        run_study(mixed, "mixed-converge", hartree3d::mixed_convergence_study,
                  [](const json& r) {
                      for (const json& row : r.at("rows")) {
                          std::cout << "kernel=" << row.at("kernel").get<std::string>();
                          if (row.contains("n")) std::cout << " n=" << row.at("n");
                          std::cout << " distance=" << row.at("distance_sup_hsc") << "\n";
                      }
                      std::cout << "monotone_within_slack=" << r.at("monotone_within_slack")
                                << "\n";
                  });
    });

    Cli gwp;
    CLI::App* c_gwp = app.add_subcommand(
        "gwp", "long-time H1 bound check for the cubic/quintic pairwise pair");
    gwp.attach(c_gwp);
    c_gwp->callback([&] {
        run_study(gwp, "gwp", hartree3d::gwp_longtime_study, [](const json& r) {
            std::cout << "h1_bound=" << r.at("h1_bound") << " min_margin=" << r.at("min_margin")
                      << " all_bounded=" << r.at("all_bounded") << "\n";
        });
    });

    Cli ord;
    CLI::App* c_ord =
        app.add_subcommand("order", "time-step refinement study of the integrator");
    ord.attach(c_ord);
    c_ord->callback([&] {
        run_study(ord, "order", hartree3d::order_study, [](const json& r) {
            std::cout << "route=" << r.at("route").get<std::string>();
            if (r.contains("slope")) std::cout << " slope=" << r.at("slope");
            std::cout << " fit_points=" << r.at("fit_points") << "\n";
        });
    });

    Cli pic;
    CLI::App* c_pic = app.add_subcommand(
        "picard", "Duhamel iteration diagnostics compared against the integrator");
    pic.attach(c_pic);
    c_pic->callback([&] {
        run_study(pic, "picard", hartree3d::picard_study, [](const json& r) {
            std::cout << "ratios=" << r.at("ratios") << "\n";
            std::cout << "contracting=" << r.at("contracting")
                      << " distance_h1=" << r.at("distance_h1") << "\n";
        });
    });

    Cli pot;
    CLI::App* c_pot = app.add_subcommand(
        "potential-info", "kernel norms, counting checks, and transform profile");
    pot.attach(c_pot);
    c_pot->callback([&] {
        run_study(pot, "potential-info", hartree3d::potential_info,
                  [](const json& r) { std::cout << r.dump(2) << "\n"; });
    });

    Cli inv;
    CLI::App* c_inv =
        app.add_subcommand("check-invariants", "structural identity checks for this grid");
    inv.attach(c_inv);
    c_inv->callback([&] {
        run_study(inv, "check-invariants", hartree3d::invariant_checks, [&](const json& r) {
            if (r.at("all_hold").get<bool>()) {
                std::cout << "all invariants hold\n";
            } else {
                std::cout << "invariant violations detected:\n";
                for (const auto& [key, val] : r.at("checks").items()) {
                    if (!val.at("pass").get<bool>()) {
                        std::cout << "  " << key << " value=" << val.at("value") << "\n";
                    }
                }
                exit_code = 2;
            }
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const hartree3d::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const hartree3d::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const hartree3d::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
