#include "hartree3d/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "hartree3d/errors.hpp"

namespace hartree3d {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

int to_int(const std::string& key, const std::string& v) {
    int out = 0;
    const char* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end) {
        throw ValidationError("config key '" + key + "': expected an integer, got '" + v + "'");
    }
    return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const char* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end) {
        throw ValidationError("config key '" + key + "': expected an unsigned integer, got '" +
                              v + "'");
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const char* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end) {
        throw ValidationError("config key '" + key + "': expected a number, got '" + v + "'");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ValidationError("config key '" + key + "': expected true/false, got '" + v + "'");
}

std::array<int, 3> to_triple(const std::string& key, const std::string& v) {
    const std::vector<int> parts = parse_int_list(v);
    if (parts.size() != 3) {
        throw ValidationError("config key '" + key + "': expected three comma-separated integers");
    }
    return {parts[0], parts[1], parts[2]};
}

void check_choice(const std::string& key, const std::string& v,
                  std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
        if (v == a) return;
    }
    std::string msg = "config key '" + key + "': '" + v + "' is not one of {";
    bool first = true;
    for (const char* a : allowed) {
        if (!first) msg += ", ";
        msg += a;
        first = false;
    }
    msg += "}";
    throw ValidationError(msg);
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

} // namespace

void validate_config(const RunConfig& c) {
    if (c.m < 4 || (c.m & (c.m - 1)) != 0) {
        throw ValidationError("config key 'm': grid size must be a power of two and at least 4");
    }
    if (c.p < 1) throw ValidationError("config key 'p': must be >= 1");
    if (c.p2 < 0) throw ValidationError("config key 'p2': must be >= 0");
    if (!(c.t_final > 0.0)) throw ValidationError("config key 't_final': must be positive");
    if (!(c.dt > 0.0)) throw ValidationError("config key 'dt': must be positive");
    check_choice("integrator", c.integrator, {"strang", "rk4"});
    if (c.snapshot_stride < 1) {
        throw ValidationError("config key 'snapshot_stride': must be >= 1");
    }
    check_choice("family", c.family, {"local", "v1", "v2"});
    check_choice("mollifier", c.mollifier, {"box", "smooth", "power", "coulomb", "delta"});
    if (c.n < 1) throw ValidationError("config key 'n': must be >= 1");
    if (c.mu != 1.0 && c.mu != -1.0) {
        throw ValidationError("config key 'mu': must be +1 or -1");
    }
    if (!(c.lambda > 0.0)) throw ValidationError("config key 'lambda': must be positive");
    check_choice("family2", c.family2, {"local", "v1", "v2"});
    check_choice("mollifier2", c.mollifier2, {"box", "smooth", "power", "coulomb", "delta"});
    if (c.n2 < 1) throw ValidationError("config key 'n2': must be >= 1");
    if (c.mu2 != 1.0 && c.mu2 != -1.0) {
        throw ValidationError("config key 'mu2': must be +1 or -1");
    }
    if (!(c.lambda2 > 0.0)) throw ValidationError("config key 'lambda2': must be positive");
    check_choice("initial", c.initial, {"plane", "two_mode", "random"});
    if (!(c.t_long > 0.0)) throw ValidationError("config key 't_long': must be positive");
    if (c.picard_iterations < 1) {
        throw ValidationError("config key 'picard_iterations': must be >= 1");
    }
    if (c.picard_quad_nodes < 1) {
        throw ValidationError("config key 'picard_quad_nodes': must be >= 1");
    }
    if (c.mode_cutoff < 0) throw ValidationError("config key 'mode_cutoff': must be >= 0");
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters;
    auto set_int = [&](int& field) {
        return [&field](const std::string& k, const std::string& v) { field = to_int(k, v); };
    };
    auto set_double = [&](double& field) {
        return [&field](const std::string& k, const std::string& v) { field = to_double(k, v); };
    };
    auto set_bool = [&](bool& field) {
        return [&field](const std::string& k, const std::string& v) { field = to_bool(k, v); };
    };
    auto set_string = [&](std::string& field) {
        return [&field](const std::string&, const std::string& v) { field = v; };
    };
    auto set_triple = [&](std::array<int, 3>& field) {
        return [&field](const std::string& k, const std::string& v) { field = to_triple(k, v); };
    };
    setters["m"] = set_int(cfg.m);
    setters["p"] = set_int(cfg.p);
    setters["p2"] = set_int(cfg.p2);
    setters["t_final"] = set_double(cfg.t_final);
    setters["dt"] = set_double(cfg.dt);
    setters["integrator"] = set_string(cfg.integrator);
    setters["snapshot_stride"] = set_int(cfg.snapshot_stride);
    setters["dealias"] = set_bool(cfg.dealias);
    setters["seed"] = [&cfg](const std::string& k, const std::string& v) {
        cfg.seed = to_u64(k, v);
    };
    setters["family"] = set_string(cfg.family);
    setters["mollifier"] = set_string(cfg.mollifier);
    setters["n"] = set_int(cfg.n);
    setters["mu"] = set_double(cfg.mu);
    setters["lambda"] = set_double(cfg.lambda);
    setters["normalize"] = set_bool(cfg.normalize);
    setters["family2"] = set_string(cfg.family2);
    setters["mollifier2"] = set_string(cfg.mollifier2);
    setters["n2"] = set_int(cfg.n2);
    setters["mu2"] = set_double(cfg.mu2);
    setters["lambda2"] = set_double(cfg.lambda2);
    setters["initial"] = set_string(cfg.initial);
    setters["amp1"] = set_double(cfg.amp1);
    setters["k1"] = set_triple(cfg.k1);
    setters["amp2"] = set_double(cfg.amp2);
    setters["k2"] = set_triple(cfg.k2);
    setters["n_values"] = set_string(cfg.n_values);
    setters["dt_values"] = set_string(cfg.dt_values);
    setters["t_long"] = set_double(cfg.t_long);
    setters["picard_iterations"] = set_int(cfg.picard_iterations);
    setters["picard_quad_nodes"] = set_int(cfg.picard_quad_nodes);
    setters["mode_cutoff"] = set_int(cfg.mode_cutoff);
    setters["snapshot_path"] = set_string(cfg.snapshot_path);

    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
        }
        auto it = setters.find(key);
        if (it == setters.end()) {
            throw ValidationError("config line " + std::to_string(lineno) + ": unknown key '" +
                                  key + "'");
        }
        if (!seen.insert(key).second) {
            throw ValidationError("config line " + std::to_string(lineno) + ": duplicate key '" +
                                  key + "'");
        }
        it->second(key, value);
    }
    validate_config(cfg);
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_string(const RunConfig& c) {
    std::ostringstream out;
    auto triple = [](const std::array<int, 3>& k) {
        return std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]);
    };
    out << "m = " << c.m << "\n";
    out << "p = " << c.p << "\n";
    out << "p2 = " << c.p2 << "\n";
    out << "t_final = " << format_double(c.t_final) << "\n";
    out << "dt = " << format_double(c.dt) << "\n";
    out << "integrator = " << c.integrator << "\n";
    out << "snapshot_stride = " << c.snapshot_stride << "\n";
    out << "dealias = " << (c.dealias ? "true" : "false") << "\n";
    out << "seed = " << c.seed << "\n";
    out << "family = " << c.family << "\n";
    out << "mollifier = " << c.mollifier << "\n";
    out << "n = " << c.n << "\n";
    out << "mu = " << format_double(c.mu) << "\n";
    out << "lambda = " << format_double(c.lambda) << "\n";
    out << "normalize = " << (c.normalize ? "true" : "false") << "\n";
    out << "family2 = " << c.family2 << "\n";
    out << "mollifier2 = " << c.mollifier2 << "\n";
    out << "n2 = " << c.n2 << "\n";
    out << "mu2 = " << format_double(c.mu2) << "\n";
    out << "lambda2 = " << format_double(c.lambda2) << "\n";
    out << "initial = " << c.initial << "\n";
    out << "amp1 = " << format_double(c.amp1) << "\n";
    out << "k1 = " << triple(c.k1) << "\n";
    out << "amp2 = " << format_double(c.amp2) << "\n";
    out << "k2 = " << triple(c.k2) << "\n";
    out << "n_values = " << c.n_values << "\n";
    out << "dt_values = " << c.dt_values << "\n";
    out << "t_long = " << format_double(c.t_long) << "\n";
    out << "picard_iterations = " << c.picard_iterations << "\n";
    out << "picard_quad_nodes = " << c.picard_quad_nodes << "\n";
    out << "mode_cutoff = " << c.mode_cutoff << "\n";
    out << "snapshot_path = " << c.snapshot_path << "\n";
    return out.str();
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ValidationError("empty entry in list '" + text + "'");
        out.push_back(to_int("list entry", item));
    }
    if (out.empty()) throw ValidationError("expected a non-empty comma-separated list");
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ValidationError("empty entry in list '" + text + "'");
        out.push_back(to_double("list entry", item));
    }
    if (out.empty()) throw ValidationError("expected a non-empty comma-separated list");
    return out;
}

} // namespace hartree3d
