#include "hartree3d/interactions.hpp"

#include <algorithm>
#include <cmath>

#include "hartree3d/errors.hpp"
#include "hartree3d/field.hpp"
#include "hartree3d/spectral.hpp"

namespace hartree3d {

namespace {

constexpr std::uint64_t kDefaultMcSeed = 0x9e3779b97f4a7c15ull;
constexpr std::size_t kDefaultMcSamples = 1000000;

double omega_at(const Grid& grid, const Mollifier& omega, int ax, int ay, int az) {
    return omega.values[grid.index(grid.wrap(ax), grid.wrap(ay), grid.wrap(az))];
}

double min_value(const Mollifier& omega) {
    double lo = 0.0;
    for (double v : omega.values) lo = std::min(lo, v);
    return lo;
}

L1Result monte_carlo_impl(const Grid& grid, const InteractionSpec& spec,
                          std::size_t samples, std::uint64_t seed) {
    if (samples < 2) throw ValidationError("l1_norm_monte_carlo: need at least 2 samples");
    Rng rng(seed);
    const int m = grid.m();
    std::vector<std::array<int, 3>> y(static_cast<std::size_t>(spec.p));
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& point : y) {
            point[0] = static_cast<int>(rng.index(static_cast<std::uint64_t>(m)));
            point[1] = static_cast<int>(rng.index(static_cast<std::uint64_t>(m)));
            point[2] = static_cast<int>(rng.index(static_cast<std::uint64_t>(m)));
        }
        const double f = std::abs(kernel_value(grid, spec, y));
        sum += f;
        sum_sq += f * f;
    }
    const double nd = static_cast<double>(samples);
    const double mean = sum / nd;
    const double var = std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0));
    const double volume = std::pow(kTwoPi, 3.0 * spec.p);
    L1Result out;
    out.value = std::abs(spec.prefactor) * volume * mean;
    out.standard_error = std::abs(spec.prefactor) * volume * std::sqrt(var / nd);
    out.method = "monte_carlo";
    return out;
}

} // namespace

std::string family_name(Family family) {
    switch (family) {
        case Family::Local: return "local";
        case Family::PairwiseSum: return "v1";
        case Family::FullProduct: return "v2";
    }
    throw ValidationError("family_name: unknown family");
}

double coupling(const InteractionSpec& spec) {
    return spec.mu * spec.lambda * spec.prefactor;
}

double kernel_value(const Grid& grid, const InteractionSpec& spec,
                    const std::vector<std::array<int, 3>>& y) {
    const int p = spec.p;
    if (static_cast<int>(y.size()) != p) {
        throw ValidationError("kernel_value: expected p offsets");
    }
    if (spec.family == Family::Local) {
        double value = spec.prefactor;
        for (const auto& point : y) {
            const bool at_origin = grid.wrap(point[0]) == 0 && grid.wrap(point[1]) == 0 &&
                                   grid.wrap(point[2]) == 0;
            if (!at_origin) return 0.0;
            value /= grid.cell_volume();
        }
        return value;
    }
    const Mollifier& w = spec.omega;
    if (spec.family == Family::PairwiseSum) {
        // i = 0 term: prod_j omega(y_j); i >= 1 term with x_i = -y_i:
        // omega(-y_i) prod_{j != i} omega(y_j - y_i).
        double total = 1.0;
        for (int j = 0; j < p; ++j) {
            total *= omega_at(grid, w, y[j][0], y[j][1], y[j][2]);
        }
        for (int i = 0; i < p; ++i) {
            double term = omega_at(grid, w, -y[i][0], -y[i][1], -y[i][2]);
            for (int j = 0; j < p && term != 0.0; ++j) {
                if (j == i) continue;
                term *= omega_at(grid, w, y[j][0] - y[i][0], y[j][1] - y[i][1],
                                 y[j][2] - y[i][2]);
            }
            total += term;
        }
        return spec.prefactor * total / (p + 1.0);
    }
    // FullProduct: pairs (0, j) give omega(y_j), pairs (i, j) give
    // omega(y_j - y_i) for 1 <= i < j <= p.
    double total = 1.0;
    for (int j = 0; j < p && total != 0.0; ++j) {
        total *= omega_at(grid, w, y[j][0], y[j][1], y[j][2]);
    }
    for (int i = 0; i < p && total != 0.0; ++i) {
        for (int j = i + 1; j < p && total != 0.0; ++j) {
            total *= omega_at(grid, w, y[j][0] - y[i][0], y[j][1] - y[i][1],
                              y[j][2] - y[i][2]);
        }
    }
    return spec.prefactor * total;
}

L1Result l1_norm(const Grid& grid, const InteractionSpec& spec) {
    if (spec.p < 1) throw ValidationError("l1_norm: p must be >= 1");
    L1Result out;
    if (spec.family == Family::Local) {
        out.value = std::abs(spec.prefactor);
        out.method = "delta_convention";
        return out;
    }
    if (spec.omega.values.size() != grid.size()) {
        throw ValidationError("l1_norm: mollifier does not match the grid size");
    }
    const MollifierStats stats = mollifier_stats(grid, spec.omega);
    if (spec.family == Family::PairwiseSum) {
        if (min_value(spec.omega) >= 0.0) {
            // Each of the p+1 summands integrates to (h^3 sum omega)^p by an
            // exact lattice change of variables, and no cancellation occurs.
            out.value = std::abs(spec.prefactor) * std::pow(stats.l1, spec.p);
            out.method = "separable_exact";
            return out;
        }
        return monte_carlo_impl(grid, spec, kDefaultMcSamples, kDefaultMcSeed);
    }
    if (spec.p == 1) {
        out.value = std::abs(spec.prefactor) * stats.l1;
        out.method = "separable_exact";
        return out;
    }
    if (spec.p == 2) {
        // h^6 sum_{a,b} |w(a)| |w(b)| |w(a-b)| = h^3 sum_a |w(a)| (|w|*|w|)(a)
        std::vector<cplx> abs_w(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            abs_w[i] = std::abs(spec.omega.values[i]);
        }
        const Field wf = Field::from_physical(grid, std::move(abs_w));
        const Field conv = convolve(wf, wf);
        double sum = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            sum += std::abs(spec.omega.values[i]) * conv.phys()[i].real();
        }
        out.value = std::abs(spec.prefactor) * grid.cell_volume() * sum;
        out.method = "convolution_exact";
        return out;
    }
    return monte_carlo_impl(grid, spec, kDefaultMcSamples, kDefaultMcSeed);
}

L1Result l1_norm_monte_carlo(const Grid& grid, const InteractionSpec& spec,
                             std::size_t samples, std::uint64_t seed) {
    if (spec.family == Family::Local) {
        throw ValidationError("l1_norm_monte_carlo: local family has no lattice kernel to sample");
    }
    return monte_carlo_impl(grid, spec, samples, seed);
}

double normalize_to_unit_l1(const Grid& grid, InteractionSpec& spec) {
    const L1Result measured = l1_norm(grid, spec);
    if (!(measured.value > 0.0)) {
        throw ValidationError("normalize_to_unit_l1: kernel has zero L1 norm");
    }
    spec.prefactor /= measured.value;
    return measured.value;
}

int box_support_count_1d(int m, int n) {
    const int j = m / (2 * n);
    return std::min(2 * j + 1, m);
}

long long box_pair_count_1d(int m, int n) {
    const long long j = m / (2 * n);
    if (2 * j + 1 >= m) return static_cast<long long>(m) * m;
    return 3 * j * j + 3 * j + 1;
}

double v1_box_l1_formula(int m, int n, int p) {
    const double per_dim = static_cast<double>(n) *
                           static_cast<double>(box_support_count_1d(m, n)) / m;
    return std::pow(per_dim, 3.0 * p);
}

double v2_box_l1_formula(int m, int n) {
    const double pairs = static_cast<double>(box_pair_count_1d(m, n));
    const double factor = std::pow(static_cast<double>(n), 9.0) /
                          (std::pow(kTwoPi, 3.0) * std::pow(static_cast<double>(m), 6.0));
    return factor * pairs * pairs * pairs;
}

double v2_power_l1_formula(int m, int n, int p) {
    if (p != 2) {
        throw ValidationError("v2_power_l1_formula: closed form is specific to p = 2");
    }
    const double pairs = static_cast<double>(box_pair_count_1d(m, n));
    return std::pow(static_cast<double>(n) / m, 6.0) * pairs * pairs * pairs;
}

} // namespace hartree3d
