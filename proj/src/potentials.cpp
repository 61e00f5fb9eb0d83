#include "hartree3d/potentials.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "hartree3d/errors.hpp"
#include "hartree3d/fft.hpp"

namespace hartree3d {

namespace {

void require_resolved(const Grid& grid, int n, const char* what) {
    if (n < 1) throw ValidationError(std::string(what) + ": n must be >= 1");
    if (2 * n > grid.m()) {
        throw ValidationError(std::string(what) +
                              ": unresolved kernel, need 2 n <= m so the cube spans a grid cell");
    }
}

// Closed-cube membership per dimension via integers: |x_j| <= pi/n on the
// lattice is |j| * 2n <= m for the centered index j, with no rounding ties.
bool in_box_1d(int centered, int n, int m) {
    return 2 * n * std::abs(centered) <= m;
}

// Nodes and weights of the n-point Gauss-Legendre rule on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const double pi = kTwoPi / 2.0;
    for (int i = 0; i < n; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = t;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = 0.5 * (1.0 + t);
        w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
}

// K = (3/2) int_0^1 int_0^1 (1 + s^2 + t^2)^{-1/2} ds dt, the Duffy form of
// the corner integral int_{[0,1]^3} dx / |x|. The average of 1/|x| over the
// grid cell centered at the origin is then 2 K / h.
double duffy_corner_constant() {
    static const double value = [] {
        std::vector<double> x;
        std::vector<double> w;
        gauss_legendre_01(32, x, w);
        double sum = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) {
            for (std::size_t b = 0; b < x.size(); ++b) {
                sum += w[a] * w[b] / std::sqrt(1.0 + x[a] * x[a] + x[b] * x[b]);
            }
        }
        return 1.5 * sum;
    }();
    return value;
}

std::vector<std::complex<double>> spectral_of(const Grid& grid, const Mollifier& omega) {
    if (omega.values.size() != grid.size()) {
        throw ValidationError("mollifier does not match the grid size");
    }
    std::vector<std::complex<double>> spec(grid.size());
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] = omega.values[i];
    to_spectral(grid, spec.data(), spec.data());
    return spec;
}

} // namespace

Mollifier box_mollifier(const Grid& grid, int n) {
    require_resolved(grid, n, "box_mollifier");
    const int m = grid.m();
    const double value = std::pow(static_cast<double>(n) / kTwoPi, 3.0);
    Mollifier omega{"box", n, std::vector<double>(grid.size(), 0.0)};
    for (int iz = 0; iz < m; ++iz) {
        for (int iy = 0; iy < m; ++iy) {
            for (int ix = 0; ix < m; ++ix) {
                if (in_box_1d(grid.wavenumber(ix), n, m) &&
                    in_box_1d(grid.wavenumber(iy), n, m) &&
                    in_box_1d(grid.wavenumber(iz), n, m)) {
                    omega.values[grid.index(ix, iy, iz)] = value;
                }
            }
        }
    }
    return omega;
}

Mollifier smooth_mollifier(const Grid& grid, int n) {
    require_resolved(grid, n, "smooth_mollifier");
    const int m = grid.m();
    const double pi = kTwoPi / 2.0;
    const double nn = static_cast<double>(n);
    auto psi = [](double t) {
        if (std::abs(t) >= 1.0) return 0.0;
        const double s = 1.0 - t * t;
        return (35.0 / 32.0) * s * s * s;
    };
    std::vector<double> axis(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        axis[static_cast<std::size_t>(i)] = (nn / pi) * psi(nn * grid.coord_centered(i) / pi);
    }
    Mollifier omega{"smooth", n, std::vector<double>(grid.size())};
    for (int iz = 0; iz < m; ++iz) {
        for (int iy = 0; iy < m; ++iy) {
            for (int ix = 0; ix < m; ++ix) {
                omega.values[grid.index(ix, iy, iz)] = axis[ix] * axis[iy] * axis[iz];
            }
        }
    }
    return omega;
}

Mollifier power_mollifier(const Grid& grid, int n, int p) {
    require_resolved(grid, n, "power_mollifier");
    if (p < 1) throw ValidationError("power_mollifier: p must be >= 1");
    Mollifier omega = box_mollifier(grid, n);
    omega.kind = "power";
    const double value = std::pow(static_cast<double>(n) / kTwoPi, 6.0 / (p + 1.0));
    for (double& v : omega.values) {
        if (v != 0.0) v = value;
    }
    return omega;
}

Mollifier coulomb_potential(const Grid& grid) {
    const int m = grid.m();
    Mollifier omega{"coulomb", 0, std::vector<double>(grid.size())};
    for (int iz = 0; iz < m; ++iz) {
        for (int iy = 0; iy < m; ++iy) {
            for (int ix = 0; ix < m; ++ix) {
                const double x = grid.coord_centered(ix);
                const double y = grid.coord_centered(iy);
                const double z = grid.coord_centered(iz);
                const double r = std::sqrt(x * x + y * y + z * z);
                omega.values[grid.index(ix, iy, iz)] =
                    (r == 0.0) ? 2.0 * duffy_corner_constant() / grid.h() : 1.0 / r;
            }
        }
    }
    return omega;
}

Mollifier discrete_delta(const Grid& grid) {
    Mollifier omega{"delta", 0, std::vector<double>(grid.size(), 0.0)};
    omega.values[grid.index(0, 0, 0)] = 1.0 / grid.cell_volume();
    return omega;
}

MollifierStats mollifier_stats(const Grid& grid, const Mollifier& omega) {
    if (omega.values.size() != grid.size()) {
        throw ValidationError("mollifier_stats: mollifier does not match the grid size");
    }
    MollifierStats stats;
    double sum_abs = 0.0;
    double sum = 0.0;
    for (double v : omega.values) {
        if (v != 0.0) ++stats.support_count;
        if (std::abs(v) > stats.max_value) stats.max_value = std::abs(v);
        sum_abs += std::abs(v);
        sum += v;
    }
    stats.l1 = grid.cell_volume() * sum_abs;
    stats.integral = grid.cell_volume() * sum;
    return stats;
}

std::vector<double> fourier_axis_profile(const Grid& grid, const Mollifier& omega) {
    const std::vector<std::complex<double>> spec = spectral_of(grid, omega);
    const double c0 = spec[grid.index(0, 0, 0)].real();
    if (c0 == 0.0) throw ValidationError("fourier_axis_profile: kernel has zero mean");
    std::vector<double> profile(static_cast<std::size_t>(grid.m() / 2 + 1));
    for (int k = 0; k <= grid.m() / 2; ++k) {
        profile[static_cast<std::size_t>(k)] =
            spec[grid.index(grid.mode_index(k), 0, 0)].real() / c0;
    }
    return profile;
}

double hausdorff_young_margin(const Grid& grid, const Mollifier& omega) {
    const std::vector<std::complex<double>> spec = spectral_of(grid, omega);
    const double c0 = spec[grid.index(0, 0, 0)].real();
    double max_abs = 0.0;
    for (const std::complex<double>& c : spec) {
        max_abs = std::max(max_abs, std::abs(c));
    }
    return max_abs - c0;
}

FourierGap box_fourier_gap(const Grid& grid, int n, int k) {
    require_resolved(grid, n, "box_fourier_gap");
    const int m = grid.m();
    double sum = 0.0;
    long long count = 0;
    for (int i = 0; i < m; ++i) {
        const int j = grid.wavenumber(i);
        if (in_box_1d(j, n, m)) {
            sum += std::cos(k * j * grid.h());
            ++count;
        }
    }
    FourierGap out;
    out.discrete = sum / static_cast<double>(count);
    if (k == 0) {
        out.continuum = 1.0;
    } else {
        const double arg = k * (kTwoPi / 2.0) / n;
        out.continuum = std::sin(arg) / arg;
    }
    out.gap = std::abs(out.discrete - out.continuum);
    return out;
}

} // namespace hartree3d
