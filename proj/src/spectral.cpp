#include "hartree3d/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "hartree3d/errors.hpp"
#include "hartree3d/kernels.hpp"

namespace hartree3d {

namespace {

std::mutex g_symbol_mutex;
std::map<int, std::vector<double>> g_symbol_cache;

double spectral_weighted_sum(const Field& u, double s, bool homogeneous) {
    const Grid& grid = u.grid();
    const int m = grid.m();
    const std::vector<cplx>& spec = u.spec();
    double total = 0.0;
    for (int iz = 0; iz < m; ++iz) {
        for (int iy = 0; iy < m; ++iy) {
            for (int ix = 0; ix < m; ++ix) {
                const double kx = grid.wavenumber(ix);
                const double ky = grid.wavenumber(iy);
                const double kz = grid.wavenumber(iz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (homogeneous && k2 == 0.0) continue;
                const double base = homogeneous ? k2 : 1.0 + k2;
                const cplx c = spec[grid.index(ix, iy, iz)];
                total += std::pow(base, s) * std::norm(c);
            }
        }
    }
    return total;
}

} // namespace

const std::vector<double>& laplacian_symbol(const Grid& grid) {
    std::lock_guard<std::mutex> lock(g_symbol_mutex);
    auto it = g_symbol_cache.find(grid.m());
    if (it != g_symbol_cache.end()) return it->second;
    const int m = grid.m();
    std::vector<double> sym(grid.size());
    for (int iz = 0; iz < m; ++iz) {
        for (int iy = 0; iy < m; ++iy) {
            for (int ix = 0; ix < m; ++ix) {
                const double kx = grid.wavenumber(ix);
                const double ky = grid.wavenumber(iy);
                const double kz = grid.wavenumber(iz);
                sym[grid.index(ix, iy, iz)] = kx * kx + ky * ky + kz * kz;
            }
        }
    }
    return g_symbol_cache.emplace(m, std::move(sym)).first->second;
}

double l2_norm(const Field& u) {
    const double sum = kernels::sum_abs2(u.phys().data(), u.phys().size());
    return std::sqrt(u.grid().cell_volume() * sum);
}

double sobolev_norm(const Field& u, double s) {
    return std::sqrt(spectral_weighted_sum(u, s, false));
}

double homogeneous_sobolev_norm(const Field& u, double s) {
    return std::sqrt(spectral_weighted_sum(u, s, true));
}

double linf_norm(const Field& u) {
    return kernels::max_abs(u.phys().data(), u.phys().size());
}

double critical_exponent(int p) {
    if (p < 1) throw ValidationError("critical_exponent: p must be >= 1");
    return 1.5 - 1.0 / static_cast<double>(p);
}

double scaling_ratio(const Field& u, int p, double lambda, double s) {
    if (p < 1) throw ValidationError("scaling_ratio: p must be >= 1");
    if (!(lambda > 0.0)) throw ValidationError("scaling_ratio: lambda must be positive");
    const Grid& grid = u.grid();
    const int m = grid.m();
    const std::vector<cplx>& spec = u.spec();
    const double amp2 = std::pow(lambda, 2.0 * (3.0 - 1.0 / static_cast<double>(p)));
    double a = 0.0;
    double b = 0.0;
    for (int iz = 0; iz < m; ++iz) {
        for (int iy = 0; iy < m; ++iy) {
            for (int ix = 0; ix < m; ++ix) {
                const double kx = grid.wavenumber(ix);
                const double ky = grid.wavenumber(iy);
                const double kz = grid.wavenumber(iz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;
                const double w = std::norm(spec[grid.index(ix, iy, iz)]);
                const double kn = std::sqrt(k2);
                a += std::pow(kn, 2.0 * s) * w;
                b += std::pow(lambda, -3.0) * std::pow(kn / lambda, 2.0 * s) * amp2 * w;
            }
        }
    }
    if (a == 0.0) throw ValidationError("scaling_ratio: field has no nonzero frequency content");
    return b / a;
}

double scaling_ratio(const Field& u, int p, double lambda) {
    return scaling_ratio(u, p, lambda, critical_exponent(p));
}

Field free_propagate(const Field& u, double t) {
    Field v = u;
    free_propagate_inplace(v, t);
    return v;
}

void free_propagate_inplace(Field& u, double t) {
    const std::vector<double>& sym = laplacian_symbol(u.grid());
    kernels::expi_multiply(u.spec_mut().data(), sym.data(), -t, sym.size());
    u.sync_from_spectral();
}

std::vector<unsigned char> dealias_mask(const Grid& grid) {
    const int m = grid.m();
    const int cutoff = m / 3;
    std::vector<unsigned char> mask(grid.size());
    for (int iz = 0; iz < m; ++iz) {
        for (int iy = 0; iy < m; ++iy) {
            for (int ix = 0; ix < m; ++ix) {
                const bool keep = std::abs(grid.wavenumber(ix)) <= cutoff &&
                                  std::abs(grid.wavenumber(iy)) <= cutoff &&
                                  std::abs(grid.wavenumber(iz)) <= cutoff;
                mask[grid.index(ix, iy, iz)] = keep ? 1 : 0;
            }
        }
    }
    return mask;
}

void apply_dealias(Field& u) {
    const std::vector<unsigned char> mask = dealias_mask(u.grid());
    std::vector<cplx>& spec = u.spec_mut();
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (!mask[i]) spec[i] = cplx(0.0, 0.0);
    }
    u.sync_from_spectral();
}

Field convolve(const Field& f, const Field& g) {
    if (f.grid() != g.grid()) throw ValidationError("convolve: grid mismatch");
    const double factor = std::pow(kTwoPi, 1.5);
    std::vector<cplx> spec(f.spec());
    const std::vector<cplx>& gs = g.spec();
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= factor * gs[i];
    return Field::from_spectral(f.grid(), std::move(spec));
}

} // namespace hartree3d
