#include "hartree3d/littlewood_paley.hpp"

#include <cmath>

#include "hartree3d/errors.hpp"

namespace hartree3d {

namespace {

// Round to 26 fractional bits; 2^26 scaling is exact for values in [0, 1].
double q26(double v) {
    return std::nearbyint(v * 67108864.0) / 67108864.0;
}

bool is_dyadic(int m) {
    return m >= 1 && (m & (m - 1)) == 0;
}

double knorm_at(const Grid& grid, int ix, int iy, int iz) {
    const double kx = static_cast<double>(grid.wavenumber(ix));
    const double ky = static_cast<double>(grid.wavenumber(iy));
    const double kz = static_cast<double>(grid.wavenumber(iz));
    return std::sqrt(kx * kx + ky * ky + kz * kz);
}

} // namespace

double dyadic_profile(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double t = 2.0 - r;
    return q26(t * t * (3.0 - 2.0 * t));
}

double band_weight(int band_m, double knorm) {
    if (!is_dyadic(band_m)) {
        throw ValidationError("band_weight: band index must be a power of two");
    }
    if (band_m == 1) return dyadic_profile(knorm);
    const double m = static_cast<double>(band_m);
    // Division by a power of two is exact, so phi(2 knorm / M) here and
    // phi(knorm / (M/2)) in the next band down see the same argument and the
    // telescoping cancellation is bitwise.
    return dyadic_profile(knorm / m) - dyadic_profile(2.0 * knorm / m);
}

int max_band(const Grid& grid) {
    const double half = static_cast<double>(grid.m() / 2);
    const double kmax = std::sqrt(3.0) * half;
    int band = 1;
    while (static_cast<double>(band) < kmax) band *= 2;
    return band;
}

Field lp_project(const Field& u, int band_m) {
    const Grid& grid = u.grid();
    std::vector<cplx> spec(u.spec());
    const int m = grid.m();
    for (int iz = 0; iz < m; ++iz) {
        for (int iy = 0; iy < m; ++iy) {
            for (int ix = 0; ix < m; ++ix) {
                const std::size_t idx = grid.index(ix, iy, iz);
                spec[idx] *= band_weight(band_m, knorm_at(grid, ix, iy, iz));
            }
        }
    }
    return Field::from_spectral(grid, std::move(spec));
}

Field lp_project_up_to(const Field& u, int band_m) {
    if (!is_dyadic(band_m)) {
        throw ValidationError("lp_project_up_to: band index must be a power of two");
    }
    const Grid& grid = u.grid();
    std::vector<cplx> spec(u.spec());
    const int m = grid.m();
    for (int iz = 0; iz < m; ++iz) {
        for (int iy = 0; iy < m; ++iy) {
            for (int ix = 0; ix < m; ++ix) {
                const std::size_t idx = grid.index(ix, iy, iz);
                const double kn = knorm_at(grid, ix, iy, iz);
                double w = 0.0;
                for (int b = 1; b <= band_m; b *= 2) w += band_weight(b, kn);
                spec[idx] *= w;
            }
        }
    }
    return Field::from_spectral(grid, std::move(spec));
}

EquivalenceBounds lp_equivalence_bounds(const Grid& grid, double s) {
    const int m = grid.m();
    const int top = max_band(grid);
    double lo = 0.0;
    double hi = 0.0;
    bool first = true;
    for (int iz = 0; iz < m; ++iz) {
        for (int iy = 0; iy < m; ++iy) {
            for (int ix = 0; ix < m; ++ix) {
                const double kn = knorm_at(grid, ix, iy, iz);
                double rho = 0.0;
                for (int b = 1; b <= top; b *= 2) {
                    const double w = band_weight(b, kn);
                    if (w != 0.0) {
                        rho += std::pow(static_cast<double>(b), 2.0 * s) * w * w;
                    }
                }
                rho /= std::pow(1.0 + kn * kn, s);
                if (first) {
                    lo = hi = rho;
                    first = false;
                } else {
                    if (rho < lo) lo = rho;
                    if (rho > hi) hi = rho;
                }
            }
        }
    }
    return {lo, hi};
}

} // namespace hartree3d
