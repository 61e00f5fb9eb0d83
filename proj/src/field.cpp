#include "hartree3d/field.hpp"

#include <cmath>

#include "hartree3d/errors.hpp"
#include "hartree3d/kernels.hpp"

namespace hartree3d {

Field Field::from_physical(const Grid& grid, std::vector<cplx> phys) {
    if (phys.size() != grid.size())
        throw ValidationError("physical data size does not match grid");
    Field f(grid);
    f.phys_ = std::move(phys);
    f.sync_from_physical();
    return f;
}

Field Field::from_spectral(const Grid& grid, std::vector<cplx> spec) {
    if (spec.size() != grid.size())
        throw ValidationError("spectral data size does not match grid");
    Field f(grid);
    f.spec_ = std::move(spec);
    f.sync_from_spectral();
    return f;
}

Field Field::sample(const Grid& grid,
                    const std::function<cplx(double, double, double)>& f) {
    std::vector<cplx> phys(grid.size());
    const int m = grid.m();
    for (int iz = 0; iz < m; ++iz) {
        double z = grid.coord_centered(iz);
        for (int iy = 0; iy < m; ++iy) {
            double y = grid.coord_centered(iy);
            for (int ix = 0; ix < m; ++ix)
                phys[grid.index(ix, iy, iz)] = f(grid.coord_centered(ix), y, z);
        }
    }
    return from_physical(grid, std::move(phys));
}

Field Field::plane_wave(const Grid& grid, std::array<int, 3> k, cplx c) {
    std::vector<cplx> phys(grid.size());
    const int m = grid.m();
    const double h = grid.h();
    for (int iz = 0; iz < m; ++iz)
        for (int iy = 0; iy < m; ++iy)
            for (int ix = 0; ix < m; ++ix) {
                double phase = h * (k[0] * ix + k[1] * iy + k[2] * iz);
                phys[grid.index(ix, iy, iz)] =
                    c * cplx(std::cos(phase), std::sin(phase));
            }
    return from_physical(grid, std::move(phys));
}

Field Field::random(const Grid& grid, Rng& rng) {
    std::vector<cplx> phys(grid.size());
    for (auto& v : phys) v = rng.complex_uniform();
    return from_physical(grid, std::move(phys));
}

cplx Field::coefficient(std::array<int, 3> k) const {
    return spec_[grid_.index(grid_.mode_index(k[0]), grid_.mode_index(k[1]),
                             grid_.mode_index(k[2]))];
}

Field add(const Field& a, const Field& b) {
    if (a.grid() != b.grid()) throw ValidationError("grid mismatch in add");
    Field out = a;
    auto& p = out.phys_mut();
    auto& s = out.spec_mut();
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] += b.phys()[i];
        s[i] += b.spec()[i];
    }
    return out;
}

Field sub(const Field& a, const Field& b) {
    if (a.grid() != b.grid()) throw ValidationError("grid mismatch in sub");
    Field out = a;
    auto& p = out.phys_mut();
    auto& s = out.spec_mut();
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] -= b.phys()[i];
        s[i] -= b.spec()[i];
    }
    return out;
}

Field scale(const Field& a, cplx s) {
    Field out = a;
    for (auto& v : out.phys_mut()) v *= s;
    for (auto& v : out.spec_mut()) v *= s;
    return out;
}

double l2_distance(const Field& a, const Field& b) {
    if (a.grid() != b.grid()) throw ValidationError("grid mismatch in l2_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.phys().size(); ++i) {
        cplx d = a.phys()[i] - b.phys()[i];
        s += d.real() * d.real() + d.imag() * d.imag();
    }
    return std::sqrt(a.grid().cell_volume() * s);
}

} // namespace hartree3d
