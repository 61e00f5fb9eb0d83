#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "hartree3d/fft.hpp"
#include "hartree3d/grid.hpp"
#include "hartree3d/rng.hpp"

namespace hartree3d {

// A state on the grid, carrying synchronized physical and spectral views.
// Operations in the library treat Field as a value: they return new Fields
// and never mutate their inputs. The stepping loop in dynamics.cpp uses the
// sync_* members to avoid reallocating, which is safe because it owns its
// working copy.
class Field {
public:
    explicit Field(const Grid& grid)
        : grid_(grid), phys_(grid.size(), cplx(0.0, 0.0)),
          spec_(grid.size(), cplx(0.0, 0.0)) {}

    static Field from_physical(const Grid& grid, std::vector<cplx> phys);
    static Field from_spectral(const Grid& grid, std::vector<cplx> spec);

    // Sample a function of the centered coordinates ([-pi,pi)^3).
    static Field sample(const Grid& grid,
                        const std::function<cplx(double, double, double)>& f);

    // c * e^{i k.x}
    static Field plane_wave(const Grid& grid, std::array<int, 3> k, cplx c);

    // iid uniform complex values in [-1,1]^2 at every grid point.
    static Field random(const Grid& grid, Rng& rng);

    const Grid& grid() const { return grid_; }
    const std::vector<cplx>& phys() const { return phys_; }
    const std::vector<cplx>& spec() const { return spec_; }
    std::vector<cplx>& phys_mut() { return phys_; }
    std::vector<cplx>& spec_mut() { return spec_; }

    // Spectral coefficient at wavenumber k (components reduced mod M).
    cplx coefficient(std::array<int, 3> k) const;

    void sync_from_physical() { to_spectral(grid_, phys_.data(), spec_.data()); }
    void sync_from_spectral() { to_physical(grid_, spec_.data(), phys_.data()); }

private:
    Grid grid_;
    std::vector<cplx> phys_;
    std::vector<cplx> spec_;
};

// Pointwise linear combinations (pure).
Field add(const Field& a, const Field& b);
Field sub(const Field& a, const Field& b);
Field scale(const Field& a, cplx s);

// h^3-weighted L2 distance, used all over the tests.
double l2_distance(const Field& a, const Field& b);

} // namespace hartree3d
