#pragma once

#include <cmath>
#include <cstddef>

#include "hartree3d/errors.hpp"

namespace hartree3d {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform periodic grid on [0, 2pi)^3 with M points per dimension.
// Arrays are stored x-fastest: index = ix + M*(iy + M*iz).
// Wavenumbers per dimension run over {-M/2+1, ..., M/2}; spectral arrays use
// the DFT layout (index i holds wavenumber i for i <= M/2, i-M otherwise).
class Grid {
public:
    explicit Grid(int m) : m_(m) {
        if (m < 4 || m % 2 != 0)
            throw ValidationError("grid size must be even and at least 4, got " +
                                  std::to_string(m));
    }

    int m() const { return m_; }
    std::size_t size() const {
        return static_cast<std::size_t>(m_) * m_ * m_;
    }
    double h() const { return kTwoPi / m_; }
    double cell_volume() const { return h() * h() * h(); }

    // x varies fastest.
    std::size_t index(int ix, int iy, int iz) const {
        return static_cast<std::size_t>(ix) +
               static_cast<std::size_t>(m_) * (static_cast<std::size_t>(iy) +
                                               static_cast<std::size_t>(m_) * iz);
    }

    // Wavenumber held at spectral index i (0 <= i < M).
    int wavenumber(int i) const { return i <= m_ / 2 ? i : i - m_; }

    // Spectral index holding wavenumber k (requires -M/2+1 <= k <= M/2 after
    // reduction; callers pass small k directly).
    int mode_index(int k) const {
        int r = k % m_;
        if (r < 0) r += m_;
        return r;
    }

    // Coordinate of grid index i mapped to the fundamental cell (-pi, pi].
    // Indices i and M - i map to exactly opposite values, so even kernels
    // sampled through this map are even on the lattice without round-off.
    double coord_centered(int i) const {
        return i <= m_ / 2 ? h() * i : -h() * (m_ - i);
    }

    // Difference of grid indices reduced modulo M (periodic lattice).
    int wrap(int i) const {
        int r = i % m_;
        if (r < 0) r += m_;
        return r;
    }

    bool operator==(const Grid& o) const { return m_ == o.m_; }
    bool operator!=(const Grid& o) const { return m_ != o.m_; }

private:
    int m_;
};

} // namespace hartree3d
