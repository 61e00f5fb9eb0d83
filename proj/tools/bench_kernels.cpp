#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <benchmark/benchmark.h>

#include "hartree3d/fft.hpp"
#include "hartree3d/field.hpp"
#include "hartree3d/grid.hpp"
#include "hartree3d/kernels.hpp"
#include "hartree3d/rng.hpp"

namespace {

using hartree3d::cplx;
namespace k = hartree3d::kernels;

std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed) {
    hartree3d::Rng rng(seed);
    std::vector<cplx> v(n);
    for (auto& z : v) z = rng.complex_uniform();
    return v;
}

std::vector<double> random_real(std::size_t n, std::uint64_t seed) {
    hartree3d::Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
}

constexpr std::size_t kN = 64ull * 64ull * 64ull;

void bm_abs2_serial(benchmark::State& state) {
    const auto in = random_complex(kN, 1);
    std::vector<double> out(kN);
    for (auto _ : state) {
        k::abs2_serial(in.data(), out.data(), kN);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kN));
}

void bm_abs2_parallel(benchmark::State& state) {
    const auto in = random_complex(kN, 1);
    std::vector<double> out(kN);
    for (auto _ : state) {
        k::abs2_parallel(in.data(), out.data(), kN);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kN));
}

void bm_expi_serial(benchmark::State& state) {
    auto u = random_complex(kN, 2);
    const auto phase = random_real(kN, 3);
    for (auto _ : state) {
        k::expi_multiply_serial(u.data(), phase.data(), 1e-3, kN);
        benchmark::DoNotOptimize(u.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kN));
}

void bm_expi_parallel(benchmark::State& state) {
    auto u = random_complex(kN, 2);
    const auto phase = random_real(kN, 3);
    for (auto _ : state) {
        k::expi_multiply_parallel(u.data(), phase.data(), 1e-3, kN);
        benchmark::DoNotOptimize(u.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kN));
}

void bm_sum_abs2_serial(benchmark::State& state) {
    const auto u = random_complex(kN, 4);
    for (auto _ : state) {
        double s = k::sum_abs2_serial(u.data(), kN);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kN));
}

void bm_sum_abs2_parallel(benchmark::State& state) {
    const auto u = random_complex(kN, 4);
    for (auto _ : state) {
        double s = k::sum_abs2_parallel(u.data(), kN);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kN));
}

void bm_weighted_sum_serial(benchmark::State& state) {
    const auto u = random_complex(kN, 5);
    const auto w = random_real(kN, 6);
    for (auto _ : state) {
        double s = k::weighted_sum_abs2_serial(u.data(), w.data(), kN);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kN));
}

void bm_weighted_sum_parallel(benchmark::State& state) {
    const auto u = random_complex(kN, 5);
    const auto w = random_real(kN, 6);
    for (auto _ : state) {
        double s = k::weighted_sum_abs2_parallel(u.data(), w.data(), kN);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kN));
}

void bm_max_abs_serial(benchmark::State& state) {
    const auto u = random_complex(kN, 7);
    for (auto _ : state) {
        double s = k::max_abs_serial(u.data(), kN);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kN));
}

void bm_max_abs_parallel(benchmark::State& state) {
    const auto u = random_complex(kN, 7);
    for (auto _ : state) {
        double s = k::max_abs_parallel(u.data(), kN);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kN));
}

// Library forward transform against the literal triple-sum definition, on a
// grid small enough for the O(n^2) reference to finish.
void bm_fft_forward(benchmark::State& state) {
    const hartree3d::Grid grid(8);
    const auto in = random_complex(grid.size(), 8);
    std::vector<cplx> out(grid.size());
    for (auto _ : state) {
        hartree3d::to_spectral(grid, in.data(), out.data());
        benchmark::DoNotOptimize(out.data());
    }
}

void bm_dft_reference(benchmark::State& state) {
    const hartree3d::Grid grid(8);
    const int m = grid.m();
    const auto in = random_complex(grid.size(), 8);
    std::vector<cplx> out(grid.size());
    const double norm = std::pow(hartree3d::kTwoPi, -1.5) * grid.h() * grid.h() * grid.h();
    for (auto _ : state) {
        for (int kz = 0; kz < m; ++kz) {
            for (int ky = 0; ky < m; ++ky) {
                for (int kx = 0; kx < m; ++kx) {
                    cplx acc(0.0, 0.0);
                    for (int jz = 0; jz < m; ++jz) {
                        for (int jy = 0; jy < m; ++jy) {
                            for (int jx = 0; jx < m; ++jx) {
                                const double ang =
                                    -hartree3d::kTwoPi *
                                    (static_cast<double>(grid.wavenumber(kx)) * jx +
                                     static_cast<double>(grid.wavenumber(ky)) * jy +
                                     static_cast<double>(grid.wavenumber(kz)) * jz) /
                                    m;
                                acc += in[grid.index(jx, jy, jz)] *
                                       cplx(std::cos(ang), std::sin(ang));
                            }
                        }
                    }
                    out[grid.index(kx, ky, kz)] = acc * norm;
                }
            }
        }
        benchmark::DoNotOptimize(out.data());
    }
}

BENCHMARK(bm_abs2_serial);
BENCHMARK(bm_abs2_parallel);
BENCHMARK(bm_expi_serial);
BENCHMARK(bm_expi_parallel);
BENCHMARK(bm_sum_abs2_serial);
BENCHMARK(bm_sum_abs2_parallel);
BENCHMARK(bm_weighted_sum_serial);
BENCHMARK(bm_weighted_sum_parallel);
BENCHMARK(bm_max_abs_serial);
BENCHMARK(bm_max_abs_parallel);
BENCHMARK(bm_fft_forward);
BENCHMARK(bm_dft_reference);

} // namespace

BENCHMARK_MAIN();
