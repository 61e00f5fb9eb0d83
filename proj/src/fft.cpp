#include "hartree3d/fft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <fftw3.h>

namespace hartree3d {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft is.
// FFTW_UNALIGNED lets the cached plan run on any std::vector buffer.
std::mutex g_plan_mutex;
std::map<int, PlanPair>& plan_cache() {
    static std::map<int, PlanPair> cache;
    return cache;
}

PlanPair plans_for(int m) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    std::size_t n = static_cast<std::size_t>(m) * m * m;
    fftw_complex* scratch = fftw_alloc_complex(n);
    PlanPair p;
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    // Layout is x-fastest; FFTW's last dimension is the fastest, so the
    // dimension order is (z, y, x) = (m, m, m).
    p.fwd = fftw_plan_dft_3d(m, m, m, scratch, scratch, FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_3d(m, m, m, scratch, scratch, FFTW_BACKWARD, flags);
    fftw_free(scratch);
    cache[m] = p;
    return p;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

} // namespace

// Plans are created in-place, so execution always runs in-place on `out`
// (FFTW forbids mixing the in-place/out-of-place property at execute time).

void dft_forward_raw(const Grid& grid, const cplx* in, cplx* out) {
    PlanPair p = plans_for(grid.m());
    if (in != out) std::copy(in, in + grid.size(), out);
    fftw_execute_dft(p.fwd, as_fftw(out), as_fftw(out));
}

void dft_backward_raw(const Grid& grid, const cplx* in, cplx* out) {
    PlanPair p = plans_for(grid.m());
    if (in != out) std::copy(in, in + grid.size(), out);
    fftw_execute_dft(p.bwd, as_fftw(out), as_fftw(out));
}

void to_spectral(const Grid& grid, const cplx* phys, cplx* spec) {
    dft_forward_raw(grid, phys, spec);
    const double scale = std::pow(kTwoPi, -1.5) * grid.cell_volume();
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i) spec[i] *= scale;
}

void to_physical(const Grid& grid, const cplx* spec, cplx* phys) {
    dft_backward_raw(grid, spec, phys);
    const double scale = std::pow(kTwoPi, -1.5);
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i) phys[i] *= scale;
}

} // namespace hartree3d
