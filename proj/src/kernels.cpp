#include "hartree3d/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace hartree3d::kernels {

namespace {

int g_thread_budget = 0; // 0 = OpenMP runtime default

// Below this size the parallel fork costs more than the loop.
constexpr std::size_t kMinParallel = 4096;

int effective_threads() {
    int t = g_thread_budget > 0 ? g_thread_budget : omp_get_max_threads();
    return std::max(1, t);
}

// Deterministic parallel reduction: fixed contiguous chunk per thread,
// partials combined in thread order. Result depends on the thread count but
// not on scheduling.
template <typename F>
double reduce_chunked(std::size_t n, int nthreads, F&& chunk_sum) {
    std::vector<double> partials(static_cast<std::size_t>(nthreads), 0.0);
#pragma omp parallel num_threads(nthreads)
    {
        int tid = omp_get_thread_num();
        std::size_t lo = n * static_cast<std::size_t>(tid) / nthreads;
        std::size_t hi = n * (static_cast<std::size_t>(tid) + 1) / nthreads;
        partials[static_cast<std::size_t>(tid)] = chunk_sum(lo, hi);
    }
    double total = 0.0;
    for (double p : partials) total += p;
    return total;
}

} // namespace

void set_thread_budget(int threads) { g_thread_budget = threads; }
int thread_budget() { return effective_threads(); }

bool parallel_active(std::size_t n) {
    return n >= kMinParallel && effective_threads() > 1 && !omp_in_parallel();
}

// ---- abs2 ----------------------------------------------------------------

void abs2_serial(const cplx* in, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = in[i].real() * in[i].real() + in[i].imag() * in[i].imag();
}

void abs2_parallel(const cplx* in, double* out, std::size_t n) {
#pragma omp parallel for schedule(static) num_threads(effective_threads())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        out[i] = in[i].real() * in[i].real() + in[i].imag() * in[i].imag();
}

void abs2(const cplx* in, double* out, std::size_t n) {
    parallel_active(n) ? abs2_parallel(in, out, n) : abs2_serial(in, out, n);
}

// ---- expi_multiply --------------------------------------------------------

void expi_multiply_serial(cplx* u, const double* phase, double scale, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double a = scale * phase[i];
        u[i] *= cplx(std::cos(a), std::sin(a));
    }
}

void expi_multiply_parallel(cplx* u, const double* phase, double scale, std::size_t n) {
#pragma omp parallel for schedule(static) num_threads(effective_threads())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        double a = scale * phase[i];
        u[i] *= cplx(std::cos(a), std::sin(a));
    }
}

void expi_multiply(cplx* u, const double* phase, double scale, std::size_t n) {
    parallel_active(n) ? expi_multiply_parallel(u, phase, scale, n)
                       : expi_multiply_serial(u, phase, scale, n);
}

// ---- scale_pointwise -------------------------------------------------------

void scale_pointwise_serial(cplx* u, const double* w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) u[i] *= w[i];
}

void scale_pointwise_parallel(cplx* u, const double* w, std::size_t n) {
#pragma omp parallel for schedule(static) num_threads(effective_threads())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) u[i] *= w[i];
}

void scale_pointwise(cplx* u, const double* w, std::size_t n) {
    parallel_active(n) ? scale_pointwise_parallel(u, w, n)
                       : scale_pointwise_serial(u, w, n);
}

// ---- multiply_pointwise ----------------------------------------------------

void multiply_pointwise_serial(cplx* u, const cplx* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) u[i] *= v[i];
}

void multiply_pointwise_parallel(cplx* u, const cplx* v, std::size_t n) {
#pragma omp parallel for schedule(static) num_threads(effective_threads())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) u[i] *= v[i];
}

void multiply_pointwise(cplx* u, const cplx* v, std::size_t n) {
    parallel_active(n) ? multiply_pointwise_parallel(u, v, n)
                       : multiply_pointwise_serial(u, v, n);
}

// ---- reductions ------------------------------------------------------------

double sum_abs2_serial(const cplx* u, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += u[i].real() * u[i].real() + u[i].imag() * u[i].imag();
    return s;
}

double sum_abs2_parallel(const cplx* u, std::size_t n) {
    return reduce_chunked(n, effective_threads(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += u[i].real() * u[i].real() + u[i].imag() * u[i].imag();
        return s;
    });
}

double sum_abs2(const cplx* u, std::size_t n) {
    return parallel_active(n) ? sum_abs2_parallel(u, n) : sum_abs2_serial(u, n);
}

double weighted_sum_abs2_serial(const cplx* u, const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += w[i] * (u[i].real() * u[i].real() + u[i].imag() * u[i].imag());
    return s;
}

double weighted_sum_abs2_parallel(const cplx* u, const double* w, std::size_t n) {
    return reduce_chunked(n, effective_threads(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += w[i] * (u[i].real() * u[i].real() + u[i].imag() * u[i].imag());
        return s;
    });
}

double weighted_sum_abs2(const cplx* u, const double* w, std::size_t n) {
    return parallel_active(n) ? weighted_sum_abs2_parallel(u, w, n)
                              : weighted_sum_abs2_serial(u, w, n);
}

double dot_serial(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot_parallel(const double* a, const double* b, std::size_t n) {
    return reduce_chunked(n, effective_threads(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
        return s;
    });
}

double dot(const double* a, const double* b, std::size_t n) {
    return parallel_active(n) ? dot_parallel(a, b, n) : dot_serial(a, b, n);
}

double max_abs_serial(const cplx* u, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(u[i]));
    return m;
}

double max_abs_parallel(const cplx* u, std::size_t n) {
    int nt = effective_threads();
    std::vector<double> partials(static_cast<std::size_t>(nt), 0.0);
#pragma omp parallel num_threads(nt)
    {
        int tid = omp_get_thread_num();
        std::size_t lo = n * static_cast<std::size_t>(tid) / nt;
        std::size_t hi = n * (static_cast<std::size_t>(tid) + 1) / nt;
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(u[i]));
        partials[static_cast<std::size_t>(tid)] = m;
    }
    double m = 0.0;
    for (double p : partials) m = std::max(m, p);
    return m;
}

double max_abs(const cplx* u, std::size_t n) {
    return parallel_active(n) ? max_abs_parallel(u, n) : max_abs_serial(u, n);
}

} // namespace hartree3d::kernels
