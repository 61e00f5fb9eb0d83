#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hartree3d::kernels {

using cplx = std::complex<double>;

// Hot inner loops, each with a serial and an OpenMP variant. The unsuffixed
// entry points dispatch on the active thread budget; tests pin serial vs
// parallel agreement and benchmarks compare their throughput.
//
// Reductions use a fixed chunk-per-thread partial scheme combined in thread
// order, so results are deterministic for a fixed thread count.

// Global thread budget (set from CLI --threads / HARTREE3D_THREADS; default
// is the OpenMP runtime default).
void set_thread_budget(int threads);
int thread_budget();

// True when the dispatcher would pick the parallel variant for n elements.
bool parallel_active(std::size_t n);

// out[i] = |in[i]|^2
void abs2_serial(const cplx* in, double* out, std::size_t n);
void abs2_parallel(const cplx* in, double* out, std::size_t n);
void abs2(const cplx* in, double* out, std::size_t n);

// u[i] *= exp(i * scale * phase[i])   (phase real; preserves |u[i]|)
void expi_multiply_serial(cplx* u, const double* phase, double scale, std::size_t n);
void expi_multiply_parallel(cplx* u, const double* phase, double scale, std::size_t n);
void expi_multiply(cplx* u, const double* phase, double scale, std::size_t n);

// u[i] *= w[i]   (real weights: spectral masks, band multipliers)
void scale_pointwise_serial(cplx* u, const double* w, std::size_t n);
void scale_pointwise_parallel(cplx* u, const double* w, std::size_t n);
void scale_pointwise(cplx* u, const double* w, std::size_t n);

// u[i] *= v[i]   (complex weights: convolution theorem products)
void multiply_pointwise_serial(cplx* u, const cplx* v, std::size_t n);
void multiply_pointwise_parallel(cplx* u, const cplx* v, std::size_t n);
void multiply_pointwise(cplx* u, const cplx* v, std::size_t n);

// sum_i |u[i]|^2
double sum_abs2_serial(const cplx* u, std::size_t n);
double sum_abs2_parallel(const cplx* u, std::size_t n);
double sum_abs2(const cplx* u, std::size_t n);

// sum_i w[i] * |u[i]|^2   (Sobolev weights, energy reductions)
double weighted_sum_abs2_serial(const cplx* u, const double* w, std::size_t n);
double weighted_sum_abs2_parallel(const cplx* u, const double* w, std::size_t n);
double weighted_sum_abs2(const cplx* u, const double* w, std::size_t n);

// sum_i a[i] * b[i] for real arrays (potential-energy quadratures)
double dot_serial(const double* a, const double* b, std::size_t n);
double dot_parallel(const double* a, const double* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);

// max_i |u[i]| (sup norm on the lattice)
double max_abs_serial(const cplx* u, std::size_t n);
double max_abs_parallel(const cplx* u, std::size_t n);
double max_abs(const cplx* u, std::size_t n);

} // namespace hartree3d::kernels
