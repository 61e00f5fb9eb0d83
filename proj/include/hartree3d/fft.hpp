#pragma once

#include <complex>
#include <vector>

#include "hartree3d/grid.hpp"

namespace hartree3d {

using cplx = std::complex<double>;

// Discrete Fourier convention (the single place it is defined; everything
// else refers here):
//
//   spectral:  uhat(k) = (2pi)^{-3/2} h^3 sum_j u(x_j) e^{-i k.x_j}
//   physical:  u(x_j)  = (2pi)^{-3/2}     sum_k uhat(k) e^{+i k.x_j}
//
// Consequences used throughout:
//   * Parseval:     sum_k |uhat(k)|^2 = h^3 sum_j |u(x_j)|^2
//   * plane wave:   u = e^{i k0.x}  =>  uhat(k0) = (2pi)^{3/2}, 0 elsewhere
//   * convolution:  (f*g)(x_j) = h^3 sum_l f(x_j - x_l) g(x_l)
//                   has spectral data (2pi)^{3/2} fhat(k) ghat(k)
//
// Transforms are FFTW3 with FFTW_ESTIMATE planning only: measured planning is
// non-deterministic across runs, which would break byte-identical reruns.
// Plans are cached per grid size; execution is single-threaded per transform
// (parallelism lives in the surrounding kernels).

// Unnormalized DFTs (plain FFTW sums); exposed for code that wants the raw
// coefficients, and for the serial reference comparison in tests.
void dft_forward_raw(const Grid& grid, const cplx* in, cplx* out);
void dft_backward_raw(const Grid& grid, const cplx* in, cplx* out);

// Normalized transforms per the convention above. In/out may alias.
void to_spectral(const Grid& grid, const cplx* phys, cplx* spec);
void to_physical(const Grid& grid, const cplx* spec, cplx* phys);

} // namespace hartree3d
