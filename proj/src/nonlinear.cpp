#include "hartree3d/nonlinear.hpp"

#include <cmath>
#include <functional>

#include "hartree3d/errors.hpp"
#include "hartree3d/fft.hpp"
#include "hartree3d/kernels.hpp"
#include "hartree3d/spectral.hpp"

namespace hartree3d {

namespace {

template <typename T>
T ipow(T base, int e) {
    T r = T(1.0);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

std::vector<double> real_part(const std::vector<cplx>& a) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i].real();
    return out;
}

} // namespace

NonlinearEvaluator::NonlinearEvaluator(const Grid& grid, InteractionSpec spec, int mode_cutoff)
    : grid_(grid), spec_(std::move(spec)) {
    if (spec_.p < 1) throw ValidationError("NonlinearEvaluator: p must be >= 1");
    mask_ = dealias_mask(grid_);
    if (spec_.family == Family::Local) return;
    if (spec_.omega.values.size() != grid_.size()) {
        throw ValidationError("NonlinearEvaluator: mollifier does not match the grid size");
    }
    omega_hat_.resize(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) omega_hat_[i] = spec_.omega.values[i];
    to_spectral(grid_, omega_hat_.data(), omega_hat_.data());
    if (spec_.family != Family::FullProduct || spec_.p == 1) return;
    if (spec_.p != 2) {
        throw ValidationError("NonlinearEvaluator: full-product fast path covers p in {1, 2}");
    }
    if (mode_cutoff < 0 || mode_cutoff > grid_.m() / 2) {
        throw ValidationError("NonlinearEvaluator: mode cutoff out of range");
    }
    const int m = grid_.m();
    const double inv = std::pow(kTwoPi, -1.5);
    for (int iz = 0; iz < m; ++iz) {
        for (int iy = 0; iy < m; ++iy) {
            for (int ix = 0; ix < m; ++ix) {
                const std::array<int, 3> q = {grid_.wavenumber(ix), grid_.wavenumber(iy),
                                              grid_.wavenumber(iz)};
                const cplx cq = inv * omega_hat_[grid_.index(ix, iy, iz)];
                const bool keep = mode_cutoff == 0 ||
                                  (std::abs(q[0]) <= mode_cutoff && std::abs(q[1]) <= mode_cutoff &&
                                   std::abs(q[2]) <= mode_cutoff);
                if (keep) {
                    modes_.push_back(q);
                    mode_coeff_.push_back(cq);
                } else {
                    mode_tail_l1_ += std::abs(cq);
                }
            }
        }
    }
}

std::vector<cplx> NonlinearEvaluator::convolve_omega_real(const std::vector<double>& f,
                                                          bool dealias) const {
    std::vector<cplx> buf(grid_.size());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = f[i];
    return convolve_omega_complex(buf, dealias);
}

std::vector<cplx> NonlinearEvaluator::convolve_omega_complex(const std::vector<cplx>& f,
                                                             bool dealias) const {
    std::vector<cplx> buf(f);
    to_spectral(grid_, buf.data(), buf.data());
    const double factor = std::pow(kTwoPi, 1.5);
    for (std::size_t i = 0; i < buf.size(); ++i) {
        buf[i] *= factor * omega_hat_[i];
        if (dealias && !mask_[i]) buf[i] = cplx(0.0, 0.0);
    }
    to_physical(grid_, buf.data(), buf.data());
    return buf;
}

void NonlinearEvaluator::shifted_kernel_product(const std::vector<cplx>& ghat,
                                                std::array<int, 3> q, bool dealias,
                                                std::vector<cplx>& out) const {
    const int m = grid_.m();
    const double factor = std::pow(kTwoPi, 1.5);
    // Index arithmetic mod M realizes the wavenumber shift k -> k - q.
    const int qx = grid_.wrap(q[0]);
    const int qy = grid_.wrap(q[1]);
    const int qz = grid_.wrap(q[2]);
    for (int iz = 0; iz < m; ++iz) {
        const int sz = iz - qz >= 0 ? iz - qz : iz - qz + m;
        for (int iy = 0; iy < m; ++iy) {
            const int sy = iy - qy >= 0 ? iy - qy : iy - qy + m;
            for (int ix = 0; ix < m; ++ix) {
                const int sx = ix - qx >= 0 ? ix - qx : ix - qx + m;
                const std::size_t di = grid_.index(ix, iy, iz);
                if (dealias && !mask_[di]) {
                    out[di] = cplx(0.0, 0.0);
                } else {
                    out[di] = factor * omega_hat_[di] * ghat[grid_.index(sx, sy, sz)];
                }
            }
        }
    }
}

MultiplierResult NonlinearEvaluator::multiplier(const Field& u, bool dealias) const {
    if (u.grid() != grid_) throw ValidationError("multiplier: grid mismatch");
    const std::size_t nn = grid_.size();
    const double c = coupling(spec_);
    const int p = spec_.p;
    std::vector<double> g(nn);
    kernels::abs2(u.phys().data(), g.data(), nn);
    std::vector<cplx> raw(nn);
    if (spec_.family == Family::Local) {
        for (std::size_t i = 0; i < nn; ++i) raw[i] = c * ipow(g[i], p);
    } else if (spec_.family == Family::PairwiseSum ||
               (spec_.family == Family::FullProduct && p == 1)) {
        const std::vector<cplx> phi = convolve_omega_real(g, dealias);
        std::vector<cplx> a(nn);
        std::vector<cplx> w(nn);
        for (std::size_t i = 0; i < nn; ++i) {
            const cplx pm1 = ipow(phi[i], p - 1);
            a[i] = pm1 * phi[i];
            w[i] = pm1 * g[i];
        }
        // The exchange term pairs against the reflected kernel, whose
        // transform is the conjugate of omega_hat for real omega.
        std::vector<cplx> b(w);
        to_spectral(grid_, b.data(), b.data());
        const double factor = std::pow(kTwoPi, 1.5);
        for (std::size_t i = 0; i < nn; ++i) {
            b[i] *= factor * std::conj(omega_hat_[i]);
            if (dealias && !mask_[i]) b[i] = cplx(0.0, 0.0);
        }
        to_physical(grid_, b.data(), b.data());
        const double invp1 = 1.0 / (p + 1.0);
        for (std::size_t i = 0; i < nn; ++i) {
            raw[i] = c * (invp1 * a[i] + p * invp1 * b[i]);
        }
    } else {
        std::vector<cplx> ghat(nn);
        for (std::size_t i = 0; i < nn; ++i) ghat[i] = g[i];
        to_spectral(grid_, ghat.data(), ghat.data());
        std::vector<cplx> acc(nn, cplx(0.0, 0.0));
        std::vector<cplx> f(nn);
        for (std::size_t qi = 0; qi < modes_.size(); ++qi) {
            shifted_kernel_product(ghat, modes_[qi], dealias, f);
            to_physical(grid_, f.data(), f.data());
            const cplx cq = mode_coeff_[qi];
            for (std::size_t i = 0; i < nn; ++i) acc[i] += cq * std::norm(f[i]);
        }
        for (std::size_t i = 0; i < nn; ++i) raw[i] = c * acc[i];
    }
    MultiplierResult out;
    out.values.resize(nn);
    double imag_max = 0.0;
    double abs_max = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
        imag_max = std::max(imag_max, std::abs(raw[i].imag()));
        abs_max = std::max(abs_max, std::abs(raw[i]));
        out.values[i] = raw[i].real();
    }
    out.imag_residual = abs_max > 0.0 ? imag_max / abs_max : 0.0;
    return out;
}

Field NonlinearEvaluator::apply(const Field& u, bool dealias) const {
    const MultiplierResult n = multiplier(u, dealias);
    std::vector<cplx> phys(u.phys());
    kernels::scale_pointwise(phys.data(), n.values.data(), phys.size());
    Field out = Field::from_physical(grid_, std::move(phys));
    if (dealias) apply_dealias(out);
    return out;
}

Field NonlinearEvaluator::apply_difference(const Field& u, const Field& v, bool dealias) const {
    if (u.grid() != grid_ || v.grid() != grid_) {
        throw ValidationError("apply_difference: grid mismatch");
    }
    const std::size_t nn = grid_.size();
    const double c = coupling(spec_);
    const int p = spec_.p;
    const std::vector<cplx>& up = u.phys();
    const std::vector<cplx>& vp = v.phys();
    std::vector<cplx> w(nn);
    for (std::size_t i = 0; i < nn; ++i) w[i] = up[i] - vp[i];
    std::vector<double> gu(nn);
    std::vector<double> gv(nn);
    std::vector<double> dg(nn);
    kernels::abs2(up.data(), gu.data(), nn);
    kernels::abs2(vp.data(), gv.data(), nn);
    for (std::size_t i = 0; i < nn; ++i) {
        dg[i] = (w[i] * std::conj(up[i])).real() + (vp[i] * std::conj(w[i])).real();
    }
    std::vector<double> dn(nn, 0.0);
    std::vector<double> nv(nn, 0.0);
    if (spec_.family == Family::Local) {
        for (std::size_t i = 0; i < nn; ++i) {
            double s = 0.0;
            for (int a = 0; a < p; ++a) s += ipow(gu[i], a) * ipow(gv[i], p - 1 - a);
            dn[i] = c * dg[i] * s;
            nv[i] = c * ipow(gv[i], p);
        }
    } else if (spec_.family == Family::PairwiseSum ||
               (spec_.family == Family::FullProduct && p == 1)) {
        const std::vector<double> phiu = real_part(convolve_omega_real(gu, dealias));
        const std::vector<double> phiv = real_part(convolve_omega_real(gv, dealias));
        const std::vector<double> dphi = real_part(convolve_omega_real(dg, dealias));
        std::vector<double> da(nn);
        std::vector<double> dwgt(nn);
        std::vector<double> wv(nn);
        for (std::size_t i = 0; i < nn; ++i) {
            double s1 = 0.0;
            for (int a = 0; a < p; ++a) s1 += ipow(phiu[i], a) * ipow(phiv[i], p - 1 - a);
            double s2 = 0.0;
            for (int a = 0; a + 1 < p; ++a) s2 += ipow(phiu[i], a) * ipow(phiv[i], p - 2 - a);
            da[i] = dphi[i] * s1;
            dwgt[i] = dphi[i] * s2 * gu[i] + ipow(phiv[i], p - 1) * dg[i];
            wv[i] = ipow(phiv[i], p - 1) * gv[i];
        }
        // Reflected-kernel convolutions, as in multiplier().
        auto conv_reflected = [&](const std::vector<double>& f) {
            std::vector<cplx> buf(nn);
            for (std::size_t i = 0; i < nn; ++i) buf[i] = f[i];
            to_spectral(grid_, buf.data(), buf.data());
            const double factor = std::pow(kTwoPi, 1.5);
            for (std::size_t i = 0; i < nn; ++i) {
                buf[i] *= factor * std::conj(omega_hat_[i]);
                if (dealias && !mask_[i]) buf[i] = cplx(0.0, 0.0);
            }
            to_physical(grid_, buf.data(), buf.data());
            return buf;
        };
        const std::vector<double> dt = real_part(conv_reflected(dwgt));
        const std::vector<double> bv = real_part(conv_reflected(wv));
        const double invp1 = 1.0 / (p + 1.0);
        for (std::size_t i = 0; i < nn; ++i) {
            dn[i] = c * invp1 * (da[i] + p * dt[i]);
            nv[i] = c * invp1 * (ipow(phiv[i], p) + p * bv[i]);
        }
    } else {
        std::vector<cplx> ghat_u(nn);
        std::vector<cplx> ghat_v(nn);
        std::vector<cplx> dghat(nn);
        for (std::size_t i = 0; i < nn; ++i) {
            ghat_u[i] = gu[i];
            ghat_v[i] = gv[i];
            dghat[i] = dg[i];
        }
        to_spectral(grid_, ghat_u.data(), ghat_u.data());
        to_spectral(grid_, ghat_v.data(), ghat_v.data());
        to_spectral(grid_, dghat.data(), dghat.data());
        std::vector<cplx> fu(nn);
        std::vector<cplx> fv(nn);
        std::vector<cplx> df(nn);
        for (std::size_t qi = 0; qi < modes_.size(); ++qi) {
            shifted_kernel_product(ghat_u, modes_[qi], dealias, fu);
            shifted_kernel_product(ghat_v, modes_[qi], dealias, fv);
            shifted_kernel_product(dghat, modes_[qi], dealias, df);
            to_physical(grid_, fu.data(), fu.data());
            to_physical(grid_, fv.data(), fv.data());
            to_physical(grid_, df.data(), df.data());
            const cplx cq = mode_coeff_[qi];
            for (std::size_t i = 0; i < nn; ++i) {
                dn[i] += (cq * (df[i] * std::conj(fu[i]) + fv[i] * std::conj(df[i]))).real();
                nv[i] += (cq * std::norm(fv[i])).real();
            }
        }
        for (std::size_t i = 0; i < nn; ++i) {
            dn[i] *= c;
            nv[i] *= c;
        }
    }
    std::vector<cplx> out(nn);
    for (std::size_t i = 0; i < nn; ++i) out[i] = dn[i] * up[i] + nv[i] * w[i];
    Field result = Field::from_physical(grid_, std::move(out));
    if (dealias) apply_dealias(result);
    return result;
}

std::vector<double> reference_multiplier(const Field& u, const InteractionSpec& spec) {
    const Grid& grid = u.grid();
    const int m = grid.m();
    const int p = spec.p;
    if (p < 1) throw ValidationError("reference_multiplier: p must be >= 1");
    if (spec.family != Family::Local && spec.omega.values.size() != grid.size()) {
        throw ValidationError("reference_multiplier: mollifier does not match the grid size");
    }
    const double points = static_cast<double>(grid.size());
    if (std::pow(points, p + 1.0) > 2.6e9) {
        throw ValidationError("reference_multiplier: beyond the nested-sum evaluation budget");
    }
    std::vector<double> g(grid.size());
    kernels::abs2(u.phys().data(), g.data(), grid.size());
    const double scale = spec.mu * spec.lambda * std::pow(grid.cell_volume(), p);
    std::vector<double> out(grid.size());
    std::vector<std::array<int, 3>> y(static_cast<std::size_t>(p));
    for (int xz = 0; xz < m; ++xz) {
        for (int xy = 0; xy < m; ++xy) {
            for (int xx = 0; xx < m; ++xx) {
                double sum = 0.0;
                std::function<void(int, double)> visit = [&](int level, double gprod) {
                    if (level == p) {
                        sum += kernel_value(grid, spec, y) * gprod;
                        return;
                    }
                    for (int jz = 0; jz < m; ++jz) {
                        for (int jy = 0; jy < m; ++jy) {
                            for (int jx = 0; jx < m; ++jx) {
                                y[static_cast<std::size_t>(level)] = {xx - jx, xy - jy, xz - jz};
                                visit(level + 1, gprod * g[grid.index(jx, jy, jz)]);
                            }
                        }
                    }
                };
                visit(0, 1.0);
                out[grid.index(xx, xy, xz)] = scale * sum;
            }
        }
    }
    return out;
}

std::vector<double> reference_multiplier_factorized(const Field& u,
                                                    const InteractionSpec& spec) {
    const Grid& grid = u.grid();
    const int m = grid.m();
    const int p = spec.p;
    if (p < 1) throw ValidationError("reference_multiplier_factorized: p must be >= 1");
    const std::size_t nn = grid.size();
    std::vector<double> g(nn);
    kernels::abs2(u.phys().data(), g.data(), nn);
    const double c = coupling(spec);
    std::vector<double> out(nn);
    if (spec.family == Family::Local) {
        for (std::size_t i = 0; i < nn; ++i) out[i] = c * ipow(g[i], p);
        return out;
    }
    if (spec.family != Family::PairwiseSum) {
        throw ValidationError(
            "reference_multiplier_factorized: only local and pairwise-sum kernels factorize");
    }
    if (spec.omega.values.size() != nn) {
        throw ValidationError("reference_multiplier_factorized: mollifier does not match the grid");
    }
    const double h3 = grid.cell_volume();
    // Direct O(M^6) quadratures; kernel values looked up at wrapped offsets.
    auto direct_conv = [&](const std::vector<double>& f, bool reflected) {
        std::vector<double> conv(nn);
        for (int xz = 0; xz < m; ++xz) {
            for (int xy = 0; xy < m; ++xy) {
                for (int xx = 0; xx < m; ++xx) {
                    double sum = 0.0;
                    for (int jz = 0; jz < m; ++jz) {
                        for (int jy = 0; jy < m; ++jy) {
                            for (int jx = 0; jx < m; ++jx) {
                                const int dx = reflected ? jx - xx : xx - jx;
                                const int dy = reflected ? jy - xy : xy - jy;
                                const int dz = reflected ? jz - xz : xz - jz;
                                sum += spec.omega.values[grid.index(
                                           grid.wrap(dx), grid.wrap(dy), grid.wrap(dz))] *
                                       f[grid.index(jx, jy, jz)];
                            }
                        }
                    }
                    conv[grid.index(xx, xy, xz)] = h3 * sum;
                }
            }
        }
        return conv;
    };
    const std::vector<double> phi = direct_conv(g, false);
    std::vector<double> weight(nn);
    for (std::size_t i = 0; i < nn; ++i) weight[i] = ipow(phi[i], p - 1) * g[i];
    const std::vector<double> t = direct_conv(weight, true);
    const double invp1 = 1.0 / (p + 1.0);
    for (std::size_t i = 0; i < nn; ++i) {
        out[i] = c * invp1 * (ipow(phi[i], p) + p * t[i]);
    }
    return out;
}

} // namespace hartree3d
