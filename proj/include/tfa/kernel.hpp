// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "tfa/common.hpp"
#include "tfa/weights.hpp"

namespace tfa::kernel {

// Discretized kernel f = f_tilde + mu*e on a uniform grid of spacing h.
// tilde(i, j) samples the non-unit part on the diagonal offset (i-j)h with
// row index = output variable, so the full operator matrix is
// h*tilde + mu*I and acting on a sampled function is plain matrix action.
struct KernelOperator {
    Eigen::MatrixXcd tilde;
    cplx mu{0.0, 0.0};
    double h = 1.0;

    int n() const { return static_cast<int>(tilde.rows()); }
    Eigen::MatrixXcd full_matrix() const;
};

struct DecayReport {
    std::vector<double> m;         // per-diagonal maxima m_k, k = 0..n-1
    std::vector<double> weighted;  // m_k * v(k h)
    double fitted_rate = 0.0;      // lambda from log m_k ~ c - lambda * (k h)
    int k_lo = 0, k_hi = 0;        // fit window in diagonal index
};

KernelOperator identity_kernel(int n, double h);

// tilde_{ij} = a((i-j)h).
KernelOperator laurent_from_generator(const std::function<cplx(double)>& a, cplx mu,
                                      int n, double h);

// (K1 * K2) with tilde_out = h*T1*T2 + mu1*T2 + mu2*T1, mu_out = mu1*mu2.
KernelOperator star_compose(const KernelOperator& K1, const KernelOperator& K2);

// tilde conjugate-transposed, mu conjugated.
KernelOperator adjoint(const KernelOperator& K);

// (h*tilde + mu*I) v.
Eigen::VectorXcd apply(const KernelOperator& K, const Eigen::VectorXcd& v);

// max of weighted row/column sums (times h) plus |mu|.
double norm_L1v(const KernelOperator& K, const weights::Weight& v);

// max_{ij} |tilde_{ij}| v((i-j)h) + |mu|.
double norm_Lv(const KernelOperator& K, const weights::Weight& v);

// 2^s * ||tilde||_{L1_u} + ||tilde||_{L_{u tau_s}} + |mu|.
double norm_Bus(const KernelOperator& K, const weights::Weight& u, double s);

inline constexpr double kInvertCondCap = 1e12;

// Inverse in the algebra: star_compose(K, invert(K)) ~ identity.
// Throws numeric_error when the full matrix is singular beyond the cap.
KernelOperator invert(const KernelOperator& K);

// Per-diagonal maxima restricted to centers in the middle half of the grid;
// fit window defaults to k in [n/8, n/2].
DecayReport decay_profile(const KernelOperator& K, const weights::Weight& v,
                          int k_lo = -1, int k_hi = -1);

double operator_norm(const KernelOperator& K);
double spectral_radius(const KernelOperator& K);

// Schur bound C1^{1/p'} C2^{1/p} from unweighted absolute column/row sums of
// the full matrix; p in [1, inf].
double schur_bound(const KernelOperator& K, double p);

// Central column of tilde read as a generator sample b((i - n/2) h),
// i = 0..n-1. Meaningful for (near-)Laurent kernels.
std::vector<cplx> central_generator(const KernelOperator& K);

// F(b)(omega) = h * sum_k b_k e^{-2 pi i omega k h} for a generator sampled
// at k h, k = -n/2..n/2-1 (gen[i] holds k = i - n/2).
std::vector<cplx> generator_spectrum(const std::vector<cplx>& gen, double h,
                                     const std::vector<double>& omegas);

// Persistence: <base>.csv or <base>.bin plus <base>.json sidecar {mu, h, n}.
void save_kernel(const KernelOperator& K, const std::string& base,
                 const std::string& format = "csv");
KernelOperator load_kernel(const std::string& base);

// Decay report as CSV rows (k, m_k, weighted_k).
void save_decay_report(const DecayReport& rep, const std::string& path);

}  // namespace tfa::kernel
