// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tfa/common.hpp"

namespace tfa::signal {

// Length-N complex signal on the centered grid t_j = (j - N/2) / sqrt(N),
// N a power of two. The grid step equals the frequency-bin step, which makes
// the centered DFT map the grid onto itself.
struct DiscreteSignal {
    std::vector<cplx> samples;

    int N() const { return static_cast<int>(samples.size()); }
    double dt() const;
    double norm() const;
};

bool is_power_of_two(int n);

// Time coordinate of sample j.
double grid_time(int N, int j);

DiscreteSignal zeros(int N);

// Samples a function on the centered grid, wrapped over +-periods periods
// of length sqrt(N).
DiscreteSignal sample_periodized(int N, const std::function<cplx(double)>& f,
                                 int periods = 3);

// Unit-norm periodized Gaussian (2 sigma)^{1/4} e^{-pi sigma t^2}.
DiscreteSignal gaussian(int N, double sigma = 1.0);

cplx inner(const DiscreteSignal& u, const DiscreteSignal& v);
DiscreteSignal normalized(const DiscreteSignal& f);
DiscreteSignal scale(const DiscreteSignal& f, cplx c);
DiscreteSignal add(const DiscreteSignal& u, const DiscreteSignal& v);
DiscreteSignal subtract(const DiscreteSignal& u, const DiscreteSignal& v);

// Centered unitary DFT and its inverse.
DiscreteSignal dft(const DiscreteSignal& f);
DiscreteSignal idft(const DiscreteSignal& f);

// Circular translation by k samples: out[j] = f[j - k].
DiscreteSignal translate(const DiscreteSignal& f, int k);

// Modulation by m bins: out[j] = f[j] * e^{2 pi i (j - N/2) m / N}.
DiscreteSignal modulate(const DiscreteSignal& f, int m);

// Translation by shift_samples then modulation by mod_bins.
DiscreteSignal tf_shift(const DiscreteSignal& f, int shift_samples, int mod_bins);

// Time-frequency shift by real offsets (tau in time units, nu in frequency
// units): fractional translation in the spectral domain, then modulation.
DiscreteSignal tf_shift_continuous(const DiscreteSignal& f, double tau, double nu);

// Symmetric-phase shift e^{-pi i tau nu} M_nu T_tau; self-adjoint under
// negation and covariant under the metaplectic operators without extra
// phases.
DiscreteSignal tf_shift_weyl(const DiscreteSignal& f, double tau, double nu);

// Dilation sqrt(alpha) f(alpha t) evaluated through the signal's
// band-limited trigonometric interpolant; exact for any alpha > 0.
DiscreteSignal dilate(const DiscreteSignal& f, double alpha);

// Chirp multiplication f(t) e^{-pi i beta t^2}.
DiscreteSignal chirp(const DiscreteSignal& f, double beta);

// Cross-ambiguity grid over all integer lags (rows, lag = row - N/2) and
// bins (cols, offset = col - N/2), with the symmetrizing half-bin phase.
Eigen::MatrixXcd ambiguity(const DiscreteSignal& f, const DiscreteSignal& h);

// Centroid-centered second-moment spreads (delta_tau, delta_nu) in time and
// frequency.
std::pair<double, double> tfl_moments(const DiscreteSignal& f);

// 0/1 mask of the grid cells with |A| > eps.
Eigen::MatrixXi effective_support(const Eigen::MatrixXcd& A, double eps);

// CSV rows "index,re,im".
void save_signal_csv(const DiscreteSignal& f, const std::string& path);
DiscreteSignal load_signal_csv(const std::string& path);

}  // namespace tfa::signal
