// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tfa/common.hpp"
#include "tfa/signal.hpp"

namespace tfa::channel {

using signal::DiscreteSignal;

enum class Fading { ricean, rayleigh };

// Doubly dispersive scattering profile: exponential decay over delay
// (amplitude ratio alpha between delay tau0 and delay 0) times a Jakes
// Doppler shape with clustering parameter beta. Ricean fading adds a
// deterministic unit line-of-sight tap; los_weight in (0, 1] sets the
// scattered-to-LOS energy ratio (1 - los_weight) / los_weight, so
// los_weight = 1 is a pure line of sight.
struct ScatteringSpec {
    int tau0 = 0;
    int nu0 = 0;
    double alpha = 0.5;
    double beta = 0.9;
    Fading fading = Fading::rayleigh;
    double los_weight = 1.0;
};

// One random draw of the channel. spreading(tau, c) weights the delay-tau,
// Doppler nu = c - nu0 branch; the LOS tap acts at (0, 0) without fading.
struct ChannelRealization {
    int N = 0;
    int tau0 = 0;
    int nu0 = 0;
    Eigen::MatrixXcd spreading;
    cplx los_tap = 0.0;
    std::uint64_t rng_seed = 0;
};

// Nonnegative scattering grid of shape (tau0+1) x (2 nu0 + 1), normalized
// to unit total energy (the LOS tap is excluded from the normalization).
Eigen::MatrixXd scattering_function(const ScatteringSpec& spec, int N);

// Per-cell independent complex Gaussian draws weighted by the square root
// of the scattering grid (uncorrelated scattering); bit-deterministic per
// seed via counter-based streams.
ChannelRealization realize(const ScatteringSpec& spec, int N,
                           std::uint64_t seed);

// r[t] = sum spreading(tau, nu) s[(t - tau) mod N] e^{2 pi i nu t / N}
//      + los_tap s[t].
DiscreteSignal apply_channel(const ChannelRealization& ch,
                             const DiscreteSignal& s);

// Symplectic Fourier transform of the spreading function at the given
// (time sample, frequency bin) points:
// S_H(lambda, m) = sum spreading(tau, nu) e^{-2 pi i (tau m - nu lambda)/N}
//               + los_tap.
std::vector<cplx> weyl_symbol(const ChannelRealization& ch,
                              const std::vector<std::pair<int, int>>& points);

// Adds circular complex Gaussian noise of the given per-sample variance;
// bit-deterministic per seed.
DiscreteSignal add_awgn(const DiscreteSignal& s, double variance,
                        std::uint64_t seed);

// One "tau,nu,re,im" row per spreading cell, after a comment line carrying
// N, seed and the LOS tap.
void save_spreading_csv(const ChannelRealization& ch, const std::string& path);

}  // namespace tfa::channel
