// SPDX-License-Identifier: Apache-2.0
#include "tfa/channel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "tfa/rng.hpp"

namespace tfa::channel {

namespace {

void check_spec(const ScatteringSpec& spec, int N) {
    require(N >= 1, "grid length must be positive");
    require(spec.tau0 >= 0 && spec.tau0 < N, "tau0 out of grid bounds");
    require(spec.nu0 >= 0 && 2 * spec.nu0 + 1 <= N, "nu0 out of grid bounds");
    require(double(spec.tau0) * double(spec.nu0) < double(N),
            "channel must be underspread: tau0 * nu0 < N");
    require(spec.alpha > 0.0 && spec.alpha < 1.0, "alpha must be in (0, 1)");
    require(spec.beta >= 0.0 && spec.beta < 1.0, "beta must be in [0, 1)");
    if (spec.fading == Fading::ricean)
        require(spec.los_weight > 0.0 && spec.los_weight <= 1.0,
                "los_weight must be in (0, 1]");
}

}  // namespace

Eigen::MatrixXd scattering_function(const ScatteringSpec& spec, int N) {
    check_spec(spec, N);
    const int rows = spec.tau0 + 1;
    const int cols = 2 * spec.nu0 + 1;
    Eigen::VectorXd delay(rows);
    for (int t = 0; t < rows; ++t)
        delay(t) = spec.tau0 == 0
                       ? 1.0
                       : std::pow(spec.alpha, double(t) / double(spec.tau0));
    Eigen::VectorXd doppler(cols);
    for (int c = 0; c < cols; ++c) {
        if (spec.nu0 == 0) {
            doppler(c) = 1.0;
            continue;
        }
        // The Jakes density has an integrable edge singularity; the edge
        // value is capped at the value a quarter-bin inside the band.
        const double edge = 1.0 - 1.0 / (4.0 * spec.nu0);
        const double r =
            std::min(std::abs(double(c - spec.nu0)) / spec.nu0, edge);
        doppler(c) = 1.0 / std::sqrt(1.0 - spec.beta * r * r);
    }
    Eigen::MatrixXd grid = delay * doppler.transpose();
    grid /= grid.sum();
    return grid;
}

ChannelRealization realize(const ScatteringSpec& spec, int N,
                           std::uint64_t seed) {
    const Eigen::MatrixXd grid = scattering_function(spec, N);
    const bool ricean = spec.fading == Fading::ricean;
    const double scatter_energy =
        ricean ? (1.0 - spec.los_weight) / spec.los_weight : 1.0;

    ChannelRealization ch;
    ch.N = N;
    ch.tau0 = spec.tau0;
    ch.nu0 = spec.nu0;
    ch.rng_seed = seed;
    ch.los_tap = ricean ? cplx(1.0) : cplx(0.0);
    ch.spreading.resize(grid.rows(), grid.cols());
    for (int t = 0; t < grid.rows(); ++t) {
        for (int c = 0; c < grid.cols(); ++c) {
            const std::uint64_t counter =
                std::uint64_t(t) * std::uint64_t(grid.cols()) +
                std::uint64_t(c);
            ch.spreading(t, c) =
                std::sqrt(scatter_energy * grid(t, c)) *
                rng::complex_normal(seed, rng::kStreamChannel, counter);
        }
    }
    return ch;
}

DiscreteSignal apply_channel(const ChannelRealization& ch,
                             const DiscreteSignal& s) {
    const int N = s.N();
    require(N == ch.N, "realization grid length mismatch");
    DiscreteSignal r = signal::zeros(N);
    for (int t = 0; t < int(ch.spreading.rows()); ++t) {
        for (int c = 0; c < int(ch.spreading.cols()); ++c) {
            const cplx w = ch.spreading(t, c);
            if (w == cplx(0.0)) continue;
            const int nu = c - ch.nu0;
            const cplx step = std::polar(1.0, 2.0 * kPi * nu / N);
            cplx phase = 1.0;
            for (int j = 0; j < N; ++j) {
                r.samples[size_t(j)] +=
                    w * s.samples[size_t((j - t + N) % N)] * phase;
                phase *= step;
            }
        }
    }
    if (ch.los_tap != cplx(0.0))
        for (int j = 0; j < N; ++j)
            r.samples[size_t(j)] += ch.los_tap * s.samples[size_t(j)];
    return r;
}

std::vector<cplx> weyl_symbol(const ChannelRealization& ch,
                              const std::vector<std::pair<int, int>>& points) {
    std::vector<cplx> out;
    out.reserve(points.size());
    for (const auto& [lambda, m] : points) {
        cplx acc = ch.los_tap;
        for (int t = 0; t < int(ch.spreading.rows()); ++t) {
            for (int c = 0; c < int(ch.spreading.cols()); ++c) {
                const cplx w = ch.spreading(t, c);
                if (w == cplx(0.0)) continue;
                const int nu = c - ch.nu0;
                acc += w * std::polar(1.0, -2.0 * kPi *
                                               (double(t) * m -
                                                double(nu) * lambda) /
                                               ch.N);
            }
        }
        out.push_back(acc);
    }
    return out;
}

DiscreteSignal add_awgn(const DiscreteSignal& s, double variance,
                        std::uint64_t seed) {
    require(variance >= 0.0, "noise variance must be nonnegative");
    DiscreteSignal out = s;
    if (variance == 0.0) return out;
    const double amp = std::sqrt(variance);
    for (int j = 0; j < s.N(); ++j)
        out.samples[size_t(j)] +=
            amp * rng::complex_normal(seed, rng::kStreamNoise, std::uint64_t(j));
    return out;
}

void save_spreading_csv(const ChannelRealization& ch,
                        const std::string& path) {
    std::ofstream f(path);
    require(f.good(), "cannot open " + path);
    char head[160];
    std::snprintf(head, sizeof(head),
                  "# N=%d seed=%llu los_re=%.17g los_im=%.17g\n", ch.N,
                  static_cast<unsigned long long>(ch.rng_seed),
                  ch.los_tap.real(), ch.los_tap.imag());
    f << head << "tau,nu,re,im\n";
    for (int t = 0; t < int(ch.spreading.rows()); ++t)
        for (int c = 0; c < int(ch.spreading.cols()); ++c) {
            char line[120];
            std::snprintf(line, sizeof(line), "%d,%d,%.17g,%.17g\n", t,
                          c - ch.nu0, ch.spreading(t, c).real(),
                          ch.spreading(t, c).imag());
            f << line;
        }
    require(f.good(), "write failed: " + path);
}

}  // namespace tfa::channel
