// SPDX-License-Identifier: Apache-2.0
#include "tfa/signal.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tfa/fft.hpp"

namespace tfa::signal {

namespace {

int mod_n(int j, int n) {
    int r = j % n;
    if (r < 0) r += n;
    return r;
}

void check_signal(const DiscreteSignal& f) {
    require(is_power_of_two(f.N()), "signal length must be a power of two");
}

DiscreteSignal rotate_half(const DiscreteSignal& f) {
    const int n = f.N();
    DiscreteSignal out = zeros(n);
    for (int j = 0; j < n; ++j) out.samples[j] = f.samples[mod_n(j + n / 2, n)];
    return out;
}

DiscreteSignal dft_impl(const DiscreteSignal& f, int sign) {
    check_signal(f);
    DiscreteSignal y = rotate_half(f);
    fft::transform(y.samples, sign);
    const double s = 1.0 / std::sqrt(double(f.N()));
    for (auto& v : y.samples) v *= s;
    return rotate_half(y);
}

}  // namespace

double DiscreteSignal::dt() const { return 1.0 / std::sqrt(double(N())); }

double DiscreteSignal::norm() const {
    double acc = 0.0;
    for (const cplx& v : samples) acc += std::norm(v);
    return std::sqrt(acc);
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double grid_time(int N, int j) {
    return (double(j) - double(N) / 2.0) / std::sqrt(double(N));
}

DiscreteSignal zeros(int N) {
    require(is_power_of_two(N), "signal length must be a power of two");
    DiscreteSignal f;
    f.samples.assign(static_cast<std::size_t>(N), cplx(0.0));
    return f;
}

DiscreteSignal sample_periodized(int N, const std::function<cplx(double)>& f,
                                 int periods) {
    DiscreteSignal out = zeros(N);
    const double period = std::sqrt(double(N));
    for (int j = 0; j < N; ++j) {
        const double t = grid_time(N, j);
        cplx acc = 0.0;
        for (int m = -periods; m <= periods; ++m) acc += f(t + period * double(m));
        out.samples[j] = acc;
    }
    return out;
}

DiscreteSignal gaussian(int N, double sigma) {
    require(sigma > 0.0, "gaussian needs sigma > 0");
    const double amp = std::pow(2.0 * sigma, 0.25);
    DiscreteSignal g = sample_periodized(
        N, [&](double t) { return cplx(amp * std::exp(-kPi * sigma * t * t)); });
    return normalized(g);
}

cplx inner(const DiscreteSignal& u, const DiscreteSignal& v) {
    require(u.N() == v.N(), "signal lengths must match");
    cplx acc = 0.0;
    for (int j = 0; j < u.N(); ++j) acc += u.samples[j] * std::conj(v.samples[j]);
    return acc;
}

DiscreteSignal normalized(const DiscreteSignal& f) {
    const double n = f.norm();
    require(n > 0.0, "cannot normalize the zero signal");
    return scale(f, cplx(1.0 / n));
}

DiscreteSignal scale(const DiscreteSignal& f, cplx c) {
    DiscreteSignal out = f;
    for (auto& v : out.samples) v *= c;
    return out;
}

DiscreteSignal add(const DiscreteSignal& u, const DiscreteSignal& v) {
    require(u.N() == v.N(), "signal lengths must match");
    DiscreteSignal out = u;
    for (int j = 0; j < u.N(); ++j) out.samples[j] += v.samples[j];
    return out;
}

DiscreteSignal subtract(const DiscreteSignal& u, const DiscreteSignal& v) {
    require(u.N() == v.N(), "signal lengths must match");
    DiscreteSignal out = u;
    for (int j = 0; j < u.N(); ++j) out.samples[j] -= v.samples[j];
    return out;
}

DiscreteSignal dft(const DiscreteSignal& f) { return dft_impl(f, -1); }

DiscreteSignal idft(const DiscreteSignal& f) { return dft_impl(f, +1); }

DiscreteSignal translate(const DiscreteSignal& f, int k) {
    check_signal(f);
    const int n = f.N();
    DiscreteSignal out = zeros(n);
    for (int j = 0; j < n; ++j) out.samples[j] = f.samples[mod_n(j - k, n)];
    return out;
}

DiscreteSignal modulate(const DiscreteSignal& f, int m) {
    check_signal(f);
    const int n = f.N();
    DiscreteSignal out = zeros(n);
    for (int j = 0; j < n; ++j) {
        const double ph = 2.0 * kPi * double(j - n / 2) * double(m) / double(n);
        out.samples[j] = f.samples[j] * std::polar(1.0, ph);
    }
    return out;
}

DiscreteSignal tf_shift(const DiscreteSignal& f, int shift_samples, int mod_bins) {
    return modulate(translate(f, shift_samples), mod_bins);
}

DiscreteSignal tf_shift_continuous(const DiscreteSignal& f, double tau, double nu) {
    check_signal(f);
    const int n = f.N();
    const double shift_samples = tau / f.dt();
    DiscreteSignal F = dft(f);
    for (int k = 0; k < n; ++k) {
        const double ph =
            -2.0 * kPi * double(k - n / 2) * shift_samples / double(n);
        F.samples[k] *= std::polar(1.0, ph);
    }
    DiscreteSignal out = idft(F);
    for (int j = 0; j < n; ++j) {
        const double ph = 2.0 * kPi * nu * grid_time(n, j);
        out.samples[j] *= std::polar(1.0, ph);
    }
    return out;
}

DiscreteSignal tf_shift_weyl(const DiscreteSignal& f, double tau, double nu) {
    DiscreteSignal out = tf_shift_continuous(f, tau, nu);
    const cplx phase = std::polar(1.0, -kPi * tau * nu);
    for (auto& v : out.samples) v *= phase;
    return out;
}

namespace {

// Evaluates sqrt(alpha) f(alpha t_j) through the trigonometric interpolant.
// Requires alpha <= 1 so the evaluation points stay inside the fundamental
// period; a compression would wrap around and alias.
DiscreteSignal dilate_stretch(const DiscreteSignal& f, double alpha) {
    const int n = f.N();
    const DiscreteSignal F = dft(f);
    DiscreteSignal out = zeros(n);
    const double amp = std::sqrt(alpha) / std::sqrt(double(n));
    for (int j = 0; j < n; ++j) {
        const double u = alpha * double(j - n / 2);
        cplx acc = 0.0;
        for (int k = 0; k < n; ++k) {
            const double ph = 2.0 * kPi * u * double(k - n / 2) / double(n);
            acc += F.samples[k] * std::polar(1.0, ph);
        }
        out.samples[j] = amp * acc;
    }
    return out;
}

}  // namespace

DiscreteSignal dilate(const DiscreteSignal& f, double alpha) {
    check_signal(f);
    require(alpha > 0.0, "dilate needs alpha > 0");
    if (alpha <= 1.0) return dilate_stretch(f, alpha);
    // Compression escapes the fundamental period, so conjugate by the
    // Fourier transform where the same factor acts as a stretch.
    return idft(dilate_stretch(dft(f), 1.0 / alpha));
}

DiscreteSignal chirp(const DiscreteSignal& f, double beta) {
    check_signal(f);
    const int n = f.N();
    DiscreteSignal out = f;
    for (int j = 0; j < n; ++j) {
        const double t = grid_time(n, j);
        out.samples[j] *= std::polar(1.0, -kPi * beta * t * t);
    }
    return out;
}

Eigen::MatrixXcd ambiguity(const DiscreteSignal& f, const DiscreteSignal& h) {
    check_signal(f);
    require(f.N() == h.N(), "signal lengths must match");
    const int n = f.N();
    Eigen::MatrixXcd A(n, n);
    for (int r = 0; r < n; ++r) {
        const int lag = r - n / 2;
        DiscreteSignal p = zeros(n);
        for (int j = 0; j < n; ++j)
            p.samples[j] = f.samples[j] * std::conj(h.samples[mod_n(j - lag, n)]);
        DiscreteSignal row = dft(p);
        const double s = std::sqrt(double(n));
        for (int m = 0; m < n; ++m) {
            const double ph = kPi * double(m - n / 2) * double(lag) / double(n);
            A(r, m) = s * row.samples[m] * std::polar(1.0, ph);
        }
    }
    return A;
}

std::pair<double, double> tfl_moments(const DiscreteSignal& f) {
    check_signal(f);
    const int n = f.N();
    auto spread = [n](const DiscreteSignal& s) {
        double total = 0.0, mean = 0.0;
        for (int j = 0; j < n; ++j) {
            const double w = std::norm(s.samples[j]);
            total += w;
            mean += grid_time(n, j) * w;
        }
        require(total > 0.0, "tfl_moments needs a nonzero signal");
        mean /= total;
        double var = 0.0;
        for (int j = 0; j < n; ++j) {
            const double d = grid_time(n, j) - mean;
            var += d * d * std::norm(s.samples[j]);
        }
        return std::sqrt(var / total);
    };
    return {spread(f), spread(dft(f))};
}

Eigen::MatrixXi effective_support(const Eigen::MatrixXcd& A, double eps) {
    require(eps >= 0.0, "support threshold must be nonnegative");
    Eigen::MatrixXi mask(A.rows(), A.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            mask(i, j) = std::abs(A(i, j)) > eps ? 1 : 0;
    return mask;
}

void save_signal_csv(const DiscreteSignal& f, const std::string& path) {
    std::ofstream out(path);
    require(out.good(), "cannot open signal file for writing: " + path);
    out << "index,re,im\n";
    char buf[96];
    for (int j = 0; j < f.N(); ++j) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", j,
                      f.samples[j].real(), f.samples[j].imag());
        out << buf;
    }
    require(out.good(), "write failed: " + path);
}

DiscreteSignal load_signal_csv(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open signal file: " + path);
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "empty signal file: " + path);
    std::vector<cplx> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        std::getline(ss, tok, ',');
        std::getline(ss, tok, ',');
        const double re = std::strtod(tok.c_str(), nullptr);
        std::getline(ss, tok, ',');
        const double im = std::strtod(tok.c_str(), nullptr);
        vals.emplace_back(re, im);
    }
    DiscreteSignal f;
    f.samples = std::move(vals);
    require(is_power_of_two(f.N()), "signal file length must be a power of two");
    return f;
}

}  // namespace tfa::signal
