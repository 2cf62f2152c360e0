// SPDX-License-Identifier: Apache-2.0
#include "tfa/kernel.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace tfa::kernel {

namespace {

void require_same_shape(const KernelOperator& K1, const KernelOperator& K2) {
    require(K1.n() == K2.n() && K1.h == K2.h, "kernel: size or grid-spacing mismatch");
}

}  // namespace

Eigen::MatrixXcd KernelOperator::full_matrix() const {
    Eigen::MatrixXcd M = h * tilde;
    M.diagonal().array() += mu;
    return M;
}

KernelOperator identity_kernel(int n, double h) {
    require(n > 0 && h > 0.0, "kernel: invalid size or spacing");
    KernelOperator K;
    K.tilde = Eigen::MatrixXcd::Zero(n, n);
    K.mu = 1.0;
    K.h = h;
    return K;
}

KernelOperator laurent_from_generator(const std::function<cplx(double)>& a, cplx mu,
                                      int n, double h) {
    require(n > 0 && h > 0.0, "kernel: invalid size or spacing");
    KernelOperator K;
    K.tilde.resize(n, n);
    K.mu = mu;
    K.h = h;
    std::vector<cplx> diag(static_cast<std::size_t>(2 * n - 1));
    for (int k = -(n - 1); k <= n - 1; ++k)
        diag[static_cast<std::size_t>(k + n - 1)] = a(k * h);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            K.tilde(i, j) = diag[static_cast<std::size_t>(i - j + n - 1)];
    return K;
}

KernelOperator star_compose(const KernelOperator& K1, const KernelOperator& K2) {
    require_same_shape(K1, K2);
    KernelOperator out;
    out.h = K1.h;
    out.mu = K1.mu * K2.mu;
    out.tilde = K1.h * (K1.tilde * K2.tilde);
    out.tilde.noalias() += K1.mu * K2.tilde;
    out.tilde.noalias() += K2.mu * K1.tilde;
    return out;
}

KernelOperator adjoint(const KernelOperator& K) {
    KernelOperator out;
    out.h = K.h;
    out.mu = std::conj(K.mu);
    out.tilde = K.tilde.adjoint();
    return out;
}

Eigen::VectorXcd apply(const KernelOperator& K, const Eigen::VectorXcd& v) {
    require(v.size() == K.n(), "kernel: vector length mismatch");
    return K.h * (K.tilde * v) + K.mu * v;
}

double norm_L1v(const KernelOperator& K, const weights::Weight& v) {
    const int n = K.n();
    double max_row = 0.0, max_col = 0.0;
    std::vector<double> col_sums(static_cast<std::size_t>(n), 0.0);
    std::vector<double> wdiag(static_cast<std::size_t>(2 * n - 1));
    for (int k = -(n - 1); k <= n - 1; ++k)
        wdiag[static_cast<std::size_t>(k + n - 1)] = v.eval(k * K.h);
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            const double t = std::abs(K.tilde(i, j)) * wdiag[static_cast<std::size_t>(i - j + n - 1)];
            row += t;
            col_sums[static_cast<std::size_t>(j)] += t;
        }
        max_row = std::max(max_row, row);
    }
    for (double c : col_sums) max_col = std::max(max_col, c);
    return K.h * std::max(max_row, max_col) + std::abs(K.mu);
}

double norm_Lv(const KernelOperator& K, const weights::Weight& v) {
    const int n = K.n();
    std::vector<double> wdiag(static_cast<std::size_t>(2 * n - 1));
    for (int k = -(n - 1); k <= n - 1; ++k)
        wdiag[static_cast<std::size_t>(k + n - 1)] = v.eval(k * K.h);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            worst = std::max(worst,
                             std::abs(K.tilde(i, j)) * wdiag[static_cast<std::size_t>(i - j + n - 1)]);
    return worst + std::abs(K.mu);
}

double norm_Bus(const KernelOperator& K, const weights::Weight& u, double s) {
    KernelOperator tilde_only = K;
    tilde_only.mu = 0.0;
    const weights::Weight uts = weights::Weight::product(u, s);
    return std::pow(2.0, s) * norm_L1v(tilde_only, u) + norm_Lv(tilde_only, uts) +
           std::abs(K.mu);
}

KernelOperator invert(const KernelOperator& K) {
    const Eigen::MatrixXcd M = K.full_matrix();
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (!(smin > 0.0) || smax / smin > kInvertCondCap)
        throw numeric_error("kernel: matrix singular or condition number above cap");
    const int n = K.n();
    const Eigen::MatrixXcd Minv =
        Eigen::PartialPivLU<Eigen::MatrixXcd>(M).solve(Eigen::MatrixXcd::Identity(n, n));

    KernelOperator out;
    out.h = K.h;
    if (std::abs(K.mu) > 0.0) {
        out.mu = 1.0 / K.mu;
    } else {
        // Estimate the unit-part coefficient as the central-band diagonal of
        // the inverse minus the smooth part (neighbor average).
        cplx acc = 0.0;
        int count = 0;
        for (int i = n / 4; i < 3 * n / 4; ++i) {
            if (i - 1 < 0 || i + 1 >= n) continue;
            acc += Minv(i, i) - 0.5 * (Minv(i, i - 1) + Minv(i, i + 1));
            ++count;
        }
        require(count > 0, "kernel: grid too small for mu extraction");
        out.mu = acc / static_cast<double>(count);
    }
    out.tilde = (Minv - out.mu * Eigen::MatrixXcd::Identity(n, n)) / K.h;
    return out;
}

DecayReport decay_profile(const KernelOperator& K, const weights::Weight& v, int k_lo,
                          int k_hi) {
    const int n = K.n();
    if (k_lo < 0) k_lo = n / 8;
    if (k_hi < 0) k_hi = n / 2;
    require(0 <= k_lo && k_lo <= k_hi && k_hi < n, "kernel: invalid fit window");
    DecayReport rep;
    rep.k_lo = k_lo;
    rep.k_hi = k_hi;
    rep.m.assign(static_cast<std::size_t>(n), 0.0);
    rep.weighted.assign(static_cast<std::size_t>(n), 0.0);
    // centers restricted to the middle half of the grid
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int c2 = i + j;  // 2*center index
            if (c2 < n / 2 || c2 > 3 * n / 2) continue;
            const int k = std::abs(i - j);
            rep.m[static_cast<std::size_t>(k)] =
                std::max(rep.m[static_cast<std::size_t>(k)], std::abs(K.tilde(i, j)));
        }
    }
    for (int k = 0; k < n; ++k)
        rep.weighted[static_cast<std::size_t>(k)] = rep.m[static_cast<std::size_t>(k)] * v.eval(k * K.h);
    // least squares of log m_k = c - lambda * (k h) over the window
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double mk = rep.m[static_cast<std::size_t>(k)];
        if (mk < 1e-300) continue;
        const double x = k * K.h, y = std::log(mk);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt >= 2) {
        const double denom = cnt * sxx - sx * sx;
        if (std::abs(denom) > 0.0) rep.fitted_rate = -(cnt * sxy - sx * sy) / denom;
    }
    return rep;
}

double operator_norm(const KernelOperator& K) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(K.full_matrix());
    return svd.singularValues()(0);
}

double spectral_radius(const KernelOperator& K) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(K.full_matrix(), false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double schur_bound(const KernelOperator& K, double p) {
    require(p >= 1.0, "kernel: p must be in [1, inf]");
    const Eigen::MatrixXd A = K.full_matrix().cwiseAbs();
    const double C1 = A.colwise().sum().maxCoeff();  // max column sum = ||.||_1
    const double C2 = A.rowwise().sum().maxCoeff();  // max row sum = ||.||_inf
    if (std::isinf(p)) return C2;
    const double inv_p = 1.0 / p;
    return std::pow(C1, 1.0 - inv_p) * std::pow(C2, inv_p);
}

std::vector<cplx> central_generator(const KernelOperator& K) {
    const int n = K.n();
    const int j0 = n / 2;
    std::vector<cplx> gen(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) gen[static_cast<std::size_t>(i)] = K.tilde(i, j0);
    return gen;
}

std::vector<cplx> generator_spectrum(const std::vector<cplx>& gen, double h,
                                     const std::vector<double>& omegas) {
    const int n = static_cast<int>(gen.size());
    const int n2 = n / 2;
    std::vector<cplx> out;
    out.reserve(omegas.size());
    for (double w : omegas) {
        cplx acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = (i - n2) * h;
            acc += gen[static_cast<std::size_t>(i)] *
                   std::polar(1.0, -2.0 * kPi * w * t);
        }
        out.push_back(h * acc);
    }
    return out;
}

void save_kernel(const KernelOperator& K, const std::string& base, const std::string& format) {
    require(format == "csv" || format == "bin", "kernel: format must be csv or bin");
    const int n = K.n();
    if (format == "csv") {
        std::ofstream f(base + ".csv");
        require(f.good(), "kernel: cannot open " + base + ".csv");
        f.precision(17);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j) f << ',';
                f << K.tilde(i, j).real() << ',' << K.tilde(i, j).imag();
            }
            f << '\n';
        }
    } else {
        std::ofstream f(base + ".bin", std::ios::binary);
        require(f.good(), "kernel: cannot open " + base + ".bin");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double re = K.tilde(i, j).real(), im = K.tilde(i, j).imag();
                f.write(reinterpret_cast<const char*>(&re), sizeof re);
                f.write(reinterpret_cast<const char*>(&im), sizeof im);
            }
    }
    nlohmann::json side;
    side["mu"] = {K.mu.real(), K.mu.imag()};
    side["h"] = K.h;
    side["n"] = n;
    side["format"] = format;
    std::ofstream sf(base + ".json");
    require(sf.good(), "kernel: cannot open " + base + ".json");
    sf << side.dump(2) << '\n';
}

KernelOperator load_kernel(const std::string& base) {
    std::ifstream sf(base + ".json");
    require(sf.good(), "kernel: cannot open " + base + ".json");
    nlohmann::json side;
    sf >> side;
    const int n = side.at("n").get<int>();
    require(n > 0, "kernel: bad sidecar n");
    KernelOperator K;
    K.h = side.at("h").get<double>();
    K.mu = cplx(side.at("mu")[0].get<double>(), side.at("mu")[1].get<double>());
    K.tilde.resize(n, n);
    const std::string format = side.at("format").get<std::string>();
    if (format == "csv") {
        std::ifstream f(base + ".csv");
        require(f.good(), "kernel: cannot open " + base + ".csv");
        std::string line;
        for (int i = 0; i < n; ++i) {
            require(static_cast<bool>(std::getline(f, line)), "kernel: truncated csv");
            const char* p = line.c_str();
            char* end = nullptr;
            for (int j = 0; j < n; ++j) {
                const double re = std::strtod(p, &end);
                require(end != p, "kernel: malformed csv");
                p = (*end == ',') ? end + 1 : end;
                const double im = std::strtod(p, &end);
                require(end != p, "kernel: malformed csv");
                p = (*end == ',') ? end + 1 : end;
                K.tilde(i, j) = cplx(re, im);
            }
        }
    } else if (format == "bin") {
        std::ifstream f(base + ".bin", std::ios::binary);
        require(f.good(), "kernel: cannot open " + base + ".bin");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double re = 0, im = 0;
                f.read(reinterpret_cast<char*>(&re), sizeof re);
                f.read(reinterpret_cast<char*>(&im), sizeof im);
                require(f.good(), "kernel: truncated binary payload");
                K.tilde(i, j) = cplx(re, im);
            }
    } else {
        throw std::invalid_argument("kernel: unknown format in sidecar");
    }
    return K;
}

void save_decay_report(const DecayReport& rep, const std::string& path) {
    std::ofstream f(path);
    require(f.good(), "kernel: cannot open " + path);
    f.precision(17);
    f << "k,m_k,weighted_k\n";
    for (std::size_t k = 0; k < rep.m.size(); ++k)
        f << k << ',' << rep.m[k] << ',' << rep.weighted[k] << '\n';
}

}  // namespace tfa::kernel
