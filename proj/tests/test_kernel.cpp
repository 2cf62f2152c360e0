// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#include "tfa/kernel.hpp"
#include "tfa/rng.hpp"

using namespace tfa;
using namespace tfa::kernel;
using tfa::weights::Weight;

namespace {

KernelOperator random_kernel(int n, double h, std::uint64_t seed, double mu_scale = 1.0) {
    RngStream rs(seed, 77);
    KernelOperator K;
    K.h = h;
    K.tilde.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) K.tilde(i, j) = cplx(rs.normal(), rs.normal());
    K.mu = mu_scale * cplx(rs.normal(), rs.normal());
    return K;
}

double max_abs_diff(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    return (A - B).cwiseAbs().maxCoeff();
}

cplx gauss_gen(double t) { return std::exp(-kPi * t * t); }

// Continuous-line Neumann series for the non-unit part of (delta + eps G)^{-1}
// with G the unit-height Gaussian Laurent kernel: the m-fold convolution
// power of e^{-pi t^2} is m^{-1/2} e^{-pi t^2 / m}.
double neumann_inverse_generator(double eps, double t, int terms = 90) {
    double acc = 0.0;
    double sign_eps = 1.0;
    for (int m = 1; m <= terms; ++m) {
        sign_eps *= -eps;
        acc += sign_eps * std::exp(-kPi * t * t / m) / std::sqrt(double(m));
    }
    return acc;
}

}  // namespace

TEST_SUITE_BEGIN("kernel");

TEST_CASE("star unit and shape errors") {
    const KernelOperator K = random_kernel(8, 0.5, 11);
    const KernelOperator E = identity_kernel(8, 0.5);
    CHECK(max_abs_diff(star_compose(K, E).tilde, K.tilde) < 1e-14);
    CHECK(max_abs_diff(star_compose(E, K).tilde, K.tilde) < 1e-14);
    CHECK(std::abs(star_compose(K, E).mu - K.mu) < 1e-14);
    const KernelOperator K2 = random_kernel(9, 0.5, 12);
    CHECK_THROWS_AS((void)star_compose(K, K2), std::invalid_argument);
}

TEST_CASE("star of Laurent kernels convolves generators") {
    const int n = 128;
    const double h = 0.1;
    const auto a1 = [](double t) { return cplx(std::exp(-kPi * t * t)); };
    const auto a2 = [](double t) { return cplx(std::exp(-2.0 * t * t)); };
    const KernelOperator K1 = laurent_from_generator(a1, 0.0, n, h);
    const KernelOperator K2 = laurent_from_generator(a2, 0.0, n, h);
    const KernelOperator C = star_compose(K1, K2);
    // central entries against the full-range discrete convolution
    for (int k = -n / 4; k <= n / 4; ++k) {
        cplx conv = 0.0;
        for (int m = -2 * n; m <= 2 * n; ++m) conv += a1(m * h) * a2((k - m) * h);
        conv *= h;
        const int i = n / 2 + k, j = n / 2;
        CHECK(std::abs(C.tilde(i, j) - conv) < 1e-10);
    }
}

TEST_CASE("star associativity on random triples") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const KernelOperator A = random_kernel(8, 0.3, seed);
        const KernelOperator B = random_kernel(8, 0.3, seed + 10);
        const KernelOperator C = random_kernel(8, 0.3, seed + 20);
        const KernelOperator L = star_compose(star_compose(A, B), C);
        const KernelOperator R = star_compose(A, star_compose(B, C));
        CHECK(max_abs_diff(L.tilde, R.tilde) < 1e-12);
        CHECK(std::abs(L.mu - R.mu) < 1e-12);
    }
}

TEST_CASE("adjoint") {
    const KernelOperator K = random_kernel(8, 0.5, 21);
    const KernelOperator KK = adjoint(adjoint(K));
    CHECK(max_abs_diff(KK.tilde, K.tilde) == 0.0);
    CHECK(KK.mu == K.mu);

    const KernelOperator K2 = random_kernel(8, 0.5, 22);
    const KernelOperator lhs = adjoint(star_compose(K, K2));
    const KernelOperator rhs = star_compose(adjoint(K2), adjoint(K));
    CHECK(max_abs_diff(lhs.tilde, rhs.tilde) < 1e-12);
    CHECK(std::abs(lhs.mu - rhs.mu) < 1e-14);

    KernelOperator H = random_kernel(8, 0.5, 23);
    H.tilde = ((H.tilde + H.tilde.adjoint()) / 2.0).eval();
    H.mu = cplx(0.7, 0.0);
    CHECK(max_abs_diff(adjoint(H).tilde, H.tilde) < 1e-15);
}

TEST_CASE("norms") {
    const Weight one = Weight::one();
    const KernelOperator E = identity_kernel(16, 0.5);
    CHECK(norm_L1v(E, one) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm_Lv(E, one) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm_Bus(E, one, 2.0) == doctest::Approx(1.0).epsilon(1e-14));

    KernelOperator ones;
    ones.h = 1.0;
    ones.mu = 0.0;
    ones.tilde = Eigen::MatrixXcd::Ones(3, 3);
    CHECK(norm_L1v(ones, one) == doctest::Approx(3.0).epsilon(1e-14));

    // L1 norm of the normalized Gaussian generator on a fine grid
    const double c = std::pow(2.0, 0.25);
    const KernelOperator G = laurent_from_generator(
        [&](double t) { return cplx(c * std::exp(-kPi * t * t)); }, 0.0, 512, 0.02);
    CHECK(norm_L1v(G, one) == doctest::Approx(c).epsilon(1e-6));

    // sup-norm example: e^{-|k|} against tau_1 peaks at the main diagonal
    const KernelOperator D = laurent_from_generator(
        [](double t) { return cplx(std::exp(-std::abs(t))); }, 0.0, 32, 1.0);
    CHECK(norm_Lv(D, Weight::polynomial(1.0)) == doctest::Approx(1.0).epsilon(1e-12));

    // homogeneity of the tilde part
    KernelOperator K = random_kernel(8, 0.5, 31, 0.0);
    const double n1 = norm_Lv(K, one);
    K.tilde *= 2.5;
    CHECK(norm_Lv(K, one) == doctest::Approx(2.5 * n1).epsilon(1e-12));

    // s=0, u=1: B-norm reduces to L1 + sup parts (mu contributes once)
    KernelOperator K2 = random_kernel(8, 0.5, 32, 0.0);
    CHECK(norm_Bus(K2, one, 0.0) ==
          doctest::Approx(norm_L1v(K2, one) + norm_Lv(K2, one)).epsilon(1e-12));
}

TEST_CASE("norm submultiplicativity under star") {
    const Weight v = Weight::exp_sqrt();
    for (std::uint64_t seed : {5u, 6u, 7u, 8u}) {
        const KernelOperator A = random_kernel(10, 0.4, seed);
        const KernelOperator B = random_kernel(10, 0.4, seed + 100);
        const KernelOperator C = star_compose(A, B);
        CHECK(norm_L1v(C, v) <= norm_L1v(A, v) * norm_L1v(B, v) * (1.0 + 1e-12));
        CHECK(norm_Bus(C, v, 2.0) <=
              norm_Bus(A, v, 2.0) * norm_Bus(B, v, 2.0) * (1.0 + 1e-12));
    }
}

TEST_CASE("sup-norm submultiplicativity holds with the subconvolutivity constant") {
    const Weight v = Weight::polynomial(2.0);
    // probed on the kernel's own step; the reported C covers offsets well
    // past the kernels' extent of 15.6
    const auto sub = weights::check_subconvolutive(v, 30.0, 0.4);
    REQUIRE(sub.passed);
    for (std::uint64_t seed : {15u, 16u, 17u}) {
        KernelOperator A = random_kernel(40, 0.4, seed, 0.0);
        KernelOperator B = random_kernel(40, 0.4, seed + 100, 0.0);
        // shape random kernels by the weight's reciprocal so they lie in the class
        for (int i = 0; i < 40; ++i)
            for (int j = 0; j < 40; ++j) {
                const double w = std::exp(-v.log_eval((i - j) * 0.4));
                A.tilde(i, j) *= w;
                B.tilde(i, j) *= w;
            }
        const KernelOperator C = star_compose(A, B);
        CHECK(norm_Lv(C, v) <= sub.C * norm_Lv(A, v) * norm_Lv(B, v) * (1.0 + 1e-12));
    }
}

TEST_CASE("laurent construction and action") {
    const KernelOperator Z =
        laurent_from_generator([](double) { return cplx(0.0); }, 0.0, 16, 0.5);
    CHECK(Z.tilde.cwiseAbs().maxCoeff() == 0.0);

    const KernelOperator G = laurent_from_generator(gauss_gen, 0.0, 32, 0.25);
    CHECK(max_abs_diff(G.tilde, G.tilde.transpose()) == 0.0);

    // action equals direct discrete convolution plus the unit part
    const int n = 64;
    const double h = 0.1;
    const cplx mu(0.3, -0.2);
    const KernelOperator K = laurent_from_generator(gauss_gen, mu, n, h);
    RngStream rs(99, 1);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = cplx(rs.normal(), rs.normal());
    const Eigen::VectorXcd got = tfa::kernel::apply(K, v);
    for (int i = 0; i < n; ++i) {
        cplx acc = mu * v(i);
        for (int j = 0; j < n; ++j) acc += h * gauss_gen((i - j) * h) * v(j);
        CHECK(std::abs(got(i) - acc) < 1e-12);
    }
}

TEST_CASE("invert basics") {
    const KernelOperator E = identity_kernel(16, 0.5);
    const KernelOperator Einv = invert(E);
    CHECK(std::abs(Einv.mu - cplx(1.0)) < 1e-12);
    CHECK(Einv.tilde.cwiseAbs().maxCoeff() < 1e-12);

    // Neumann series to three terms at eps = 0.01
    const int n = 96;
    const double h = 1.0 / 16.0;
    const double eps = 0.01;
    const KernelOperator G = laurent_from_generator(gauss_gen, 0.0, n, h);
    KernelOperator K = G;
    K.tilde *= eps;
    K.mu = 1.0;
    const KernelOperator Kinv = invert(K);
    const KernelOperator G2 = star_compose(G, G);
    const KernelOperator G3 = star_compose(G2, G);
    const Eigen::MatrixXcd series =
        -eps * G.tilde + eps * eps * G2.tilde - eps * eps * eps * G3.tilde;
    CHECK(std::abs(Kinv.mu - cplx(1.0)) < 1e-12);
    CHECK(max_abs_diff(Kinv.tilde, series) < 1e-6);

    // the star product against the inverse is the unit
    const KernelOperator P = star_compose(K, Kinv);
    CHECK(std::abs(P.mu - cplx(1.0)) < 1e-12);
    CHECK(P.tilde.cwiseAbs().maxCoeff() < 1e-10);

    // mu = 0 with a unit folded into tilde: the extraction recovers it and
    // the full matrices still multiply to the identity
    KernelOperator M = G;
    M.mu = 0.0;
    M.tilde *= 0.25;
    M.tilde += Eigen::MatrixXcd::Identity(n, n) / h;
    const KernelOperator Minv = invert(M);
    CHECK(std::abs(Minv.mu - cplx(1.0)) < 1e-2);
    const Eigen::MatrixXcd prod = M.full_matrix() * Minv.full_matrix();
    CHECK((prod - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);

    KernelOperator S;  // singular: everything zero
    S.h = 0.5;
    S.mu = 0.0;
    S.tilde = Eigen::MatrixXcd::Zero(8, 8);
    CHECK_THROWS_AS((void)invert(S), numeric_error);
}

TEST_CASE("inverse spectrum sandwich for the unit-height Gaussian") {
    // K = delta + G on n=256, h=1/16; the inverse's generator has Fourier
    // transform -g/(1+g) with g the discrete Gaussian symbol, so |F(b)| is
    // strictly between e^{-pi w^2}/2 and e^{-pi w^2} on the resolved band.
    const int n = 256;
    const double h = 1.0 / 16.0;
    const KernelOperator K = laurent_from_generator(gauss_gen, 1.0, n, h);
    const KernelOperator Kinv = invert(K);
    const auto bgen = central_generator(Kinv);
    const auto fgen = central_generator(K);

    std::vector<double> omegas;
    for (double w = -1.7; w <= 1.7 + 1e-9; w += 0.05) omegas.push_back(w);
    const auto Fb = generator_spectrum(bgen, h, omegas);
    const auto Fg = generator_spectrum(fgen, h, omegas);

    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double w = omegas[i];
        const double env = std::exp(-kPi * w * w);
        CHECK(std::abs(Fb[i].imag()) < 1e-9);
        CHECK(Fb[i].real() < 0.0);
        const double mag = std::abs(Fb[i]);
        CHECK(mag >= 0.5 * env * 0.95);
        CHECK(mag <= env * 1.05);
        // exact discrete identity F(b) = -F(g)/(1+F(g))
        const cplx expected = -Fg[i] / (1.0 + Fg[i]);
        CHECK(std::abs(Fb[i] - expected) < 1e-10);
    }
}

TEST_CASE("inverse spectrum for the normalized Gaussian generator") {
    // Same setup with the 2^{1/4}-normalized generator: the exact transform
    // is -c g/(1+c g); the two-sided envelope bound holds on the core band
    // |w| <= 0.7 (the upper bound genuinely fails in the far tails).
    const int n = 256;
    const double h = 1.0 / 16.0;
    const double c = std::pow(2.0, 0.25);
    const KernelOperator K = laurent_from_generator(
        [&](double t) { return cplx(c * std::exp(-kPi * t * t)); }, 1.0, n, h);
    const KernelOperator Kinv = invert(K);
    const auto bgen = central_generator(Kinv);

    std::vector<double> omegas;
    for (double w = -1.5; w <= 1.5 + 1e-9; w += 0.05) omegas.push_back(w);
    const auto Fb = generator_spectrum(bgen, h, omegas);
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double w = omegas[i];
        const double g = std::exp(-kPi * w * w);
        const double expected = c * g / (1.0 + c * g);
        CHECK(std::abs(Fb[i] + expected) < 1e-6);
        if (std::abs(w) <= 0.7) {
            CHECK(std::abs(Fb[i]) >= 0.5 * g * 0.95);
            CHECK(std::abs(Fb[i]) <= g * 1.05);
        }
    }
}

TEST_CASE("inverse decay matches the continuous Neumann oracle") {
    // Frozen probe grid: n=256, h=1/32 (support [-4,4]); interior fit
    // window k in [5,17]. Hand-computed oracle anchors pin the oracle itself.
    CHECK(neumann_inverse_generator(0.5, 0.15) == doctest::Approx(-0.34451).epsilon(6e-3));
    CHECK(neumann_inverse_generator(0.5, 0.55) == doctest::Approx(-0.11918).epsilon(6e-3));

    const int n = 256;
    const double h = 1.0 / 32.0;
    const Weight one = Weight::one();
    const KernelOperator G = laurent_from_generator(gauss_gen, 0.0, n, h);
    const auto fwd = decay_profile(G, one, 5, 17);

    for (double eps : {0.1, 0.5}) {
        KernelOperator K = G;
        K.tilde *= eps;
        K.mu = 1.0;
        const KernelOperator Kinv = invert(K);
        const auto bgen = central_generator(Kinv);
        for (int k : {5, 10, 17}) {
            const double got = bgen[static_cast<std::size_t>(n / 2 + k)].real();
            const double want = neumann_inverse_generator(eps, k * h);
            CHECK(got == doctest::Approx(want).epsilon(1e-6));
        }
        const auto inv = decay_profile(Kinv, one, 5, 17);
        CHECK(inv.fitted_rate >= 0.9 * fwd.fitted_rate);
        CHECK(inv.fitted_rate <= 1.6 * fwd.fitted_rate);
    }
}

TEST_CASE("decay profile") {
    const Weight one = Weight::one();
    // exponential generator: rate 1 per unit t
    const KernelOperator D = laurent_from_generator(
        [](double t) { return cplx(std::exp(-std::abs(t))); }, 0.0, 64, 0.25);
    const auto rep = decay_profile(D, one);
    CHECK(rep.fitted_rate == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.m[0] == doctest::Approx(1.0));
    CHECK(rep.m[4] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    const auto repE = decay_profile(identity_kernel(64, 0.25), one);
    for (double mk : repE.m) CHECK(mk == 0.0);
    CHECK(repE.fitted_rate == 0.0);

    // weighted profile multiplies by v(kh)
    const auto repW = decay_profile(D, Weight::polynomial(1.0));
    CHECK(repW.weighted[4] == doctest::Approx(std::exp(-1.0) * 2.0).epsilon(1e-12));
}

TEST_CASE("operator norm and spectral radius") {
    const KernelOperator E = identity_kernel(12, 0.5);
    CHECK(operator_norm(E) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_radius(E) == doctest::Approx(1.0).epsilon(1e-12));

    KernelOperator Hk = random_kernel(16, 0.5, 41, 0.0);
    Hk.tilde = ((Hk.tilde + Hk.tilde.adjoint()) / 2.0).eval();
    Hk.mu = cplx(0.4, 0.0);
    CHECK(operator_norm(Hk) == doctest::Approx(spectral_radius(Hk)).epsilon(1e-10));

    KernelOperator Nk;
    Nk.h = 1.0;
    Nk.mu = 0.0;
    Nk.tilde = Eigen::MatrixXcd::Zero(8, 8);
    for (int i = 0; i + 1 < 8; ++i) Nk.tilde(i, i + 1) = 1.0;
    CHECK(spectral_radius(Nk) < 1e-8);
    CHECK(operator_norm(Nk) > 0.5);
}

TEST_CASE("schur bound") {
    const KernelOperator E = identity_kernel(8, 0.5);
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()})
        CHECK(schur_bound(E, p) == doctest::Approx(1.0).epsilon(1e-12));

    RngStream rs(55, 3);
    KernelOperator K;
    K.h = 0.5;
    K.mu = 0.0;
    K.tilde.resize(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) K.tilde(i, j) = std::abs(rs.normal());
    CHECK(schur_bound(K, 2.0) >= operator_norm(K) * (1.0 - 1e-12));

    KernelOperator S = K;
    S.tilde = ((K.tilde + K.tilde.transpose()) / 2.0).eval();
    const double b1 = schur_bound(S, 1.0);
    const double b2 = schur_bound(S, 2.0);
    const double binf = schur_bound(S, std::numeric_limits<double>::infinity());
    CHECK(b1 == doctest::Approx(b2).epsilon(1e-12));
    CHECK(b1 == doctest::Approx(binf).epsilon(1e-12));

    CHECK_THROWS_AS((void)schur_bound(K, 0.5), std::invalid_argument);
}

TEST_CASE("save and load round trip") {
    const KernelOperator K = random_kernel(6, 0.25, 61);
    for (const std::string fmt : {"csv", "bin"}) {
        const std::string base = "/tmp/tfa_kernel_test_" + fmt;
        save_kernel(K, base, fmt);
        const KernelOperator L = load_kernel(base);
        CHECK(L.h == K.h);
        CHECK(L.mu == K.mu);
        CHECK(max_abs_diff(L.tilde, K.tilde) == 0.0);
        std::remove((base + ".json").c_str());
        std::remove((base + "." + fmt).c_str());
    }
}

TEST_SUITE_END();
