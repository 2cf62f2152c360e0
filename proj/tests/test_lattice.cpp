// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tfa/lattice.hpp"

using namespace tfa::lattice;

namespace {

const double kQ3 = std::pow(3.0, 0.25);
const double kSqrt2 = std::sqrt(2.0);

bool same_generator(const LatticeGenerator& a, const LatticeGenerator& b,
                    double tol = 1e-12) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol &&
           std::abs(a.z - b.z) <= tol;
}

// Point sets compared by sorted coordinates on a shared window.
bool same_point_set(const LatticeGenerator& a, const LatticeGenerator& b,
                    double window) {
    auto pa = enumerate_points(a, window);
    auto pb = enumerate_points(b, window);
    if (pa.size() != pb.size()) return false;
    auto key = [](const Point& p, const Point& q) {
        if (std::abs(p.t - q.t) > 1e-9) return p.t < q.t;
        return p.f < q.f;
    };
    std::sort(pa.begin(), pa.end(), key);
    std::sort(pb.begin(), pb.end(), key);
    for (std::size_t i = 0; i < pa.size(); ++i)
        if (std::abs(pa[i].t - pb[i].t) > 1e-8 || std::abs(pa[i].f - pb[i].f) > 1e-8)
            return false;
    return true;
}

}  // namespace

TEST_SUITE_BEGIN("lattice");

TEST_CASE("construction and density") {
    CHECK(rectangular(kSqrt2, kSqrt2).density() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(hexagonal(kSqrt2, kSqrt2).density() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(make_generator(2.0, 1.0, 1.0).density() == doctest::Approx(0.5).epsilon(1e-14));

    const LatticeGenerator H = hexagonal(kSqrt2, kSqrt2);
    CHECK(H.x == doctest::Approx(2.0 / kQ3).epsilon(1e-15));
    CHECK(H.y == doctest::Approx(1.0 / kQ3).epsilon(1e-15));
    CHECK(H.z == doctest::Approx(kQ3).epsilon(1e-15));

    CHECK_THROWS_AS((void)make_generator(0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)make_generator(1.0, 0.0, -1.0), std::invalid_argument);
    CHECK(same_generator(from_name("rect", 2.0, 3.0), rectangular(2.0, 3.0)));
    CHECK(same_generator(from_name("hex", 2.0, 3.0), hexagonal(2.0, 3.0)));
    CHECK_THROWS_AS((void)from_name("tri", 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("adjoint lattice") {
    const LatticeGenerator A = adjoint_lattice(rectangular(1.0 / kSqrt2, 1.0 / kSqrt2));
    CHECK(same_generator(A, rectangular(kSqrt2, kSqrt2)));

    for (const auto& L :
         {rectangular(0.7, 3.1), hexagonal(1.3, 0.4), make_generator(2.0, 1.0, 1.0)}) {
        CHECK(adjoint_lattice(L).density() ==
              doctest::Approx(1.0 / L.density()).epsilon(1e-12));
        CHECK(same_generator(adjoint_lattice(adjoint_lattice(L)), L, 1e-12));
    }

    const LatticeGenerator U = make_generator(2.0, 0.3, 0.5);  // density 1
    CHECK(same_generator(adjoint_lattice(U), U, 1e-14));
}

TEST_CASE("minimal distance and enumeration") {
    CHECK(min_distance(rectangular(1.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_distance(rectangular(2.0, 3.0)) == doctest::Approx(2.0).epsilon(1e-12));

    const double hex_min = std::sqrt(2.0 * 2.0 / std::sqrt(3.0));
    CHECK(hex_min == doctest::Approx(1.5197).epsilon(1e-4));
    CHECK(min_distance(hexagonal(kSqrt2, kSqrt2)) ==
          doctest::Approx(hex_min).epsilon(1e-12));
    CHECK(min_distance(hexagonal(kSqrt2, kSqrt2)) >
          min_distance(rectangular(kSqrt2, kSqrt2)));

    const LatticeGenerator S = make_generator(2.5 * 2.0, 2.5 * 1.0, 2.5 * 1.0);
    CHECK(min_distance(S) ==
          doctest::Approx(2.5 * min_distance(make_generator(2.0, 1.0, 1.0)))
              .epsilon(1e-12));

    const auto pts = enumerate_points(rectangular(1.0, 1.0), 2.0);
    CHECK(pts.size() == 25);
    for (const auto& p : pts) {
        CHECK(std::abs(p.t) <= 2.0 + 1e-9);
        CHECK(std::abs(p.f) <= 2.0 + 1e-9);
    }
}

TEST_CASE("transition parameters") {
    {
        const auto [alpha, beta] =
            transition_params(hexagonal(kSqrt2, kSqrt2), make_generator(2.0, 1.0, 1.0));
        CHECK(alpha == doctest::Approx(1.0 / kQ3).epsilon(1e-14));
        CHECK(beta == doctest::Approx(0.0).epsilon(1e-14));
    }
    {
        const auto [alpha, beta] =
            transition_params(rectangular(kSqrt2 / 2.0, kSqrt2 / 2.0),
                              hexagonal(1.0 / kSqrt2, 1.0 / kSqrt2));
        CHECK(alpha == doctest::Approx(kQ3 / kSqrt2).epsilon(1e-14));
        CHECK(beta == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    }
    {
        const LatticeGenerator L = make_generator(2.0, 1.0, 1.0);
        const auto [alpha, beta] = transition_params(L, L);
        CHECK(alpha == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(beta == doctest::Approx(0.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(
        (void)transition_params(rectangular(1.0, 1.0), rectangular(2.0, 1.0)),
        std::invalid_argument);

    // chained transitions compose: alpha multiplies, beta accumulates
    const LatticeGenerator L1 = hexagonal(kSqrt2, kSqrt2);
    const LatticeGenerator L2 = make_generator(2.0, 1.0, 1.0);
    const LatticeGenerator L3 = rectangular(kSqrt2, kSqrt2);
    const auto [a12, b12] = transition_params(L1, L2);
    const auto [a23, b23] = transition_params(L2, L3);
    const auto [a13, b13] = transition_params(L1, L3);
    CHECK(a13 == doctest::Approx(a12 * a23).epsilon(1e-14));
    CHECK(b13 == doctest::Approx(b23 + b12 / (a23 * a23)).epsilon(1e-14));
}

TEST_CASE("symplectic decomposition") {
    auto reconstruct = [](double alpha, double beta, const LatticeGenerator& LR) {
        const Eigen::Matrix2d J = mat_J();
        return Eigen::Matrix2d(J * mat_shear(beta) * mat_dilation(alpha) *
                               J.inverse() * LR.matrix());
    };

    {
        const LatticeGenerator LR = rectangular(1.3, 0.6);
        const auto [alpha, beta] = decompose_symplectic(LR, LR);
        CHECK(alpha == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(beta == doctest::Approx(0.0).epsilon(1e-15));
    }
    {
        const LatticeGenerator L = make_generator(2.0, 1.0, 1.0);
        const LatticeGenerator LR = rectangular(2.0, 1.0);
        const auto [alpha, beta] = decompose_symplectic(L, LR);
        CHECK(alpha == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(beta == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK((reconstruct(alpha, beta, LR) - L.matrix()).cwiseAbs().maxCoeff() <
              1e-12);
    }
    {
        const LatticeGenerator L = make_generator(2.0, 1.0, 1.0);
        const LatticeGenerator LR = rectangular(kSqrt2, kSqrt2);
        const auto [alpha, beta] = decompose_symplectic(L, LR);
        CHECK((reconstruct(alpha, beta, LR) - L.matrix()).cwiseAbs().maxCoeff() <
              1e-12);
    }
    {
        const LatticeGenerator L = hexagonal(kSqrt2, kSqrt2);
        const LatticeGenerator LR = rectangular(kSqrt2, kSqrt2);
        const auto [alpha, beta] = decompose_symplectic(L, LR);
        CHECK((reconstruct(alpha, beta, LR) - L.matrix()).cwiseAbs().maxCoeff() <
              1e-12);
    }
    CHECK_THROWS_AS((void)decompose_symplectic(make_generator(2.0, 1.0, 1.0),
                                               rectangular(kSqrt2, 1.0 / kSqrt2)),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)decompose_symplectic(make_generator(2.0, 1.0, 1.0),
                                               make_generator(2.0, 0.5, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("canonicalization") {
    Eigen::Matrix2d M;
    M << kSqrt2, kSqrt2, -kSqrt2, 0.0;
    const LatticeGenerator C = canonicalize(M);
    CHECK(same_generator(C, rectangular(kSqrt2, kSqrt2)));

    // idempotence
    for (const auto& L :
         {rectangular(1.7, 0.3), hexagonal(1.0, 2.0), make_generator(2.0, 1.0, 1.0)}) {
        const LatticeGenerator C1 = canonicalize(L);
        CHECK(same_generator(canonicalize(C1), C1));
        CHECK(same_point_set(L, C1, 6.0 * std::max(L.x, L.z)));
    }

    // right-unimodular column changes leave the canonical form fixed
    const LatticeGenerator L0 = make_generator(1.5, 0.8, 2.0);
    std::vector<Eigen::Matrix2d> Us;
    Eigen::Matrix2d U1, U2, U3;
    U1 << 1, 3, 0, 1;
    U2 << 1, 0, -2, 1;
    U3 << 0, -1, 1, 4;
    Us = {U1, U2, U3, U1 * U2, U2 * U3, U1 * U2 * U3};
    for (const auto& U : Us) {
        const LatticeGenerator CU = canonicalize(Eigen::Matrix2d(L0.matrix() * U));
        CHECK(same_generator(CU, canonicalize(L0), 1e-9));
        CHECK(same_point_set(L0, CU, 10.0));
    }

    // sign and shear normalization
    Eigen::Matrix2d N;
    N << -1.5, 0.7, 0.0, -2.0;
    const LatticeGenerator CN = canonicalize(N);
    CHECK(CN.x > 0.0);
    CHECK(CN.z > 0.0);
    CHECK(CN.y >= 0.0);
    CHECK(CN.y < CN.x);
    CHECK(same_point_set(canonicalize(Eigen::Matrix2d(N)), CN, 8.0));

    // incommensurable columns admit no upper-triangular generator
    const Eigen::Matrix2d Mrot = rotate(rectangular(1.0, kSqrt2), 30.0);
    CHECK_THROWS_AS((void)canonicalize(Mrot), std::invalid_argument);

    Eigen::Matrix2d Z = Eigen::Matrix2d::Zero();
    CHECK_THROWS_AS((void)canonicalize(Z), std::invalid_argument);
}

TEST_CASE("rotation") {
    const LatticeGenerator L = make_generator(2.0, 1.0, 1.0);
    CHECK((rotate(L, 0.0) - L.matrix()).cwiseAbs().maxCoeff() < 1e-15);

    // rotating forward and back restores the generator
    Eigen::Matrix2d R = rotate(L, 37.0);
    Eigen::Matrix2d R2;
    const double th = -37.0 * tfa::kPi / 180.0;
    Eigen::Matrix2d Rback;
    Rback << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    R2 = Rback * R;
    CHECK((R2 - L.matrix()).cwiseAbs().maxCoeff() < 1e-14);

    // the rotated optimal lattice reduces to the rectangular form
    const Eigen::Matrix2d Mr = rotate(L, -45.0);
    Eigen::Matrix2d expect;
    expect << kSqrt2, kSqrt2, -kSqrt2, 0.0;
    CHECK((Mr - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(same_generator(canonicalize(Mr), rectangular(kSqrt2, kSqrt2), 1e-12));
}

TEST_SUITE_END();
