// SPDX-License-Identifier: Apache-2.0
#include "tfa/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace tfa::lattice {

namespace {

constexpr double kDensityTol = 1e-12;
constexpr double kSnapTol = 1e-9;
constexpr std::int64_t kMaxDenominator = 4096;

// Best rational approximation p/q of r by continued fractions, restricted to
// small denominators so that genuinely irrational ratios are rejected.
bool rational_approx(double r, std::int64_t& p, std::int64_t& q) {
    const double tol = kSnapTol * std::max(1.0, std::abs(r));
    std::int64_t p_prev = 0, q_prev = 1;
    std::int64_t p_cur = 1, q_cur = 0;
    double x = r;
    for (int it = 0; it < 64; ++it) {
        const double af = std::floor(x);
        if (std::abs(af) > double(std::numeric_limits<std::int64_t>::max()) / 4)
            return false;
        const auto a = static_cast<std::int64_t>(af);
        const std::int64_t p_next = a * p_cur + p_prev;
        const std::int64_t q_next = a * q_cur + q_prev;
        if (std::abs(q_next) > kMaxDenominator) return false;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        if (q_cur != 0 && std::abs(r - double(p_cur) / double(q_cur)) <= tol) {
            p = p_cur;
            q = q_cur;
            if (q < 0) {
                p = -p;
                q = -q;
            }
            const std::int64_t g = std::gcd(std::abs(p), q);
            if (g > 1) {
                p /= g;
                q /= g;
            }
            return true;
        }
        const double frac = x - af;
        if (std::abs(frac) < 1e-15) return false;
        x = 1.0 / frac;
    }
    return false;
}

// Extended gcd: returns g and coefficients with s*a + t*b = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
    if (b == 0) {
        s = (a >= 0) ? 1 : -1;
        t = 0;
        return std::abs(a);
    }
    std::int64_t s1 = 0, t1 = 0;
    const std::int64_t g = ext_gcd(b, a % b, s1, t1);
    s = t1;
    t = s1 - (a / b) * t1;
    return g;
}

void require_equal_density(const LatticeGenerator& a, const LatticeGenerator& b) {
    const double da = a.density(), db = b.density();
    require(std::abs(da - db) <= kDensityTol * std::max(std::abs(da), std::abs(db)),
            "lattice densities must match");
}

}  // namespace

LatticeGenerator make_generator(double x, double y, double z) {
    require(std::isfinite(x) && std::isfinite(y) && std::isfinite(z),
            "lattice generator entries must be finite");
    require(x != 0.0 && z != 0.0, "lattice generator needs x != 0 and z != 0");
    require(x * z > 0.0, "lattice generator needs positive density");
    return LatticeGenerator{x, y, z};
}

LatticeGenerator rectangular(double T, double F) { return make_generator(T, 0.0, F); }

LatticeGenerator hexagonal(double T, double F) {
    const double q3 = std::pow(3.0, 0.25);
    const double x = std::sqrt(2.0) * T / q3;
    return make_generator(x, x / 2.0, q3 * F / std::sqrt(2.0));
}

LatticeGenerator from_name(const std::string& kind, double T, double F) {
    if (kind == "rect") return rectangular(T, F);
    if (kind == "hex") return hexagonal(T, F);
    throw std::invalid_argument("unknown lattice kind: " + kind);
}

LatticeGenerator adjoint_lattice(const LatticeGenerator& L, int d) {
    require(d >= 1, "adjoint_lattice needs d >= 1");
    const double s = std::pow(L.density(), 1.0 / double(d));
    return make_generator(s * L.x, s * L.y, s * L.z);
}

std::pair<double, double> transition_params(const LatticeGenerator& L1,
                                            const LatticeGenerator& L2) {
    require_equal_density(L1, L2);
    const double alpha = L2.z / L1.z;
    const double beta =
        -L2.y / L2.z + (L1.y / L1.z) * (L1.z * L1.z) / (L2.z * L2.z);
    return {alpha, beta};
}

std::pair<double, double> decompose_symplectic(const LatticeGenerator& L,
                                               const LatticeGenerator& LR) {
    require(std::abs(LR.y) <= kSnapTol * std::max(1.0, std::abs(LR.x)),
            "decompose_symplectic needs a rectangular reference lattice");
    require_equal_density(L, LR);
    return {L.z / LR.z, -L.y / L.z};
}

Eigen::Matrix2d mat_J() {
    Eigen::Matrix2d J;
    J << 0.0, 1.0, -1.0, 0.0;
    return J;
}

Eigen::Matrix2d mat_shear(double beta) {
    Eigen::Matrix2d C;
    C << 1.0, 0.0, beta, 1.0;
    return C;
}

Eigen::Matrix2d mat_dilation(double alpha) {
    require(alpha != 0.0, "dilation factor must be nonzero");
    Eigen::Matrix2d D;
    D << alpha, 0.0, 0.0, 1.0 / alpha;
    return D;
}

Eigen::Matrix2d rotate(const LatticeGenerator& L, double theta_deg) {
    const double th = theta_deg * kPi / 180.0;
    Eigen::Matrix2d R;
    R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    return R * L.matrix();
}

LatticeGenerator canonicalize(const Eigen::Matrix2d& M) {
    const double scale = M.cwiseAbs().maxCoeff();
    require(scale > 0.0 && std::isfinite(scale), "degenerate generator matrix");
    require(std::abs(M.determinant()) > 1e-12 * scale * scale,
            "generator matrix is singular");

    Eigen::Vector2d c1 = M.col(0), c2 = M.col(1);
    const double btol = kSnapTol * scale;
    if (std::abs(c1(1)) > btol) {
        if (std::abs(c2(1)) <= btol) {
            std::swap(c1, c2);
        } else {
            std::int64_t p = 0, q = 1;
            if (!rational_approx(c1(1) / c2(1), p, q))
                throw std::invalid_argument(
                    "generator columns are not commensurable");
            std::int64_t s = 0, t = 0;
            ext_gcd(q, p, s, t);  // s*q + t*p = 1
            const Eigen::Vector2d n1 = double(q) * c1 - double(p) * c2;
            const Eigen::Vector2d n2 = double(t) * c1 + double(s) * c2;
            if (std::abs(n1(1)) > 1e-8 * scale)
                throw std::invalid_argument(
                    "generator columns are not commensurable");
            c1 = n1;
            c2 = n2;
        }
    }
    c1(1) = 0.0;
    if (c1(0) < 0.0) c1 = -c1;
    if (c2(1) < 0.0) c2 = -c2;
    double x = c1(0), y = c2(0), z = c2(1);
    require(x > 0.0 && z > 0.0, "reduced generator is singular");
    const double k = std::floor(y / x + kSnapTol);
    y -= k * x;
    if (std::abs(y) < kSnapTol * std::max(1.0, x)) y = 0.0;
    if (std::abs(y - x) < kSnapTol * std::max(1.0, x)) y = 0.0;
    return make_generator(x, y, z);
}

LatticeGenerator canonicalize(const LatticeGenerator& L) {
    return canonicalize(L.matrix());
}

std::vector<Point> enumerate_points(const LatticeGenerator& L, double window) {
    require(window > 0.0, "enumeration window must be positive");
    std::vector<Point> pts;
    const double az = std::abs(L.z);
    const auto lmax = static_cast<long>(std::floor(window / az + 1e-12));
    for (long l = -lmax; l <= lmax; ++l) {
        const double f = L.z * double(l);
        const double off = L.y * double(l);
        // solve |x k + off| <= window for k
        const double lo = (-window - off) / L.x, hi = (window - off) / L.x;
        const auto k0 = static_cast<long>(std::ceil(std::min(lo, hi) - 1e-12));
        const auto k1 = static_cast<long>(std::floor(std::max(lo, hi) + 1e-12));
        for (long k = k0; k <= k1; ++k)
            pts.push_back(Point{L.x * double(k) + off, f});
    }
    return pts;
}

double min_distance(const LatticeGenerator& L) {
    const double window = 8.0 * std::max(std::abs(L.x), std::abs(L.z));
    double best = std::numeric_limits<double>::infinity();
    const double az = std::abs(L.z);
    const auto lmax = static_cast<long>(std::floor(window / az + 1e-12));
    for (long l = -lmax; l <= lmax; ++l) {
        const double f = L.z * double(l);
        const double off = L.y * double(l);
        const double lo = (-window - off) / L.x, hi = (window - off) / L.x;
        const auto k0 = static_cast<long>(std::ceil(std::min(lo, hi) - 1e-12));
        const auto k1 = static_cast<long>(std::floor(std::max(lo, hi) + 1e-12));
        for (long k = k0; k <= k1; ++k) {
            if (k == 0 && l == 0) continue;
            const double t = L.x * double(k) + off;
            best = std::min(best, std::hypot(t, f));
        }
    }
    return best;
}

}  // namespace tfa::lattice
