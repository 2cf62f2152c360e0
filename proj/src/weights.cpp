// SPDX-License-Identifier: Apache-2.0
#include "tfa/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tfa::weights {

Weight Weight::polynomial(double s) {
    require(std::isfinite(s) && s >= 0.0, "weights: polynomial exponent must be finite and >= 0");
    Weight w;
    w.kind_ = Kind::polynomial;
    w.s_ = s;
    return w;
}

Weight Weight::exp_sqrt() {
    Weight w;
    w.kind_ = Kind::exp_concave;
    w.kappa_form_ = KappaForm::sqrt_form;
    return w;
}

Weight Weight::exp_power(double p) {
    require(std::isfinite(p) && p > 0.0, "weights: power exponent must be finite and > 0");
    Weight w;
    w.kind_ = Kind::exp_concave;
    w.kappa_form_ = KappaForm::power_form;
    w.s_ = p;
    return w;
}

Weight Weight::grs_violator_v1() {
    Weight w;
    w.kind_ = Kind::exp_concave;
    w.kappa_form_ = KappaForm::v1_form;
    return w;
}

Weight Weight::one() { return Weight(); }

Weight Weight::product(Weight u, double s) {
    require(std::isfinite(s) && s >= 0.0, "weights: product exponent must be finite and >= 0");
    Weight w;
    w.kind_ = Kind::product;
    w.s_ = s;
    w.factor_ = std::make_shared<Weight>(std::move(u));
    return w;
}

Weight Weight::exp_concave_table(std::vector<double> nodes, std::vector<double> values) {
    require(nodes.size() == values.size() && nodes.size() >= 2,
            "weights: table needs matching node/value arrays of length >= 2");
    require(nodes.front() == 0.0 && values.front() == 0.0,
            "weights: kappa table must start at kappa(0) = 0");
    double prev_slope = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        require(nodes[i] > nodes[i - 1], "weights: table nodes must be strictly increasing");
        require(values[i] >= values[i - 1] - 1e-12, "weights: kappa table must be nondecreasing");
        const double slope = (values[i] - values[i - 1]) / (nodes[i] - nodes[i - 1]);
        require(slope <= prev_slope + 1e-12, "weights: kappa table must be concave");
        prev_slope = slope;
    }
    Weight w;
    w.kind_ = Kind::exp_concave;
    w.kappa_form_ = KappaForm::table;
    w.nodes_ = std::move(nodes);
    w.values_ = std::move(values);
    return w;
}

Weight Weight::with_dimension(int d) const {
    require(d >= 1, "weights: dimension must be >= 1");
    Weight w = *this;
    w.dim_ = d;
    return w;
}

double Weight::kappa(double t) const {
    switch (kappa_form_) {
        case KappaForm::sqrt_form:
            return std::sqrt(t);
        case KappaForm::power_form:
            return std::pow(t, s_);
        case KappaForm::v1_form:
            // (t+1)^{(t+2)/(t+1)} - 1 evaluated via exp/log for large t.
            return std::expm1((t + 2.0) / (t + 1.0) * std::log1p(t));
        case KappaForm::table: {
            if (t <= nodes_.front()) return values_.front();
            if (t >= nodes_.back()) {
                const std::size_t m = nodes_.size();
                const double slope =
                    (values_[m - 1] - values_[m - 2]) / (nodes_[m - 1] - nodes_[m - 2]);
                return values_.back() + slope * (t - nodes_.back());
            }
            const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
            const std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
            const double u = (t - nodes_[i - 1]) / (nodes_[i] - nodes_[i - 1]);
            return values_[i - 1] + u * (values_[i] - values_[i - 1]);
        }
    }
    return 0.0;
}

double Weight::log_eval(double x) const {
    require(std::isfinite(x), "weights: non-finite argument");
    const double t = std::abs(x);
    switch (kind_) {
        case Kind::constant_one:
            return 0.0;
        case Kind::polynomial:
            return s_ * std::log1p(t);
        case Kind::exp_concave:
            return kappa(t);
        case Kind::product:
            return factor_->log_eval(t) + s_ * std::log1p(t);
    }
    return 0.0;
}

double Weight::eval(double x) const { return std::exp(log_eval(x)); }

double Weight::eval(const std::vector<double>& x) const {
    double sq = 0.0;
    for (double xi : x) {
        require(std::isfinite(xi), "weights: non-finite argument");
        sq += xi * xi;
    }
    return eval(std::sqrt(sq));
}

SubmultReport check_submultiplicative(const Weight& w, const std::vector<double>& grid) {
    require(!grid.empty(), "weights: empty grid");
    SubmultReport rep;
    double worst = -std::numeric_limits<double>::infinity();
    for (double x : grid) {
        const double lx = w.log_eval(x);
        for (double y : grid) {
            const double d = w.log_eval(x + y) - lx - w.log_eval(y);
            worst = std::max(worst, d);
        }
    }
    rep.worst_log_ratio = worst;
    rep.worst_ratio = std::exp(worst);
    rep.passed = worst <= kSubmultTol;
    return rep;
}

GrsReport check_grs(const Weight& w, double x, std::uint64_t n_max) {
    require(n_max >= 16, "weights: n_max must be >= 16");
    GrsReport rep;
    rep.monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    double log_est = 0.0;
    for (std::uint64_t n = 16; n <= n_max; n *= 2) {
        log_est = w.log_eval(static_cast<double>(n) * x) / static_cast<double>(n);
        if (std::abs(log_est) > std::abs(prev) + 1e-12) rep.monotone = false;
        prev = log_est;
    }
    rep.log_estimate = log_est;
    rep.limit_estimate = std::exp(log_est);
    rep.overflowed = !std::isfinite(rep.limit_estimate);
    rep.passed = rep.monotone && !rep.overflowed &&
                 std::abs(rep.limit_estimate - 1.0) <= kGrsTol;
    return rep;
}

std::vector<double> symmetric_grid(double L, double h) {
    require(L > 0.0 && h > 0.0 && h <= L, "weights: invalid grid parameters");
    const long m = std::lround(L / h);
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(2 * m + 1));
    for (long i = -m; i <= m; ++i) g.push_back(static_cast<double>(i) * h);
    return g;
}

namespace {

// max_x over the grid of (v^{-1} * v^{-1})(x) v(x), Riemann-sum convolution.
double subconv_constant(const Weight& w, double L, double h) {
    const std::vector<double> grid = symmetric_grid(L, h);
    const std::size_t n = grid.size();
    std::vector<double> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = std::exp(-w.log_eval(grid[i]));
    double C = 0.0;
    // (v^{-1} * v^{-1})(x_k) = h * sum_j inv(x_j) inv(x_k - x_j), both on-grid.
    const long m = (static_cast<long>(n) - 1) / 2;
    for (long k = -m; k <= m; ++k) {
        double acc = 0.0;
        for (long j = -m; j <= m; ++j) {
            const long d = k - j;
            if (d < -m || d > m) continue;
            acc += inv[static_cast<std::size_t>(j + m)] * inv[static_cast<std::size_t>(d + m)];
        }
        const double val = h * acc * std::exp(w.log_eval(static_cast<double>(k) * h));
        C = std::max(C, val);
    }
    return C;
}

}  // namespace

SubconvReport check_subconvolutive(const Weight& w, double L, double h) {
    SubconvReport rep;
    const double c1 = subconv_constant(w, L, h);
    const double c2 = subconv_constant(w, 2.0 * L, h);
    rep.C = c2;
    rep.growth_ratio = c2 / c1;
    rep.passed = std::isfinite(c2) && rep.growth_ratio <= kSubconvGrowthTol;
    return rep;
}

Weight weight_from_name(const std::string& kind, double param) {
    if (kind == "polynomial") return Weight::polynomial(param);
    if (kind == "exp_sqrt") return Weight::exp_sqrt();
    if (kind == "exp_power") return Weight::exp_power(param);
    if (kind == "grs_violator_v1") return Weight::grs_violator_v1();
    if (kind == "constant_one") return Weight::one();
    throw std::invalid_argument("weights: unknown kind '" + kind + "'");
}

}  // namespace tfa::weights
