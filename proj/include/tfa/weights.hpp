// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "tfa/common.hpp"

namespace tfa::weights {

// A symmetric weight v(x) = v(|x|) >= 1 with v(0) = 1. Evaluation is done
// in log space so inadmissible probe weights (fast growth) can still be
// compared without overflow.
class Weight {
public:
    enum class Kind { exp_concave, polynomial, product, constant_one };
    enum class KappaForm { sqrt_form, power_form, v1_form, table };

    // (1 + |x|)^s
    static Weight polynomial(double s);
    // e^{sqrt(|x|)}
    static Weight exp_sqrt();
    // e^{|x|^p}; concave (admissible) only for p <= 1. p = 2 is the
    // deliberate inadmissible probe; construction does not reject it.
    static Weight exp_power(double p);
    // e^{(t+1)^{(t+2)/(t+1)} - 1}, t = |x|; almost subexponential but
    // fails the limit criterion.
    static Weight grs_violator_v1();
    static Weight one();
    // u(x) * (1 + |x|)^s
    static Weight product(Weight u, double s);
    // kappa given as a sampled table over nodes[0]=0..nodes.back(),
    // linearly interpolated, linearly extrapolated beyond the last node.
    // Construction validates kappa(0)=0, monotonicity, and concavity
    // (nonincreasing slopes).
    static Weight exp_concave_table(std::vector<double> nodes, std::vector<double> values);

    // log v(x); finite for every finite x.
    double log_eval(double x) const;
    // v(x); may overflow to +inf for probe weights at large |x|.
    double eval(double x) const;
    // v(|x|_2) for vector arguments.
    double eval(const std::vector<double>& x) const;

    Kind kind() const { return kind_; }
    int dimension() const { return dim_; }
    Weight with_dimension(int d) const;

private:
    Weight() = default;
    double kappa(double t) const;

    Kind kind_ = Kind::constant_one;
    KappaForm kappa_form_ = KappaForm::sqrt_form;
    double s_ = 0.0;      // polynomial / product exponent, or power p
    int dim_ = 1;
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::shared_ptr<const Weight> factor_;  // product: the u part
};

struct SubmultReport {
    bool passed = false;
    double worst_ratio = 0.0;      // max v(x+y)/(v(x)v(y)); may be +inf
    double worst_log_ratio = 0.0;  // same in log space, always finite
};

struct GrsReport {
    bool passed = false;
    double limit_estimate = 0.0;  // v(n_max x)^{1/n_max}; may be +inf
    double log_estimate = 0.0;
    bool overflowed = false;  // estimate not representable as a double
    bool monotone = false;    // log-estimates nonincreasing over dyadic n
};

struct SubconvReport {
    bool passed = false;
    double C = 0.0;            // max_x (v^{-1} * v^{-1})(x) v(x) on the grid
    double growth_ratio = 0.0; // C on doubled support / C; ~1 when stable
};

inline constexpr double kSubmultTol = 1e-12;
inline constexpr double kGrsTol = 0.05;
inline constexpr std::uint64_t kGrsDefaultNmax = 1ull << 20;
inline constexpr double kSubconvGrowthTol = 1.05;

// Worst ratio of v(x+y) to v(x)v(y) over all pairs drawn from a symmetric grid.
SubmultReport check_submultiplicative(const Weight& w, const std::vector<double>& grid);

// Dyadic-n probe of lim_n v(nx)^{1/n}; passed iff the estimate ends within
// kGrsTol of 1 and the log-estimates approach it monotonically.
GrsReport check_grs(const Weight& w, double x, std::uint64_t n_max = kGrsDefaultNmax);

// Discrete-convolution probe of v^{-1} * v^{-1} <= C v^{-1}; the grid is a
// uniform symmetric grid [-L, L]; stability is probed by doubling L.
SubconvReport check_subconvolutive(const Weight& w, double L, double h);

// Uniform symmetric grid helper: [-L, L] inclusive with step h.
std::vector<double> symmetric_grid(double L, double h);

// Factory used by config parsing: kind in {"polynomial", "exp_sqrt",
// "exp_power", "grs_violator_v1", "constant_one"}.
Weight weight_from_name(const std::string& kind, double param);

}  // namespace tfa::weights
