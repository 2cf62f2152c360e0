// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "tfa/common.hpp"

namespace tfa::lattice {

// Upper-triangular generator [[x, y], [0, z]] of a time-frequency lattice.
// The point set is the integer span of the generator's columns:
// (t, f) = (x k + y l, z l). Invariant: x != 0, z != 0, x*z > 0.
struct LatticeGenerator {
    double x = 1.0;
    double y = 0.0;
    double z = 1.0;

    double density() const { return 1.0 / (x * z); }
    Eigen::Matrix2d matrix() const {
        Eigen::Matrix2d M;
        M << x, y, 0.0, z;
        return M;
    }
};

struct Point {
    double t = 0.0;
    double f = 0.0;
};

LatticeGenerator make_generator(double x, double y, double z);
LatticeGenerator rectangular(double T, double F);
LatticeGenerator hexagonal(double T, double F);

// Named constructor used by configuration files: kind is "rect" or "hex".
LatticeGenerator from_name(const std::string& kind, double T, double F);

// Adjoint lattice: the generator scaled so that for d = 1 the adjoint's
// density is the reciprocal of the input density (scale factor density^{1/d}).
LatticeGenerator adjoint_lattice(const LatticeGenerator& L, int d = 1);

// Transition parameters (alpha, beta) carrying a pulse adapted to L1 into
// one adapted to L2. Requires equal densities.
std::pair<double, double> transition_params(const LatticeGenerator& L1,
                                            const LatticeGenerator& L2);

// Shear/dilation factors (alpha, beta) with alpha = z/F and beta = -y/z
// such that J C_beta D_alpha J^{-1} L_R reproduces L. Requires L_R
// rectangular with the same density as L.
std::pair<double, double> decompose_symplectic(const LatticeGenerator& L,
                                               const LatticeGenerator& LR);

// Factors of the symplectic decomposition, for reconstruction checks.
Eigen::Matrix2d mat_J();
Eigen::Matrix2d mat_shear(double beta);
Eigen::Matrix2d mat_dilation(double alpha);

// Rotates the lattice points by theta degrees (left-multiplied Givens
// rotation). The result is generally not upper-triangular.
Eigen::Matrix2d rotate(const LatticeGenerator& L, double theta_deg);

// Reduces a generator of the same point set to the canonical
// upper-triangular form with x > 0, z > 0, 0 <= y < x, acting on columns
// by integer unimodular matrices. Throws if the bottom-row entries have no
// small rational ratio (no upper-triangular generator exists).
LatticeGenerator canonicalize(const Eigen::Matrix2d& M);
LatticeGenerator canonicalize(const LatticeGenerator& L);

// All lattice points with max-norm at most window, in deterministic order.
std::vector<Point> enumerate_points(const LatticeGenerator& L, double window);

// Minimal Euclidean distance between distinct lattice points, certified by
// enumeration over the default window of max-norm 8 * max(|x|, |z|).
double min_distance(const LatticeGenerator& L);

}  // namespace tfa::lattice
