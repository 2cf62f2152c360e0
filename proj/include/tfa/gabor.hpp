// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "tfa/common.hpp"
#include "tfa/lattice.hpp"
#include "tfa/signal.hpp"

namespace tfa::gabor {

using signal::DiscreteSignal;

// Integer lattice system on Z_N x Z_N: time step a samples, frequency step
// b bins, shear offset c samples per frequency step. The system point for
// (k, l) is (a k + c l mod N, b l), k in [0, N/a), l in [0, N/b); index
// mu = k * (N/b) + l. The window is stored with unit 2-norm.
struct GaborSystemSpec {
    DiscreteSignal window;
    int a = 1;
    int b = 1;
    int c = 0;

    int N() const { return window.N(); }
    int shifts() const { return N() / a; }
    int mods() const { return N() / b; }
    int size() const { return shifts() * mods(); }
    double density() const { return double(N()) / (double(a) * double(b)); }
};

// Validates divisibility of a and b, normalizes the window and reduces c
// mod a; a sheared lattice must close up: (N/b) c = 0 mod a.
GaborSystemSpec make_system(const DiscreteSignal& window, int a, int b,
                            int c = 0);

// Adjoint lattice system (N/b, N/a, c N/(a b)) with the same window; its
// density is the reciprocal of the input's.
GaborSystemSpec adjoint_system(const GaborSystemSpec& spec);

std::vector<DiscreteSignal> system_vectors(const GaborSystemSpec& spec);

// Hermitian Gram matrix with a cached eigendecomposition.
class GramMatrix {
public:
    explicit GramMatrix(Eigen::MatrixXcd R);

    const Eigen::MatrixXcd& mat() const { return R_; }
    const Eigen::VectorXd& eigenvalues() const { return eigvals_; }
    const Eigen::MatrixXcd& eigenvectors() const { return eigvecs_; }
    int dim() const { return int(R_.rows()); }

    // Ratio of extreme eigenvalues; requires positive definiteness.
    double cond() const;

    // Spectral power U diag(lambda^p) U*; fractional or negative p
    // requires a positive spectrum.
    Eigen::MatrixXcd power(double p) const;

private:
    Eigen::MatrixXcd R_;
    Eigen::MatrixXcd eigvecs_;
    Eigen::VectorXd eigvals_;
};

GramMatrix gram_matrix(const GaborSystemSpec& spec);
GramMatrix gram_matrix_serial(const GaborSystemSpec& spec);

// Entries <right[nu], left[mu]>, matching the Gram index convention.
Eigen::MatrixXcd cross_gram(const std::vector<DiscreteSignal>& left,
                            const std::vector<DiscreteSignal>& right);

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& R, double p);

// Symmetric orthogonalization: the R^{-1/2} column of the lattice origin
// recombines the system into an orthonormal generator. Unit-normalized.
DiscreteSignal lowdin(const GaborSystemSpec& spec);

DiscreteSignal frame_operator_apply(const GaborSystemSpec& spec,
                                    const DiscreteSignal& f);

// S^{-1/2} window computed on the span of the system.
DiscreteSignal tight_window(const GaborSystemSpec& spec);

// Distance (modulo global phase) between the adjoint-lattice symmetric
// orthogonalization and the tight window of the given frame system.
double check_lowdin_tight_duality(const GaborSystemSpec& frame_spec);

// Max deviation of density * <gamma, z(point) window> from the Kronecker
// delta over the adjoint lattice; ~0 iff (window, gamma) is a dual pair.
double wexler_raz_check(const GaborSystemSpec& frame_spec,
                        const DiscreteSignal& gamma);

// Biorthogonal transmit/receive pulse pair built from the R^{-p} and
// R^{-(1-p)} origin columns; p = 1/2 collapses both onto the symmetric
// orthogonalization. Outputs are not normalized.
std::pair<DiscreteSignal, DiscreteSignal> ebfdm_pair(
    const GaborSystemSpec& spec, double p);

// Pulse carried across equal-density lattices through the Fourier, chirp
// and dilation chain determined by the transition parameters.
DiscreteSignal adapt_pulse(const DiscreteSignal& pulse,
                           const lattice::LatticeGenerator& L1,
                           const lattice::LatticeGenerator& L2);

// Finite sections of continuous-parameter systems. Indices k, l range over
// [-K, K]; the point is (k x + l y, l z) in time-frequency units and the
// shift operator carries the symmetric phase e^{-pi i tau nu}. Index
// mu = (k + K)(2K + 1) + (l + K); the center column is mu of (0, 0). Every
// point must stay clear of half the torus period in both coordinates: a
// pulse straddling the seam under a fractional modulation picks up an
// inconsistent phase across the wrap. Guard: K(|x| + |y|) and K|z| stay
// below period/2 minus a localization margin sized for unit-width pulses.
std::vector<DiscreteSignal> continuous_system(
    const DiscreteSignal& pulse, const lattice::LatticeGenerator& L, int K);

// Riesz bounds (lambda_min, lambda_max) of the infinite Gaussian Gram
// operator over lattice L, from the Bloch symbol of its gauge-reduced
// Laurent form. The standard Gaussian's symmetric-shift ambiguity has the
// closed form e^{-pi |z|^2 / 2}, so no discretization enters; the cocycle
// exponent is det L = 1/density, which must be a rational p/q with q <= 8.
std::pair<double, double> gaussian_riesz_bounds(
    const lattice::LatticeGenerator& L);

GramMatrix continuous_gram(const DiscreteSignal& pulse,
                           const lattice::LatticeGenerator& L, int K);

DiscreteSignal lowdin_continuous(const DiscreteSignal& pulse,
                                 const lattice::LatticeGenerator& L, int K);

// Discrepancy (modulo global phase) between the orthogonalized dilated
// Gaussian on rect(1/sqrt(sigma rho), sqrt(sigma/rho)) and the dilated
// orthogonalized Gaussian on rect(1/sqrt(rho), 1/sqrt(rho)).
double dilation_commutes_with_lowdin_check(double sigma, double rho, int N,
                                           int K);

// Polar factor Phi (Phi* Phi)^{-1/2} = U V* of a full-column-rank matrix;
// the closest matrix with orthonormal columns in Frobenius distance.
Eigen::MatrixXcd finite_lowdin(const Eigen::MatrixXcd& Phi);

// Unitary Q = U V* from the SVD of Phi W W*, minimizing ||(Phi - Q) W||_F
// over unitary Q. Phi must be square, W nonzero with matching row count.
Eigen::MatrixXcd weighted_lowdin_svd(const Eigen::MatrixXcd& Phi,
                                     const Eigen::MatrixXcd& W);

}  // namespace tfa::gabor
