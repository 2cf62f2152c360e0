// SPDX-License-Identifier: Apache-2.0
#include "tfa/gabor.hpp"

#include <cmath>
#include <limits>

namespace tfa::gabor {

namespace {

constexpr double kRankTol = 1e-12;

// Margin (in time-frequency units) kept between any section point and the
// torus seam at half the period. A unit-width Gaussian centered margin m
// from the seam leaves mass ~e^{-2 pi m^2} across it, so m = 2 keeps the
// wrap-phase corruption of Gram entries near 1e-11.
constexpr double kSectionMargin = 2.0;

Eigen::MatrixXcd to_matrix(const std::vector<DiscreteSignal>& vecs) {
    require(!vecs.empty(), "empty system");
    const int n = vecs.front().N();
    Eigen::MatrixXcd Phi(n, int(vecs.size()));
    for (int mu = 0; mu < int(vecs.size()); ++mu) {
        require(vecs[mu].N() == n, "system vectors of mixed length");
        Phi.col(mu) =
            Eigen::Map<const Eigen::VectorXcd>(vecs[mu].samples.data(), n);
    }
    return Phi;
}

// Hermitian Gram of the columns. Each entry is an independent dot product,
// so the parallel and serial paths produce bitwise-identical results.
Eigen::MatrixXcd gram_from_columns(const Eigen::MatrixXcd& Phi,
                                   bool parallel) {
    const int M = int(Phi.cols());
    Eigen::MatrixXcd R(M, M);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
#endif
    for (int mu = 0; mu < M; ++mu) {
        for (int nu = mu; nu < M; ++nu) {
            const cplx v = Phi.col(mu).dot(Phi.col(nu));
            R(mu, nu) = v;
            if (nu != mu) R(nu, mu) = std::conj(v);
        }
    }
    return R;
}

DiscreteSignal from_vector(const Eigen::VectorXcd& v) {
    DiscreteSignal out = signal::zeros(int(v.size()));
    for (int j = 0; j < int(v.size()); ++j) out.samples[j] = v(j);
    return out;
}

// Column j of R^p through the cached eigendecomposition.
Eigen::VectorXcd power_column(const GramMatrix& G, double p, int j) {
    const Eigen::MatrixXcd& V = G.eigenvectors();
    const Eigen::VectorXd& lam = G.eigenvalues();
    Eigen::VectorXcd c = V.adjoint().col(j);
    for (int i = 0; i < int(lam.size()); ++i) c(i) *= std::pow(lam(i), p);
    return V * c;
}

void require_riesz(const GramMatrix& G) {
    const Eigen::VectorXd& lam = G.eigenvalues();
    if (lam(0) <= kRankTol * std::max(lam(lam.size() - 1), 0.0))
        throw numeric_error(
            "system is not a Riesz sequence: singular Gram matrix");
}

// Orthogonalized generator from the R^{-1/2} column of the given center,
// with the spectral distance bound asserted against the Gram extremes.
DiscreteSignal lowdin_core(const std::vector<DiscreteSignal>& vecs,
                           int center) {
    const Eigen::MatrixXcd Phi = to_matrix(vecs);
    const GramMatrix G(gram_from_columns(Phi, true));
    require_riesz(G);
    const Eigen::VectorXcd w = power_column(G, -0.5, center);
    const Eigen::VectorXcd phi = Phi * w;

    const Eigen::VectorXd& lam = G.eigenvalues();
    const double lo = std::abs(1.0 - 1.0 / std::sqrt(lam(0)));
    const double hi = std::abs(1.0 - 1.0 / std::sqrt(lam(lam.size() - 1)));
    const double bound = std::max(lo, hi);
    const double dist = (phi - Phi.col(center)).norm();
    if (dist > bound * 1.05 + 1e-9)
        throw numeric_error("orthogonalization violates the spectral bound");
    return from_vector(phi);
}

// Best rational p/q for v with q <= maxden, by continued fractions.
std::pair<long, long> small_rational(double v, long maxden, double tol) {
    long p0 = 1, q0 = 0;
    long p1 = long(std::floor(v)), q1 = 1;
    double rem = v - std::floor(v);
    while (std::abs(v - double(p1) / double(q1)) > tol) {
        if (rem < 1e-14) break;
        const double inv = 1.0 / rem;
        const long a = long(std::floor(inv));
        rem = inv - std::floor(inv);
        const long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > maxden) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    require(std::abs(v - double(p1) / double(q1)) <= tol && q1 <= maxden,
            "reciprocal density has no small rational form");
    return {p1, q1};
}

}  // namespace

GaborSystemSpec make_system(const DiscreteSignal& window, int a, int b,
                            int c) {
    const int n = window.N();
    require(signal::is_power_of_two(n), "window length must be a power of two");
    require(a >= 1 && b >= 1, "lattice steps must be positive");
    require(n % a == 0 && n % b == 0, "lattice steps must divide N");
    const double nrm = window.norm();
    require(nrm > 0.0, "window must be nonzero");
    int cc = ((c % a) + a) % a;
    require((std::int64_t(n / b) * cc) % a == 0,
            "sheared lattice does not close: (N/b) c must be divisible by a");
    GaborSystemSpec spec;
    spec.window = signal::normalized(window);
    spec.a = a;
    spec.b = b;
    spec.c = cc;
    return spec;
}

GaborSystemSpec adjoint_system(const GaborSystemSpec& spec) {
    const int n = spec.N();
    const std::int64_t num = std::int64_t(spec.c) * (n / spec.b);
    require(num % spec.a == 0, "shear offset has no integer adjoint");
    return make_system(spec.window, n / spec.b, n / spec.a,
                       int(num / spec.a));
}

std::vector<DiscreteSignal> system_vectors(const GaborSystemSpec& spec) {
    std::vector<DiscreteSignal> vecs;
    vecs.reserve(std::size_t(spec.size()));
    for (int k = 0; k < spec.shifts(); ++k)
        for (int l = 0; l < spec.mods(); ++l)
            vecs.push_back(signal::tf_shift(spec.window,
                                            spec.a * k + spec.c * l,
                                            spec.b * l));
    return vecs;
}

GramMatrix::GramMatrix(Eigen::MatrixXcd R) : R_(std::move(R)) {
    require(R_.rows() == R_.cols() && R_.rows() > 0,
            "Gram matrix must be square");
    const double scale = std::max(1.0, R_.cwiseAbs().maxCoeff());
    require((R_ - R_.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
            "Gram matrix must be Hermitian");
    R_ = 0.5 * (R_ + R_.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(R_);
    if (es.info() != Eigen::Success)
        throw numeric_error("Gram eigendecomposition failed");
    eigvals_ = es.eigenvalues();
    eigvecs_ = es.eigenvectors();
}

double GramMatrix::cond() const {
    require_riesz(*this);
    return eigvals_(eigvals_.size() - 1) / eigvals_(0);
}

Eigen::MatrixXcd GramMatrix::power(double p) const {
    const bool fractional = std::abs(p - std::round(p)) > 1e-12;
    if (p < 0.0 || fractional) require_riesz(*this);
    Eigen::VectorXd d(eigvals_.size());
    for (int i = 0; i < eigvals_.size(); ++i) d(i) = std::pow(eigvals_(i), p);
    return eigvecs_ * d.asDiagonal() * eigvecs_.adjoint();
}

GramMatrix gram_matrix(const GaborSystemSpec& spec) {
    return GramMatrix(gram_from_columns(to_matrix(system_vectors(spec)), true));
}

GramMatrix gram_matrix_serial(const GaborSystemSpec& spec) {
    return GramMatrix(
        gram_from_columns(to_matrix(system_vectors(spec)), false));
}

Eigen::MatrixXcd cross_gram(const std::vector<DiscreteSignal>& left,
                            const std::vector<DiscreteSignal>& right) {
    require(left.size() == right.size() && !left.empty(),
            "cross Gram needs equal-size systems");
    const Eigen::MatrixXcd A = to_matrix(left);
    const Eigen::MatrixXcd B = to_matrix(right);
    require(A.rows() == B.rows(), "cross Gram needs equal-length vectors");
    return A.adjoint() * B;
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& R, double p) {
    return GramMatrix(R).power(p);
}

DiscreteSignal lowdin(const GaborSystemSpec& spec) {
    return signal::normalized(lowdin_core(system_vectors(spec), 0));
}

DiscreteSignal frame_operator_apply(const GaborSystemSpec& spec,
                                    const DiscreteSignal& f) {
    require(f.N() == spec.N(), "signal length mismatch");
    const Eigen::MatrixXcd Phi = to_matrix(system_vectors(spec));
    const Eigen::VectorXcd fv =
        Eigen::Map<const Eigen::VectorXcd>(f.samples.data(), f.N());
    return from_vector(Phi * (Phi.adjoint() * fv));
}

DiscreteSignal tight_window(const GaborSystemSpec& spec) {
    const Eigen::MatrixXcd Phi = to_matrix(system_vectors(spec));
    const Eigen::MatrixXcd S = Phi * Phi.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S);
    if (es.info() != Eigen::Success)
        throw numeric_error("frame operator eigendecomposition failed");
    const Eigen::VectorXd& lam = es.eigenvalues();
    const double tol = kRankTol * std::max(lam(lam.size() - 1), 0.0);
    const Eigen::VectorXcd g =
        Eigen::Map<const Eigen::VectorXcd>(spec.window.samples.data(),
                                           spec.N());
    Eigen::VectorXcd coeff = es.eigenvectors().adjoint() * g;
    double outside = 0.0;
    for (int i = 0; i < lam.size(); ++i) {
        if (lam(i) > tol)
            coeff(i) /= std::sqrt(lam(i));
        else {
            outside += std::norm(coeff(i));
            coeff(i) = 0.0;
        }
    }
    if (std::sqrt(outside) > 1e-8)
        throw numeric_error("window leaves the span of its own system");
    return signal::normalized(from_vector(es.eigenvectors() * coeff));
}

double check_lowdin_tight_duality(const GaborSystemSpec& frame_spec) {
    const DiscreteSignal phi_tight = tight_window(frame_spec);
    const DiscreteSignal phi_adj = lowdin(adjoint_system(frame_spec));
    const double overlap = std::abs(signal::inner(phi_adj, phi_tight));
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
}

double wexler_raz_check(const GaborSystemSpec& frame_spec,
                        const DiscreteSignal& gamma) {
    require(gamma.N() == frame_spec.N(), "signal length mismatch");
    const std::vector<DiscreteSignal> adj =
        system_vectors(adjoint_system(frame_spec));
    const double xi = frame_spec.density();
    double worst = 0.0;
    for (std::size_t mu = 0; mu < adj.size(); ++mu) {
        const cplx val = xi * signal::inner(gamma, adj[mu]);
        const cplx want = (mu == 0) ? cplx(1.0) : cplx(0.0);
        worst = std::max(worst, std::abs(val - want));
    }
    return worst;
}

std::pair<DiscreteSignal, DiscreteSignal> ebfdm_pair(
    const GaborSystemSpec& spec, double p) {
    require(p >= 0.0 && p <= 1.0, "exponent p must lie in [0, 1]");
    const Eigen::MatrixXcd Phi = to_matrix(system_vectors(spec));
    const GramMatrix G(gram_from_columns(Phi, true));
    require_riesz(G);
    const Eigen::VectorXcd wt = power_column(G, -p, 0);
    const Eigen::VectorXcd wr = power_column(G, -(1.0 - p), 0);
    return {from_vector(Phi * wt), from_vector(Phi * wr)};
}

DiscreteSignal adapt_pulse(const DiscreteSignal& pulse,
                           const lattice::LatticeGenerator& L1,
                           const lattice::LatticeGenerator& L2) {
    const auto [alpha, beta] = lattice::transition_params(L1, L2);
    return signal::dft(signal::dilate(
        signal::chirp(signal::idft(pulse), -beta * alpha * alpha),
        1.0 / alpha));
}

std::vector<DiscreteSignal> continuous_system(
    const DiscreteSignal& pulse, const lattice::LatticeGenerator& L, int K) {
    require(K >= 0, "section radius must be nonnegative");
    const int n = pulse.N();
    const double period = std::sqrt(double(n));
    // Every section point must stay clear of half the period in both
    // coordinates: a pulse straddling the torus seam under a fractional
    // modulation picks up an inconsistent phase across the wrap.
    const double reach_t = K * (std::abs(L.x) + std::abs(L.y));
    const double reach_f = K * std::abs(L.z);
    require(reach_t <= 0.5 * period - kSectionMargin &&
                reach_f <= 0.5 * period - kSectionMargin,
            "finite section wraps around the torus");
    const DiscreteSignal g = signal::normalized(pulse);
    std::vector<DiscreteSignal> vecs;
    vecs.reserve(std::size_t(2 * K + 1) * std::size_t(2 * K + 1));
    for (int k = -K; k <= K; ++k)
        for (int l = -K; l <= K; ++l)
            vecs.push_back(
                signal::tf_shift_weyl(g, k * L.x + l * L.y, l * L.z));
    return vecs;
}

GramMatrix continuous_gram(const DiscreteSignal& pulse,
                           const lattice::LatticeGenerator& L, int K) {
    return GramMatrix(
        gram_from_columns(to_matrix(continuous_system(pulse, L, K)), true));
}

DiscreteSignal lowdin_continuous(const DiscreteSignal& pulse,
                                 const lattice::LatticeGenerator& L, int K) {
    const std::vector<DiscreteSignal> vecs = continuous_system(pulse, L, K);
    const int center = K * (2 * K + 1) + K;
    return signal::normalized(lowdin_core(vecs, center));
}

double dilation_commutes_with_lowdin_check(double sigma, double rho, int N,
                                           int K) {
    require(sigma > 0.0 && rho > 0.0, "sigma and rho must be positive");
    const lattice::LatticeGenerator lat1 = lattice::rectangular(
        1.0 / std::sqrt(sigma * rho), std::sqrt(sigma / rho));
    const lattice::LatticeGenerator lat0 =
        lattice::rectangular(1.0 / std::sqrt(rho), 1.0 / std::sqrt(rho));
    const DiscreteSignal lhs =
        lowdin_continuous(signal::gaussian(N, sigma), lat1, K);
    const DiscreteSignal rhs = signal::normalized(signal::dilate(
        lowdin_continuous(signal::gaussian(N), lat0, K), std::sqrt(sigma)));
    const double overlap = std::abs(signal::inner(lhs, rhs));
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
}

std::pair<double, double> gaussian_riesz_bounds(
    const lattice::LatticeGenerator& L) {
    // Gram entries in symmetric-shift gauge: R_{uv} = omega * amb with
    // omega = e^{pi i D (m_u n_v - n_u m_v)}, amb = e^{-pi |dz|^2 / 2},
    // D = x z. The diagonal gauge e^{pi i D m n} turns R into a banded
    // Laurent operator whose coefficients depend on m only through
    // e^{2 pi i D m dn}, periodic in m with the denominator q of D.
    const double D = L.x * L.z;
    const auto [p, q_] = small_rational(D, 8, 1e-9);
    const int q = int(q_);
    require(p > 0, "reciprocal density must be positive");

    // Offsets dz = dm c1 + dn c2 with non-negligible Gaussian ambiguity.
    const double cut = 8.0;
    const int nmax = int(std::floor(cut / std::abs(L.z)));
    const int mmax =
        int(std::ceil((cut + nmax * std::abs(L.y)) / std::abs(L.x)));
    struct Offset {
        int dm, dn;
        cplx base;
    };
    std::vector<Offset> offs;
    for (int dn = -nmax; dn <= nmax; ++dn) {
        for (int dm = -mmax; dm <= mmax; ++dm) {
            const double tpos = dm * L.x + dn * L.y;
            const double fpos = dn * L.z;
            const double r2 = tpos * tpos + fpos * fpos;
            if (r2 > cut * cut) continue;
            offs.push_back({dm, dn,
                            std::polar(std::exp(-0.5 * kPi * r2),
                                       kPi * D * dm * dn)});
        }
    }

    // Bloch fibers H(theta) of size q x q; the spectrum of the infinite
    // operator is the union of fiber eigenvalues over the torus.
    const int grid = 768;
    const int cols = 2 * mmax + 1;
    double lmin = std::numeric_limits<double>::infinity();
    double lmax = -lmin;
    Eigen::MatrixXcd A(q, cols), H(q, q);
    std::vector<cplx> tab(size_t(2 * (mmax / q + 2) + 1));
    const int dmax = mmax / q + 1;
    for (int it2 = 0; it2 < grid; ++it2) {
        const double th2 = 2.0 * kPi * it2 / grid;
        A.setZero();
        for (int rho = 0; rho < q; ++rho)
            for (const Offset& o : offs)
                A(rho, o.dm + mmax) +=
                    o.base *
                    std::polar(1.0, (2.0 * kPi * D * rho + th2) * o.dn);
        for (int it1 = 0; it1 < grid; ++it1) {
            const double th1 = 2.0 * kPi * it1 / grid;
            for (int d = -dmax; d <= dmax; ++d)
                tab[size_t(d + dmax)] = std::polar(1.0, th1 * d);
            H.setZero();
            for (int rho = 0; rho < q; ++rho) {
                for (int dm = -mmax; dm <= mmax; ++dm) {
                    const int rho2 = ((rho + dm) % q + q) % q;
                    const int dj = (rho + dm - rho2) / q;
                    H(rho, rho2) += A(rho, dm + mmax) * tab[size_t(dj + dmax)];
                }
            }
            if (q == 1) {
                const double lam = H(0, 0).real();
                lmin = std::min(lmin, lam);
                lmax = std::max(lmax, lam);
            } else if (q == 2) {
                const double mean = 0.5 * (H(0, 0).real() + H(1, 1).real());
                const double half = 0.5 * (H(0, 0).real() - H(1, 1).real());
                const cplx b = 0.5 * (H(0, 1) + std::conj(H(1, 0)));
                const double disc =
                    std::sqrt(half * half + std::norm(b));
                lmin = std::min(lmin, mean - disc);
                lmax = std::max(lmax, mean + disc);
            } else {
                const Eigen::MatrixXcd Hs = 0.5 * (H + H.adjoint());
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hs);
                lmin = std::min(lmin, es.eigenvalues()(0));
                lmax = std::max(lmax, es.eigenvalues()(q - 1));
            }
        }
    }
    return {lmin, lmax};
}

Eigen::MatrixXcd finite_lowdin(const Eigen::MatrixXcd& Phi) {
    require(Phi.rows() >= Phi.cols() && Phi.cols() >= 1,
            "matrix must have at least as many rows as columns");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        Phi, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= kRankTol * sv(0))
        throw numeric_error("matrix is rank deficient");
    return svd.matrixU() * svd.matrixV().adjoint();
}

Eigen::MatrixXcd weighted_lowdin_svd(const Eigen::MatrixXcd& Phi,
                                     const Eigen::MatrixXcd& W) {
    require(Phi.rows() == Phi.cols() && Phi.rows() >= 1,
            "matrix must be square");
    require(W.rows() == Phi.cols(), "weight row count must match");
    require(W.norm() > 0.0, "weight matrix must be nonzero");
    const Eigen::MatrixXcd A = Phi * (W * W.adjoint());
    if (A.norm() <= 0.0) throw numeric_error("weighted matrix vanishes");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace tfa::gabor
