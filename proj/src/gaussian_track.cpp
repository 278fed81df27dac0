#include "cvrobust/gaussian_track.hpp"

#include <array>
#include <cmath>

namespace cvrobust {

namespace {

using Mat2L = Eigen::Matrix<long double, 2, 2>;

long double det2(const Mat2L& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// nu_minus from the block-determinant formula, rationalized to avoid the
// cancellation in Delta - sqrt(Delta^2 - 4 det sigma); det sigma via a Schur
// complement so the large cosh^4 products never meet head on. Long double
// keeps log-negativity of strongly squeezed states accurate to ~1e-14.
double min_symplectic_eigenvalue_impl(const Eigen::Matrix4d& s, bool partial_transpose) {
    const Mat2L A = s.block<2, 2>(0, 0).cast<long double>();
    const Mat2L B = s.block<2, 2>(2, 2).cast<long double>();
    const Mat2L C = s.block<2, 2>(0, 2).cast<long double>();

    const long double det_a = det2(A);
    Mat2L a_inv;
    a_inv << A(1, 1), -A(0, 1), -A(1, 0), A(0, 0);
    a_inv /= det_a;
    const long double det_s = det_a * det2(Mat2L(B - C.transpose() * a_inv * C));
    if (det_s < -1e-9)
        throw NonPhysicalCM("covariance matrix has negative determinant " +
                            std::to_string(double(det_s)));

    const long double sign = partial_transpose ? -1.0L : 1.0L;
    const long double delta = det_a + det2(B) + sign * 2.0L * det2(C);
    const long double disc = std::max(delta * delta - 4.0L * det_s, 0.0L);
    const long double nu2 = 2.0L * std::max(det_s, 0.0L) / (delta + std::sqrt(disc));
    return double(std::sqrt(nu2));
}

// Physicality witness sigma + i Omega >= 0, equivalent to all symplectic
// eigenvalues >= 1 and numerically stable near the pure-state boundary where
// the determinant formula degenerates.
double physicality_margin(const Eigen::Matrix4d& s) {
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = omega(2, 3) = 1.0;
    omega(1, 0) = omega(3, 2) = -1.0;
    const Eigen::Matrix4cd m =
        s.cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * omega.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace

CovarianceMatrix::CovarianceMatrix(const Eigen::Matrix4d& s) : sigma(s) {
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw NonPhysicalCM("covariance matrix is not symmetric");
    if (physicality_margin(sigma) < -1e-9)
        throw NonPhysicalCM("covariance matrix violates the uncertainty bound");
}

CovarianceMatrix tmss_covariance(double r) {
    if (r < 0.0) throw ConfigError("tmss_covariance: r must be >= 0");
    const double c = std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    Eigen::Matrix4d m;
    m << c, 0, s, 0,
         0, c, 0, -s,
         s, 0, c, 0,
         0, -s, 0, c;
    return CovarianceMatrix(m);
}

CovarianceMatrix channel_on_covariance(const CovarianceMatrix& sigma, const ChannelParams& p,
                                       double t) {
    if (p.kind != ChannelKind::LossThermal)
        throw ConfigError("channel_on_covariance: channel kind is not LossThermal");
    if (t < 0.0) throw ConfigError("channel_on_covariance: t must be >= 0");
    const double eta = std::exp(-p.gamma * t);
    Eigen::Vector4d env(2.0 * p.n1.N + 1.0, 2.0 * p.n1.N + 1.0,
                        2.0 * p.n2.N + 1.0, 2.0 * p.n2.N + 1.0);
    Eigen::Matrix4d out = eta * sigma.sigma + (1.0 - eta) * Eigen::Matrix4d(env.asDiagonal());
    return CovarianceMatrix(out);
}

CovarianceMatrix covariance_of(const DensityOperator& rho) {
    const MatrixXcd a1 = annihilation_operator(ModeIndex::Mode1, rho.cutoff);
    const MatrixXcd a2 = annihilation_operator(ModeIndex::Mode2, rho.cutoff);
    const Complex im(0.0, 1.0);
    std::array<MatrixXcd, 4> quad = {
        a1 + a1.adjoint(), -im * (a1 - a1.adjoint()),
        a2 + a2.adjoint(), -im * (a2 - a2.adjoint())};

    Eigen::Vector4d mean;
    for (int j = 0; j < 4; ++j)
        mean(j) = (rho.matrix * quad[j]).trace().real();
    Eigen::Matrix4d s;
    for (int j = 0; j < 4; ++j)
        for (int k = j; k < 4; ++k) {
            const double sym =
                0.5 * (rho.matrix * (quad[j] * quad[k] + quad[k] * quad[j])).trace().real();
            s(j, k) = s(k, j) = sym - mean(j) * mean(k);
        }
    // Moments taken with truncated ladder operators can overshoot the
    // uncertainty boundary by O(cutoff tail) for states with support near
    // the top Fock level; repair the artifact with an isotropic nudge.
    const double margin = physicality_margin(s);
    if (margin < 0.0) s += 2.0 * (-margin) * Eigen::Matrix4d::Identity();
    CovarianceMatrix out(s);
    out.mean = mean;
    return out;
}

double pt_min_symplectic_eigenvalue(const CovarianceMatrix& sigma) {
    return min_symplectic_eigenvalue_impl(sigma.sigma, true);
}

double gaussian_log_negativity(const CovarianceMatrix& sigma) {
    const double nu = pt_min_symplectic_eigenvalue(sigma);
    return std::max(0.0, -std::log(nu));
}

double gaussian_separation_time(const CovarianceMatrix& sigma0, const ChannelParams& p) {
    if (p.kind != ChannelKind::LossThermal)
        throw ConfigError("gaussian_separation_time: channel kind is not LossThermal");
    if (pt_min_symplectic_eigenvalue(sigma0) >= 1.0) return 0.0;
    if (p.n1.N + p.n2.N <= 0.0)
        throw NeverSeparates("gaussian_separation_time: pure loss never fully disentangles");
    auto nu_at = [&](double t) {
        return pt_min_symplectic_eigenvalue(channel_on_covariance(sigma0, p, t));
    };
    double lo = 0.0;
    double hi = 50.0 / p.gamma;
    if (nu_at(hi) < 1.0)
        throw NoSeparationFound("gaussian_separation_time: still entangled at t = 50/Gamma");
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        if (nu_at(mid) >= 1.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double gaussian_separation_time(double r, const ChannelParams& p) {
    if (r <= 0.0) {
        if (p.kind != ChannelKind::LossThermal)
            throw ConfigError("gaussian_separation_time: channel kind is not LossThermal");
        return 0.0;
    }
    return gaussian_separation_time(tmss_covariance(r), p);
}

} // namespace cvrobust
