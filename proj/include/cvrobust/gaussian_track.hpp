#pragma once

#include <Eigen/Dense>

#include "cvrobust/channel_dynamics.hpp"
#include "cvrobust/fock_core.hpp"

namespace cvrobust {

/// 4x4 real second-moment matrix, vacuum = identity convention; first
/// moments are zero throughout this artifact.
struct CovarianceMatrix {
    Eigen::Matrix4d sigma;
    Eigen::Vector4d mean = Eigen::Vector4d::Zero();

    explicit CovarianceMatrix(const Eigen::Matrix4d& s);

    double mean_photon_number() const { return (sigma.trace() - 4.0) / 4.0; }
};

// Diagonal blocks cosh(2r) I2, off-diagonal blocks sinh(2r) diag(1, -1).
CovarianceMatrix tmss_covariance(double r);

// sigma(t) = e^{-Gamma t} sigma(0) + (1 - e^{-Gamma t}) diag(2N1+1, 2N1+1, 2N2+1, 2N2+1)
CovarianceMatrix channel_on_covariance(const CovarianceMatrix& sigma, const ChannelParams& p,
                                       double t);

// Second moments of a Fock-space state in the (x1, p1, x2, p2) quadrature
// basis, x = a + a^dag, p = -i(a - a^dag). The Gaussian state with this CM
// (and the same first moments) is the Gaussification of rho.
CovarianceMatrix covariance_of(const DensityOperator& rho);

// Smaller symplectic eigenvalue of the partially transposed CM;
// entangled iff the result is < 1.
double pt_min_symplectic_eigenvalue(const CovarianceMatrix& sigma);

// max(0, -ln nu_minus), natural logarithm.
double gaussian_log_negativity(const CovarianceMatrix& sigma);

// Smallest t with nu_minus(t) >= 1 for the Gaussian state evolved from
// sigma0, bisected on [0, 50/Gamma] to 1e-8. Returns 0 if sigma0 is
// already PPT; throws NeverSeparates for N1 = N2 = 0.
double gaussian_separation_time(const CovarianceMatrix& sigma0, const ChannelParams& p);

// Convenience overload starting from tmss_covariance(r).
double gaussian_separation_time(double r, const ChannelParams& p);

} // namespace cvrobust
