#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cvrobust/fock_core.hpp"
#include "cvrobust/gaussian_track.hpp"
#include "cvrobust/state_factory.hpp"

using namespace cvrobust;

namespace {

ChannelParams loss_thermal(double gamma, double n1, double n2) {
    return ChannelParams(gamma, ThermalOccupation(n1), ThermalOccupation(n2),
                         ChannelKind::LossThermal);
}

// Second moments of a Fock-space state in the vacuum = identity convention,
// quadratures x = a + a^dag, p = -i(a - a^dag).
Eigen::Matrix4d second_moments_from_fock(const DensityOperator& rho) {
    const Cutoff c = rho.cutoff;
    const MatrixXcd a1 = annihilation_operator(ModeIndex::Mode1, c);
    const MatrixXcd a2 = annihilation_operator(ModeIndex::Mode2, c);
    const Complex i(0.0, 1.0);
    std::array<MatrixXcd, 4> quad = {a1 + a1.adjoint(), -i * (a1 - a1.adjoint()),
                                     a2 + a2.adjoint(), -i * (a2 - a2.adjoint())};
    Eigen::Matrix4d sigma;
    for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 4; ++col) {
            const MatrixXcd sym = 0.5 * (quad[r] * quad[col] + quad[col] * quad[r]);
            sigma(r, col) = (rho.matrix * sym).trace().real();
        }
    return sigma;
}

} // namespace

TEST_CASE("tmss covariance matrix") {
    SUBCASE("vacuum") {
        CHECK((tmss_covariance(0.0).sigma - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() ==
              0.0);
    }

    SUBCASE("hyperbolic identities at lambda = 0.6") {
        const double r = std::atanh(0.6);
        const CovarianceMatrix cm = tmss_covariance(r);
        CHECK(cm.sigma(0, 0) == doctest::Approx(2.125).epsilon(1e-12)); // (1+l^2)/(1-l^2)
        CHECK(cm.sigma(0, 2) == doctest::Approx(std::sinh(2.0 * r)).epsilon(1e-12));
        CHECK(cm.sigma(1, 3) == doctest::Approx(-std::sinh(2.0 * r)).epsilon(1e-12));
    }

    SUBCASE("matches second moments of the Fock-space ket") {
        const Cutoff c(30);
        const DensityOperator rho =
            DensityOperator::from_ket(two_mode_squeezed_ket(TmssParam(0.6), c));
        const Eigen::Matrix4d fock = second_moments_from_fock(rho);
        const Eigen::Matrix4d exact = tmss_covariance(std::atanh(0.6)).sigma;
        CHECK((fock - exact).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("channel on covariance") {
    const double r = std::atanh(0.6);
    const CovarianceMatrix sigma0 = tmss_covariance(r);
    const ChannelParams p = loss_thermal(1.0, 0.3, 0.5);

    SUBCASE("zero time") {
        CHECK((channel_on_covariance(sigma0, p, 0.0).sigma - sigma0.sigma).cwiseAbs().maxCoeff() ==
              0.0);
    }

    SUBCASE("full relaxation to the environment CM") {
        const CovarianceMatrix relaxed = channel_on_covariance(sigma0, p, 50.0);
        Eigen::Vector4d env(1.6, 1.6, 2.0, 2.0);
        CHECK((relaxed.sigma - Eigen::Matrix4d(env.asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("CM energy reproduces the decay law") {
        const double n0 = sigma0.mean_photon_number();
        for (double t : {0.0, 0.2, 0.7, 1.5, 4.0}) {
            const double eta = std::exp(-t);
            const double expected = n0 * eta + 0.8 * (1.0 - eta);
            CHECK(channel_on_covariance(sigma0, p, t).mean_photon_number() ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }

    SUBCASE("affine semigroup composition is exact") {
        const CovarianceMatrix direct = channel_on_covariance(sigma0, p, 0.9);
        const CovarianceMatrix nested =
            channel_on_covariance(channel_on_covariance(sigma0, p, 0.4), p, 0.5);
        CHECK((direct.sigma - nested.sigma).cwiseAbs().maxCoeff() < 1e-14);
    }

    CHECK_THROWS_AS(
        channel_on_covariance(sigma0,
                              ChannelParams(1.0, ThermalOccupation(0), ThermalOccupation(0),
                                            ChannelKind::Dephasing),
                              1.0),
        ConfigError);
}

TEST_CASE("PT symplectic eigenvalue and Gaussian log-negativity") {
    SUBCASE("vacuum sits on the separable boundary") {
        const CovarianceMatrix vac = tmss_covariance(0.0);
        CHECK(pt_min_symplectic_eigenvalue(vac) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(gaussian_log_negativity(vac) == 0.0);
    }

    SUBCASE("TMSS: nu = e^{-2r} = (1-lambda)/(1+lambda)") {
        const double r = std::atanh(0.6);
        CHECK(pt_min_symplectic_eigenvalue(tmss_covariance(r)) ==
              doctest::Approx(0.25).epsilon(1e-12));
        CHECK(gaussian_log_negativity(tmss_covariance(r)) ==
              doctest::Approx(std::log(4.0)).epsilon(1e-12));
    }

    SUBCASE("log-negativity of TMSS(r) equals 2r") {
        for (double r : {0.0, 0.3, 1.0, 2.0, 3.0})
            CHECK(gaussian_log_negativity(tmss_covariance(r)) ==
                  doctest::Approx(2.0 * r).epsilon(1e-12));
    }

    SUBCASE("evolved symmetric-N trajectory: closed-form nu(t)") {
        const double r = std::atanh(0.5);
        const double N = 0.4;
        const ChannelParams p = loss_thermal(1.0, N, N);
        const CovarianceMatrix sigma0 = tmss_covariance(r);
        for (double t : {0.1, 0.5, 1.2}) {
            const double eta = std::exp(-t);
            const double expected = eta * std::exp(-2.0 * r) + (1.0 - eta) * (2.0 * N + 1.0);
            CHECK(pt_min_symplectic_eigenvalue(channel_on_covariance(sigma0, p, t)) ==
                  doctest::Approx(expected).epsilon(1e-10));
        }
    }

    SUBCASE("nu is strictly increasing along the trajectory") {
        const ChannelParams p = loss_thermal(1.0, 0.5, 0.5);
        const CovarianceMatrix sigma0 = tmss_covariance(1.0);
        double prev = pt_min_symplectic_eigenvalue(sigma0);
        for (double t = 0.1; t <= 3.0; t += 0.1) {
            const double nu = pt_min_symplectic_eigenvalue(channel_on_covariance(sigma0, p, t));
            CHECK(nu > prev);
            prev = nu;
        }
    }
}

TEST_CASE("gaussian separation time") {
    SUBCASE("closed form for the symmetric case") {
        // tau = ln[(2N + 1 - e^{-2r})/(2N)]; lambda = 0.6 -> e^{-2r} = 0.25
        const double r = std::atanh(0.6);
        const double tau = gaussian_separation_time(r, loss_thermal(1.0, 0.5, 0.5));
        CHECK(tau == doctest::Approx(std::log(1.75)).epsilon(1e-6));
    }

    SUBCASE("tau scales as 1/Gamma") {
        const double r = std::atanh(0.6);
        const double tau1 = gaussian_separation_time(r, loss_thermal(1.0, 0.5, 0.5));
        const double tau2 = gaussian_separation_time(r, loss_thermal(2.0, 0.5, 0.5));
        CHECK(tau1 / tau2 == doctest::Approx(2.0).epsilon(1e-6));
    }

    SUBCASE("vanishing squeezing gives vanishing tau") {
        CHECK(gaussian_separation_time(1e-7, loss_thermal(1.0, 0.5, 0.5)) < 1e-6);
    }

    SUBCASE("asymmetric occupations: continuous limit to the closed form") {
        const double r = std::atanh(0.6);
        const double tau_sym = gaussian_separation_time(r, loss_thermal(1.0, 0.5, 0.5));
        const double tau_near = gaussian_separation_time(r, loss_thermal(1.0, 0.5 + 5e-7, 0.5 - 5e-7));
        CHECK(std::abs(tau_sym - tau_near) < 1e-4);
    }

    SUBCASE("pure loss never separates") {
        CHECK_THROWS_AS(gaussian_separation_time(1.0, loss_thermal(1.0, 0.0, 0.0)),
                        NeverSeparates);
    }
}

TEST_CASE("gaussification of Fock-space states") {
    SUBCASE("vacuum has the identity CM") {
        const Cutoff c(6);
        VectorXcd amps = VectorXcd::Zero(c.two_mode_dim());
        amps(0) = 1.0;
        const auto rho = DensityOperator::from_ket(Ket(amps, c));
        CHECK((covariance_of(rho).sigma - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() <
              1e-12);
        CHECK(covariance_of(rho).mean.cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("TMSS ket reproduces the closed-form CM") {
        const Cutoff c(30);
        const auto rho = DensityOperator::from_ket(two_mode_squeezed_ket(TmssParam(0.6), c));
        const CovarianceMatrix cm = covariance_of(rho);
        CHECK((cm.sigma - tmss_covariance(std::atanh(0.6)).sigma).cwiseAbs().maxCoeff() < 1e-6);
        // allow for the isotropic physicality repair, which is O(cutoff tail)
        CHECK((cm.sigma - second_moments_from_fock(rho)).cwiseAbs().maxCoeff() < 1e-10);
    }

    SUBCASE("Bell-like state gaussifies onto the separability boundary") {
        // <a1 a2> = 1/2 for (|00> + |11>)/sqrt(2); the blocks are A = B = 2I,
        // C = diag(1, -1), giving nu_minus exactly 1.
        const Cutoff c(8);
        VectorXcd amps = VectorXcd::Zero(c.two_mode_dim());
        amps(0) = amps(1 * c.d + 1) = 1.0 / std::sqrt(2.0);
        const CovarianceMatrix cm = covariance_of(DensityOperator::from_ket(Ket(amps, c)));
        CHECK(cm.sigma(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(cm.sigma(0, 2) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(cm.sigma(1, 3) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(pt_min_symplectic_eigenvalue(cm) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(gaussian_separation_time(cm, loss_thermal(1.0, 0.5, 0.5)) < 1e-6);
    }

    SUBCASE("higher two-term PNES have no quadrature correlations") {
        // cos t|00> + sin t|22>: <a1 a2> vanishes, so the gaussification is a
        // product of thermal states and separates immediately.
        const Cutoff c(8);
        VectorXcd amps = VectorXcd::Zero(c.two_mode_dim());
        amps(0) = std::sqrt(0.75);
        amps(2 * c.d + 2) = 0.5;
        const CovarianceMatrix cm = covariance_of(DensityOperator::from_ket(Ket(amps, c)));
        CHECK(cm.sigma.block<2, 2>(0, 2).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(pt_min_symplectic_eigenvalue(cm) >= 1.0);
        CHECK(gaussian_separation_time(cm, loss_thermal(1.0, 0.5, 0.5)) == 0.0);
    }

    SUBCASE("CM separation time of the entangled gaussification is below the TMSS one") {
        // Energy-matched competitors: among Gaussian states at fixed energy
        // the TMSS is the most entangled, so its CM separates last.
        const Cutoff c(12);
        VectorXcd amps = VectorXcd::Zero(c.two_mode_dim());
        const double s2 = 0.25;
        amps(0) = std::sqrt(1.0 - s2);
        amps(1 * c.d + 1) = std::sqrt(s2);
        const CovarianceMatrix cm = covariance_of(DensityOperator::from_ket(Ket(amps, c)));
        const ChannelParams p = loss_thermal(1.0, 0.5, 0.5);
        const double tau_bell = gaussian_separation_time(cm, p);
        const double lambda = match_energy(2.0 * s2, tmss_energy_curve(c), 1e-10);
        const double tau_tmss = gaussian_separation_time(std::atanh(lambda), p);
        CHECK(tau_bell > 0.0);
        CHECK(tau_tmss >= tau_bell);
    }
}

TEST_CASE("covariance matrix physicality checks") {
    Eigen::Matrix4d sub = 0.5 * Eigen::Matrix4d::Identity(); // below the vacuum bound
    CHECK_THROWS_AS(CovarianceMatrix{sub}, NonPhysicalCM);

    Eigen::Matrix4d asym = Eigen::Matrix4d::Identity();
    asym(0, 1) = 0.1;
    CHECK_THROWS_AS(CovarianceMatrix{asym}, NonPhysicalCM);
}
