#pragma once

#include <functional>

#include "cvrobust/fock_core.hpp"

namespace cvrobust {

/// Squeezing parameter lambda in [0, 1); r = atanh(lambda).
struct TmssParam {
    double lambda;

    explicit TmssParam(double l) : lambda(l) {
        if (lambda < 0.0 || lambda >= 1.0)
            throw ConfigError("TmssParam: lambda must lie in [0, 1)");
    }
    double squeezing_r() const { return std::atanh(lambda); }
};

/// Amplitudes c_0..c_K of sum_n c_n |n,n>. Normalized on construction.
struct PnesCoefficients {
    VectorXcd c;

    explicit PnesCoefficients(VectorXcd coeffs) : c(std::move(coeffs)) {
        if (c.size() == 0) throw ConfigError("PnesCoefficients: empty coefficient list");
        const double nrm = c.norm();
        if (nrm == 0.0) throw ConfigError("PnesCoefficients: zero vector");
        c /= nrm;
    }
};

/// Mean photon number of a thermal mode.
struct ThermalOccupation {
    double N;

    explicit ThermalOccupation(double n) : N(n) {
        if (N < 0.0) throw ConfigError("ThermalOccupation: N must be >= 0");
    }
};

// |psi> = sum_n lambda^n sqrt(1-lambda^2) |n,n>, renormalized after truncation.
// Throws CutoffTooSmall when the truncated tail mass exceeds 1e-10.
Ket two_mode_squeezed_ket(TmssParam p, Cutoff cutoff);

// Ket with amplitude c_n at |n,n>, zero elsewhere.
Ket pnes_ket(const PnesCoefficients& c, Cutoff cutoff);

// Single-mode thermal state, p_n = N^n/(N+1)^{n+1}, renormalized after
// truncation. Throws CutoffTooSmall when the tail exceeds 1e-10.
MatrixXcd thermal_density(ThermalOccupation N, Cutoff cutoff);

/// A scalar-parametrized state family with a monotone energy curve on
/// [bracket_low, bracket_high].
struct EnergyCurve {
    std::function<double(double)> energy_of_param;
    double bracket_low;
    double bracket_high;
};

// Bisect for |energy(p) - target| <= tol. Throws TargetUnreachable when the
// bracket does not straddle the target.
double match_energy(double target, const EnergyCurve& family, double tol);

// Energy curves for the built-in families (exact series at the given cutoff).
EnergyCurve tmss_energy_curve(Cutoff cutoff);
EnergyCurve pnes_two_term_energy_curve(int n); // cos(theta)|00> + sin(theta)|nn>

} // namespace cvrobust
