#pragma once

#include "cvrobust/channel_dynamics.hpp"

namespace cvrobust {

struct NegativityResult {
    double negativity;        // sum of |negative eigenvalues| of the partial transpose
    double log_negativity;    // ln(2 negativity + 1)
    double min_pt_eigenvalue;
};

struct SeparationTime {
    double tau;
    double bracket_low;
    double bracket_high;
    double achieved_tol;
};

NegativityResult log_negativity(const DensityOperator& rho);

bool is_ppt(const DensityOperator& rho, double tol = 1e-9);

/// Negativity-vanishing threshold used by the separation-time search.
inline constexpr double kSeparationNegativityThreshold = 1e-7;

// Smallest t with negativity <= 1e-7 under the LossThermal channel: coarse
// forward march with step 0.05/Gamma to bracket the crossing, then bisection
// with probes re-evolved from t = 0. Horizon 50/Gamma.
SeparationTime separation_time(const DensityOperator& rho0, const ChannelParams& p,
                               const IntegratorConfig& cfg, double tol_time);

} // namespace cvrobust
