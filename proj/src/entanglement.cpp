#include "cvrobust/entanglement.hpp"

#include <cmath>

namespace cvrobust {

NegativityResult log_negativity(const DensityOperator& rho) {
    const VectorXd eigs = hermitian_eigenvalues(partial_transpose(rho));
    double neg = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
        if (eigs(i) < 0.0) neg -= eigs(i);
    return NegativityResult{neg, std::log(2.0 * neg + 1.0), eigs.minCoeff()};
}

bool is_ppt(const DensityOperator& rho, double tol) {
    return log_negativity(rho).min_pt_eigenvalue >= -tol;
}

SeparationTime separation_time(const DensityOperator& rho0, const ChannelParams& p,
                               const IntegratorConfig& cfg, double tol_time) {
    if (p.kind != ChannelKind::LossThermal)
        throw ConfigError("separation_time: channel kind is not LossThermal");
    if (p.n1.N + p.n2.N <= 0.0)
        throw NeverSeparates("separation_time: pure loss never fully disentangles");
    if (tol_time <= 0.0) throw ConfigError("separation_time: tol_time must be > 0");

    auto entangled = [&](const DensityOperator& rho) {
        return log_negativity(rho).negativity > kSeparationNegativityThreshold;
    };
    if (!entangled(rho0)) return SeparationTime{0.0, 0.0, 0.0, 0.0};

    // coarse march, continuing the evolution (semigroup)
    const double step = 0.05 / p.gamma;
    const double horizon = 50.0 / p.gamma;
    DensityOperator cur = rho0;
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    for (double t = step; t <= horizon + 0.5 * step; t += step) {
        cur = evolve_to(cur, p, cfg, step);
        if (!entangled(cur)) {
            lo = t - step;
            hi = t;
            bracketed = true;
            break;
        }
        lo = t;
    }
    if (!bracketed)
        throw NoSeparationFound("separation_time: still entangled at the march horizon 50/Gamma");

    // bisection; probes re-evolve from t = 0
    while (hi - lo > tol_time) {
        const double mid = 0.5 * (lo + hi);
        if (entangled(evolve_to(rho0, p, cfg, mid)))
            lo = mid;
        else
            hi = mid;
    }
    return SeparationTime{0.5 * (lo + hi), lo, hi, hi - lo};
}

} // namespace cvrobust
