#include "cvrobust/state_factory.hpp"

#include <cmath>

namespace cvrobust {

Ket two_mode_squeezed_ket(TmssParam p, Cutoff cutoff) {
    const int d = cutoff.d;
    const double l2 = p.lambda * p.lambda;
    const double tail = std::pow(l2, d); // truncated weight sum_{n>=d} lambda^{2n} (1-lambda^2)
    if (tail > 1e-10)
        throw CutoffTooSmall("two_mode_squeezed_ket: truncated tail mass " + std::to_string(tail));
    VectorXcd amps = VectorXcd::Zero(d * d);
    const double norm0 = std::sqrt(1.0 - l2);
    for (int n = 0; n < d; ++n)
        amps(n * d + n) = norm0 * std::pow(p.lambda, n);
    return Ket(std::move(amps), cutoff); // Ket renormalizes
}

Ket pnes_ket(const PnesCoefficients& c, Cutoff cutoff) {
    const int d = cutoff.d;
    if (c.c.size() > d)
        throw DimensionMismatch("pnes_ket: coefficient count exceeds cutoff");
    VectorXcd amps = VectorXcd::Zero(d * d);
    for (int n = 0; n < c.c.size(); ++n)
        amps(n * d + n) = c.c(n);
    return Ket(std::move(amps), cutoff);
}

MatrixXcd thermal_density(ThermalOccupation occ, Cutoff cutoff) {
    const int d = cutoff.d;
    const double N = occ.N;
    const double ratio = N / (N + 1.0);
    const double tail = std::pow(ratio, d); // sum_{n>=d} p_n
    if (tail > 1e-10)
        throw CutoffTooSmall("thermal_density: truncated tail mass " + std::to_string(tail));
    MatrixXcd rho = MatrixXcd::Zero(d, d);
    double total = 0.0;
    for (int n = 0; n < d; ++n) {
        const double p = std::pow(ratio, n) / (N + 1.0);
        rho(n, n) = p;
        total += p;
    }
    rho /= total;
    return rho;
}

double match_energy(double target, const EnergyCurve& family, double tol) {
    double lo = family.bracket_low;
    double hi = family.bracket_high;
    double e_lo = family.energy_of_param(lo);
    double e_hi = family.energy_of_param(hi);
    if ((e_lo - target) * (e_hi - target) > 0.0)
        throw TargetUnreachable("match_energy: target " + std::to_string(target) +
                                " outside bracket energies [" + std::to_string(e_lo) + ", " +
                                std::to_string(e_hi) + "]");
    const bool increasing = e_hi > e_lo;
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double e = family.energy_of_param(mid);
        if (std::abs(e - target) <= tol) return mid;
        if ((e < target) == increasing)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

EnergyCurve tmss_energy_curve(Cutoff cutoff) {
    const int d = cutoff.d;
    return EnergyCurve{
        [d](double lambda) {
            // energy of the truncated, renormalized state: sum 2n q^n / sum q^n, q = lambda^2
            const double q = lambda * lambda;
            double num = 0.0, den = 0.0, qn = 1.0;
            for (int n = 0; n < d; ++n) {
                num += 2.0 * n * qn;
                den += qn;
                qn *= q;
            }
            return num / den;
        },
        0.0, 0.999};
}

EnergyCurve pnes_two_term_energy_curve(int n) {
    if (n < 1) throw ConfigError("pnes_two_term_energy_curve: n must be >= 1");
    return EnergyCurve{
        [n](double theta) {
            const double s = std::sin(theta);
            return 2.0 * n * s * s;
        },
        0.0, M_PI / 2.0};
}

} // namespace cvrobust
