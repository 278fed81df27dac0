#pragma once

#include <memory>
#include <vector>

#include "cvrobust/fock_core.hpp"
#include "cvrobust/state_factory.hpp"

namespace cvrobust {

enum class ChannelKind { LossThermal, Dephasing };

/// Loss coefficient and environment occupations. Dephasing ignores n1, n2.
struct ChannelParams {
    double gamma;
    ThermalOccupation n1;
    ThermalOccupation n2;
    ChannelKind kind;

    ChannelParams(double g, ThermalOccupation occ1, ThermalOccupation occ2, ChannelKind k)
        : gamma(g), n1(occ1), n2(occ2), kind(k) {
        if (gamma <= 0.0) throw ConfigError("ChannelParams: gamma must be > 0");
    }
};

struct IntegratorConfig {
    double dt;
    double t_max;
    bool hermitize_each_step = true;

    static IntegratorConfig defaults_for(const ChannelParams& p, double t_max_) {
        return IntegratorConfig{std::min(1e-3 / p.gamma, 1e-3), t_max_, true};
    }
};

/// Per-sample numerical health metrics of an evolved density matrix.
struct SampleHealth {
    double trace_error;
    double hermiticity_error;
    double min_eigenvalue;
};

SampleHealth sample_health(const MatrixXcd& rho);

// L[O]rho = 2 O rho O^dag - O^dag O rho - rho O^dag O
MatrixXcd lindblad_dissipator(const MatrixXcd& O, const MatrixXcd& rho);

// Right-hand sides of the two master equations, as one-shot calls.
MatrixXcd loss_thermal_rhs(const DensityOperator& rho, const ChannelParams& p);
MatrixXcd dephasing_rhs(const DensityOperator& rho, const ChannelParams& p);

/// Precomputed generator for repeated RHS evaluation inside the integrator.
class LindbladGenerator {
  public:
    LindbladGenerator(const ChannelParams& p, Cutoff cutoff);

    void apply(const MatrixXcd& rho, MatrixXcd& out) const;
    Cutoff cutoff() const { return cutoff_; }

  private:
    Cutoff cutoff_;
    ChannelKind kind_;
    VectorXd damping_;      // loss-thermal: anticommutator weight per basis index
    double gain1_, gain2_;  // Gamma * N_j
    double loss1_, loss2_;  // Gamma * (N_j + 1)
    Eigen::MatrixXd dephasing_rate_; // dephasing: elementwise decay rates
};

/// RK4 evolution emitted at the requested sample times (which must be
/// non-negative and non-decreasing). Health is validated at every sample.
std::vector<DensityOperator> evolve(const DensityOperator& rho0, const ChannelParams& p,
                                    const IntegratorConfig& cfg,
                                    const std::vector<double>& sample_times);

DensityOperator evolve_to(const DensityOperator& rho0, const ChannelParams& p,
                          const IntegratorConfig& cfg, double t);

// zeta_t = arctan sqrt(e^{Gamma t} - 1); cos^2 zeta_t = e^{-Gamma t}.
double mixing_angle(double gamma, double t);

// exp(zeta (a_i^dag a_j - a_j^dag a_i)) on a two-mode (system, ancilla) pair,
// both factors of dimension cutoff.d, system-major index ordering.
MatrixXcd beam_splitter_unitary(double zeta, Cutoff cutoff);

// Exact channel action: mix each system mode with a thermal ancilla at angle
// zeta_t, then trace the ancillas out.
DensityOperator dilation_evolve(const DensityOperator& rho0, const ChannelParams& p, double t,
                                Cutoff ancilla_cutoff);

} // namespace cvrobust
