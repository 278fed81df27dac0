#include "cvrobust/channel_dynamics.hpp"

#include <cmath>

namespace cvrobust {

SampleHealth sample_health(const MatrixXcd& rho) {
    SampleHealth h;
    h.trace_error = std::abs(rho.trace() - Complex(1.0));
    h.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    h.min_eigenvalue = hermitian_eigenvalues(rho).minCoeff();
    return h;
}

MatrixXcd lindblad_dissipator(const MatrixXcd& O, const MatrixXcd& rho) {
    if (O.rows() != O.cols() || rho.rows() != rho.cols() || O.rows() != rho.rows())
        throw DimensionMismatch("lindblad_dissipator: operator/state dimension mismatch");
    const MatrixXcd Od = O.adjoint();
    const MatrixXcd OdO = Od * O;
    return 2.0 * O * rho * Od - OdO * rho - rho * OdO;
}

LindbladGenerator::LindbladGenerator(const ChannelParams& p, Cutoff cutoff)
    : cutoff_(cutoff), kind_(p.kind) {
    const int d = cutoff.d;
    const int D = d * d;
    if (kind_ == ChannelKind::LossThermal) {
        gain1_ = p.gamma * p.n1.N;
        gain2_ = p.gamma * p.n2.N;
        loss1_ = p.gamma * (p.n1.N + 1.0);
        loss2_ = p.gamma * (p.n2.N + 1.0);
        // anticommutator weight; (a a^dag) diag is n+1 except 0 at the top level
        auto w_single = [&](double N, int n) {
            const double kbar = (n < d - 1) ? double(n + 1) : 0.0;
            return 0.5 * p.gamma * (N * kbar + (N + 1.0) * double(n));
        };
        damping_.resize(D);
        for (int n1 = 0; n1 < d; ++n1)
            for (int n2 = 0; n2 < d; ++n2)
                damping_(n1 * d + n2) = w_single(p.n1.N, n1) + w_single(p.n2.N, n2);
    } else {
        dephasing_rate_.resize(D, D);
        for (int c = 0; c < D; ++c) {
            const int m1 = c / d, m2 = c % d;
            for (int r = 0; r < D; ++r) {
                const int n1 = r / d, n2 = r % d;
                const double dn1 = double(n1 - m1), dn2 = double(n2 - m2);
                dephasing_rate_(r, c) = -0.5 * p.gamma * (dn1 * dn1 + dn2 * dn2);
            }
        }
    }
}

void LindbladGenerator::apply(const MatrixXcd& rho, MatrixXcd& out) const {
    const int d = cutoff_.d;
    const int D = d * d;
    if (rho.rows() != D || rho.cols() != D)
        throw DimensionMismatch("LindbladGenerator: state dimension mismatch");
    out.resize(D, D);
    if (kind_ == ChannelKind::Dephasing) {
        out.array() = dephasing_rate_.array() * rho.array();
        return;
    }
    const Complex* src = rho.data();
    Complex* dst = out.data();
    const double* W = damping_.data();
    for (int c = 0; c < D; ++c) {
        const int c1 = c / d, c2 = c % d;
        const Complex* col = src + std::ptrdiff_t(c) * D;
        Complex* ocol = dst + std::ptrdiff_t(c) * D;
        for (int r = 0; r < D; ++r) {
            const int r1 = r / d, r2 = r % d;
            Complex acc = -(W[r] + W[c]) * col[r];
            if (r1 >= 1 && c1 >= 1)
                acc += gain1_ * std::sqrt(double(r1) * c1) * src[std::ptrdiff_t(c - d) * D + (r - d)];
            if (r1 < d - 1 && c1 < d - 1)
                acc += loss1_ * std::sqrt(double(r1 + 1) * (c1 + 1)) * src[std::ptrdiff_t(c + d) * D + (r + d)];
            if (r2 >= 1 && c2 >= 1)
                acc += gain2_ * std::sqrt(double(r2) * c2) * src[std::ptrdiff_t(c - 1) * D + (r - 1)];
            if (r2 < d - 1 && c2 < d - 1)
                acc += loss2_ * std::sqrt(double(r2 + 1) * (c2 + 1)) * src[std::ptrdiff_t(c + 1) * D + (r + 1)];
            ocol[r] = acc;
        }
    }
}

MatrixXcd loss_thermal_rhs(const DensityOperator& rho, const ChannelParams& p) {
    if (p.kind != ChannelKind::LossThermal)
        throw ConfigError("loss_thermal_rhs: channel kind is not LossThermal");
    LindbladGenerator gen(p, rho.cutoff);
    MatrixXcd out;
    gen.apply(rho.matrix, out);
    return out;
}

MatrixXcd dephasing_rhs(const DensityOperator& rho, const ChannelParams& p) {
    if (p.kind != ChannelKind::Dephasing)
        throw ConfigError("dephasing_rhs: channel kind is not Dephasing");
    LindbladGenerator gen(p, rho.cutoff);
    MatrixXcd out;
    gen.apply(rho.matrix, out);
    return out;
}

namespace {

struct Rk4Workspace {
    MatrixXcd k1, k2, k3, k4, tmp;
};

void rk4_step(const LindbladGenerator& gen, MatrixXcd& rho, double dt, bool hermitize,
              Rk4Workspace& ws) {
    gen.apply(rho, ws.k1);
    ws.tmp = rho + (0.5 * dt) * ws.k1;
    gen.apply(ws.tmp, ws.k2);
    ws.tmp = rho + (0.5 * dt) * ws.k2;
    gen.apply(ws.tmp, ws.k3);
    ws.tmp = rho + dt * ws.k3;
    gen.apply(ws.tmp, ws.k4);
    rho += (dt / 6.0) * (ws.k1 + 2.0 * ws.k2 + 2.0 * ws.k3 + ws.k4);
    if (hermitize) rho = 0.5 * (rho + rho.adjoint()).eval();
}

void check_sample_health(const MatrixXcd& rho, double t) {
    const SampleHealth h = sample_health(rho);
    if (!std::isfinite(h.trace_error) || !std::isfinite(h.min_eigenvalue) ||
        h.trace_error > 1e-9 || h.hermiticity_error > 1e-10 || h.min_eigenvalue < -1e-8)
        throw NumericalHealthViolation(
            "evolve: health violated at t=" + std::to_string(t) +
            " (trace_error=" + std::to_string(h.trace_error) +
            ", herm_error=" + std::to_string(h.hermiticity_error) +
            ", min_eig=" + std::to_string(h.min_eigenvalue) + "); reduce dt or raise cutoff");
}

} // namespace

std::vector<DensityOperator> evolve(const DensityOperator& rho0, const ChannelParams& p,
                                    const IntegratorConfig& cfg,
                                    const std::vector<double>& sample_times) {
    if (cfg.dt <= 0.0) throw ConfigError("evolve: dt must be > 0");
    for (size_t i = 0; i < sample_times.size(); ++i) {
        if (sample_times[i] < 0.0) throw ConfigError("evolve: negative sample time");
        if (i > 0 && sample_times[i] < sample_times[i - 1])
            throw ConfigError("evolve: sample times must be non-decreasing");
    }
    LindbladGenerator gen(p, rho0.cutoff);
    MatrixXcd rho = rho0.matrix;
    Rk4Workspace ws;
    std::vector<DensityOperator> out;
    out.reserve(sample_times.size());
    double t_cur = 0.0;
    for (double t_target : sample_times) {
        const double span = t_target - t_cur;
        const auto nsteps = static_cast<long>(std::floor(span / cfg.dt + 1e-12));
        for (long s = 0; s < nsteps; ++s)
            rk4_step(gen, rho, cfg.dt, cfg.hermitize_each_step, ws);
        const double rem = span - double(nsteps) * cfg.dt;
        if (rem > 1e-15)
            rk4_step(gen, rho, rem, cfg.hermitize_each_step, ws);
        t_cur = t_target;
        check_sample_health(rho, t_target);
        out.push_back(DensityOperator::from_matrix_unchecked(rho, rho0.cutoff));
    }
    return out;
}

DensityOperator evolve_to(const DensityOperator& rho0, const ChannelParams& p,
                          const IntegratorConfig& cfg, double t) {
    return evolve(rho0, p, cfg, {t}).front();
}

double mixing_angle(double gamma, double t) {
    if (t < 0.0) throw ConfigError("mixing_angle: t must be >= 0");
    return std::atan(std::sqrt(std::expm1(gamma * t)));
}

namespace {

// exp(zeta (a_s^dag a_a - a_s a_a^dag)) on a (system, ancilla) pair with
// per-factor dimensions ds, da; system-major ordering.
MatrixXcd beam_splitter_pair(double zeta, int ds, int da) {
    const MatrixXcd as = annihilation_single_mode(Cutoff(ds));
    const MatrixXcd aa = annihilation_single_mode(Cutoff(da));
    const MatrixXcd gen = zeta * (tensor(as.adjoint(), aa) - tensor(as, aa.adjoint()));
    // generator is anti-Hermitian: exponentiate via eigendecomposition of i*gen
    const MatrixXcd h = Complex(0.0, 1.0) * gen;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw NumericalHealthViolation("beam_splitter_unitary: eigensolver failed");
    const VectorXcd phases =
        (Complex(0.0, -1.0) * es.eigenvalues().cast<Complex>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Single-mode channel as a d^2 x d^2 superoperator, S[(n,m),(a,b)] =
// sum_K E[n,a] conj(E[m,b]), from the beam-splitter dilation with a thermal
// ancilla of occupation N.
MatrixXcd thermal_mixing_superop(double zeta, int d, ThermalOccupation N, Cutoff ancilla_cutoff) {
    const int da = ancilla_cutoff.d;
    const MatrixXcd nu = thermal_density(N, ancilla_cutoff);
    const MatrixXcd U = beam_splitter_pair(zeta, d, da);
    MatrixXcd S = MatrixXcd::Zero(d * d, d * d);
    MatrixXcd E(d, d);
    for (int k = 0; k < da; ++k) {
        const double pk = nu(k, k).real();
        if (pk < 1e-16) continue;
        const double w = std::sqrt(pk);
        for (int m = 0; m < da; ++m) {
            for (int sp = 0; sp < d; ++sp)
                for (int s = 0; s < d; ++s)
                    E(sp, s) = w * U(sp * da + m, s * da + k);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    for (int n = 0; n < d; ++n)
                        for (int mm = 0; mm < d; ++mm)
                            S(n * d + mm, a * d + b) += E(n, a) * std::conj(E(mm, b));
        }
    }
    return S;
}

// Apply a one-mode superoperator to the chosen mode of a two-mode state.
MatrixXcd apply_superop(const MatrixXcd& S, const MatrixXcd& rho, ModeIndex mode, int d) {
    MatrixXcd C(d * d, d * d);
    if (mode == ModeIndex::Mode2) {
        for (int n1 = 0; n1 < d; ++n1)
            for (int m1 = 0; m1 < d; ++m1)
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b)
                        C(a * d + b, n1 * d + m1) = rho(n1 * d + a, m1 * d + b);
    } else {
        for (int n2 = 0; n2 < d; ++n2)
            for (int m2 = 0; m2 < d; ++m2)
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b)
                        C(a * d + b, n2 * d + m2) = rho(a * d + n2, b * d + m2);
    }
    const MatrixXcd R = S * C;
    MatrixXcd out(d * d, d * d);
    if (mode == ModeIndex::Mode2) {
        for (int n1 = 0; n1 < d; ++n1)
            for (int m1 = 0; m1 < d; ++m1)
                for (int n2 = 0; n2 < d; ++n2)
                    for (int m2 = 0; m2 < d; ++m2)
                        out(n1 * d + n2, m1 * d + m2) = R(n2 * d + m2, n1 * d + m1);
    } else {
        for (int n1 = 0; n1 < d; ++n1)
            for (int m1 = 0; m1 < d; ++m1)
                for (int n2 = 0; n2 < d; ++n2)
                    for (int m2 = 0; m2 < d; ++m2)
                        out(n1 * d + n2, m1 * d + m2) = R(n1 * d + m1, n2 * d + m2);
    }
    return out;
}

} // namespace

MatrixXcd beam_splitter_unitary(double zeta, Cutoff cutoff) {
    return beam_splitter_pair(zeta, cutoff.d, cutoff.d);
}

DensityOperator dilation_evolve(const DensityOperator& rho0, const ChannelParams& p, double t,
                                Cutoff ancilla_cutoff) {
    if (p.kind != ChannelKind::LossThermal)
        throw ConfigError("dilation_evolve: channel kind is not LossThermal");
    const int d = rho0.cutoff.d;
    const double zeta = mixing_angle(p.gamma, t);
    if (zeta == 0.0) return rho0;
    const MatrixXcd S1 = thermal_mixing_superop(zeta, d, p.n1, ancilla_cutoff);
    const MatrixXcd S2 = thermal_mixing_superop(zeta, d, p.n2, ancilla_cutoff);
    MatrixXcd rho = apply_superop(S1, rho0.matrix, ModeIndex::Mode1, d);
    rho = apply_superop(S2, rho, ModeIndex::Mode2, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityOperator(std::move(rho), rho0.cutoff);
}

} // namespace cvrobust
