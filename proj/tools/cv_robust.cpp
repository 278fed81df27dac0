#include <CLI11.hpp>
#include <cmath>
#include <iostream>

#include "cvrobust/experiment.hpp"

using namespace cvrobust;

namespace {

struct Overrides {
    std::optional<int> cutoff;
    std::optional<double> dt;
    std::optional<std::string> out;
};

ExperimentConfig load_config(const std::string& path, const Overrides& ov) {
    ExperimentConfig cfg = ExperimentConfig::from_json_file(path);
    if (ov.cutoff) cfg.cutoff = Cutoff(*ov.cutoff);
    if (ov.dt) cfg.integrator.dt = *ov.dt;
    if (ov.out) cfg.output_path = *ov.out;
    return cfg;
}

void add_overrides(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--cutoff", ov.cutoff, "Override per-mode Fock dimension");
    cmd->add_option("--dt", ov.dt, "Override integrator step");
    cmd->add_option("--out", ov.out, "Override output directory");
}

void print_family_report(const FamilyReport& rep) {
    std::cout << "family " << rep.name << " (parameter " << format_g12(rep.resolved_parameter)
              << ", initial energy " << format_g12(rep.initial_energy) << ")\n";
    for (const auto& r : rep.trajectory)
        std::cout << "  t=" << format_g12(r.t) << " energy=" << format_g12(r.energy)
                  << " log_negativity=" << format_g12(r.log_negativity) << "\n";
    if (rep.separation)
        std::cout << "  separation time tau=" << format_g12(rep.separation->tau) << " in ["
                  << format_g12(rep.separation->bracket_low) << ", "
                  << format_g12(rep.separation->bracket_high) << "]\n";
}

int run_simulate(const std::string& config_path, const Overrides& ov, int family_index) {
    ExperimentConfig cfg = load_config(config_path, ov);
    if (family_index < 0 || family_index >= int(cfg.families.size()))
        throw ConfigError("simulate: family index out of range");
    FamilyReport rep = run_family(cfg, cfg.families[family_index], false);
    ComparisonReport wrapper{{rep}, true, rep.max_energy_law_residual, ""};
    write_trajectories(wrapper, cfg.output_path);
    print_family_report(rep);
    std::cout << "trajectory written to " << cfg.output_path << "/" << rep.name
              << "_trajectory.csv\n";
    return 0;
}

int run_separation_time(const std::string& config_path, const Overrides& ov, int family_index) {
    ExperimentConfig cfg = load_config(config_path, ov);
    if (family_index < 0 || family_index >= int(cfg.families.size()))
        throw ConfigError("separation-time: family index out of range");
    FamilyReport rep = run_family(cfg, cfg.families[family_index], true);
    std::cout << rep.name << " tau=" << format_g12(rep.separation->tau) << " bracket=["
              << format_g12(rep.separation->bracket_low) << ", "
              << format_g12(rep.separation->bracket_high) << "]\n";
    return 0;
}

int run_compare(const std::string& config_path, const Overrides& ov) {
    ExperimentConfig cfg = load_config(config_path, ov);
    ComparisonReport report = run_comparison(cfg);
    write_trajectories(report, cfg.output_path);
    for (const auto& fam : report.families)
        std::cout << fam.name << (fam.gaussian ? " [gaussian]" : "") << " tau="
                  << format_g12(fam.separation->tau) << " gaussian_tau="
                  << format_g12(fam.gaussian_tau) << " initial_energy="
                  << format_g12(fam.initial_energy) << "\n";
    std::cout << "max energy-law residual: " << format_g12(report.max_energy_law_residual) << "\n";
    std::cout << "verdict: " << (report.verdict ? "gaussian-most-robust" : "ordering-violated")
              << "\n";
    std::cout << "note: " << report.caveat << "\n";
    std::cout << "outputs written to " << cfg.output_path << "\n";
    return report.verdict ? 0 : 2;
}

int run_gaussian_oracle(double lambda, double gamma, double n1, double n2,
                        const std::vector<double>& times) {
    const double r = std::atanh(lambda);
    const ChannelParams p(gamma, ThermalOccupation(n1), ThermalOccupation(n2),
                          ChannelKind::LossThermal);
    const CovarianceMatrix sigma0 = tmss_covariance(r);
    std::cout << "t,energy,nu_minus,log_negativity\n";
    for (double t : times) {
        const CovarianceMatrix s = channel_on_covariance(sigma0, p, t);
        std::cout << format_g12(t) << "," << format_g12(s.mean_photon_number()) << ","
                  << format_g12(pt_min_symplectic_eigenvalue(s)) << ","
                  << format_g12(gaussian_log_negativity(s)) << "\n";
    }
    if (n1 + n2 > 0.0 && r > 0.0)
        std::cout << "tau," << format_g12(gaussian_separation_time(r, p)) << ",,\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cv-robust: two-mode bosonic noisy-channel entanglement simulator"};
    app.require_subcommand(1);

    std::string config_path;
    int family_index = 0;
    Overrides ov;

    auto* simulate = app.add_subcommand("simulate", "Evolve one family and write its trajectory");
    simulate->add_option("--config", config_path, "Experiment config (JSON)")->required();
    simulate->add_option("--family-index", family_index, "Index into the config family list");
    add_overrides(simulate, ov);

    auto* septime = app.add_subcommand("separation-time", "Bisected entanglement-vanishing time");
    septime->add_option("--config", config_path, "Experiment config (JSON)")->required();
    septime->add_option("--family-index", family_index, "Index into the config family list");
    add_overrides(septime, ov);

    auto* compare = app.add_subcommand("compare", "Iso-energy robustness comparison");
    compare->add_option("--config", config_path, "Experiment config (JSON)")->required();
    add_overrides(compare, ov);

    double lambda = 0.6, gamma = 1.0, n1 = 0.5, n2 = 0.5;
    std::vector<double> times;
    auto* oracle = app.add_subcommand("gaussian-oracle",
                                      "Covariance-matrix fast path for the TMSS reference");
    oracle->add_option("--lambda", lambda, "TMSS squeezing parameter in [0, 1)");
    oracle->add_option("--gamma", gamma, "Loss coefficient");
    oracle->add_option("--n1", n1, "Environment occupation, mode 1");
    oracle->add_option("--n2", n2, "Environment occupation, mode 2");
    oracle->add_option("--times", times, "Sample times")->expected(-1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return run_simulate(config_path, ov, family_index);
        if (septime->parsed()) return run_separation_time(config_path, ov, family_index);
        if (compare->parsed()) return run_compare(config_path, ov);
        if (oracle->parsed()) {
            if (times.empty()) times = {0.0, 0.25, 0.5, 1.0, 2.0};
            return run_gaussian_oracle(lambda, gamma, n1, n2, times);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
