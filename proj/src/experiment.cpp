#include "cvrobust/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

namespace cvrobust {

using nlohmann::json;

std::string FamilySpec::name() const {
    switch (kind) {
        case Kind::Tmss: return "tmss";
        case Kind::PnesTwoTerm: return "pnes_00_" + std::to_string(pnes_level) + std::to_string(pnes_level);
        case Kind::Pnes: return "pnes_custom";
    }
    return "unknown";
}

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
    }
}

ChannelParams parse_channel(const json& j) {
    reject_unknown_keys(j, {"gamma", "n1", "n2", "kind"}, "channel");
    const std::string kind_str = j.value("kind", "loss_thermal");
    ChannelKind kind;
    if (kind_str == "loss_thermal")
        kind = ChannelKind::LossThermal;
    else if (kind_str == "dephasing")
        kind = ChannelKind::Dephasing;
    else
        throw ConfigError("config: channel.kind must be 'loss_thermal' or 'dephasing'");
    return ChannelParams(j.at("gamma").get<double>(),
                         ThermalOccupation(j.value("n1", 0.0)),
                         ThermalOccupation(j.value("n2", 0.0)), kind);
}

FamilySpec parse_family(const json& j) {
    FamilySpec f;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "tmss") {
        reject_unknown_keys(j, {"kind", "lambda", "match_energy"}, "family tmss");
        f.kind = FamilySpec::Kind::Tmss;
        if (j.contains("lambda")) f.parameter = j.at("lambda").get<double>();
    } else if (kind == "pnes_two_term") {
        reject_unknown_keys(j, {"kind", "n", "theta", "match_energy"}, "family pnes_two_term");
        f.kind = FamilySpec::Kind::PnesTwoTerm;
        f.pnes_level = j.value("n", 1);
        if (j.contains("theta")) f.parameter = j.at("theta").get<double>();
    } else if (kind == "pnes") {
        reject_unknown_keys(j, {"kind", "coefficients"}, "family pnes");
        f.kind = FamilySpec::Kind::Pnes;
        for (const auto& c : j.at("coefficients")) {
            if (c.is_number())
                f.coefficients.emplace_back(c.get<double>(), 0.0);
            else if (c.is_array() && c.size() == 2)
                f.coefficients.emplace_back(c[0].get<double>(), c[1].get<double>());
            else
                throw ConfigError("config: pnes coefficient must be a number or [re, im]");
        }
    } else {
        throw ConfigError("config: unknown family kind '" + kind + "'");
    }
    if (j.contains("match_energy")) f.match_energy_target = j.at("match_energy").get<double>();
    if (f.match_energy_target && f.parameter)
        throw ConfigError("config: family gives both a fixed parameter and match_energy");
    if (f.kind != FamilySpec::Kind::Pnes && !f.match_energy_target && !f.parameter)
        throw ConfigError("config: family needs a parameter or a match_energy target");
    return f;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
    }
    reject_unknown_keys(j,
                        {"channel", "families", "cutoff", "integrator", "sample_times",
                         "output_path", "separation_tol_time", "time_unit"},
                        "top level");
    ChannelParams channel = parse_channel(j.at("channel"));

    double time_scale = 1.0;
    if (j.contains("time_unit")) {
        const std::string u = j.at("time_unit").get<std::string>();
        if (u == "inverse_gamma")
            time_scale = 1.0 / channel.gamma;
        else if (u != "seconds")
            throw ConfigError("config: time_unit must be 'seconds' or 'inverse_gamma'");
    }

    std::vector<double> samples;
    for (const auto& t : j.at("sample_times")) samples.push_back(t.get<double>() * time_scale);
    if (samples.empty() || samples.front() != 0.0)
        throw ConfigError("config: sample_times must start at 0");
    for (size_t i = 1; i < samples.size(); ++i)
        if (samples[i] <= samples[i - 1])
            throw ConfigError("config: sample_times must be strictly increasing");

    IntegratorConfig integ = IntegratorConfig::defaults_for(channel, samples.back());
    if (j.contains("integrator")) {
        const json& ji = j.at("integrator");
        reject_unknown_keys(ji, {"dt", "t_max", "hermitize_each_step"}, "integrator");
        if (ji.contains("dt")) integ.dt = ji.at("dt").get<double>() * time_scale;
        if (ji.contains("t_max")) integ.t_max = ji.at("t_max").get<double>() * time_scale;
        if (ji.contains("hermitize_each_step"))
            integ.hermitize_each_step = ji.at("hermitize_each_step").get<bool>();
    }
    if (integ.dt <= 0.0) throw ConfigError("config: integrator.dt must be > 0");

    std::vector<FamilySpec> families;
    for (const auto& jf : j.at("families")) families.push_back(parse_family(jf));
    if (families.empty()) throw EnergyMismatch("config: at least one family is required");

    ExperimentConfig cfg{channel,
                         std::move(families),
                         Cutoff(j.at("cutoff").get<int>()),
                         integ,
                         std::move(samples),
                         j.value("output_path", "out"),
                         j.value("separation_tol_time", 1e-4) * time_scale};
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

std::pair<Ket, double> build_family_state(const FamilySpec& f, Cutoff cutoff) {
    switch (f.kind) {
        case FamilySpec::Kind::Tmss: {
            double lambda;
            if (f.match_energy_target)
                lambda = match_energy(*f.match_energy_target, tmss_energy_curve(cutoff), 1e-9);
            else
                lambda = *f.parameter;
            return {two_mode_squeezed_ket(TmssParam(lambda), cutoff), lambda};
        }
        case FamilySpec::Kind::PnesTwoTerm: {
            double theta;
            if (f.match_energy_target)
                theta = match_energy(*f.match_energy_target,
                                     pnes_two_term_energy_curve(f.pnes_level), 1e-9);
            else
                theta = *f.parameter;
            const int n = f.pnes_level;
            if (n + 1 > cutoff.d)
                throw DimensionMismatch("build_family_state: pnes level exceeds cutoff");
            VectorXcd c = VectorXcd::Zero(n + 1);
            c(0) = std::cos(theta);
            c(n) = std::sin(theta);
            return {pnes_ket(PnesCoefficients(std::move(c)), cutoff), theta};
        }
        case FamilySpec::Kind::Pnes: {
            VectorXcd c(static_cast<Eigen::Index>(f.coefficients.size()));
            for (size_t i = 0; i < f.coefficients.size(); ++i) c(i) = f.coefficients[i];
            return {pnes_ket(PnesCoefficients(std::move(c)), cutoff), 0.0};
        }
    }
    throw ConfigError("build_family_state: unreachable family kind");
}

FamilyReport run_family(const ExperimentConfig& cfg, const FamilySpec& f,
                        bool with_separation_time) {
    auto [ket, param] = build_family_state(f, cfg.cutoff);
    const DensityOperator rho0 = DensityOperator::from_ket(ket);
    const double n0 = mean_energy(rho0);

    FamilyReport rep;
    rep.name = f.name();
    rep.gaussian = f.is_gaussian();
    rep.resolved_parameter = param;
    rep.initial_energy = n0;
    rep.max_energy_law_residual = 0.0;

    const auto states = evolve(rho0, cfg.channel, cfg.integrator, cfg.sample_times);
    const double n_env = cfg.channel.n1.N + cfg.channel.n2.N;
    for (size_t i = 0; i < states.size(); ++i) {
        const double t = cfg.sample_times[i];
        const SampleHealth h = sample_health(states[i].matrix);
        const NegativityResult nr = log_negativity(states[i]);
        const double e = mean_energy(states[i]);
        TrajectoryRecord rec{t, e, nr.negativity, nr.log_negativity, h.trace_error,
                             h.min_eigenvalue};
        rep.trajectory.push_back(rec);
        if (cfg.channel.kind == ChannelKind::LossThermal) {
            const double eta = std::exp(-cfg.channel.gamma * t);
            const double expected = n0 * eta + n_env * (1.0 - eta);
            rep.max_energy_law_residual =
                std::max(rep.max_energy_law_residual, std::abs(e - expected));
        }
    }
    if (with_separation_time) {
        rep.separation = separation_time(rho0, cfg.channel, cfg.integrator,
                                         cfg.separation_tol_time);
        rep.gaussian_tau = gaussian_separation_time(covariance_of(rho0), cfg.channel);
    }
    return rep;
}

ComparisonReport run_comparison(const ExperimentConfig& cfg) {
    if (cfg.channel.kind != ChannelKind::LossThermal)
        throw ConfigError("run_comparison: the comparison experiment needs the loss_thermal channel");
    if (cfg.families.empty()) throw EnergyMismatch("run_comparison: no families configured");

    ComparisonReport report;
    report.caveat =
        "The verdict orders covariance-track separation times of the Gaussified "
        "initial states, which is what Gaussian extremality guarantees for "
        "continuous strongly superadditive entanglement monotones. The Fock-space "
        "negativity taus are reported alongside and can exceed the Gaussian "
        "state's: negativity does not satisfy the theorem's hypotheses, and a "
        "reversal there is a feature of the measure, not of the states.";

    for (const auto& f : cfg.families)
        report.families.push_back(run_family(cfg, f, true));

    for (const auto& fam : report.families)
        if (std::abs(fam.initial_energy - report.families.front().initial_energy) > 1e-6)
            throw EnergyMismatch("run_comparison: family '" + fam.name +
                                 "' initial energy differs beyond 1e-6");

    report.max_energy_law_residual = 0.0;
    for (const auto& fam : report.families)
        report.max_energy_law_residual =
            std::max(report.max_energy_law_residual, fam.max_energy_law_residual);

    report.verdict = true;
    for (const auto& g : report.families) {
        if (!g.gaussian) continue;
        for (const auto& f : report.families) {
            if (f.gaussian) continue;
            if (g.gaussian_tau < f.gaussian_tau - 1e-3) report.verdict = false;
        }
    }
    return report;
}

std::string format_g12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_trajectories: cannot open '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("write_trajectories: write failed for '" + path + "'");
}

} // namespace

void write_trajectories(const ComparisonReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);

    for (const auto& fam : report.families) {
        std::string csv = "t,energy,negativity,log_negativity,trace_error,min_eigenvalue\n";
        for (const auto& r : fam.trajectory) {
            csv += format_g12(r.t) + "," + format_g12(r.energy) + "," + format_g12(r.negativity) +
                   "," + format_g12(r.log_negativity) + "," + format_g12(r.trace_error) + "," +
                   format_g12(r.min_eigenvalue) + "\n";
        }
        write_file(dir + "/" + fam.name + "_trajectory.csv", csv);
    }

    std::string summary =
        "family,gaussian,parameter,initial_energy,tau,bracket_low,bracket_high,"
        "gaussian_tau,max_energy_law_residual\n";
    for (const auto& fam : report.families) {
        summary += fam.name + "," + (fam.gaussian ? "1" : "0") + "," +
                   format_g12(fam.resolved_parameter) + "," + format_g12(fam.initial_energy) + ",";
        if (fam.separation)
            summary += format_g12(fam.separation->tau) + "," +
                       format_g12(fam.separation->bracket_low) + "," +
                       format_g12(fam.separation->bracket_high);
        else
            summary += ",,";
        summary += "," + format_g12(fam.gaussian_tau) + "," +
                   format_g12(fam.max_energy_law_residual) + "\n";
    }
    write_file(dir + "/summary.csv", summary);

    nlohmann::ordered_json j;
    j["verdict"] = report.verdict;
    j["max_energy_law_residual"] = format_g12(report.max_energy_law_residual);
    j["caveat"] = report.caveat;
    write_file(dir + "/report.json", j.dump(2) + "\n");
}

} // namespace cvrobust
