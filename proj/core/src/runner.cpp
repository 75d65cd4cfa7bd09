#include "jcfluor/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>

#include "jcfluor/dressed.hpp"
#include "jcfluor/oracle.hpp"
#include "jcfluor/presets.hpp"

namespace jcfluor::cli {

namespace {

std::vector<double> tau_probe_grid(double gamma, int points) {
    std::vector<double> taus(static_cast<std::size_t>(points));
    const double tau_max = 40.0 / gamma;
    for (int i = 0; i < points; ++i)
        taus[static_cast<std::size_t>(i)] = tau_max * i / (points - 1);
    return taus;
}

void append_eigensystem_checks(VerificationReport& report, const SystemParams& params, double chi,
                               int n_max) {
    const auto rep = oracle::verify_eigensystem(params, chi, n_max);
    report.checks.push_back(
        {"dressed_eigenpair_residual", rep.max_residual, rep.tolerance, rep.max_residual < rep.tolerance});
    report.checks.push_back(
        {"ground_state_residual", rep.ground_residual, rep.tolerance, rep.ground_residual < rep.tolerance});
    report.checks.push_back(
        {"closure_identity", rep.closure_residual, 1e-12, rep.closure_residual < 1e-12});
    report.checks.push_back(
        {"propagator_coefficients", rep.coeff_mismatch, 1e-10, rep.coeff_mismatch < 1e-10});
    report.metrics.emplace_back("stark_shifted_number_term_residual", rep.literal_form_residual);
}

void append_correlation_check(VerificationReport& report, const SystemParams& params, double chi,
                              const PhotonStatistics& dist) {
    const oracle::OperatorSet ops = oracle::make_operator_set(dist.m_max() + 10, 0);
    const oracle::Matrix h = oracle::build_hse(ops, params, chi);
    const oracle::NumericCorrelation corr(ops, h, oracle::excited_state(dist));
    oracle::AverageConfig avg;
    avg.compare_tau_max = 40.0 / params.gamma;
    const auto taus = tau_probe_grid(params.gamma, 33);
    const auto numeric = corr.averaged(taus, avg);
    double residual = 0.0;
    for (const auto& point : numeric) {
        const auto analytic = spectrum::correlation_avg(point.tau, dist, params, chi,
                                                        spectrum::WeightMode::probability);
        residual = std::max(residual, std::abs(point.value - analytic.value));
    }
    report.checks.push_back(
        {"correlation_average_probability_weights", residual, 1e-4, residual < 1e-4});
}

void append_spectrum_pipeline_check(VerificationReport& report, const SystemParams& params,
                                    double chi, const PhotonStatistics& dist,
                                    const std::vector<double>& grid,
                                    const std::vector<double>& analytic_probability) {
    const auto numeric = oracle::effective_spectrum_numeric(params, chi, dist, grid);
    const double residual = oracle::rel_linf(analytic_probability, numeric);
    report.checks.push_back({"spectrum_pipeline_linf", residual, 1e-3, residual < 1e-3});
}

void append_commutator_check(VerificationReport& report, const SystemParams& params,
                             const NearbyLevelSet& nearby) {
    const auto eff = dressed::effective_model(nearby, params);
    const oracle::OperatorSet ops =
        oracle::make_operator_set(12, static_cast<int>(nearby.size()));
    const oracle::Matrix hse = oracle::build_hse(ops, params, eff.chi);
    std::vector<double> times{0.0, 1.0, 7.3};
    std::mt19937 rng(424242u);
    std::uniform_real_distribution<double> random_time(0.0, 10.0);
    while (times.size() < 10) times.push_back(random_time(rng));
    double residual = 0.0;
    for (double t : times) {
        const oracle::Matrix script = oracle::build_h_script(ops, params, nearby, eff, t);
        residual = std::max(residual, oracle::relative_commutator(hse, script));
    }
    report.checks.push_back({"commutator_relative", residual, 1e-11, residual < 1e-11});
}

void append_reduction_check(VerificationReport& report, const SystemParams& params,
                            const NearbyLevelSet& nearby) {
    const auto rep = oracle::verify_rotation_reduction(params, nearby, 12);
    // Halving every eta should shrink the residual roughly fourfold; accept
    // ratios in [0.19, 0.32] to leave room for the cubic tail.
    const double deviation = std::abs(rep.ratio - 0.255);
    report.checks.push_back(
        {"reduction_halving_ratio_deviation", deviation, 0.065, deviation <= 0.065});
    report.metrics.emplace_back("reduction_residual", rep.epsilon);
    report.metrics.emplace_back("reduction_residual_half_eta", rep.epsilon_half);
    report.metrics.emplace_back("reduction_exchange_ratio", rep.exchange_ratio);
}

void append_full_model_checks(VerificationReport& report, const SystemParams& params,
                              const NearbyLevelSet& nearby, const PhotonStatistics& dist,
                              const std::vector<double>& grid) {
    const auto eff = dressed::effective_model(nearby, params);
    const oracle::PipelineConfig pcfg;
    const auto full = oracle::full_model_spectrum(params, nearby, dist, grid, pcfg);
    const auto eff_chi = oracle::effective_spectrum_numeric(params, eff.chi, dist, grid, pcfg);
    const auto eff_zero = oracle::effective_spectrum_numeric(params, 0.0, dist, grid, pcfg);
    const double dev_chi = oracle::rel_linf(full, eff_chi);
    const double dev_zero = oracle::rel_linf(full, eff_zero);
    const double ratio = dev_zero > 0.0 ? dev_chi / dev_zero : 0.0;
    report.checks.push_back(
        {"effective_chi_tracks_full_model", ratio, 1.0, dev_chi < dev_zero});
    report.metrics.emplace_back("full_vs_effective_chi_linf", dev_chi);
    report.metrics.emplace_back("full_vs_effective_zero_linf", dev_zero);
}

VerificationReport build_verification(const RunConfig& cfg, const SystemParams& params,
                                      double chi, const PhotonStatistics& dist,
                                      const std::vector<double>& grid,
                                      const spectrum::SpectrumResult& result) {
    VerificationReport report;
    const int n_max = dist.m_max() + 10;
    append_eigensystem_checks(report, params, chi, std::max(n_max, 12));
    append_correlation_check(report, params, chi, dist);

    const std::vector<double>* analytic = &result.values;
    std::vector<double> recomputed;
    if (result.weight_mode != spectrum::WeightMode::probability) {
        const auto lines =
            spectrum::transition_lines(dist, params, chi, spectrum::WeightMode::probability);
        recomputed = spectrum::evaluate_spectrum(lines, grid, params.gamma, params.lambda_c);
        analytic = &recomputed;
    }
    append_spectrum_pipeline_check(report, params, chi, dist, grid, *analytic);

    if (!cfg.nearby.empty()) {
        append_commutator_check(report, params, cfg.nearby);
        append_reduction_check(report, params, cfg.nearby);
    }
    if (cfg.oracle == OracleMode::full)
        append_full_model_checks(report, params, cfg.nearby, dist, grid);
    return report;
}

std::string csv_basename(const std::string& prefix) {
    const auto slash = prefix.find_last_of('/');
    const std::string base = slash == std::string::npos ? prefix : prefix.substr(slash + 1);
    return base + ".csv";
}

std::string value_token(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

RunArtifacts run(const RunConfig& cfg) {
    cfg.validate();
    RunArtifacts artifacts;
    const SystemParams params = cfg.params();
    const double chi = cfg.effective_chi();
    const PhotonStatistics dist = cfg.distribution();
    const std::vector<double> grid = spectrum::make_grid(cfg.grid.min, cfg.grid.max, cfg.grid.points);

    artifacts.result = spectrum::compute_spectrum(dist, params, chi, grid, cfg.weight_mode);
    artifacts.peaks = spectrum::peak_find(artifacts.result);
    if (cfg.grid.min == -cfg.grid.max)
        artifacts.asymmetry = spectrum::asymmetry_metric(artifacts.result);

    const std::string csv_path = cfg.out_prefix + ".csv";
    write_file(csv_path, spectrum_csv(artifacts.result, cfg));
    artifacts.files_written.push_back(csv_path);

    const std::string lines_path = cfg.out_prefix + "_lines.json";
    write_file(lines_path, lines_json(artifacts.result.lines));
    artifacts.files_written.push_back(lines_path);

    const std::string plot_path = cfg.out_prefix + "_plot.gp";
    write_file(plot_path, plot_script(csv_basename(cfg.out_prefix), cfg));
    artifacts.files_written.push_back(plot_path);

    if (cfg.oracle != OracleMode::off) {
        artifacts.verification = build_verification(cfg, params, chi, dist, grid, artifacts.result);
        const std::string verify_path = cfg.out_prefix + "_verify.json";
        write_file(verify_path, verification_json(*artifacts.verification));
        artifacts.files_written.push_back(verify_path);
    }
    return artifacts;
}

std::vector<SweepPoint> sweep(const RunConfig& base, const std::string& axis,
                              const std::vector<double>& values) {
    if (values.empty()) throw ConfigError("sweep", "no values given");
    if (axis != "nbar" && axis != "delta" && axis != "chi" && axis != "gamma")
        throw ConfigError("sweep", "unknown axis '" + axis + "'; use nbar, delta, chi or gamma");
    if (axis == "chi" && !base.nearby.empty())
        throw ConfigError("sweep", "cannot sweep chi while nearby levels fix it");

    std::vector<RunConfig> configs;
    configs.reserve(values.size());
    for (double v : values) {
        RunConfig point = base;
        if (axis == "nbar") point.nbar = v;
        else if (axis == "delta") point.delta = v;
        else if (axis == "chi") point.chi = v;
        else point.gamma = v;
        point.out_prefix = base.out_prefix + "_" + axis + "_" + value_token(v);
        point.validate();  // fail fast before spawning anything
        configs.push_back(std::move(point));
    }

    std::vector<std::future<RunArtifacts>> futures;
    futures.reserve(configs.size());
    for (const auto& point : configs)
        futures.push_back(std::async(std::launch::async, [&point] { return run(point); }));

    std::vector<SweepPoint> points;
    points.reserve(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i)
        points.push_back({values[i], futures[i].get()});

    std::string summary = "value,asymmetry,peak_count,peaks\n";
    for (const auto& point : points) {
        summary += value_token(point.value) + ",";
        summary += point.artifacts.asymmetry ? format_double(*point.artifacts.asymmetry) : "nan";
        summary += "," + std::to_string(point.artifacts.peaks.peaks.size()) + ",";
        std::string peak_list;
        for (const auto& peak : point.artifacts.peaks.peaks) {
            if (!peak_list.empty()) peak_list += ";";
            peak_list += format_double(peak.delta) + ":" + format_double(peak.height);
        }
        summary += peak_list + "\n";
    }
    write_file(base.out_prefix + "_sweep.csv", summary);
    return points;
}

}  // namespace jcfluor::cli
