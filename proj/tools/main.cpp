#include <algorithm>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "jcfluor/presets.hpp"
#include "jcfluor/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitOracle = 3;

struct KeyFlag {
    const char* key;
    const char* help;
    std::string value;
    CLI::Option* opt = nullptr;
};

std::string strip_field_prefix(const jcfluor::cli::ConfigError& e) {
    std::string message = e.what();
    const std::string prefix = e.field + ": ";
    if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
    return message;
}

void print_checks(const jcfluor::cli::VerificationReport& report) {
    for (const auto& check : report.checks)
        std::printf("  [%s] %-40s residual=%-12.4g tol=%g\n", check.pass ? "PASS" : "FAIL",
                    check.name.c_str(), check.residual, check.tolerance);
    for (const auto& [name, value] : report.metrics)
        std::printf("         %-40s %.6g\n", name.c_str(), value);
}

void print_artifacts(const jcfluor::cli::RunArtifacts& artifacts) {
    for (const auto& file : artifacts.files_written) std::printf("wrote %s\n", file.c_str());
    std::string peak_list;
    for (const auto& peak : artifacts.peaks.peaks) {
        if (!peak_list.empty()) peak_list += ", ";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6g", peak.delta);
        peak_list += buf;
    }
    std::printf("peaks (%zu): %s\n", artifacts.peaks.peaks.size(), peak_list.c_str());
    if (artifacts.peaks.grid_coarse_warning)
        std::printf("warning: grid step exceeds the linewidth; peaks may be unresolved\n");
    if (artifacts.asymmetry) std::printf("asymmetry: %.6g\n", *artifacts.asymmetry);
    if (artifacts.verification) {
        print_checks(*artifacts.verification);
        std::printf("verification: %s\n", artifacts.verification->passed() ? "PASS" : "FAIL");
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace jcfluor::cli;

    CLI::App app{
        "Fluorescence spectrum of a two-level emitter in a single quantized field mode,\n"
        "including the intensity-dependent level shift induced by far-detuned nearby states."};
    app.footer(
        "Config file keys match the long option names (case-insensitive; '-' and '_'\n"
        "are interchangeable). Precedence: preset, then config file, then flags.");

    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "List the figure presets and exit");

    std::string preset_name, config_file, sweep_arg;
    app.add_option("--preset", preset_name, "Start from a named parameter preset");
    app.add_option("--config", config_file, "Read options from a key = value or JSON file");
    app.add_option("--sweep", sweep_arg,
                   "axis=v1,v2,... with axis one of nbar, delta, chi, gamma; runs one "
                   "output set per value plus a summary CSV");

    std::vector<KeyFlag> flags{
        {"field", "vacuum, coherent, thermal or custom", {}, nullptr},
        {"nbar", "mean photon number for coherent/thermal fields", {}, nullptr},
        {"probs", "comma-separated p_0..p_M for --field custom", {}, nullptr},
        {"renormalize-probs", "rescale --probs to unit sum (true/false)", {}, nullptr},
        {"delta", "detuning omega0 - omega", {}, nullptr},
        {"chi", "level-shift strength; exclusive with --nearby", {}, nullptr},
        {"nearby", "nearby levels as \"omega:eta[,omega:eta...]\"", {}, nullptr},
        {"lambda", "emitter-field coupling", {}, nullptr},
        {"gamma", "detector linewidth", {}, nullptr},
        {"omega", "field mode frequency (pure frame offset)", {}, nullptr},
        {"grid", "detuning grid as min:max:points", {}, nullptr},
        {"weight-mode", "line weights: probability or squared_literal", {}, nullptr},
        {"oracle", "cross-check level: off, verify or full", {}, nullptr},
        {"tail-tol", "photon-distribution truncation tail", {}, nullptr},
        {"out", "output path prefix", {}, nullptr},
    };
    for (auto& flag : flags)
        flag.opt = app.add_option("--" + std::string(flag.key), flag.value, flag.help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (list_presets) {
        for (const auto& info : preset_list())
            std::printf("%-14s %s\n", info.name.c_str(), info.description.c_str());
        return kExitOk;
    }

    try {
        RunConfig cfg;
        if (!preset_name.empty()) apply_preset(cfg, preset_name);
        if (!config_file.empty()) merge_file(cfg, config_file);
        for (const auto& flag : flags)
            if (flag.opt->count() > 0) assign(cfg, flag.key, flag.value);

        if (!sweep_arg.empty()) {
            const auto eq = sweep_arg.find('=');
            if (eq == std::string::npos)
                throw ConfigError("sweep", "expected axis=v1,v2,...");
            const std::string axis = sweep_arg.substr(0, eq);
            const auto values = parse_number_list(sweep_arg.substr(eq + 1), "sweep");
            const auto points = sweep(cfg, axis, values);
            bool all_passed = true;
            for (const auto& point : points) {
                std::printf("-- %s = %g --\n", axis.c_str(), point.value);
                print_artifacts(point.artifacts);
                all_passed = all_passed && point.artifacts.oracle_passed();
            }
            std::printf("wrote %s_sweep.csv\n", cfg.out_prefix.c_str());
            return all_passed ? kExitOk : kExitOracle;
        }

        const auto artifacts = run(cfg);
        print_artifacts(artifacts);
        return artifacts.oracle_passed() ? kExitOk : kExitOracle;
    } catch (const ConfigError& e) {
        std::cout << error_json(e.field, strip_field_prefix(e)) << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
