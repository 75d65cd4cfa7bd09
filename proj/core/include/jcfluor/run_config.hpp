#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jcfluor/photon_statistics.hpp"
#include "jcfluor/spectrum.hpp"
#include "jcfluor/system_params.hpp"

namespace jcfluor::cli {

struct GridSpec {
    double min = -10.0;
    double max = 10.0;
    int points = 4001;
};

// off: analytic spectrum only. verify: cross-check the closed forms against
// the dense-matrix route. full: additionally compare the reduced model against
// the untransformed nearby-level model (requires nearby levels).
enum class OracleMode { off, verify, full };

std::string_view to_string(OracleMode mode);

struct ConfigError : std::runtime_error {
    ConfigError(std::string bad_field, const std::string& message);
    std::string field;  // offending key, for machine-readable reports
};

struct RunConfig {
    FieldKind field = FieldKind::vacuum;
    double nbar = 0.0;
    std::vector<double> custom_probs;      // only for field == custom
    bool renormalize_custom = false;
    double delta = 0.0;                    // omega0 - omega
    std::optional<double> chi;             // direct Stark parameter ...
    NearbyLevelSet nearby;                 // ... or derived; mutually exclusive
    double lambda_c = 1.0;
    double gamma = 0.1;
    double omega = 0.0;
    GridSpec grid;
    spectrum::WeightMode weight_mode = spectrum::WeightMode::probability;
    OracleMode oracle = OracleMode::off;
    double tail_tol = 1e-10;
    std::string out_prefix = "run";

    void validate() const;  // throws ConfigError

    SystemParams params() const;
    double effective_chi() const;  // chi, or the nearby-level reduction, or 0
    PhotonStatistics distribution() const;
};

// Shared key/value ingestion used by config files and command-line flags.
// Keys are case-insensitive and '-' and '_' are interchangeable.
void assign(RunConfig& cfg, const std::string& key, const std::string& value);

// Detects JSON (leading '{') versus key = value lines; '#' starts a comment.
void merge_file(RunConfig& cfg, const std::string& path);
RunConfig load_config_file(const std::string& path);

NearbyLevelSet parse_nearby(const std::string& text);  // "omega:eta[,omega:eta...]"
GridSpec parse_grid(const std::string& text);          // "min:max:points"
std::vector<double> parse_number_list(const std::string& text, const std::string& key);

}  // namespace jcfluor::cli
