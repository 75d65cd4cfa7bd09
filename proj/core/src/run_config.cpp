#include "jcfluor/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jcfluor/dressed.hpp"
#include "jcfluor/presets.hpp"

namespace jcfluor::cli {

namespace {

std::string normalize_key(const std::string& key) {
    std::string out;
    out.reserve(key.size());
    for (char c : key) out.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(c)));
    return out;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError(key, "expected a number, got an empty value");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw ConfigError(key, "not a number: '" + t + "'");
    if (!std::isfinite(v)) throw ConfigError(key, "value must be finite");
    return v;
}

int parse_int(const std::string& text, const std::string& key) {
    const double v = parse_double(text, key);
    if (v != std::floor(v)) throw ConfigError(key, "expected an integer, got '" + text + "'");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& text, const std::string& key) {
    const std::string t = normalize_key(trim(text));
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(key, "expected a boolean, got '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

}  // namespace

std::string_view to_string(OracleMode mode) {
    switch (mode) {
        case OracleMode::off: return "off";
        case OracleMode::verify: return "verify";
        case OracleMode::full: return "full";
    }
    return "?";
}

ConfigError::ConfigError(std::string bad_field, const std::string& message)
    : std::runtime_error(bad_field + ": " + message), field(std::move(bad_field)) {}

SystemParams RunConfig::params() const {
    return make_params(omega, omega + delta, lambda_c, gamma);
}

double RunConfig::effective_chi() const {
    if (chi) return *chi;
    if (!nearby.empty()) return dressed::effective_model(nearby, params()).chi;
    return 0.0;
}

PhotonStatistics RunConfig::distribution() const {
    switch (field) {
        case FieldKind::vacuum: return vacuum_field();
        case FieldKind::coherent: return coherent_distribution(nbar, tail_tol);
        case FieldKind::thermal: return thermal_distribution(nbar, tail_tol);
        case FieldKind::custom: return custom_distribution(custom_probs, renormalize_custom);
    }
    throw ConfigError("field", "unhandled field kind");
}

void RunConfig::validate() const {
    if (!(std::isfinite(delta) && std::isfinite(omega)))
        throw ConfigError("delta", "delta and omega must be finite");
    if (!(lambda_c > 0.0) || !std::isfinite(lambda_c))
        throw ConfigError("lambda", "coupling must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ConfigError("gamma", "detector width must be positive");
    if (!(tail_tol > 0.0) || tail_tol > 1e-3)
        throw ConfigError("tail_tol", "must lie in (0, 1e-3]");
    if (field == FieldKind::coherent || field == FieldKind::thermal) {
        if (!(nbar >= 0.0) || !std::isfinite(nbar))
            throw ConfigError("nbar", "mean photon number must be non-negative");
    }
    if (field == FieldKind::custom && custom_probs.empty())
        throw ConfigError("probs", "field=custom needs a probs list");
    if (field != FieldKind::custom && !custom_probs.empty())
        throw ConfigError("probs", "probs is only meaningful with field=custom");
    if (chi && !nearby.empty())
        throw ConfigError("chi", "chi and nearby are mutually exclusive; give one or the other");
    if (chi && !std::isfinite(*chi)) throw ConfigError("chi", "chi must be finite");
    if (!nearby.empty()) {
        try {
            nearby.validate(params());
        } catch (const std::exception& e) {
            throw ConfigError("nearby", e.what());
        }
    }
    if (oracle == OracleMode::full && nearby.empty())
        throw ConfigError("oracle", "oracle=full compares against nearby levels; none given");
    if (grid.points < 2) throw ConfigError("grid", "need at least 2 grid points");
    if (!(grid.min < grid.max)) throw ConfigError("grid", "grid min must be below max");
    if (!std::isfinite(grid.min) || !std::isfinite(grid.max))
        throw ConfigError("grid", "grid bounds must be finite");
    if (out_prefix.empty()) throw ConfigError("out", "output prefix must not be empty");
}

NearbyLevelSet parse_nearby(const std::string& text) {
    NearbyLevelSet set;
    for (const std::string& item : split(text, ',')) {
        const std::string entry = trim(item);
        if (entry.empty()) throw ConfigError("nearby", "empty level entry");
        const auto parts = split(entry, ':');
        if (parts.size() != 2)
            throw ConfigError("nearby", "expected omega:eta, got '" + entry + "'");
        NearbyLevel level;
        level.omega_k = parse_double(parts[0], "nearby");
        level.eta_k = parse_double(parts[1], "nearby");
        set.levels.push_back(level);
    }
    if (set.empty()) throw ConfigError("nearby", "no levels given");
    return set;
}

GridSpec parse_grid(const std::string& text) {
    const auto parts = split(trim(text), ':');
    if (parts.size() != 3)
        throw ConfigError("grid", "expected min:max:points, got '" + text + "'");
    GridSpec spec;
    spec.min = parse_double(parts[0], "grid");
    spec.max = parse_double(parts[1], "grid");
    spec.points = parse_int(parts[2], "grid");
    return spec;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& key) {
    std::vector<double> values;
    for (const std::string& item : split(text, ',')) values.push_back(parse_double(item, key));
    return values;
}

void assign(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
    const std::string key = normalize_key(raw_key);
    if (key == "field") {
        const std::string v = normalize_key(trim(value));
        if (v == "vacuum") cfg.field = FieldKind::vacuum;
        else if (v == "coherent") cfg.field = FieldKind::coherent;
        else if (v == "thermal") cfg.field = FieldKind::thermal;
        else if (v == "custom") cfg.field = FieldKind::custom;
        else throw ConfigError("field", "unknown field kind '" + value + "'");
    } else if (key == "nbar") {
        cfg.nbar = parse_double(value, key);
    } else if (key == "probs") {
        cfg.custom_probs = parse_number_list(value, key);
    } else if (key == "renormalize" || key == "renormalize_probs") {
        cfg.renormalize_custom = parse_bool(value, key);
    } else if (key == "delta") {
        cfg.delta = parse_double(value, key);
    } else if (key == "chi") {
        cfg.chi = parse_double(value, key);
    } else if (key == "nearby") {
        cfg.nearby = parse_nearby(value);
    } else if (key == "lambda") {
        cfg.lambda_c = parse_double(value, key);
    } else if (key == "gamma") {
        cfg.gamma = parse_double(value, key);
    } else if (key == "omega") {
        cfg.omega = parse_double(value, key);
    } else if (key == "grid") {
        cfg.grid = parse_grid(value);
    } else if (key == "weight_mode") {
        const std::string v = normalize_key(trim(value));
        if (v == "probability") cfg.weight_mode = spectrum::WeightMode::probability;
        else if (v == "squared_literal") cfg.weight_mode = spectrum::WeightMode::squared_literal;
        else throw ConfigError("weight_mode", "expected probability or squared_literal");
    } else if (key == "oracle") {
        const std::string v = normalize_key(trim(value));
        if (v == "off") cfg.oracle = OracleMode::off;
        else if (v == "verify") cfg.oracle = OracleMode::verify;
        else if (v == "full") cfg.oracle = OracleMode::full;
        else throw ConfigError("oracle", "expected off, verify or full");
    } else if (key == "tail_tol") {
        cfg.tail_tol = parse_double(value, key);
    } else if (key == "out") {
        cfg.out_prefix = trim(value);
    } else if (key == "preset") {
        apply_preset(cfg, trim(value));
    } else {
        throw ConfigError(raw_key, "unknown configuration key");
    }
}

namespace {

void merge_json(RunConfig& cfg, const std::string& text, const std::string& path) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config", path + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config", path + ": top level must be an object");
    for (const auto& [key, val] : doc.items()) {
        std::string as_text;
        if (val.is_string()) {
            as_text = val.get<std::string>();
        } else if (val.is_array()) {
            // number lists (probs, and nearby given as flat pairs)
            std::string joined;
            for (const auto& item : val) {
                if (!joined.empty()) joined += ',';
                joined += item.is_string() ? item.get<std::string>() : item.dump();
            }
            as_text = joined;
        } else {
            as_text = val.dump();
        }
        assign(cfg, key, as_text);
    }
}

void merge_key_value(RunConfig& cfg, const std::string& text, const std::string& path) {
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        const std::string entry = trim(line);
        if (entry.empty()) continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config",
                              path + ":" + std::to_string(line_no) + ": expected key = value");
        assign(cfg, trim(entry.substr(0, eq)), trim(entry.substr(eq + 1)));
    }
}

}  // namespace

void merge_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        merge_json(cfg, text, path);
    else
        merge_key_value(cfg, text, path);
}

RunConfig load_config_file(const std::string& path) {
    RunConfig cfg;
    merge_file(cfg, path);
    return cfg;
}

}  // namespace jcfluor::cli
