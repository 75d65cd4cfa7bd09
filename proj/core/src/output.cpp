#include "jcfluor/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace jcfluor::cli {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string spectrum_csv(const spectrum::SpectrumResult& result, const RunConfig& cfg) {
    std::string out;
    out.reserve(result.grid.size() * 40 + 512);
    auto echo = [&out](const std::string& key, const std::string& value) {
        out += "# " + key + "," + value + "\n";
    };
    echo("field", std::string(to_string(result.field.kind)));
    echo("nbar", format_double(result.field.nbar));
    echo("m_max", std::to_string(result.field.m_max()));
    echo("tail_tol", format_double(cfg.tail_tol));
    echo("delta_detuning", format_double(cfg.delta));
    echo("chi", format_double(result.chi));
    if (!cfg.nearby.empty()) {
        std::string levels;
        for (const auto& lv : cfg.nearby.levels) {
            if (!levels.empty()) levels += ";";
            levels += format_double(lv.omega_k) + ":" + format_double(lv.eta_k);
        }
        echo("nearby", levels);
    }
    echo("lambda", format_double(result.params.lambda_c));
    echo("gamma", format_double(result.params.gamma));
    echo("omega", format_double(result.params.omega));
    echo("grid", format_double(cfg.grid.min) + ":" + format_double(cfg.grid.max) + ":" +
                     std::to_string(cfg.grid.points));
    echo("weight_mode", std::string(to_string(result.weight_mode)));
    echo("oracle", std::string(to_string(cfg.oracle)));
    echo("lines", std::to_string(result.lines.size()));
    out += "delta,S\n";
    for (std::size_t i = 0; i < result.grid.size(); ++i)
        out += format_double(result.grid[i]) + "," + format_double(result.values[i]) + "\n";
    return out;
}

std::string lines_json(const std::vector<spectrum::SpectralLine>& lines) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& line : lines) {
        doc.push_back({{"label", std::string(spectrum::label(line.kind))},
                       {"m", line.m},
                       {"center", line.center},
                       {"weight", line.weight}});
    }
    return doc.dump(2) + "\n";
}

std::string plot_script(const std::string& csv_name, const RunConfig& cfg) {
    const std::string title =
        csv_name.size() > 4 ? csv_name.substr(0, csv_name.size() - 4) : csv_name;
    std::string out;
    out += "# gnuplot script; run as: gnuplot -p " + cfg.out_prefix + "_plot.gp\n";
    out += "set datafile separator ','\n";
    out += "set datafile commentschars '#'\n";
    out += "set key autotitle columnhead\n";
    out += "set xlabel 'delta = (nu - omega)/lambda'\n";
    out += "set ylabel 'S(delta)'\n";
    out += "set grid\n";
    out += "plot '" + csv_name + "' using 1:2 with lines title '" + title + "'\n";
    return out;
}

std::string error_json(const std::string& field, const std::string& message) {
    nlohmann::ordered_json doc;
    doc["error"] = {{"field", field}, {"message", message}};
    return doc.dump(2) + "\n";
}

bool VerificationReport::passed() const {
    for (const auto& check : checks)
        if (!check.pass) return false;
    return true;
}

std::string verification_json(const VerificationReport& report) {
    nlohmann::ordered_json doc;
    doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& check : report.checks) {
        doc["checks"].push_back({{"name", check.name},
                                 {"residual", check.residual},
                                 {"tolerance", check.tolerance},
                                 {"pass", check.pass}});
    }
    if (!report.metrics.empty()) {
        nlohmann::ordered_json metrics;
        for (const auto& [name, value] : report.metrics) metrics[name] = value;
        doc["metrics"] = metrics;
    }
    doc["passed"] = report.passed();
    return doc.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace jcfluor::cli
