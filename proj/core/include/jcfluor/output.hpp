#pragma once

#include <string>
#include <vector>

#include "jcfluor/run_config.hpp"
#include "jcfluor/spectrum.hpp"

namespace jcfluor::cli {

// Shortest 17-significant-digit decimal form; round-trips any double.
std::string format_double(double v);

// '#'-prefixed parameter echo, a "delta,S" header, then one row per grid
// point. Byte-stable across reruns of the same configuration.
std::string spectrum_csv(const spectrum::SpectrumResult& result, const RunConfig& cfg);

std::string lines_json(const std::vector<spectrum::SpectralLine>& lines);

// gnuplot script plotting the CSV written next to it.
std::string plot_script(const std::string& csv_name, const RunConfig& cfg);

std::string error_json(const std::string& field, const std::string& message);

struct VerificationCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;
    std::vector<std::pair<std::string, double>> metrics;  // reported, not gated

    bool passed() const;
};

std::string verification_json(const VerificationReport& report);

void write_file(const std::string& path, const std::string& content);

}  // namespace jcfluor::cli
