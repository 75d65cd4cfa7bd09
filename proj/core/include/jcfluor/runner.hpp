#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jcfluor/output.hpp"
#include "jcfluor/run_config.hpp"
#include "jcfluor/spectrum.hpp"

namespace jcfluor::cli {

struct RunArtifacts {
    spectrum::SpectrumResult result;
    spectrum::PeakSet peaks;
    std::optional<double> asymmetry;  // only for grids symmetric about zero
    std::optional<VerificationReport> verification;
    std::vector<std::string> files_written;

    bool oracle_passed() const { return !verification || verification->passed(); }
};

// Computes the spectrum, writes <prefix>.csv, <prefix>_lines.json and
// <prefix>_plot.gp, and with oracle != off also <prefix>_verify.json.
// Configuration problems throw ConfigError; oracle check failures are
// reported in the artifacts, not thrown.
RunArtifacts run(const RunConfig& cfg);

struct SweepPoint {
    double value = 0.0;
    RunArtifacts artifacts;
};

// axis is one of nbar, delta, chi, gamma. Points run concurrently, each with
// out_prefix <base>_<axis>_<value>; a <base>_sweep.csv summary is written
// after all points finish.
std::vector<SweepPoint> sweep(const RunConfig& base, const std::string& axis,
                              const std::vector<double>& values);

}  // namespace jcfluor::cli
