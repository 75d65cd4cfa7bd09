#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "jcfluor/dressed.hpp"
#include "jcfluor/photon_statistics.hpp"
#include "jcfluor/system_params.hpp"

namespace jcfluor::spectrum {

// probability: lines weighted by p_m (matches the numeric time average for a
// diagonal excited-state preparation). squared_literal: weighted by p_m^2.
enum class WeightMode { probability, squared_literal };

std::string_view to_string(WeightMode mode);

enum class Transition {
    upper_to_upper,  // m,+ -> m-1,+   at   Lambda_m - Lambda_{m-1}
    upper_to_lower,  // m,+ -> m-1,-   at   Lambda_m + Lambda_{m-1}
    lower_to_upper,  // m,- -> m-1,+   at -(Lambda_m + Lambda_{m-1})
    lower_to_lower,  // m,- -> m-1,-   at -(Lambda_m - Lambda_{m-1})
    vacuum_upper,    // 0,+ -> ground  at   c_plus
    vacuum_lower,    // 0,- -> ground  at   c_minus
};

std::string_view label(Transition t);

struct SpectralLine {
    Transition kind = Transition::vacuum_upper;
    int m = 0;             // emitting manifold
    double center = 0.0;   // on the delta = (nu-omega)/lambda axis
    double weight = 0.0;
};

std::vector<SpectralLine> transition_lines(const PhotonStatistics& dist,
                                           const SystemParams& params, double chi,
                                           WeightMode mode = WeightMode::probability);

// Uniform grid; symmetric ranges are mirrored so that grid[i] == -grid[n-1-i]
// holds exactly, which keeps resonant spectra bit-symmetric.
std::vector<double> make_grid(double min, double max, int points);

struct SpectrumResult {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<SpectralLine> lines;
    WeightMode weight_mode = WeightMode::probability;
    SystemParams params;
    double chi = 0.0;
    PhotonStatistics field;
};

// S(delta) = sum_l w_l * gamma / (gamma^2 + lambda^2 (delta - c_l)^2),
// summed in line order for reproducible rounding.
std::vector<double> evaluate_spectrum(const std::vector<SpectralLine>& lines,
                                      const std::vector<double>& grid, double gamma,
                                      double lambda_c);

SpectrumResult compute_spectrum(const PhotonStatistics& dist, const SystemParams& params,
                                double chi, const std::vector<double>& grid,
                                WeightMode mode = WeightMode::probability);

struct CorrelationAvg {
    double tau = 0.0;
    std::complex<double> value;
};

// Stationary two-time dipole correlation after the transient average.
CorrelationAvg correlation_avg(double tau, const PhotonStatistics& dist,
                               const SystemParams& params, double chi,
                               WeightMode mode = WeightMode::probability);

struct Peak {
    double delta = 0.0;
    double height = 0.0;
};

struct PeakSet {
    std::vector<Peak> peaks;
    // Grid steps wider than gamma/(2 lambda) cannot resolve the linewidth.
    bool grid_coarse_warning = false;
};

PeakSet peak_find(const SpectrumResult& result, double prominence = 1e-3);

// First-moment centroid int(delta S) / int(S) by trapezoid; requires a grid
// symmetric about zero.
double asymmetry_metric(const SpectrumResult& result);

}  // namespace jcfluor::spectrum
