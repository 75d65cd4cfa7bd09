#include "jcfluor/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace jcfluor::spectrum {

std::string_view to_string(WeightMode mode) {
    return mode == WeightMode::probability ? "probability" : "squared_literal";
}

std::string_view label(Transition t) {
    switch (t) {
        case Transition::upper_to_upper: return "upper->upper";
        case Transition::upper_to_lower: return "upper->lower";
        case Transition::lower_to_upper: return "lower->upper";
        case Transition::lower_to_lower: return "lower->lower";
        case Transition::vacuum_upper: return "vacuum->upper";
        case Transition::vacuum_lower: return "vacuum->lower";
    }
    return "?";
}

namespace {
double line_weight(double p, WeightMode mode) {
    return mode == WeightMode::probability ? p : p * p;
}
}  // namespace

std::vector<SpectralLine> transition_lines(const PhotonStatistics& dist,
                                           const SystemParams& params, double chi,
                                           WeightMode mode) {
    params.validate();
    if (dist.probs.empty()) throw std::invalid_argument("empty photon distribution");

    std::vector<SpectralLine> lines;
    lines.reserve(2 + 4 * static_cast<std::size_t>(dist.m_max()));

    const auto pos0 = dressed::line_positions(0, params, chi);
    const auto q0 = dressed::dressed_quantities(0, params, chi);
    const double c0 = std::cos(q0.phi_n), s0 = std::sin(q0.phi_n);
    const double w0 = line_weight(dist.probs[0], mode);
    lines.push_back({Transition::vacuum_upper, 0, pos0.c_plus, w0 * c0 * c0 * c0 * c0});
    lines.push_back({Transition::vacuum_lower, 0, pos0.c_minus, w0 * s0 * s0 * s0 * s0});

    double lambda_prev = pos0.lambda_m;
    double cos2_prev = c0 * c0, sin2_prev = s0 * s0;
    for (int m = 1; m <= dist.m_max(); ++m) {
        const auto pos = dressed::line_positions(m, params, chi);
        const auto q = dressed::dressed_quantities(m, params, chi);
        const double c = std::cos(q.phi_n), s = std::sin(q.phi_n);
        const double c4 = c * c * c * c, s4 = s * s * s * s;
        const double wm = line_weight(dist.probs[static_cast<std::size_t>(m)], mode);
        const double lo = pos.lambda_m - lambda_prev;
        const double hi = pos.lambda_m + lambda_prev;
        lines.push_back({Transition::upper_to_upper, m, lo, wm * c4 * sin2_prev});
        lines.push_back({Transition::upper_to_lower, m, hi, wm * c4 * cos2_prev});
        lines.push_back({Transition::lower_to_upper, m, -hi, wm * s4 * sin2_prev});
        lines.push_back({Transition::lower_to_lower, m, -lo, wm * s4 * cos2_prev});
        lambda_prev = pos.lambda_m;
        cos2_prev = c * c;
        sin2_prev = s * s;
    }
    return lines;
}

std::vector<double> make_grid(double min, double max, int points) {
    if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
    if (!(min < max)) throw std::invalid_argument("grid min must be below max");
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double step = (max - min) / (points - 1);
    if (min == -max) {
        // Mirror so that negation is exact in floating point.
        const int half = points / 2;
        for (int i = 0; i < half; ++i) {
            const double v = min + i * step;
            grid[static_cast<std::size_t>(i)] = v;
            grid[static_cast<std::size_t>(points - 1 - i)] = -v;
        }
        if (points % 2 == 1) grid[static_cast<std::size_t>(half)] = 0.0;
    } else {
        for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = min + i * step;
        grid.back() = max;
    }
    return grid;
}

std::vector<double> evaluate_spectrum(const std::vector<SpectralLine>& lines,
                                      const std::vector<double>& grid, double gamma,
                                      double lambda_c) {
    if (lines.empty()) throw std::invalid_argument("empty line set");
    if (grid.empty()) throw std::invalid_argument("empty grid");
    if (!(gamma > 0.0) || !(lambda_c > 0.0))
        throw std::invalid_argument("gamma and lambda_c must be > 0");
    const double g2 = gamma * gamma;
    const double l2 = lambda_c * lambda_c;
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = grid[i];
        double s = 0.0;
        for (const auto& line : lines) {
            const double x = d - line.center;
            s += line.weight * gamma / (g2 + l2 * x * x);
        }
        values[i] = s;
    }
    return values;
}

SpectrumResult compute_spectrum(const PhotonStatistics& dist, const SystemParams& params,
                                double chi, const std::vector<double>& grid, WeightMode mode) {
    SpectrumResult out;
    out.lines = transition_lines(dist, params, chi, mode);
    out.values = evaluate_spectrum(out.lines, grid, params.gamma, params.lambda_c);
    out.grid = grid;
    out.weight_mode = mode;
    out.params = params;
    out.chi = chi;
    out.field = dist;
    return out;
}

PeakSet peak_find(const SpectrumResult& result, double prominence) {
    const auto& v = result.values;
    const auto& g = result.grid;
    if (v.size() != g.size() || v.size() < 3)
        throw std::invalid_argument("peak_find needs a computed spectrum with >= 3 points");
    PeakSet out;
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, x);
    const double floor = prominence * vmax;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > v[i - 1] && v[i] > v[i + 1] && v[i] >= floor)
            out.peaks.push_back({g[i], v[i]});
    }
    if (g.size() >= 2) {
        const double step = g[1] - g[0];
        out.grid_coarse_warning = step > result.params.gamma / (2.0 * result.params.lambda_c);
    }
    return out;
}

double asymmetry_metric(const SpectrumResult& result) {
    const auto& g = result.grid;
    const auto& v = result.values;
    if (g.size() != v.size() || g.size() < 3)
        throw std::invalid_argument("asymmetry_metric needs a computed spectrum");
    const double span = std::max(std::abs(g.front()), std::abs(g.back()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (std::abs(g[i] + g[g.size() - 1 - i]) > 1e-12 * span)
            throw std::domain_error("asymmetry_metric requires a grid symmetric about zero");
    }
    double m0 = 0.0, m1 = 0.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double h = g[i + 1] - g[i];
        m0 += 0.5 * h * (v[i] + v[i + 1]);
        m1 += 0.5 * h * (g[i] * v[i] + g[i + 1] * v[i + 1]);
    }
    if (m0 <= 0.0) throw std::domain_error("asymmetry_metric: spectrum has no mass on the grid");
    return m1 / m0;
}

}  // namespace jcfluor::spectrum
