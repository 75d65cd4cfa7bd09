#pragma once

#include <string_view>
#include <vector>

namespace jcfluor {

enum class FieldKind { vacuum, coherent, thermal, custom };

std::string_view to_string(FieldKind kind);

// Truncated photon-number distribution p_0..p_M. The truncation index M is
// the smallest index whose remaining tail mass is below tail_tol, so
// sum(probs) + tail == 1 by construction.
struct PhotonStatistics {
    FieldKind kind = FieldKind::vacuum;
    double nbar = 0.0;          // as requested, not recomputed from probs
    std::vector<double> probs;  // p_0 .. p_M
    double tail = 0.0;          // 1 - sum(probs), clamped at zero
    double tail_tol = 0.0;

    int m_max() const { return static_cast<int>(probs.size()) - 1; }
    double mean() const;
    double second_moment() const;
};

PhotonStatistics vacuum_field();
PhotonStatistics coherent_distribution(double nbar, double tail_tol = 1e-10);
PhotonStatistics thermal_distribution(double nbar, double tail_tol = 1e-10);

// Accepts explicit probabilities. Deviations of the sum from one up to 1e-9
// are renormalized silently; larger ones require renormalize = true.
PhotonStatistics custom_distribution(std::vector<double> probs, bool renormalize = false);

}  // namespace jcfluor
