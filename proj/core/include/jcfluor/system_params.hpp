#pragma once

#include <cstddef>
#include <vector>

namespace jcfluor {

// All frequencies are angular and share units with the coupling lambda_c.
// omega may be zero: only the detuning omega0 - omega and the couplings enter
// any reported quantity, so the field frequency acts as a frame offset.
struct SystemParams {
    double omega = 0.0;     // field mode frequency
    double omega0 = 0.0;    // two-level transition frequency
    double lambda_c = 1.0;  // field <-> two-level coupling
    double gamma = 0.1;     // detector linewidth

    double delta() const { return omega0 - omega; }
    void validate() const;  // throws std::invalid_argument
};

SystemParams make_params(double omega, double omega0, double lambda_c, double gamma);

struct NearbyLevel {
    double omega_k = 0.0;  // level frequency, enters the energy as omega_k/2
    double eta_k = 0.0;    // field coupling on the |g> <-> |k> leg
};

struct NearbyLevelSet {
    std::vector<NearbyLevel> levels;

    std::size_t size() const { return levels.size(); }
    bool empty() const { return levels.empty(); }

    // Requires omega_k > omega0 and omega_k > omega (high-lying levels) and
    // eta_k >= 0. Throws std::invalid_argument.
    void validate(const SystemParams& params) const;
};

}  // namespace jcfluor
