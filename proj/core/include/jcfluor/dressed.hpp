#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "jcfluor/system_params.hpp"

namespace jcfluor::dressed {

// Reduction of the nearby levels to a single dispersive shift chi.
struct EffectiveModel {
    double chi = 0.0;            // sum_j xi_j * eta_j
    double omega_shifted = 0.0;  // omega - chi
    std::vector<double> xi;      // xi_j = 2 eta_j / (delta + delta_j)
    double xi_max_observed = 0.0;
    // Indices whose |xi_j| reached xi_limit; non-fatal, the reduction is
    // returned anyway but lies outside its validity regime.
    std::vector<std::size_t> xi_violations;

    bool within_validity() const { return xi_violations.empty(); }
};

EffectiveModel effective_model(const NearbyLevelSet& levels, const SystemParams& params,
                               double xi_limit = 0.1);

struct DressedQuantities {
    int n = 0;
    double omega_n = 0.0;  // 2 lambda sqrt(n+1)
    double delta_n = 0.0;  // Delta + chi (2n+1)
    double mu_n = 0.0;     // sqrt(delta_n^2 + omega_n^2)
    double phi_n = 0.0;    // atan2(omega_n, mu_n + delta_n)
    double e_plus = 0.0;   // omega (n+1/2) - chi/2 + mu_n/2
    double e_minus = 0.0;  // omega (n+1/2) - chi/2 - mu_n/2
};

DressedQuantities dressed_quantities(int n, const SystemParams& params, double chi);

// Line centers on the detuning axis delta = (nu - omega)/lambda.
struct LinePositions {
    int m = 0;
    double lambda_m = 0.0;         // sqrt(((Delta + chi(2m+1))/(2 lambda))^2 + (m+1))
    bool has_vacuum_pair = false;  // set for m == 0
    double c_plus = 0.0;           // (Delta-chi)/(2 lambda) + sqrt(((Delta+chi)/(2 lambda))^2 + 1)
    double c_minus = 0.0;
};

LinePositions line_positions(int m, const SystemParams& params, double chi);

// Matrix elements of the propagator on the {|n,e>, |n+1,g>} block:
//   d_n = <n,e|U|n,e>, f_n = <n+1,g|U|n,e>, g_n = <n+1,g|U|n+1,g>.
struct EvolutionCoeffs {
    std::complex<double> d_n;
    std::complex<double> f_n;
    std::complex<double> g_n;
};

EvolutionCoeffs evolution_coeffs(int n, double t, const SystemParams& params, double chi);

}  // namespace jcfluor::dressed
