#include "jcfluor/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace jcfluor::spectrum {

// Gbar(tau): vacuum pair beating against the ground state plus, for each
// populated manifold m >= 1, the four dressed transitions into m-1.
CorrelationAvg correlation_avg(double tau, const PhotonStatistics& dist,
                               const SystemParams& params, double chi, WeightMode mode) {
    params.validate();
    if (dist.probs.empty()) throw std::invalid_argument("empty photon distribution");
    const std::complex<double> i(0.0, 1.0);
    auto weight = [&](double p) { return mode == WeightMode::probability ? p : p * p; };

    const auto q0 = dressed::dressed_quantities(0, params, chi);
    const double c0 = std::cos(q0.phi_n), s0 = std::sin(q0.phi_n);
    const double half_omega0 = 0.5 * params.omega0;
    std::complex<double> acc =
        weight(dist.probs[0]) *
        (std::exp(i * tau * (q0.e_plus + half_omega0)) * (c0 * c0 * c0 * c0) +
         std::exp(i * tau * (q0.e_minus + half_omega0)) * (s0 * s0 * s0 * s0));

    auto prev = q0;
    for (int m = 1; m <= dist.m_max(); ++m) {
        const auto q = dressed::dressed_quantities(m, params, chi);
        const double c = std::cos(q.phi_n), s = std::sin(q.phi_n);
        const double c4 = c * c * c * c, s4 = s * s * s * s;
        const double cp2 = std::cos(prev.phi_n) * std::cos(prev.phi_n);
        const double sp2 = std::sin(prev.phi_n) * std::sin(prev.phi_n);
        const double wm = weight(dist.probs[static_cast<std::size_t>(m)]);
        acc += wm * (std::exp(i * tau * (q.e_plus - prev.e_plus)) * c4 * sp2 +
                     std::exp(i * tau * (q.e_minus - prev.e_plus)) * s4 * sp2 +
                     std::exp(i * tau * (q.e_plus - prev.e_minus)) * c4 * cp2 +
                     std::exp(i * tau * (q.e_minus - prev.e_minus)) * s4 * cp2);
        prev = q;
    }
    return {tau, acc};
}

}  // namespace jcfluor::spectrum
