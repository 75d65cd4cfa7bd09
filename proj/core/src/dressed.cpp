#include "jcfluor/dressed.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jcfluor::dressed {

EffectiveModel effective_model(const NearbyLevelSet& levels, const SystemParams& params,
                               double xi_limit) {
    params.validate();
    levels.validate(params);
    if (!(xi_limit > 0.0)) throw std::invalid_argument("xi_limit must be > 0");

    EffectiveModel out;
    out.xi.reserve(levels.size());
    const double delta = params.delta();
    double chi = 0.0;
    for (std::size_t j = 0; j < levels.size(); ++j) {
        const auto& lv = levels.levels[j];
        const double delta_j = lv.omega_k - params.omega;
        const double denom = delta + delta_j;
        if (denom <= 0.0)
            throw std::domain_error("nearby level " + std::to_string(j) +
                                    ": delta + delta_j must be positive, rotation is singular");
        const double xi = 2.0 * lv.eta_k / denom;
        out.xi.push_back(xi);
        out.xi_max_observed = std::max(out.xi_max_observed, std::abs(xi));
        if (std::abs(xi) >= xi_limit) out.xi_violations.push_back(j);
        chi += xi * lv.eta_k;
    }
    out.chi = chi;
    out.omega_shifted = params.omega - chi;
    return out;
}

namespace {
void check_manifold(int n) {
    if (n < 0) throw std::invalid_argument("manifold index must be >= 0");
}
}  // namespace

DressedQuantities dressed_quantities(int n, const SystemParams& params, double chi) {
    check_manifold(n);
    params.validate();
    DressedQuantities q;
    q.n = n;
    const double np1 = static_cast<double>(n) + 1.0;
    q.omega_n = 2.0 * params.lambda_c * std::sqrt(np1);
    q.delta_n = params.delta() + chi * (2.0 * n + 1.0);
    q.mu_n = std::hypot(q.delta_n, q.omega_n);
    // Half-angle form of tan(2 phi) = omega_n / delta_n; atan2 keeps the
    // branch continuous through delta_n <= 0.
    q.phi_n = std::atan2(q.omega_n, q.mu_n + q.delta_n);
    const double base = params.omega * (n + 0.5) - 0.5 * chi;
    q.e_plus = base + 0.5 * q.mu_n;
    q.e_minus = base - 0.5 * q.mu_n;
    return q;
}

LinePositions line_positions(int m, const SystemParams& params, double chi) {
    check_manifold(m);
    params.validate();
    LinePositions out;
    out.m = m;
    const double two_lambda = 2.0 * params.lambda_c;
    const double x = (params.delta() + chi * (2.0 * m + 1.0)) / two_lambda;
    out.lambda_m = std::sqrt(x * x + (m + 1.0));
    if (m == 0) {
        out.has_vacuum_pair = true;
        const double y = (params.delta() + chi) / two_lambda;
        const double root = std::sqrt(y * y + 1.0);
        const double off = (params.delta() - chi) / two_lambda;
        out.c_plus = off + root;
        out.c_minus = off - root;
    }
    return out;
}

EvolutionCoeffs evolution_coeffs(int n, double t, const SystemParams& params, double chi) {
    const DressedQuantities q = dressed_quantities(n, params, chi);
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> ep = std::exp(-i * q.e_plus * t);
    const std::complex<double> em = std::exp(-i * q.e_minus * t);
    const double c = std::cos(q.phi_n);
    const double s = std::sin(q.phi_n);
    EvolutionCoeffs out;
    out.d_n = ep * (c * c) + em * (s * s);
    out.f_n = (c * s) * (ep - em);
    out.g_n = ep * (s * s) + em * (c * c);
    return out;
}

}  // namespace jcfluor::dressed
