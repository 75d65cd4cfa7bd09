#include "jcfluor/photon_statistics.hpp"
#include "jcfluor/system_params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace jcfluor {

void SystemParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(omega) || !finite(omega0) || !finite(lambda_c) || !finite(gamma))
        throw std::invalid_argument("system params: non-finite value");
    if (lambda_c <= 0.0) throw std::invalid_argument("system params: lambda_c must be > 0");
    if (gamma <= 0.0) throw std::invalid_argument("system params: gamma must be > 0");
}

SystemParams make_params(double omega, double omega0, double lambda_c, double gamma) {
    SystemParams p{omega, omega0, lambda_c, gamma};
    p.validate();
    return p;
}

void NearbyLevelSet::validate(const SystemParams& params) const {
    for (std::size_t j = 0; j < levels.size(); ++j) {
        const auto& lv = levels[j];
        if (!std::isfinite(lv.omega_k) || !std::isfinite(lv.eta_k))
            throw std::invalid_argument("nearby level " + std::to_string(j) + ": non-finite value");
        if (lv.eta_k < 0.0)
            throw std::invalid_argument("nearby level " + std::to_string(j) + ": eta_k must be >= 0");
        if (lv.omega_k <= params.omega0)
            throw std::invalid_argument("nearby level " + std::to_string(j) +
                                        ": omega_k must exceed omega0");
        if (lv.omega_k <= params.omega)
            throw std::invalid_argument("nearby level " + std::to_string(j) +
                                        ": omega_k must exceed the field frequency");
    }
}

std::string_view to_string(FieldKind kind) {
    switch (kind) {
        case FieldKind::vacuum: return "vacuum";
        case FieldKind::coherent: return "coherent";
        case FieldKind::thermal: return "thermal";
        case FieldKind::custom: return "custom";
    }
    return "?";
}

double PhotonStatistics::mean() const {
    double s = 0.0;
    for (std::size_t m = 0; m < probs.size(); ++m) s += static_cast<double>(m) * probs[m];
    return s;
}

double PhotonStatistics::second_moment() const {
    double s = 0.0;
    for (std::size_t m = 0; m < probs.size(); ++m)
        s += static_cast<double>(m) * static_cast<double>(m) * probs[m];
    return s;
}

namespace {

void check_tail_tol(double tail_tol) {
    if (!(tail_tol > 0.0) || tail_tol > 1e-3)
        throw std::invalid_argument("tail_tol must lie in (0, 1e-3]");
}

void check_nbar(double nbar) {
    if (!std::isfinite(nbar) || nbar < 0.0)
        throw std::invalid_argument("nbar must be finite and >= 0");
}

}  // namespace

PhotonStatistics vacuum_field() {
    return PhotonStatistics{FieldKind::vacuum, 0.0, {1.0}, 0.0, 0.0};
}

PhotonStatistics coherent_distribution(double nbar, double tail_tol) {
    check_nbar(nbar);
    check_tail_tol(tail_tol);
    PhotonStatistics out;
    out.kind = FieldKind::coherent;
    out.nbar = nbar;
    out.tail_tol = tail_tol;
    if (nbar == 0.0) {
        out.probs = {1.0};
        out.tail = 0.0;
        return out;
    }
    // Log-space recurrence: log p_m = log p_{m-1} + log(nbar) - log(m).
    const double log_nbar = std::log(nbar);
    double log_p = -nbar;
    double sum = std::exp(log_p);
    out.probs.push_back(sum);
    constexpr int hard_cap = 1 << 20;
    int m = 0;
    while (1.0 - sum >= tail_tol) {
        ++m;
        if (m > hard_cap) throw std::runtime_error("coherent distribution failed to converge");
        log_p += log_nbar - std::log(static_cast<double>(m));
        const double p = std::exp(log_p);
        out.probs.push_back(p);
        sum += p;
    }
    out.tail = std::max(0.0, 1.0 - sum);
    return out;
}

PhotonStatistics thermal_distribution(double nbar, double tail_tol) {
    check_nbar(nbar);
    check_tail_tol(tail_tol);
    PhotonStatistics out;
    out.kind = FieldKind::thermal;
    out.nbar = nbar;
    out.tail_tol = tail_tol;
    if (nbar == 0.0) {
        out.probs = {1.0};
        out.tail = 0.0;
        return out;
    }
    // Geometric tail: sum_{m>M} p_m = q^{M+1}, q = nbar/(nbar+1), which gives
    // the truncation index in closed form.
    const double q = nbar / (nbar + 1.0);
    const double log_q = std::log(q);
    const int M = std::max(0, static_cast<int>(std::ceil(std::log(tail_tol) / log_q)) - 1);
    out.probs.resize(static_cast<std::size_t>(M) + 1);
    double log_p = -std::log(nbar + 1.0);
    double sum = 0.0;
    for (int m = 0; m <= M; ++m) {
        const double p = std::exp(log_p);
        out.probs[static_cast<std::size_t>(m)] = p;
        sum += p;
        log_p += log_q;
    }
    out.tail = std::max(0.0, 1.0 - sum);
    return out;
}

PhotonStatistics custom_distribution(std::vector<double> probs, bool renormalize) {
    if (probs.empty()) throw std::invalid_argument("custom distribution: empty probability list");
    double sum = 0.0;
    for (std::size_t m = 0; m < probs.size(); ++m) {
        if (!std::isfinite(probs[m]) || probs[m] < 0.0)
            throw std::invalid_argument("custom distribution: entry " + std::to_string(m) +
                                        " is negative or non-finite");
        sum += probs[m];
    }
    if (sum <= 0.0) throw std::invalid_argument("custom distribution: probabilities sum to zero");
    if (std::abs(sum - 1.0) > 1e-9 && !renormalize)
        throw std::invalid_argument(
            "custom distribution: sum deviates from one by more than 1e-9; "
            "pass renormalize=true to accept");
    for (double& p : probs) p /= sum;
    PhotonStatistics out;
    out.kind = FieldKind::custom;
    out.probs = std::move(probs);
    out.nbar = out.mean();
    out.tail = 0.0;
    out.tail_tol = 0.0;
    return out;
}

}  // namespace jcfluor
