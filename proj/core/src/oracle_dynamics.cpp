#include "jcfluor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jcfluor::oracle {

namespace {

constexpr Complex kImag{0.0, 1.0};

void check_average_config(const AverageConfig& cfg) {
    if (!(cfg.t_window > 0.0)) throw std::invalid_argument("t_window must be positive");
    if (cfg.n_samples < 0) throw std::invalid_argument("n_samples must be non-negative");
    if (!(cfg.convergence_tol > 0.0))
        throw std::invalid_argument("convergence_tol must be positive");
    if (cfg.max_doublings < 0) throw std::invalid_argument("max_doublings must be non-negative");
    if (!(cfg.compare_tau_max > 0.0) || cfg.compare_points < 2)
        throw std::invalid_argument("comparison grid is degenerate");
}

std::vector<Complex> tone_sum(const std::vector<NumericCorrelation::Tone>& tones,
                              const std::vector<double>& taus) {
    std::vector<Complex> out(taus.size(), Complex(0.0, 0.0));
    for (const auto& tone : tones) {
        for (std::size_t i = 0; i < taus.size(); ++i)
            out[i] += tone.amp * std::exp(kImag * (tone.freq * taus[i]));
    }
    return out;
}

}  // namespace

void ExcitedDiagonalState::validate(const OperatorSet& ops) const {
    if (p.empty()) throw std::invalid_argument("state has no photon-number weights");
    if (static_cast<int>(p.size()) > ops.n_max + 1)
        throw std::invalid_argument("state does not fit the Fock truncation");
    double sum = 0.0;
    for (double w : p) {
        if (!std::isfinite(w) || w < 0.0)
            throw std::invalid_argument("state weights must be finite and non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("state trace deviates from one beyond 1e-12");
}

ExcitedDiagonalState excited_state(const PhotonStatistics& dist) {
    ExcitedDiagonalState state;
    state.p = dist.probs;
    const double sum = std::accumulate(state.p.begin(), state.p.end(), 0.0);
    if (sum <= 0.0) throw std::invalid_argument("distribution has no mass");
    for (double& w : state.p) w /= sum;  // fold the truncation tail back in
    return state;
}

NonConvergence::NonConvergence(std::vector<double> freqs)
    : std::runtime_error("time averaging did not converge; " + std::to_string(freqs.size()) +
                         " tone(s) still moving after the final window doubling"),
      residual_frequencies(std::move(freqs)) {}

NumericCorrelation::NumericCorrelation(const OperatorSet& ops, const Matrix& h,
                                       const ExcitedDiagonalState& rho0) {
    rho0.validate(ops);
    if (h.rows() != ops.dim() || h.cols() != ops.dim())
        throw std::invalid_argument("hamiltonian does not match the operator set");
    const Propagator prop(h);  // also enforces Hermiticity
    evals_ = prop.eigenvalues();
    vecs_ = prop.eigenvectors();
    sp_eig_ = vecs_.adjoint() * ops.sigma_plus * vecs_;
    sm_eig_ = vecs_.adjoint() * ops.sigma_minus * vecs_;

    const Eigen::Index dim = ops.dim();
    rho_eig_ = Matrix::Zero(dim, dim);
    for (std::size_t m = 0; m < rho0.p.size(); ++m) {
        if (rho0.p[m] == 0.0) continue;
        // |m,e> expressed in the eigenbasis: component on eigenvector a is
        // conj(vecs_(row, a)).
        const Vector v = vecs_.row(ops.index_of(static_cast<int>(m), 1)).adjoint();
        rho_eig_ += rho0.p[m] * (v * v.adjoint());
    }
}

Complex NumericCorrelation::gamma(double t, double tau) const {
    const Eigen::Index dim = evals_.size();
    Vector late(dim), early(dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        late(a) = std::exp(kImag * (evals_(a) * (t + tau)));
        early(a) = std::exp(kImag * (evals_(a) * t));
    }
    const Matrix sp_t = late.asDiagonal() * sp_eig_ * late.conjugate().asDiagonal();
    const Matrix sm_t = early.asDiagonal() * sm_eig_ * early.conjugate().asDiagonal();
    return (rho_eig_ * (sp_t * sm_t)).trace();
}

// Transient-averaged tone matrix: Z_ab = Sp_ab * sum_c K(E_a - E_c) rho_ca Sm_bc,
// where K is the mean of exp(i t dE) over the window. The t -> infinity limit
// keeps only degenerate pairs; finite windows leak O(1/(dE T)) cross terms,
// which the doubling loop pushes below tolerance.
Matrix NumericCorrelation::zmat(double t_window, int n_samples) const {
    const Eigen::Index dim = evals_.size();
    Matrix kernel(dim, dim);
    if (n_samples == 0) {
        for (Eigen::Index a = 0; a < dim; ++a) {
            for (Eigen::Index c = 0; c < dim; ++c) {
                const double x = (evals_(a) - evals_(c)) * t_window;
                kernel(a, c) = std::abs(x) < 1e-8
                                   ? Complex(1.0, -0.5 * x)
                                   : (std::exp(kImag * x) - 1.0) / (kImag * x);
            }
        }
    } else {
        const int intervals = n_samples + (n_samples % 2);  // Simpson needs an even count
        const double h = t_window / intervals;
        for (Eigen::Index a = 0; a < dim; ++a) {
            for (Eigen::Index c = 0; c < dim; ++c) {
                const double de = evals_(a) - evals_(c);
                Complex acc = 0.0;
                for (int j = 0; j <= intervals; ++j) {
                    const double coef = (j == 0 || j == intervals) ? 1.0 : (j % 2 ? 4.0 : 2.0);
                    acc += coef * std::exp(kImag * (de * (h * j)));
                }
                kernel(a, c) = acc * (h / 3.0) / t_window;
            }
        }
    }
    const Matrix x = kernel.cwiseProduct(rho_eig_.transpose());
    const Matrix y = sm_eig_ * x.transpose();
    return sp_eig_.cwiseProduct(y.transpose());
}

std::vector<NumericCorrelation::Tone> NumericCorrelation::collect(const Matrix& z,
                                                                  double rel_floor) const {
    const double floor = rel_floor * z.cwiseAbs().maxCoeff();
    std::vector<Tone> tones;
    const Eigen::Index dim = evals_.size();
    for (Eigen::Index a = 0; a < dim; ++a) {
        for (Eigen::Index b = 0; b < dim; ++b) {
            const Complex amp = z(a, b);
            if (std::abs(amp) > floor) tones.push_back({evals_(a) - evals_(b), amp});
        }
    }
    return tones;
}

std::vector<NumericCorrelation::Tone> NumericCorrelation::averaged_tones(
    const AverageConfig& cfg) const {
    check_average_config(cfg);
    std::vector<double> taus(static_cast<std::size_t>(cfg.compare_points));
    for (std::size_t i = 0; i < taus.size(); ++i)
        taus[i] = cfg.compare_tau_max * static_cast<double>(i) /
                  static_cast<double>(cfg.compare_points - 1);

    constexpr double kFloor = 1e-13;
    double window = cfg.t_window;
    Matrix z_prev = zmat(window, cfg.n_samples);
    auto tones_prev = collect(z_prev, kFloor);
    auto curve_prev = tone_sum(tones_prev, taus);

    for (int round = 0; round < cfg.max_doublings; ++round) {
        window *= 2.0;
        Matrix z_next = zmat(window, cfg.n_samples);
        auto tones_next = collect(z_next, kFloor);
        auto curve_next = tone_sum(tones_next, taus);
        double change = 0.0;
        for (std::size_t i = 0; i < taus.size(); ++i)
            change = std::max(change, std::abs(curve_next[i] - curve_prev[i]));
        if (change < cfg.convergence_tol) return tones_next;
        z_prev.swap(z_next);
        tones_prev.swap(tones_next);
        curve_prev.swap(curve_next);
        if (round + 1 == cfg.max_doublings) {
            // Still moving: report which tones refuse to settle.
            const Eigen::MatrixXd diff = (z_next - z_prev).cwiseAbs();
            const double top = diff.maxCoeff();
            std::vector<double> freqs;
            const Eigen::Index dim = evals_.size();
            for (Eigen::Index a = 0; a < dim && freqs.size() < 16; ++a) {
                for (Eigen::Index b = 0; b < dim && freqs.size() < 16; ++b) {
                    if (diff(a, b) >= 0.25 * top) {
                        const double f = evals_(a) - evals_(b);
                        const bool seen = std::any_of(freqs.begin(), freqs.end(), [&](double g) {
                            return std::abs(g - f) < 1e-9;
                        });
                        if (!seen) freqs.push_back(f);
                    }
                }
            }
            std::sort(freqs.begin(), freqs.end());
            throw NonConvergence(std::move(freqs));
        }
    }
    return tones_prev;  // max_doublings == 0: accept the single window
}

std::vector<spectrum::CorrelationAvg> NumericCorrelation::averaged(
    const std::vector<double>& tau_grid, const AverageConfig& cfg) const {
    const auto tones = averaged_tones(cfg);
    const auto values = tone_sum(tones, tau_grid);
    std::vector<spectrum::CorrelationAvg> out(tau_grid.size());
    for (std::size_t i = 0; i < tau_grid.size(); ++i) out[i] = {tau_grid[i], values[i]};
    return out;
}

std::vector<double> spectrum_numeric(const std::vector<double>& nu_rel_grid,
                                     const CorrelationSamples& samples, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (nu_rel_grid.empty()) throw std::invalid_argument("frequency grid must not be empty");
    const std::size_t n = samples.values.size();
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("composite Simpson needs an odd sample count >= 3");
    const double dt = samples.tau_step;
    if (!(dt > 0.0)) throw std::invalid_argument("tau_step must be positive");

    double nu_max = 0.0;
    for (double nu : nu_rel_grid) nu_max = std::max(nu_max, std::abs(nu));
    if (nu_max > 0.0 && dt > (M_PI / (10.0 * nu_max)) * (1.0 + 1e-12))
        throw std::invalid_argument(
            "tau samples too coarse for the requested frequencies (aliasing)");
    const double tau_max = dt * static_cast<double>(n - 1);
    if (tau_max < (40.0 / gamma) * (1.0 - 1e-12))
        throw std::invalid_argument("tau window shorter than 40/gamma");

    // Fold the detector damping and the Simpson weights into the samples once.
    std::vector<Complex> damped(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double coef = (j == 0 || j + 1 == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        damped[j] = samples.values[j] * (coef * (dt / 3.0) * std::exp(-gamma * dt * j));
    }

    constexpr std::size_t kResync = 4096;
    std::vector<double> out(nu_rel_grid.size());
    for (std::size_t i = 0; i < nu_rel_grid.size(); ++i) {
        const double nu = nu_rel_grid[i];
        const Complex step = std::exp(-kImag * (nu * dt));
        Complex phase = 1.0;
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j % kResync == 0) phase = std::exp(-kImag * (nu * dt * j));
            acc += (phase * damped[j]).real();
            phase *= step;
        }
        out[i] = acc;
    }
    return out;
}

namespace {

void check_pipeline_config(const PipelineConfig& cfg) {
    if (cfg.guard < 1) throw std::invalid_argument("guard must be at least 1");
    if (cfg.points_per_period < 4)
        throw std::invalid_argument("points_per_period must be at least 4");
    if (!(cfg.tau_max_over_gamma > 0.0))
        throw std::invalid_argument("tau_max_over_gamma must be positive");
    if (!(cfg.tone_rel_threshold >= 0.0) || cfg.tone_rel_threshold >= 1.0)
        throw std::invalid_argument("tone_rel_threshold must lie in [0, 1)");
    if (cfg.tau_step_override && !(*cfg.tau_step_override > 0.0))
        throw std::invalid_argument("tau_step_override must be positive");
}

std::vector<double> tones_to_spectrum(const std::vector<NumericCorrelation::Tone>& tones,
                                      const SystemParams& params,
                                      const std::vector<double>& delta_grid,
                                      const PipelineConfig& cfg) {
    if (delta_grid.empty()) throw std::invalid_argument("empty frequency grid");
    if (tones.empty()) return std::vector<double>(delta_grid.size(), 0.0);

    double amp_max = 0.0;
    for (const auto& t : tones) amp_max = std::max(amp_max, std::abs(t.amp));
    double band = 0.0;
    for (const auto& t : tones) {
        if (std::abs(t.amp) >= cfg.tone_rel_threshold * amp_max)
            band = std::max(band, std::abs(t.freq - params.omega));
    }
    double delta_max = 0.0;
    for (double d : delta_grid) delta_max = std::max(delta_max, std::abs(d));
    band = std::max(band + params.lambda_c * delta_max, params.gamma);

    const double dt =
        cfg.tau_step_override ? *cfg.tau_step_override
                              : 2.0 * M_PI / (static_cast<double>(cfg.points_per_period) * band);
    const double tau_max = cfg.tau_max_over_gamma / params.gamma;
    std::size_t steps = static_cast<std::size_t>(std::ceil(tau_max / dt));
    if (steps < 2) steps = 2;
    if (steps % 2 != 0) ++steps;  // odd sample count for Simpson
    const std::size_t n_pts = steps + 1;

    // Demodulate by the carrier while accumulating, tone by tone.
    constexpr std::size_t kResync = 4096;
    std::vector<Complex> values(n_pts, Complex(0.0, 0.0));
    for (const auto& tone : tones) {
        const double f = tone.freq - params.omega;
        const Complex step = std::exp(kImag * (f * dt));
        Complex z = tone.amp;
        for (std::size_t j = 0; j < n_pts; ++j) {
            if (j % kResync == 0) z = tone.amp * std::exp(kImag * (f * dt * j));
            values[j] += z;
            z *= step;
        }
    }

    CorrelationSamples samples;
    samples.tau_step = dt;
    samples.carrier = params.omega;
    samples.values = std::move(values);

    std::vector<double> nu_rel(delta_grid.size());
    for (std::size_t i = 0; i < delta_grid.size(); ++i)
        nu_rel[i] = params.lambda_c * delta_grid[i];
    return spectrum_numeric(nu_rel, samples, params.gamma);
}

}  // namespace

std::vector<double> effective_spectrum_numeric(const SystemParams& params, double chi,
                                               const PhotonStatistics& dist,
                                               const std::vector<double>& delta_grid,
                                               const PipelineConfig& cfg, NumberTermForm form) {
    params.validate();
    check_pipeline_config(cfg);
    const int n_max = dist.m_max() + cfg.guard;
    const OperatorSet ops = make_operator_set(n_max, 0);
    const Matrix h = build_hse(ops, params, chi, form);
    const NumericCorrelation corr(ops, h, excited_state(dist));
    AverageConfig avg = cfg.average;
    avg.compare_tau_max = cfg.tau_max_over_gamma / params.gamma;
    return tones_to_spectrum(corr.averaged_tones(avg), params, delta_grid, cfg);
}

std::vector<double> full_model_spectrum(const SystemParams& params, const NearbyLevelSet& levels,
                                        const PhotonStatistics& dist,
                                        const std::vector<double>& delta_grid,
                                        const PipelineConfig& cfg) {
    params.validate();
    levels.validate(params);
    check_pipeline_config(cfg);
    const int n_max = dist.m_max() + cfg.guard;
    const OperatorSet ops = make_operator_set(n_max, static_cast<int>(levels.size()));
    const Matrix h = build_full_hamiltonian(ops, params, levels);
    const NumericCorrelation corr(ops, h, excited_state(dist));
    AverageConfig avg = cfg.average;
    avg.compare_tau_max = cfg.tau_max_over_gamma / params.gamma;
    return tones_to_spectrum(corr.averaged_tones(avg), params, delta_grid, cfg);
}

}  // namespace jcfluor::oracle
