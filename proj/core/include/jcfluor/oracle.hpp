#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "jcfluor/dressed.hpp"
#include "jcfluor/photon_statistics.hpp"
#include "jcfluor/spectrum.hpp"
#include "jcfluor/system_params.hpp"

// Brute-force route on the truncated product space. Everything here is dense
// linear algebra with no dressed-state shortcuts; it exists to cross-check the
// closed forms in jcfluor::dressed / jcfluor::spectrum.
namespace jcfluor::oracle {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Basis ordering: atomic levels (g, e, k_1..k_N), Fock-major, so the flat
// index of |n, level> is n*(N+2) + level.
struct OperatorSet {
    int n_max = 0;
    int n_nearby = 0;

    Matrix number;       // a^dag a
    Matrix annihilate;   // a
    Matrix create;       // a^dag
    Matrix sigma_z;      // |e><e| - |g><g|
    Matrix sigma_plus;   // |e><g|
    Matrix sigma_minus;  // |g><e|
    std::vector<Matrix> project_k;  // |k><k|
    std::vector<Matrix> k_from_g;   // |k><g|
    std::vector<Matrix> k_from_e;   // |k><e|

    int levels() const { return n_nearby + 2; }
    Eigen::Index dim() const { return static_cast<Eigen::Index>(n_max + 1) * levels(); }
    Eigen::Index index_of(int n, int level) const;
};

OperatorSet make_operator_set(int n_max, int n_nearby);

Matrix build_full_hamiltonian(const OperatorSet& ops, const SystemParams& params,
                              const NearbyLevelSet& levels);

// bare_frequency uses omega for the photon-number term (this is the form the
// closed-form dressed states diagonalize exactly); stark_shifted uses
// omega - chi and is kept so the discrepancy can be measured.
enum class NumberTermForm { bare_frequency, stark_shifted };

Matrix build_hse(const OperatorSet& ops, const SystemParams& params, double chi,
                 NumberTermForm form = NumberTermForm::bare_frequency);

// Residual generator acting on the nearby-level sector at time t.
Matrix build_h_script(const OperatorSet& ops, const SystemParams& params,
                      const NearbyLevelSet& levels, const dressed::EffectiveModel& eff,
                      double t);

double check_commutator(const Matrix& a, const Matrix& b);     // max-abs of [a, b]
double relative_commutator(const Matrix& a, const Matrix& b);  // scaled by the factors

Matrix rotation_operator(const OperatorSet& ops, const std::vector<double>& xi);

class Propagator {
  public:
    explicit Propagator(const Matrix& h);  // requires Hermitian input

    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    const Matrix& eigenvectors() const { return vecs_; }
    Matrix evaluate(double t) const;  // exp(-i H t)
    Vector apply(double t, const Vector& v) const;

  private:
    Eigen::VectorXd evals_;
    Matrix vecs_;
};

struct RotationReductionReport {
    double epsilon = 0.0;       // interior max-abs of R H R^dag minus the reduced form
    double epsilon_half = 0.0;  // same with every eta halved
    double ratio = 0.0;         // epsilon_half / epsilon; ~1/4 in the validity regime
    double exchange_epsilon = 0.0;  // residual restricted to the g<->k exchange block
    double exchange_epsilon_half = 0.0;
    double exchange_ratio = 0.0;  // ~1/8: the exchange block cancels one order deeper
};

RotationReductionReport verify_rotation_reduction(const SystemParams& params,
                                                  const NearbyLevelSet& levels, int n_max);

struct EigensystemReport {
    double max_residual = 0.0;     // dressed eigenpairs against the bare-frequency form
    double ground_residual = 0.0;  // |0,g> eigenpair
    double closure_residual = 0.0;
    double literal_form_residual = 0.0;  // same eigenpairs against the stark_shifted form
    double coeff_mismatch = 0.0;  // evolution_coeffs vs propagator matrix elements
    double tolerance = 0.0;
    bool pass = false;
};

EigensystemReport verify_eigensystem(const SystemParams& params, double chi, int n_max);

// rho0 = sum_m p_m |m,e><m,e|
struct ExcitedDiagonalState {
    std::vector<double> p;
    void validate(const OperatorSet& ops) const;
};

ExcitedDiagonalState excited_state(const PhotonStatistics& dist);

struct AverageConfig {
    double t_window = 4.0e3;
    // 0: exact mean over [0, t_window] per frequency pair. >0: composite
    // Simpson window with this many samples, evaluated in closed form.
    int n_samples = 0;
    double convergence_tol = 1e-5;
    int max_doublings = 8;
    // Window doubling is judged converged when the correlation moves by less
    // than convergence_tol everywhere on this tau range (downstream integrals
    // never look past the detector memory, so neither does the check).
    double compare_tau_max = 400.0;
    int compare_points = 257;
};

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(std::vector<double> freqs);
    std::vector<double> residual_frequencies;
};

class NumericCorrelation {
  public:
    NumericCorrelation(const OperatorSet& ops, const Matrix& h, const ExcitedDiagonalState& rho0);

    // Gamma(t, tau) = Tr{rho0 sigma_+(t+tau) sigma_-(t)}
    Complex gamma(double t, double tau) const;

    struct Tone {
        double freq = 0.0;
        Complex amp;
    };
    // Transient-averaged correlation as a tone sum: Gbar(tau) = sum amp e^{i freq tau}.
    // Doubles t_window until the average stops moving; throws NonConvergence.
    std::vector<Tone> averaged_tones(const AverageConfig& cfg = {}) const;

    std::vector<spectrum::CorrelationAvg> averaged(const std::vector<double>& tau_grid,
                                                   const AverageConfig& cfg = {}) const;

  private:
    Matrix zmat(double t_window, int n_samples) const;
    std::vector<Tone> collect(const Matrix& z, double rel_floor) const;

    Eigen::VectorXd evals_;
    Matrix vecs_;
    Matrix sp_eig_, sm_eig_;  // sigma_pm in the eigenbasis
    Matrix rho_eig_;
};

struct CorrelationSamples {
    double tau_step = 0.0;
    double carrier = 0.0;  // demodulation frequency folded out of the samples
    std::vector<Complex> values;  // Gbar(j*tau_step) * exp(-i carrier j tau_step)
};

// Damped Fourier transform by composite Simpson; nu_rel_grid is measured from
// the carrier. Throws std::invalid_argument when the sampling cannot resolve
// the requested frequencies or the window is shorter than 40/gamma.
std::vector<double> spectrum_numeric(const std::vector<double>& nu_rel_grid,
                                     const CorrelationSamples& samples, double gamma);

struct PipelineConfig {
    int guard = 10;               // n_max = m_max + guard
    int points_per_period = 20;   // tau sampling density at the highest tone
    double tau_max_over_gamma = 40.0;
    double tone_rel_threshold = 1e-12;
    AverageConfig average;
    std::optional<double> tau_step_override;  // to share a grid between runs
};

std::vector<double> effective_spectrum_numeric(const SystemParams& params, double chi,
                                               const PhotonStatistics& dist,
                                               const std::vector<double>& delta_grid,
                                               const PipelineConfig& cfg = {},
                                               NumberTermForm form = NumberTermForm::bare_frequency);

std::vector<double> full_model_spectrum(const SystemParams& params, const NearbyLevelSet& levels,
                                        const PhotonStatistics& dist,
                                        const std::vector<double>& delta_grid,
                                        const PipelineConfig& cfg = {});

double rel_linf(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace jcfluor::oracle
