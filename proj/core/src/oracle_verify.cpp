#include "jcfluor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace jcfluor::oracle {
namespace {

// Prediction for R H R^dag after dropping the second-order remainder: the
// Stark form on the two-level sector plus the residual nearby-level couplings
// that survive the rotation.
Matrix reduced_target(const OperatorSet& ops, const SystemParams& params,
                      const NearbyLevelSet& levels, const dressed::EffectiveModel& eff) {
    const Eigen::Index dim = ops.dim();
    const Matrix n_plus_1 = ops.number + Matrix::Identity(dim, dim);
    Matrix h = eff.omega_shifted * ops.number + 0.5 * params.omega0 * ops.sigma_z +
               params.lambda_c * (ops.annihilate * ops.sigma_plus + ops.create * ops.sigma_minus) +
               eff.chi * (ops.number * ops.sigma_z);
    for (std::size_t k = 0; k < levels.size(); ++k) {
        h += 0.5 * levels.levels[k].omega_k * ops.project_k[k] +
             eff.chi * (ops.number * ops.project_k[k]);
        const Matrix& ke = ops.k_from_e[k];
        h += params.lambda_c * eff.xi[k] * (n_plus_1 * (ke + ke.adjoint()));
    }
    for (std::size_t j = 0; j < levels.size(); ++j) {
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const Matrix kj = ops.k_from_g[k] * ops.k_from_g[j].adjoint();  // |k><j|
            h += eff.xi[j] * levels.levels[k].eta_k * (n_plus_1 * (kj + kj.adjoint()));
        }
    }
    return h;
}

struct InteriorResidual {
    double full = 0.0;
    double exchange = 0.0;  // |g> row, |k> column entries only
};

// The rotation mixes photon numbers, so the two manifolds at the Fock cut
// carry truncation garbage; measure the residual away from them.
InteriorResidual interior_residual(const OperatorSet& ops, const Matrix& diff) {
    InteriorResidual r;
    const int n_keep = ops.n_max - 2;
    for (int n = 0; n <= n_keep; ++n) {
        for (int l = 0; l < ops.levels(); ++l) {
            const Eigen::Index row = ops.index_of(n, l);
            for (int n2 = 0; n2 <= n_keep; ++n2) {
                for (int l2 = 0; l2 < ops.levels(); ++l2) {
                    const double v = std::abs(diff(row, ops.index_of(n2, l2)));
                    r.full = std::max(r.full, v);
                    if (l == 0 && l2 >= 2) r.exchange = std::max(r.exchange, v);
                }
            }
        }
    }
    return r;
}

}  // namespace

RotationReductionReport verify_rotation_reduction(const SystemParams& params,
                                                  const NearbyLevelSet& levels, int n_max) {
    params.validate();
    levels.validate(params);
    if (n_max < 3) throw std::invalid_argument("n_max too small for an interior region");
    const OperatorSet ops = make_operator_set(n_max, static_cast<int>(levels.size()));

    auto residual_for = [&](const NearbyLevelSet& lv) {
        const auto eff = dressed::effective_model(lv, params, 1.0);
        const Matrix h = build_full_hamiltonian(ops, params, lv);
        const Matrix r = rotation_operator(ops, eff.xi);
        const Matrix rotated = r * h * r.adjoint();
        return interior_residual(ops, rotated - reduced_target(ops, params, lv, eff));
    };

    NearbyLevelSet half = levels;
    for (auto& lv : half.levels) lv.eta_k *= 0.5;

    const InteriorResidual at_eta = residual_for(levels);
    const InteriorResidual at_half = residual_for(half);

    RotationReductionReport rep;
    rep.epsilon = at_eta.full;
    rep.epsilon_half = at_half.full;
    rep.ratio = at_eta.full > 0.0 ? at_half.full / at_eta.full : 0.0;
    rep.exchange_epsilon = at_eta.exchange;
    rep.exchange_epsilon_half = at_half.exchange;
    rep.exchange_ratio = at_eta.exchange > 0.0 ? at_half.exchange / at_eta.exchange : 0.0;
    return rep;
}

EigensystemReport verify_eigensystem(const SystemParams& params, double chi, int n_max) {
    params.validate();
    if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
    const OperatorSet ops = make_operator_set(n_max, 0);
    const Matrix h = build_hse(ops, params, chi, NumberTermForm::bare_frequency);
    const Matrix h_literal = build_hse(ops, params, chi, NumberTermForm::stark_shifted);
    const Eigen::Index dim = ops.dim();

    EigensystemReport rep;
    rep.tolerance = 1e-11 * h.cwiseAbs().maxCoeff();

    Vector ground = Vector::Zero(dim);
    ground(ops.index_of(0, 0)) = 1.0;
    rep.ground_residual = (h * ground + 0.5 * params.omega0 * ground).cwiseAbs().maxCoeff();

    Matrix projector_sum = ground * ground.adjoint();
    for (int n = 0; n <= n_max - 2; ++n) {
        const auto dq = dressed::dressed_quantities(n, params, chi);
        const double c = std::cos(dq.phi_n);
        const double s = std::sin(dq.phi_n);
        Vector plus = Vector::Zero(dim);
        plus(ops.index_of(n, 1)) = c;
        plus(ops.index_of(n + 1, 0)) = s;
        Vector minus = Vector::Zero(dim);
        minus(ops.index_of(n, 1)) = -s;
        minus(ops.index_of(n + 1, 0)) = c;

        rep.max_residual =
            std::max({rep.max_residual, (h * plus - dq.e_plus * plus).cwiseAbs().maxCoeff(),
                      (h * minus - dq.e_minus * minus).cwiseAbs().maxCoeff()});
        rep.literal_form_residual = std::max(
            {rep.literal_form_residual, (h_literal * plus - dq.e_plus * plus).cwiseAbs().maxCoeff(),
             (h_literal * minus - dq.e_minus * minus).cwiseAbs().maxCoeff()});
        projector_sum += plus * plus.adjoint() + minus * minus.adjoint();
    }

    // The manifolds above cover |0,g>, |n,g> up to n_max-1 and |n,e> up to
    // n_max-2; their projectors must resolve the identity on exactly that set.
    Matrix covered = Matrix::Zero(dim, dim);
    for (int n = 0; n <= n_max - 1; ++n) {
        const Eigen::Index i = ops.index_of(n, 0);
        covered(i, i) = 1.0;
    }
    for (int n = 0; n <= n_max - 2; ++n) {
        const Eigen::Index i = ops.index_of(n, 1);
        covered(i, i) = 1.0;
    }
    rep.closure_residual = (projector_sum - covered).cwiseAbs().maxCoeff();

    // Closed-form propagator amplitudes against the matrix exponential.
    const Propagator prop(h);
    std::mt19937 rng(191919u);
    std::uniform_real_distribution<double> random_time(0.0, 25.0);
    const int n_probe = std::min(6, n_max - 2);
    for (int trial = 0; trial < 10; ++trial) {
        const double t = random_time(rng);
        const Matrix u = prop.evaluate(t);
        const Complex ground_phase = std::exp(Complex(0.0, 0.5 * params.omega0 * t));
        const Eigen::Index i00 = ops.index_of(0, 0);
        rep.coeff_mismatch = std::max(rep.coeff_mismatch, std::abs(u(i00, i00) - ground_phase));
        for (int n = 0; n <= n_probe; ++n) {
            const auto coeffs = dressed::evolution_coeffs(n, t, params, chi);
            const Eigen::Index ie = ops.index_of(n, 1);
            const Eigen::Index ig = ops.index_of(n + 1, 0);
            rep.coeff_mismatch =
                std::max({rep.coeff_mismatch, std::abs(u(ie, ie) - coeffs.d_n),
                          std::abs(u(ig, ie) - coeffs.f_n), std::abs(u(ig, ig) - coeffs.g_n)});
        }
    }

    rep.pass = rep.max_residual < rep.tolerance && rep.ground_residual < rep.tolerance &&
               rep.closure_residual < 1e-12 && rep.coeff_mismatch < 1e-10;
    return rep;
}

}  // namespace jcfluor::oracle
