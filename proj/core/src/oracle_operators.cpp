#include "jcfluor/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jcfluor::oracle {

Eigen::Index OperatorSet::index_of(int n, int level) const {
    if (n < 0 || n > n_max) throw std::out_of_range("fock index out of range");
    if (level < 0 || level >= levels()) throw std::out_of_range("atomic level out of range");
    return static_cast<Eigen::Index>(n) * levels() + level;
}

OperatorSet make_operator_set(int n_max, int n_nearby) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    if (n_nearby < 0) throw std::invalid_argument("n_nearby must be >= 0");
    OperatorSet ops;
    ops.n_max = n_max;
    ops.n_nearby = n_nearby;
    const int L = ops.levels();
    const Eigen::Index dim = ops.dim();

    ops.annihilate = Matrix::Zero(dim, dim);
    for (int n = 1; n <= n_max; ++n) {
        const double amp = std::sqrt(static_cast<double>(n));
        for (int l = 0; l < L; ++l)
            ops.annihilate(ops.index_of(n - 1, l), ops.index_of(n, l)) = amp;
    }
    ops.create = ops.annihilate.adjoint();
    ops.number = ops.create * ops.annihilate;

    auto atomic = [&](int i, int j) {
        Matrix m = Matrix::Zero(dim, dim);
        for (int n = 0; n <= n_max; ++n) m(ops.index_of(n, i), ops.index_of(n, j)) = 1.0;
        return m;
    };
    ops.sigma_z = atomic(1, 1) - atomic(0, 0);
    ops.sigma_plus = atomic(1, 0);
    ops.sigma_minus = atomic(0, 1);
    ops.project_k.reserve(static_cast<std::size_t>(n_nearby));
    ops.k_from_g.reserve(static_cast<std::size_t>(n_nearby));
    ops.k_from_e.reserve(static_cast<std::size_t>(n_nearby));
    for (int k = 0; k < n_nearby; ++k) {
        ops.project_k.push_back(atomic(2 + k, 2 + k));
        ops.k_from_g.push_back(atomic(2 + k, 0));
        ops.k_from_e.push_back(atomic(2 + k, 1));
    }
    return ops;
}

Matrix build_full_hamiltonian(const OperatorSet& ops, const SystemParams& params,
                              const NearbyLevelSet& levels) {
    params.validate();
    levels.validate(params);
    if (static_cast<int>(levels.size()) != ops.n_nearby)
        throw std::invalid_argument("operator set was built for a different level count");
    Matrix h = params.omega * ops.number + 0.5 * params.omega0 * ops.sigma_z +
               params.lambda_c * (ops.annihilate * ops.sigma_plus + ops.create * ops.sigma_minus);
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const auto& lv = levels.levels[k];
        const Matrix hop = ops.annihilate * ops.k_from_g[k];
        h += 0.5 * lv.omega_k * ops.project_k[k] + lv.eta_k * (hop + hop.adjoint());
    }
    return h;
}

Matrix build_hse(const OperatorSet& ops, const SystemParams& params, double chi,
                 NumberTermForm form) {
    params.validate();
    const double nu = form == NumberTermForm::bare_frequency ? params.omega : params.omega - chi;
    return nu * ops.number + 0.5 * params.omega0 * ops.sigma_z +
           params.lambda_c * (ops.annihilate * ops.sigma_plus + ops.create * ops.sigma_minus) +
           chi * (ops.number * ops.sigma_z);
}

Matrix build_h_script(const OperatorSet& ops, const SystemParams& params,
                      const NearbyLevelSet& levels, const dressed::EffectiveModel& eff,
                      double t) {
    params.validate();
    if (static_cast<int>(levels.size()) != ops.n_nearby)
        throw std::invalid_argument("operator set was built for a different level count");
    if (eff.xi.size() != levels.size())
        throw std::invalid_argument("effective model does not match the level set");
    const Eigen::Index dim = ops.dim();
    Matrix h = Matrix::Zero(dim, dim);
    for (int k = 0; k < ops.n_nearby; ++k) h += eff.chi * (ops.number * ops.project_k[k]);

    const Matrix n_plus_1 = ops.number + Matrix::Identity(dim, dim);
    const std::complex<double> i(0.0, 1.0);
    for (int j = 0; j < ops.n_nearby; ++j) {
        for (int k = 0; k < ops.n_nearby; ++k) {
            const double coeff = eff.xi[static_cast<std::size_t>(k)] *
                                 levels.levels[static_cast<std::size_t>(j)].eta_k;
            const double phase = 0.5 * t * (levels.levels[static_cast<std::size_t>(j)].omega_k -
                                            levels.levels[static_cast<std::size_t>(k)].omega_k);
            // |j><k| embedded through the ladder blocks: |j><g| (|k><g|)^dag.
            const Matrix jk = ops.k_from_g[j] * ops.k_from_g[k].adjoint();
            h += coeff * (std::exp(i * phase) * (n_plus_1 * jk) +
                          std::exp(-i * phase) * (n_plus_1 * jk.adjoint()));
        }
    }
    return h;
}

double check_commutator(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("commutator of mismatched shapes");
    return (a * b - b * a).cwiseAbs().maxCoeff();
}

double relative_commutator(const Matrix& a, const Matrix& b) {
    const double na = a.cwiseAbs().maxCoeff();
    const double nb = b.cwiseAbs().maxCoeff();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return check_commutator(a, b) / (na * nb);
}

Matrix rotation_operator(const OperatorSet& ops, const std::vector<double>& xi) {
    if (static_cast<int>(xi.size()) != ops.n_nearby)
        throw std::invalid_argument("xi count does not match the operator set");
    const Eigen::Index dim = ops.dim();
    Matrix gen = Matrix::Zero(dim, dim);
    for (std::size_t j = 0; j < xi.size(); ++j) {
        const Matrix hop = ops.annihilate * ops.k_from_g[j];
        gen += xi[j] * (hop - hop.adjoint());
    }
    // gen is skew-Hermitian, so i*gen is Hermitian and exp(gen) follows from
    // a unitary eigendecomposition; no series truncation involved.
    const Matrix herm = std::complex<double>(0.0, 1.0) * gen;
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    if (es.info() != Eigen::Success) throw std::runtime_error("rotation eigensolve failed");
    const auto& v = es.eigenvectors();
    Vector phases(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        phases(i) = std::exp(std::complex<double>(0.0, -es.eigenvalues()(i)));
    return v * phases.asDiagonal() * v.adjoint();
}

Propagator::Propagator(const Matrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("propagator needs a square matrix");
    const double scale = h.cwiseAbs().maxCoeff();
    const double herm_defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && herm_defect > 1e-12 * scale)
        throw std::invalid_argument("propagator input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("propagator eigensolve failed");
    evals_ = es.eigenvalues();
    vecs_ = es.eigenvectors();
}

Matrix Propagator::evaluate(double t) const {
    Vector phases(evals_.size());
    for (Eigen::Index i = 0; i < evals_.size(); ++i)
        phases(i) = std::exp(std::complex<double>(0.0, -evals_(i) * t));
    return vecs_ * phases.asDiagonal() * vecs_.adjoint();
}

Vector Propagator::apply(double t, const Vector& v) const {
    Vector coeff = vecs_.adjoint() * v;
    for (Eigen::Index i = 0; i < evals_.size(); ++i)
        coeff(i) *= std::exp(std::complex<double>(0.0, -evals_(i) * t));
    return vecs_ * coeff;
}

double rel_linf(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("rel_linf: size mismatch");
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        scale = std::max(scale, std::abs(a[i]));
    }
    return scale > 0.0 ? diff / scale : diff;
}

}  // namespace jcfluor::oracle
