#include "boselab/krylov.hpp"

#include <cmath>
#include <stdexcept>

namespace boselab {

namespace {

const cdouble kI{0.0, 1.0};

/// exp(-i dt T) e1 for the real symmetric tridiagonal (alpha, beta) of size m.
Eigen::VectorXcd small_exp(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                           int m, double dt) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    Eigen::VectorXcd phases(m);
    for (int i = 0; i < m; ++i) phases[i] = std::exp(-kI * dt * es.eigenvalues()[i]);
    return es.eigenvectors().cast<cdouble>() *
           phases.cwiseProduct(es.eigenvectors().row(0).transpose().cast<cdouble>());
}

}  // namespace

Eigen::VectorXcd expmv_hermitian(const HermitianApply& apply_H, double tau,
                                 const Eigen::VectorXcd& v, const ExpmvOptions& opt) {
    const Eigen::Index n = v.size();
    const double vnorm = v.norm();
    if (vnorm == 0.0 || tau == 0.0) return v;
    const int m_max = static_cast<int>(std::min<Eigen::Index>(opt.krylov_dim, n));

    Eigen::VectorXcd w = v;
    double t = 0.0;
    const double sign = tau >= 0.0 ? 1.0 : -1.0;
    const double t_total = std::abs(tau);
    double dt = t_total;

    Eigen::MatrixXcd V(n, m_max + 1);
    Eigen::VectorXd alpha(m_max), beta(m_max);
    Eigen::VectorXcd Hv(n);

    int substeps = 0;
    while (t < t_total) {
        if (++substeps > opt.max_substeps)
            throw std::runtime_error("expmv: substep limit exceeded");
        dt = std::min(dt, t_total - t);

        const double wnorm = w.norm();
        V.col(0) = w / wnorm;
        int m = m_max;
        bool breakdown = false;
        for (int j = 0; j < m_max; ++j) {
            apply_H(V.col(j), Hv);
            alpha[j] = std::real(V.col(j).dot(Hv));
            Hv -= alpha[j] * V.col(j);
            if (j > 0) Hv -= beta[j - 1] * V.col(j - 1);
            // Full reorthogonalization: cheap at these subspace sizes and
            // removes the classical Lanczos loss of orthogonality.
            for (int r = 0; r <= j; ++r) Hv -= V.col(r).dot(Hv) * V.col(r);
            beta[j] = Hv.norm();
            if (beta[j] < 1e-14 * (std::abs(alpha[j]) + 1.0)) {
                m = j + 1;
                breakdown = true;  // invariant subspace: result exact
                break;
            }
            V.col(j + 1) = Hv / beta[j];
        }

        while (true) {
            Eigen::VectorXcd u = small_exp(alpha, beta, m, sign * dt);
            const double err =
                breakdown ? 0.0 : std::abs(beta[m - 1]) * std::abs(u[m - 1]) * wnorm;
            if (err <= opt.tolerance || dt <= 1e-300) {
                w = wnorm * (V.leftCols(m) * u);
                t += dt;
                dt *= (err < 0.1 * opt.tolerance) ? 1.5 : 1.0;
                break;
            }
            dt *= 0.5;
        }
    }
    return w;
}

Eigen::VectorXcd expmv_hermitian(const Eigen::SparseMatrix<cdouble>& H, double tau,
                                 const Eigen::VectorXcd& v, const ExpmvOptions& opt) {
    return expmv_hermitian(
        [&H](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) { y = H * x; }, tau, v,
        opt);
}

Eigen::MatrixXcd dense_unitary(const Eigen::MatrixXcd& H, double tau) {
    if (H.rows() != H.cols())
        throw std::invalid_argument("dense_unitary: square matrix required");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    Eigen::VectorXcd phases(H.rows());
    for (Eigen::Index i = 0; i < H.rows(); ++i)
        phases[i] = std::exp(-kI * tau * es.eigenvalues()[i]);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace boselab
