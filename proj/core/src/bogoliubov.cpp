#include "boselab/bogoliubov.hpp"

#include <cmath>
#include <stdexcept>

namespace boselab {

namespace {

const cdouble kI{0.0, 1.0};

void check_symmetric(const Eigen::MatrixXcd& k) {
    if (k.rows() != k.cols())
        throw std::invalid_argument("bogoliubov: kernel must be square");
    if ((k - k.transpose().eval()).norm() > 1e-10 * (1.0 + k.norm()))
        throw std::invalid_argument("bogoliubov: kernel must be symmetric");
}

}  // namespace

double BogoliubovFrame::canonicity_defect() const {
    const Eigen::Index M = cosh_block.rows();
    return (cosh_block * cosh_block.adjoint() - sinh_block * sinh_block.adjoint() -
            Eigen::MatrixXcd::Identity(M, M))
        .norm();
}

double BogoliubovFrame::symmetry_defect() const {
    Eigen::MatrixXcd P = sinh_block * cosh_block.transpose();
    return (P - P.transpose().eval()).norm();
}

BogoliubovFrame bogoliubov_frame(const Eigen::MatrixXcd& k) {
    check_symmetric(k);
    const Eigen::Index M = k.rows();
    const Eigen::MatrixXcd A = k * k.conjugate();

    BogoliubovFrame frame;
    frame.cosh_block = Eigen::MatrixXcd::Identity(M, M);
    frame.sinh_block = k;
    Eigen::MatrixXcd even = Eigen::MatrixXcd::Identity(M, M);  // A^n / (2n)!
    Eigen::MatrixXcd odd = k;                                  // A^n k / (2n+1)!
    for (int n = 1; n <= 200; ++n) {
        even = A * even / double((2 * n) * (2 * n - 1));
        odd = A * odd / double((2 * n + 1) * (2 * n));
        frame.cosh_block += even;
        frame.sinh_block += odd;
        if (even.norm() + odd.norm() < 1e-16) break;
    }
    return frame;
}

void takagi(const Eigen::MatrixXcd& S, Eigen::MatrixXcd& W, Eigen::VectorXd& sigma) {
    check_symmetric(S);
    const Eigen::Index M = S.rows();
    // Real symmetric embedding: (x; y) at eigenvalue s gives S conj(w) = s w
    // for w = x + iy, and the positive-eigenvalue block yields a unitary W.
    Eigen::MatrixXd B(2 * M, 2 * M);
    B.topLeftCorner(M, M) = S.real();
    B.topRightCorner(M, M) = S.imag();
    B.bottomLeftCorner(M, M) = S.imag();
    B.bottomRightCorner(M, M) = -S.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);

    W.resize(M, M);
    sigma.resize(M);
    // Eigenvalues come sorted ascending and in +/- pairs; take the top M,
    // reversed to get descending sigma >= 0.
    for (Eigen::Index i = 0; i < M; ++i) {
        const Eigen::Index col = 2 * M - 1 - i;
        sigma[i] = es.eigenvalues()[col];
        Eigen::VectorXd x = es.eigenvectors().col(col).head(M);
        Eigen::VectorXd y = es.eigenvectors().col(col).tail(M);
        Eigen::VectorXcd w = x + kI * y;  // already unit: |x|^2 + |y|^2 = 1
        W.col(i) = w;
    }
}

Eigen::MatrixXcd kernel_from_sinh(const Eigen::MatrixXcd& sinh_block) {
    Eigen::MatrixXcd W;
    Eigen::VectorXd sigma;
    takagi(sinh_block, W, sigma);
    const Eigen::Index M = sinh_block.rows();
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(M, M);
    for (Eigen::Index i = 0; i < M; ++i) {
        if (sigma[i] < 1e-14) continue;
        k += std::asinh(sigma[i]) * (W.col(i) * W.col(i).transpose());
    }
    return 0.5 * (k + k.transpose().eval());
}

SparseOp bogoliubov_generator(const Eigen::MatrixXcd& k,
                              std::shared_ptr<const FockBasis> basis) {
    check_symmetric(k);
    const FockBasis& b = *basis;
    const int M = b.mode_count();
    if (k.rows() != M)
        throw std::invalid_argument("bogoliubov: kernel/basis dimension mismatch");

    std::vector<Eigen::Triplet<cdouble>> trips;
    for (std::int64_t i = 0; i < b.dimension(); ++i) {
        const int* occ = b.occupation(i);
        for (int p = 0; p < M; ++p)
            for (int q = 0; q < M; ++q) {
                if (k(p, q) == cdouble{}) continue;
                // 1/2 k_pq a*_p a*_q
                const std::int64_t up_q = b.raise(i, q);
                if (up_q >= 0) {
                    const std::int64_t up = b.raise(up_q, p);
                    if (up >= 0) {
                        const double amp = std::sqrt(double(occ[q] + 1)) *
                                           std::sqrt(double(b.occupation(up_q)[p] + 1));
                        trips.emplace_back(up, i, 0.5 * k(p, q) * amp);
                    }
                }
                // -1/2 conj(k_pq) a_p a_q
                if (occ[q] > 0) {
                    const std::int64_t dn_q = b.lower(i, q);
                    if (b.occupation(dn_q)[p] > 0) {
                        const std::int64_t dn = b.lower(dn_q, p);
                        const double amp = std::sqrt(double(occ[q])) *
                                           std::sqrt(double(b.occupation(dn_q)[p]));
                        trips.emplace_back(dn, i, -0.5 * std::conj(k(p, q)) * amp);
                    }
                }
            }
    }
    SparseOp X(b.dimension(), b.dimension());
    X.setFromTriplets(trips.begin(), trips.end());
    return X;
}

double bogoliubov_hs_budget(int particle_cutoff) {
    // Pair amplitudes decay like ||k||^n across sectors; this keeps the top
    // sector below ~1e-8.
    return std::pow(10.0, -8.0 / std::max(particle_cutoff, 1));
}

FockVector apply_bogoliubov(const Eigen::MatrixXcd& k, const FockVector& psi,
                            const ExpmvOptions& opt) {
    check_symmetric(k);
    if (k.norm() > bogoliubov_hs_budget(psi.basis->particle_cutoff()))
        throw std::runtime_error(
            "bogoliubov: kernel HS norm exceeds the leak budget for this cutoff");
    SparseOp H = SparseOp(kI * bogoliubov_generator(k, psi.basis));
    FockVector out = psi;
    out.amplitudes = expmv_hermitian(H, 1.0, psi.amplitudes, opt);
    out.leak += out.top_sector_norm2();
    return out;
}

Eigen::MatrixXcd bogoliubov_dense(const Eigen::MatrixXcd& k,
                                  std::shared_ptr<const FockBasis> basis) {
    Eigen::MatrixXcd H = kI * Eigen::MatrixXcd(bogoliubov_generator(k, basis));
    return dense_unitary(H, 1.0);
}

} // namespace boselab
