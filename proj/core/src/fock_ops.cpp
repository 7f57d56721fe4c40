#include "boselab/fock_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace boselab {

namespace {

void check_mode(const FockVector& psi, int p) {
    if (p < 0 || p >= psi.basis->mode_count())
        throw std::invalid_argument("fock_ops: mode index out of range");
}

void check_f(const FockVector& psi, const Eigen::VectorXcd& f) {
    if (f.size() != psi.basis->mode_count())
        throw std::invalid_argument("fock_ops: mode-vector dimension mismatch");
}

}  // namespace

FockVector mode_annihilate(const FockVector& psi, int p) {
    check_mode(psi, p);
    const FockBasis& b = *psi.basis;
    FockVector out(psi.basis);
    out.leak = psi.leak;
    for (std::int64_t i = 0; i < b.dimension(); ++i) {
        const cdouble c = psi.amplitudes[i];
        if (c == cdouble{}) continue;
        const std::int64_t j = b.lower(i, p);
        if (j >= 0) out.amplitudes[j] += std::sqrt(double(b.occupation(i)[p])) * c;
    }
    return out;
}

FockVector mode_create(const FockVector& psi, int p) {
    check_mode(psi, p);
    const FockBasis& b = *psi.basis;
    FockVector out(psi.basis);
    out.leak = psi.leak;
    for (std::int64_t i = 0; i < b.dimension(); ++i) {
        const cdouble c = psi.amplitudes[i];
        if (c == cdouble{}) continue;
        const std::int64_t j = b.raise(i, p);
        const double amp = std::sqrt(double(b.occupation(i)[p] + 1));
        if (j >= 0)
            out.amplitudes[j] += amp * c;
        else
            out.leak += std::norm(amp * c);
    }
    return out;
}

FockVector apply_annihilation(const Eigen::VectorXcd& f, const FockVector& psi) {
    check_f(psi, f);
    const FockBasis& b = *psi.basis;
    FockVector out(psi.basis);
    out.leak = psi.leak;
    const int M = b.mode_count();
    for (std::int64_t i = 0; i < b.dimension(); ++i) {
        const cdouble c = psi.amplitudes[i];
        if (c == cdouble{}) continue;
        const int* occ = b.occupation(i);
        for (int p = 0; p < M; ++p) {
            if (occ[p] == 0) continue;
            out.amplitudes[b.lower(i, p)] +=
                std::conj(f[p]) * std::sqrt(double(occ[p])) * c;
        }
    }
    return out;
}

FockVector apply_creation(const Eigen::VectorXcd& f, const FockVector& psi) {
    check_f(psi, f);
    const FockBasis& b = *psi.basis;
    FockVector out(psi.basis);
    out.leak = psi.leak;
    const int M = b.mode_count();
    for (std::int64_t i = 0; i < b.dimension(); ++i) {
        const cdouble c = psi.amplitudes[i];
        if (c == cdouble{}) continue;
        const int* occ = b.occupation(i);
        if (b.total_occupation(i) == b.particle_cutoff()) {
            // Whole image lies past the cutoff: a*(f) adds one particle.
            double w2 = 0.0;
            for (int p = 0; p < M; ++p) w2 += std::norm(f[p]) * (occ[p] + 1);
            out.leak += w2 * std::norm(c);
            continue;
        }
        for (int p = 0; p < M; ++p)
            out.amplitudes[b.raise(i, p)] += f[p] * std::sqrt(double(occ[p] + 1)) * c;
    }
    return out;
}

SparseOp annihilator(std::shared_ptr<const FockBasis> basis, int p) {
    const FockBasis& b = *basis;
    std::vector<Eigen::Triplet<cdouble>> trips;
    for (std::int64_t i = 0; i < b.dimension(); ++i) {
        const std::int64_t j = b.lower(i, p);
        if (j >= 0) trips.emplace_back(j, i, std::sqrt(double(b.occupation(i)[p])));
    }
    SparseOp A(b.dimension(), b.dimension());
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

SparseOp creator(std::shared_ptr<const FockBasis> basis, int p) {
    return SparseOp(annihilator(std::move(basis), p).adjoint());
}

SparseOp second_quantize(const Eigen::MatrixXcd& O,
                         std::shared_ptr<const FockBasis> basis) {
    const FockBasis& b = *basis;
    const int M = b.mode_count();
    if (O.rows() != M || O.cols() != M)
        throw std::invalid_argument("second_quantize: operator dimension mismatch");

    std::vector<Eigen::Triplet<cdouble>> trips;
    for (std::int64_t i = 0; i < b.dimension(); ++i) {
        const int* occ = b.occupation(i);
        for (int q = 0; q < M; ++q) {
            if (occ[q] == 0) continue;
            const std::int64_t mid = b.lower(i, q);
            const double sq = std::sqrt(double(occ[q]));
            const int* mocc = b.occupation(mid);
            for (int p = 0; p < M; ++p) {
                if (O(p, q) == cdouble{}) continue;
                const std::int64_t j = b.raise(mid, p);
                trips.emplace_back(j, i, O(p, q) * sq * std::sqrt(double(mocc[p] + 1)));
            }
        }
    }
    SparseOp A(b.dimension(), b.dimension());
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

Eigen::VectorXd number_diagonal(const FockBasis& basis) {
    Eigen::VectorXd d(basis.dimension());
    for (std::int64_t i = 0; i < basis.dimension(); ++i)
        d[i] = basis.total_occupation(i);
    return d;
}

Eigen::MatrixXcd reduced_density_1(const FockVector& psi) {
    const int M = psi.basis->mode_count();
    std::vector<FockVector> lowered;
    lowered.reserve(M);
    for (int p = 0; p < M; ++p) lowered.push_back(mode_annihilate(psi, p));
    Eigen::MatrixXcd gamma(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
            gamma(i, j) = lowered[j].amplitudes.dot(lowered[i].amplitudes);
    return 0.5 * (gamma + gamma.adjoint().eval());
}

double trace_norm_distance(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument("trace_norm_distance: dimension mismatch");
    Eigen::MatrixXcd D = A - B;
    if ((D - D.adjoint().eval()).norm() > 1e-8 * (1.0 + D.norm()))
        throw std::invalid_argument("trace_norm_distance: inputs must be Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(D, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

} // namespace boselab
