#pragma once

#include <Eigen/Sparse>

#include "boselab/fock_vector.hpp"

namespace boselab {

using SparseOp = Eigen::SparseMatrix<cdouble>;

/// Single-mode ladder operators: a_p psi and a*_p psi with the usual sqrt(n)
/// factors.  Creation from the top sector is truncated; the dropped squared
/// amplitude is added to the result's leak.
FockVector mode_annihilate(const FockVector& psi, int p);
FockVector mode_create(const FockVector& psi, int p);

/// Smeared operators a(f) = sum_p conj(f_p) a_p and a*(f) = sum_p f_p a*_p,
/// so that [a(f), a*(g)] = <f, g>.
FockVector apply_annihilation(const Eigen::VectorXcd& f, const FockVector& psi);
FockVector apply_creation(const Eigen::VectorXcd& f, const FockVector& psi);

/// Sparse matrices of the single-mode ladder operators.
SparseOp annihilator(std::shared_ptr<const FockBasis> basis, int p);
SparseOp creator(std::shared_ptr<const FockBasis> basis, int p);

/// dGamma(O) = sum_pq O_pq a*_p a_q; number-conserving, Hermitian iff O is.
SparseOp second_quantize(const Eigen::MatrixXcd& O,
                         std::shared_ptr<const FockBasis> basis);

/// Diagonal of the total number operator dGamma(1).
Eigen::VectorXd number_diagonal(const FockBasis& basis);

/// One-particle reduced density gamma_ij = <Psi, a*_j a_i Psi> (the kernel
/// convention: a coherent state with amplitude f gives gamma = f f†).
Eigen::MatrixXcd reduced_density_1(const FockVector& psi);

/// Sum of absolute eigenvalues of A - B for Hermitian A, B.
double trace_norm_distance(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

} // namespace boselab
