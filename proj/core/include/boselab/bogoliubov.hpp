#pragma once

#include "boselab/correlation_kernel.hpp"
#include "boselab/fock_ops.hpp"
#include "boselab/krylov.hpp"

namespace boselab {

/// (cosh_k, sinh_k) blocks of a Bogoliubov transformation: under conjugation
/// by T(k), a(f) -> a(C f) + a*(S f-bar).  C is Hermitian PSD, S symmetric,
/// C C† - S S† = 1.
struct BogoliubovFrame {
    Eigen::MatrixXcd cosh_block;
    Eigen::MatrixXcd sinh_block;

    double canonicity_defect() const;  // ||C C† - S S† - 1||
    double symmetry_defect() const;    // ||S Cᵀ - (S Cᵀ)ᵀ||
};

/// Frame blocks by the convergent series C = sum (k kbar)^n / (2n)!,
/// S = sum (k kbar)^n k / (2n+1)!.  k must be symmetric.
BogoliubovFrame bogoliubov_frame(const Eigen::MatrixXcd& k);

/// Takagi factorization of a complex symmetric matrix: S = W diag(sigma) Wᵀ
/// with W unitary and sigma >= 0 descending.
void takagi(const Eigen::MatrixXcd& S, Eigen::MatrixXcd& W, Eigen::VectorXd& sigma);

/// Symmetric kernel k with sinh_k equal to the given symmetric block
/// (inverse of bogoliubov_frame through the Takagi form k = W asinh(sigma) Wᵀ).
Eigen::MatrixXcd kernel_from_sinh(const Eigen::MatrixXcd& sinh_block);

/// Sparse anti-Hermitian generator X = 1/2 sum_pq (k_pq a*_p a*_q -
/// conj(k_pq) a_p a_q).
SparseOp bogoliubov_generator(const Eigen::MatrixXcd& k,
                              std::shared_ptr<const FockBasis> basis);

/// T(k) psi = exp(X) psi.  Rejects asymmetric kernels and Hilbert-Schmidt
/// norms past the leak budget for the basis cutoff.
FockVector apply_bogoliubov(const Eigen::MatrixXcd& k, const FockVector& psi,
                            const ExpmvOptions& opt = {});

/// Dense T(k) for oracle-sized bases.
Eigen::MatrixXcd bogoliubov_dense(const Eigen::MatrixXcd& k,
                                  std::shared_ptr<const FockBasis> basis);

/// Largest Hilbert-Schmidt norm admitted for a given particle cutoff (the
/// documented budget used by apply_bogoliubov).
double bogoliubov_hs_budget(int particle_cutoff);

} // namespace boselab
