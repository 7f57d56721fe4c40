#pragma once

#include "boselab/fock_ops.hpp"
#include "boselab/krylov.hpp"

namespace boselab {

/// Smallest particle cutoff that keeps the truncation leak of W(f) below
/// ~1e-8 (sizing rule n_max >= ||f||^2 + 6 ||f||, Poisson-tail heuristic
/// validated in the tests).
int weyl_cutoff_for(double f_norm);

/// Sparse anti-Hermitian generator X = a*(f) - a(f).
SparseOp weyl_generator(const Eigen::VectorXcd& f,
                        std::shared_ptr<const FockBasis> basis);

/// W(f) psi = exp(a*(f) - a(f)) psi.  Throws if the basis cutoff violates the
/// sizing rule for ||f|| (leak budget exceeded).
FockVector apply_weyl(const Eigen::VectorXcd& f, const FockVector& psi,
                      const ExpmvOptions& opt = {});

/// Dense W(f) for oracle-sized bases.
Eigen::MatrixXcd weyl_dense(const Eigen::VectorXcd& f,
                            std::shared_ptr<const FockBasis> basis);

/// Coherent state W(f) vacuum.
FockVector coherent_state(const Eigen::VectorXcd& f,
                          std::shared_ptr<const FockBasis> basis,
                          const ExpmvOptions& opt = {});

} // namespace boselab
