#pragma once

#include <functional>

#include <Eigen/Sparse>

#include "boselab/grid_field.hpp"  // cdouble

namespace boselab {

struct ExpmvOptions {
    int krylov_dim = 30;
    double tolerance = 1e-12;  // per-substep local error target
    int max_substeps = 100000;
};

using HermitianApply = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

/// exp(-i tau H) v for Hermitian H, by Lanczos with full reorthogonalization
/// and adaptive substepping.  Norm-preserving by construction of the small
/// exponential.
Eigen::VectorXcd expmv_hermitian(const HermitianApply& apply_H, double tau,
                                 const Eigen::VectorXcd& v,
                                 const ExpmvOptions& opt = {});

Eigen::VectorXcd expmv_hermitian(const Eigen::SparseMatrix<cdouble>& H, double tau,
                                 const Eigen::VectorXcd& v,
                                 const ExpmvOptions& opt = {});

/// Dense exp(-i tau H) via eigendecomposition; the small-dimension oracle.
Eigen::MatrixXcd dense_unitary(const Eigen::MatrixXcd& H, double tau);

} // namespace boselab
