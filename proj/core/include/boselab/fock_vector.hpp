#pragma once

#include <memory>

#include "boselab/fock_basis.hpp"
#include "boselab/grid_field.hpp"  // cdouble

namespace boselab {

/// State on a truncated Fock basis.  `leak` accumulates the squared amplitude
/// pushed past the particle cutoff by creation-type operators; every
/// experiment reports it.
struct FockVector {
    std::shared_ptr<const FockBasis> basis;
    Eigen::VectorXcd amplitudes;
    double leak = 0.0;

    FockVector() = default;
    explicit FockVector(std::shared_ptr<const FockBasis> b)
        : basis(std::move(b)), amplitudes(Eigen::VectorXcd::Zero(basis->dimension())) {}

    double norm() const { return amplitudes.norm(); }
    void normalize();

    /// Squared norm of the component with total occupation exactly n.
    double sector_norm2(int n) const;
    /// Squared norm sitting in the top sector n_max (truncation diagnostic).
    double top_sector_norm2() const { return sector_norm2(basis->particle_cutoff()); }

    static FockVector vacuum(std::shared_ptr<const FockBasis> b);
};

} // namespace boselab
