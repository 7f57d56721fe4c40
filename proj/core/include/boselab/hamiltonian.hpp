#pragma once

#include <vector>

#include "boselab/fock_ops.hpp"
#include "boselab/krylov.hpp"
#include "boselab/mode_basis.hpp"
#include "boselab/radial_potential.hpp"

namespace boselab {

/// Scaled many-body Hamiltonian dGamma(-Lap) + 1/2 sum V_pqrs a*_p a*_q a_r a_s
/// in the plane-wave basis on the 1D torus, with pair potential
/// N^{beta-1} V(N^beta (x-y)).  Number-conserving and Hermitian by
/// construction.
struct ManyBodyHamiltonian {
    std::shared_ptr<const FockBasis> basis;
    double scale_N = 1.0;
    double beta = 0.0;
    int dimension = 1;
    double box_length = 0.0;

    Eigen::VectorXd kinetic_modes;    // |k_p|^2 per mode
    /// Fourier transform of the scaled pair potential at k = 2 pi dm / L,
    /// indexed by dm + (M-1); tensor entries are hat_V[...] / L times the
    /// momentum delta.
    Eigen::VectorXd pair_transform;

    SparseOp kinetic_part;
    SparseOp interaction_part;
    SparseOp assembled;

    /// V_pqrs including the momentum-conservation delta.
    double tensor(int p, int q, int r, int s) const;
    int mode_count() const { return static_cast<int>(kinetic_modes.size()); }
};

ManyBodyHamiltonian assemble(std::shared_ptr<const FockBasis> basis,
                             const ModeBasis& modes, const RadialPotential& V,
                             double N, double beta);

/// The kinetic / interaction parts rebuilt over another (typically smaller)
/// basis with the same mode count; used for low-sector oracle matrices.
SparseOp kinetic_matrix(const ManyBodyHamiltonian& H,
                        std::shared_ptr<const FockBasis> basis);
SparseOp interaction_matrix(const ManyBodyHamiltonian& H,
                            std::shared_ptr<const FockBasis> basis);

/// e^{-i t H} psi0 by Krylov propagation; dense eigendecomposition below
/// dimension 200.
FockVector evolve_state(const ManyBodyHamiltonian& H, const FockVector& psi0, double t,
                        const ExpmvOptions& opt = {});

struct ConvergenceRow {
    double N;
    double t;
    double trace_distance;
    double relative_distance;
    double leak;
};

/// Mean-field (beta = 0) condensation test: coherent data W(sqrt(N) phi) Omega
/// evolved under H, compared in trace norm against N |phi_t><phi_t| with
/// phi_t from the mode-Galerkin Hartree flow.
std::vector<ConvergenceRow> mean_field_convergence(
    const RadialPotential& V, const Eigen::VectorXcd& phi0,
    const std::vector<double>& N_sweep, const std::vector<double>& t_grid,
    const ModeBasis& modes, int extra_cutoff = 0);

} // namespace boselab
