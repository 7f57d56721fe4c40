#pragma once

#include <functional>

#include "boselab/grid_field.hpp"
#include "boselab/mode_basis.hpp"
#include "boselab/scattering.hpp"

namespace boselab {

enum class KernelVariant { gp_product, ell_midpoint };

/// Symmetric pair-correlation kernel, projected onto the mode basis.
struct CorrelationKernel {
    KernelVariant variant = KernelVariant::gp_product;
    Eigen::MatrixXcd kernel_matrix;  // M x M, exactly symmetric
    double hs_norm = 0.0;            // Hilbert-Schmidt norm of the grid kernel
    double ell = 0.0;                // range cutoff (ell_midpoint only)
};

/// Grid-sampled two-point kernel on the 1D torus.
///   gp_product:   k(x,y) = -N w(N d(x,y)) phi(x) phi(y)
///   ell_midpoint: k(x,y) = -N w(d(x,y)) phi(mid(x,y))^2, zero for d > ell
/// where w is the omega profile of the supplied scattering object and d is
/// the torus distance.
Eigen::MatrixXcd kernel_on_grid(const GridField& phi, double N,
                                const ScatteringSolution& scat);
Eigen::MatrixXcd kernel_on_grid(const GridField& phi, double N, const NeumannCell& cell);

CorrelationKernel build_kernel(const GridField& phi, double N,
                               const ScatteringSolution& scat, const ModeBasis& modes);
CorrelationKernel build_kernel(const GridField& phi, double N, const NeumannCell& cell,
                               const ModeBasis& modes);

/// Exact mode-space kernel builder for trajectories: evaluates the same
/// kernels directly from mode amplitudes via the factorization
///   K_pq = -N sum_{a+b=p+q} phi_a phi_b * (omega transform term),
/// avoiding the grid entirely.  Agreement with the grid route is tested.
class ModeKernelBuilder {
public:
    /// ell_midpoint flavor from a 1D Neumann cell.
    ModeKernelBuilder(const ModeBasis& modes, double N, const NeumannCell& cell);
    /// gp_product flavor from a radial scattering profile.
    ModeKernelBuilder(const ModeBasis& modes, double N, const ScatteringSolution& scat);
    /// Zero kernel (mean-field pipeline).
    explicit ModeKernelBuilder(const ModeBasis& modes);

    Eigen::MatrixXcd operator()(const Eigen::VectorXcd& phi_modes) const;
    bool is_zero() const { return zero_; }

private:
    int M_;
    double L_;
    double N_ = 0.0;
    bool zero_ = true;
    KernelVariant variant_ = KernelVariant::ell_midpoint;
    // omega_hat_[p*M+q]: transform of the omega profile at the frequency the
    // (p,q) entry needs ( (k_p - k_q)/2 for ell_midpoint, k_p - k_a tabulated
    // per integer difference for gp_product ).
    Eigen::MatrixXd omega_hat_midpoint_;
    Eigen::VectorXd omega_hat_diff_;  // indexed by m_p - m_a + (M-1)
};

} // namespace boselab
