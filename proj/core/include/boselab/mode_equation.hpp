#pragma once

#include <vector>

#include "boselab/correlation_kernel.hpp"
#include "boselab/mode_basis.hpp"

namespace boselab {

/// Galerkin condensate equation in the plane-wave basis:
///   i phi_m' = eps_m phi_m + sum_{qrs} W_mqrs conj(phi_q) phi_r phi_s
///              + (1/N) C_m[phi]
/// with W_mqrs = N V_mqrs = hat_W(k_m - k_r) delta_{m+q,r+s} / L the O(1)
/// pair tensor.  The optional correction C_m carries the Wick contractions of
/// the correlation structure (its Bogoliubov frame blocks C, S at kernel
/// k(phi)):
///   C_m = sum_{qrs} W_mqrs [ conj(phi_q) (C S)_{rs}
///                            + phi_r (S S†)_{sq} + phi_s (S S†)_{rq} ].
/// With the zero kernel this is the plain Hartree flow the mean-field theorem
/// compares against.
struct ModeEquation {
    Eigen::VectorXd kinetic;           // eps_p = |k_p|^2
    Eigen::VectorXd pair_transform_N;  // N * hat_V(2 pi dm / L), index dm+(M-1)
    double box_length = 0.0;
    double scale_N = 1.0;
    ModeKernelBuilder kernel;  // zero-kernel builder for plain Hartree

    int mode_count() const { return static_cast<int>(kinetic.size()); }
    double tensor_N(int p, int q, int r, int s) const;  // W_pqrs with delta
};

/// Time derivative phi' = -i (RHS above).
Eigen::VectorXcd mode_rhs(const ModeEquation& eq, const Eigen::VectorXcd& phi);

/// Fixed-step RK4 trajectory with per-step dense output (cubic Hermite).
struct ModeTrajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
    std::vector<Eigen::VectorXcd> derivs;

    Eigen::VectorXcd at(double t) const;
    const Eigen::VectorXcd& front() const { return states.front(); }
    const Eigen::VectorXcd& back() const { return states.back(); }
};

ModeTrajectory evolve_modes(const ModeEquation& eq, const Eigen::VectorXcd& phi0,
                            double t_final, double dt);

/// Trajectory covering [t_min, t_max] with phi(0) = phi0 (t_min <= 0), so
/// centered finite differences near t = 0 stay inside the grid.
ModeTrajectory evolve_modes_range(const ModeEquation& eq, const Eigen::VectorXcd& phi0,
                                  double t_min, double t_max, double dt);

} // namespace boselab
