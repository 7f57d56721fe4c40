#pragma once

#include <vector>

#include "boselab/radial_potential.hpp"

namespace boselab {

/// Zero-energy scattering profile.  f is normalized so that f -> 1 at the
/// outer boundary; omega = 1 - f.  The canonical scattering length comes from
/// the integral identity 8*pi*a0 = int V f; the far-field asymptote fit is
/// kept as a cross-check.
struct ScatteringSolution {
    std::vector<double> radial_grid;
    std::vector<double> f_values;
    std::vector<double> omega_values;
    double scattering_length = 0.0;           // from the integral identity
    double scattering_length_farfield = 0.0;  // from r - u/u' at r_max
    double potential_support = 0.0;           // f = 1 - a0/r exactly beyond this

    double f(double r) const;
    double omega(double r) const;
};

/// Lowest Neumann eigenpair of the scaled two-body operator on a cell of
/// radius ell, with f = 1 (and f' = 0) at the cell boundary and f continued
/// by 1 outside.
struct NeumannCell {
    double ell = 0.0;
    double eigenvalue = 0.0;
    double scale_N = 0.0;
    double beta = 0.0;
    int dimension = 3;  // 3: radial ball, 1: interval [-ell, ell]
    std::vector<double> radial_grid;  // on [0, ell]
    std::vector<double> f_values;
    /// int N^{d beta} V(N^beta x) f(x) dx over the cell (d^dx measure).
    double coupling_integral = 0.0;

    double f(double r) const;   // 1 for r >= ell
    double omega(double r) const;  // 0 for r >= ell
};

struct ScatteringOptions {
    double ode_tolerance = 1e-10;
    double eigenvalue_tolerance = 1e-10;
    int output_points = 2001;
};

/// Solves (-Laplace + V/2) f = 0 radially with f -> 1 at infinity.
/// Requires r_max > V.support_radius and V >= 0.
ScatteringSolution solve_zero_energy(const RadialPotential& V, double r_max,
                                     const ScatteringOptions& opt = {});

/// Zero-energy problem for the scaled potential N^{3 beta - 1} V(N^beta x).
ScatteringSolution scaled_scattering_profile(const RadialPotential& V, double N,
                                             double beta, double r_max,
                                             const ScatteringOptions& opt = {});

/// 3D radial Neumann cell problem for [-Laplace + N^{3b-1} V(N^b .)/2].
NeumannCell solve_neumann_cell(const RadialPotential& V, double N, double beta,
                               double ell, const ScatteringOptions& opt = {});

/// 1D analog on [-ell, ell] (even sector) for [-d^2/dx^2 + N^{b-1} V(N^b .)/2],
/// feeding kernels for the 1D many-body runs.
NeumannCell solve_neumann_cell_1d(const RadialPotential& V, double N, double beta,
                                  double ell, const ScatteringOptions& opt = {});

/// int V(x) d^dx for the unscaled potential (d = 3 or 1).
double potential_integral(const RadialPotential& V, int dimension = 3);

} // namespace boselab
