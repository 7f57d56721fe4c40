#pragma once

#include <Eigen/Dense>

#include "boselab/grid_field.hpp"

namespace boselab {

/// Orthonormal plane-wave basis u_m(x) = e^{i k_m x} / sqrt(L) on the 1D
/// torus, with M (odd) symmetric integer modes m = -(M-1)/2 .. (M-1)/2.
class ModeBasis {
public:
    ModeBasis(int mode_count, double box_length);

    int size() const { return M_; }
    double box_length() const { return L_; }
    int mode_number(int p) const { return p - (M_ - 1) / 2; }
    double wavenumber(int p) const { return 2.0 * M_PI * mode_number(p) / L_; }
    /// Kinetic eigenvalues |k_p|^2.
    Eigen::VectorXd kinetic_diagonal() const;

    cdouble mode_function(int p, double x) const;

    /// Mode coefficients <u_p, phi> of a grid field (trapezoidal quadrature,
    /// exact for band-limited fields).
    Eigen::VectorXcd project(const GridField& phi) const;
    /// Synthesizes sum_p c_p u_p on a grid.
    GridField synthesize(const Eigen::VectorXcd& coeffs, int grid_points) const;

    /// Index of the mode with m_p + m_q = m_r + m_s partner, or -1.
    int momentum_partner(int p, int q, int r) const {
        const int m = mode_number(p) + mode_number(q) - mode_number(r);
        const int idx = m + (M_ - 1) / 2;
        return (idx >= 0 && idx < M_) ? idx : -1;
    }

private:
    int M_;
    double L_;
};

} // namespace boselab
