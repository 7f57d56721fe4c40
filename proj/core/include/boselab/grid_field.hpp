#pragma once

#include <complex>
#include <Eigen/Dense>

namespace boselab {

using cdouble = std::complex<double>;

/// Complex field on a periodic uniform grid (1D or 3D), n points per axis.
/// 3D storage is row-major with the last axis fastest:
/// index = (ix * n + iy) * n + iz.
struct GridField {
    int dimension = 1;
    int points_per_axis = 0;
    double box_length = 0.0;
    Eigen::VectorXcd values;

    GridField() = default;
    GridField(int dim, int n, double L)
        : dimension(dim), points_per_axis(n), box_length(L) {
        if (dim != 1 && dim != 3)
            throw std::invalid_argument("GridField: dimension must be 1 or 3");
        if (n < 2 || (n & (n - 1)) != 0)
            throw std::invalid_argument("GridField: grid size must be a power of two");
        values = Eigen::VectorXcd::Zero(size());
    }

    Eigen::Index size() const {
        Eigen::Index s = points_per_axis;
        for (int d = 1; d < dimension; ++d) s *= points_per_axis;
        return s;
    }
    double spacing() const { return box_length / points_per_axis; }
    double cell_volume() const {
        double v = spacing();
        for (int d = 1; d < dimension; ++d) v *= spacing();
        return v;
    }
    /// L2 norm with the grid quadrature weight.
    double norm() const { return std::sqrt(cell_volume()) * values.norm(); }
    void normalize() {
        const double n = norm();
        if (n == 0.0) throw std::runtime_error("GridField: cannot normalize zero field");
        values /= n;
    }
    double coordinate(int i) const { return spacing() * i; }
};

/// Unitary-normalized DFT pair: forward returns coefficients c_k such that
/// values = sum_k c_k e^{i k.x}; backward inverts.
Eigen::VectorXcd fft_forward(const GridField& field);
Eigen::VectorXcd fft_forward(const Eigen::VectorXcd& values, int dim, int n);
Eigen::VectorXcd fft_backward(const Eigen::VectorXcd& coeffs, int dim, int n);

/// Signed integer mode index for FFT bin i (i in [0, n)).
inline int fft_mode(int i, int n) { return i < n / 2 ? i : i - n; }

/// Squared wavenumber |k|^2 for flat FFT index `idx`.
double fft_k2(Eigen::Index idx, int dim, int n, double box_length);

} // namespace boselab
