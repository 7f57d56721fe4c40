#include "boselab/mode_basis.hpp"

#include <stdexcept>

namespace boselab {

ModeBasis::ModeBasis(int mode_count, double box_length)
    : M_(mode_count), L_(box_length) {
    if (M_ < 1 || M_ % 2 == 0)
        throw std::invalid_argument("ModeBasis: mode count must be odd and positive");
    if (L_ <= 0.0) throw std::invalid_argument("ModeBasis: box length must be positive");
}

Eigen::VectorXd ModeBasis::kinetic_diagonal() const {
    Eigen::VectorXd eps(M_);
    for (int p = 0; p < M_; ++p) eps[p] = wavenumber(p) * wavenumber(p);
    return eps;
}

cdouble ModeBasis::mode_function(int p, double x) const {
    return std::exp(cdouble(0.0, wavenumber(p) * x)) / std::sqrt(L_);
}

Eigen::VectorXcd ModeBasis::project(const GridField& phi) const {
    if (phi.dimension != 1)
        throw std::invalid_argument("ModeBasis::project: 1D fields only");
    const int n = phi.points_per_axis;
    Eigen::VectorXcd c(M_);
    const double h = phi.spacing();
    for (int p = 0; p < M_; ++p) {
        cdouble acc{0.0, 0.0};
        for (int i = 0; i < n; ++i)
            acc += std::conj(mode_function(p, phi.coordinate(i))) * phi.values[i];
        c[p] = h * acc;
    }
    return c;
}

GridField ModeBasis::synthesize(const Eigen::VectorXcd& coeffs, int grid_points) const {
    if (coeffs.size() != M_)
        throw std::invalid_argument("ModeBasis::synthesize: coefficient size mismatch");
    GridField out(1, grid_points, L_);
    for (int i = 0; i < grid_points; ++i) {
        cdouble v{0.0, 0.0};
        for (int p = 0; p < M_; ++p) v += coeffs[p] * mode_function(p, out.coordinate(i));
        out.values[i] = v;
    }
    return out;
}

} // namespace boselab
