#include "boselab/weyl.hpp"

#include <cmath>
#include <stdexcept>

namespace boselab {

namespace {

const cdouble kI{0.0, 1.0};

void check_budget(const Eigen::VectorXcd& f, const FockBasis& basis) {
    if (f.size() != basis.mode_count())
        throw std::invalid_argument("weyl: mode-vector dimension mismatch");
    const double fn = f.norm();
    // Un-ceiled budget with slack: ||f|| often sits exactly on an integer
    // boundary (e.g. sqrt of an integer particle number), and callers probe
    // finite-difference perturbations of such amplitudes; neither may flip
    // the acceptance.  Half a sector of slack costs nothing against the
    // six-sector tail margin.
    if (basis.particle_cutoff() + 0.5 < fn * fn + 6.0 * fn + 6.0)
        throw std::runtime_error("weyl: particle cutoff too small for this amplitude");
}

}  // namespace

int weyl_cutoff_for(double f_norm) {
    // Poisson tail: P(n > ||f||^2 + 6||f|| + 6) stays below ~1e-10 across the
    // amplitude range used here, which keeps the truncation leak negligible.
    return static_cast<int>(std::ceil(f_norm * f_norm + 6.0 * f_norm)) + 6;
}

SparseOp weyl_generator(const Eigen::VectorXcd& f,
                        std::shared_ptr<const FockBasis> basis) {
    const FockBasis& b = *basis;
    std::vector<Eigen::Triplet<cdouble>> trips;
    const int M = b.mode_count();
    for (std::int64_t i = 0; i < b.dimension(); ++i) {
        const int* occ = b.occupation(i);
        for (int p = 0; p < M; ++p) {
            if (f[p] == cdouble{}) continue;
            const std::int64_t up = b.raise(i, p);
            if (up >= 0)
                trips.emplace_back(up, i, f[p] * std::sqrt(double(occ[p] + 1)));
            if (occ[p] > 0)
                trips.emplace_back(b.lower(i, p), i,
                                   -std::conj(f[p]) * std::sqrt(double(occ[p])));
        }
    }
    SparseOp X(b.dimension(), b.dimension());
    X.setFromTriplets(trips.begin(), trips.end());
    return X;
}

FockVector apply_weyl(const Eigen::VectorXcd& f, const FockVector& psi,
                      const ExpmvOptions& opt) {
    check_budget(f, *psi.basis);
    // exp(X) = exp(-i (iX)); the projected generator PXP stays exactly
    // anti-Hermitian, so iX is Hermitian and the evolution is unitary on the
    // truncated space.  The truncation error shows up as population stuck at
    // the top sector, which we record as leak.
    SparseOp H = SparseOp(kI * weyl_generator(f, psi.basis));
    FockVector out = psi;
    out.amplitudes = expmv_hermitian(H, 1.0, psi.amplitudes, opt);
    out.leak += out.top_sector_norm2();
    return out;
}

Eigen::MatrixXcd weyl_dense(const Eigen::VectorXcd& f,
                            std::shared_ptr<const FockBasis> basis) {
    Eigen::MatrixXcd H = kI * Eigen::MatrixXcd(weyl_generator(f, basis));
    return dense_unitary(H, 1.0);
}

FockVector coherent_state(const Eigen::VectorXcd& f,
                          std::shared_ptr<const FockBasis> basis,
                          const ExpmvOptions& opt) {
    return apply_weyl(f, FockVector::vacuum(std::move(basis)), opt);
}

} // namespace boselab
