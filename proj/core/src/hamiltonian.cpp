#include "boselab/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "boselab/mode_equation.hpp"
#include "boselab/weyl.hpp"

namespace boselab {

namespace {

/// hat_W(kappa) = int_{-L/2}^{L/2} W(|u|) e^{-i kappa u} du for the scaled
/// pair potential W(u) = N^{beta-1} V(N^beta u); even, so a cosine transform
/// over the (compact) support.
double pair_fourier(const RadialPotential& V, double N, double beta, double L,
                    double kappa) {
    const double stretch = std::pow(N, beta);
    const double upper = std::min(0.5 * L, V.support_radius() / stretch);
    const double prefactor = std::pow(N, beta - 1.0);
    auto integrand = [&](double u) { return V(stretch * u) * std::cos(kappa * u); };
    const double val = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, upper, 12, 1e-12);
    return 2.0 * prefactor * val;
}

}  // namespace

double ManyBodyHamiltonian::tensor(int p, int q, int r, int s) const {
    const int M = mode_count();
    if ((p + q) != (r + s)) return 0.0;  // symmetric mode window: deltas align
    return pair_transform[(p - r) + (M - 1)] / box_length;
}

ManyBodyHamiltonian assemble(std::shared_ptr<const FockBasis> basis,
                             const ModeBasis& modes, const RadialPotential& V,
                             double N, double beta) {
    if (beta < 0.0 || beta > 1.0)
        throw std::invalid_argument("assemble: beta must lie in [0, 1]");
    if (basis->mode_count() != modes.size())
        throw std::invalid_argument("assemble: basis/mode-count mismatch");

    ManyBodyHamiltonian H;
    H.basis = basis;
    H.scale_N = N;
    H.beta = beta;
    H.box_length = modes.box_length();
    H.kinetic_modes = modes.kinetic_diagonal();

    const int M = modes.size();
    H.pair_transform.resize(2 * M - 1);
    for (int dm = -(M - 1); dm <= M - 1; ++dm)
        H.pair_transform[dm + M - 1] =
            pair_fourier(V, N, beta, H.box_length, 2.0 * M_PI * dm / H.box_length);

    H.kinetic_part = kinetic_matrix(H, basis);
    H.interaction_part = interaction_matrix(H, basis);
    H.assembled = H.kinetic_part + H.interaction_part;
    return H;
}

SparseOp kinetic_matrix(const ManyBodyHamiltonian& H,
                        std::shared_ptr<const FockBasis> basis) {
    const FockBasis& b = *basis;
    const int M = H.mode_count();
    std::vector<Eigen::Triplet<cdouble>> trips;
    for (std::int64_t i = 0; i < b.dimension(); ++i) {
        const int* occ = b.occupation(i);
        double e = 0.0;
        for (int p = 0; p < M; ++p) e += occ[p] * H.kinetic_modes[p];
        if (e != 0.0) trips.emplace_back(i, i, e);
    }
    SparseOp K(b.dimension(), b.dimension());
    K.setFromTriplets(trips.begin(), trips.end());
    return K;
}

SparseOp interaction_matrix(const ManyBodyHamiltonian& H,
                            std::shared_ptr<const FockBasis> basis) {
    const FockBasis& b = *basis;
    const int M = H.mode_count();
    // 1/2 sum V_pqrs a*_p a*_q a_r a_s; number conserving, so every raise
    // stays inside the sector.
    std::vector<Eigen::Triplet<cdouble>> trips;
    for (std::int64_t i = 0; i < b.dimension(); ++i) {
        const int* occ = b.occupation(i);
        for (int s = 0; s < M; ++s) {
            if (occ[s] == 0) continue;
            const std::int64_t i1 = b.lower(i, s);
            const double amp_s = std::sqrt(double(occ[s]));
            const int* occ1 = b.occupation(i1);
            for (int r = 0; r < M; ++r) {
                if (occ1[r] == 0) continue;
                const std::int64_t i2 = b.lower(i1, r);
                const double amp_r = std::sqrt(double(occ1[r]));
                const int* occ2 = b.occupation(i2);
                for (int q = 0; q < M; ++q) {
                    const int p = r + s - q;  // momentum conservation
                    if (p < 0 || p >= M) continue;
                    const double v = H.tensor(p, q, r, s);
                    if (v == 0.0) continue;
                    const std::int64_t i3 = b.raise(i2, q);
                    const double amp_q = std::sqrt(double(occ2[q] + 1));
                    const std::int64_t i4 = b.raise(i3, p);
                    const double amp_p = std::sqrt(double(b.occupation(i3)[p] + 1));
                    trips.emplace_back(i4, i, 0.5 * v * amp_s * amp_r * amp_q * amp_p);
                }
            }
        }
    }
    SparseOp W(b.dimension(), b.dimension());
    W.setFromTriplets(trips.begin(), trips.end());
    return W;
}

FockVector evolve_state(const ManyBodyHamiltonian& H, const FockVector& psi0, double t,
                        const ExpmvOptions& opt) {
    if (psi0.basis != H.basis && psi0.basis->dimension() != H.basis->dimension())
        throw std::invalid_argument("evolve_state: basis mismatch");
    FockVector out = psi0;
    if (t == 0.0) return out;
    if (H.basis->dimension() <= 200) {
        out.amplitudes =
            dense_unitary(Eigen::MatrixXcd(H.assembled), t) * psi0.amplitudes;
        return out;
    }
    out.amplitudes = expmv_hermitian(H.assembled, t, psi0.amplitudes, opt);
    return out;
}

std::vector<ConvergenceRow> mean_field_convergence(
    const RadialPotential& V, const Eigen::VectorXcd& phi0,
    const std::vector<double>& N_sweep, const std::vector<double>& t_grid,
    const ModeBasis& modes, int extra_cutoff) {
    if (std::abs(phi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("mean_field_convergence: phi0 must be normalized");

    std::vector<ConvergenceRow> rows;
    for (double N : N_sweep) {
        const int cutoff = weyl_cutoff_for(std::sqrt(N)) + extra_cutoff;
        auto basis = std::make_shared<const FockBasis>(modes.size(), cutoff);
        const ManyBodyHamiltonian H = assemble(basis, modes, V, N, 0.0);

        // Hartree flow shares the O(1) pair transform N * hat_V.
        ModeEquation eq{modes.kinetic_diagonal(), N * H.pair_transform,
                        modes.box_length(), N, ModeKernelBuilder(modes)};
        const double t_max = *std::max_element(t_grid.begin(), t_grid.end());
        const ModeTrajectory traj =
            evolve_modes(eq, phi0, std::max(t_max, 1e-12), 1e-3);

        FockVector psi = coherent_state(std::sqrt(N) * phi0, basis);
        double t_prev = 0.0;
        for (double t : t_grid) {
            psi = evolve_state(H, psi, t - t_prev);
            t_prev = t;
            const Eigen::MatrixXcd gamma = reduced_density_1(psi);
            const Eigen::VectorXcd phi_t = traj.at(t);
            const Eigen::MatrixXcd target = N * (phi_t * phi_t.adjoint());
            const double dist = trace_norm_distance(gamma, target);
            rows.push_back({N, t, dist, dist / N, psi.leak + psi.top_sector_norm2()});
        }
    }
    return rows;
}

} // namespace boselab
