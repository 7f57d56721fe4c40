#include <cmath>
#include <memory>
#include <random>

#include <doctest.h>

#include "boselab/fluctuations.hpp"

using namespace boselab;

namespace {

const cdouble kI{0.0, 1.0};

Eigen::VectorXcd zero_mode_data(int M, double excitation = 0.0) {
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(M);
    phi[(M - 1) / 2] = 1.0;
    if (excitation != 0.0) {
        phi[(M - 1) / 2 + 1] = excitation;
        phi[(M - 1) / 2 - 1] = excitation;
    }
    phi /= phi.norm();
    return phi;
}

double mode_energy(const ModeEquation& eq, const Eigen::VectorXcd& phi) {
    const int M = eq.mode_count();
    double e = 0.0;
    for (int p = 0; p < M; ++p) e += eq.kinetic[p] * std::norm(phi[p]);
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q)
            for (int r = 0; r < M; ++r)
                for (int s = 0; s < M; ++s) {
                    const double w = eq.tensor_N(p, q, r, s);
                    if (w == 0.0) continue;
                    e += 0.5 * w *
                         (std::conj(phi[p]) * std::conj(phi[q]) * phi[r] * phi[s])
                             .real();
                }
    return e;
}

Eigen::MatrixXcd random_symmetric(int M, unsigned seed, double scale) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd k(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) k(i, j) = cdouble(g(rng), g(rng));
    k = 0.5 * (k + k.transpose().eval());
    return scale * k / k.norm();
}

Eigen::MatrixXcd random_hermitian(int M, unsigned seed, double scale) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd a(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) a(i, j) = cdouble(g(rng), g(rng));
    a = 0.5 * (a + a.adjoint().eval());
    return scale * a / a.norm();
}

}  // namespace

TEST_CASE("condensate equation conserves mass and its Hamiltonian") {
    const int M = 3;
    const double L = 8.0, N = 4.0;
    ModeBasis modes(M, L);
    auto basis = std::make_shared<FockBasis>(M, 2);
    auto V = RadialPotential::square_well(2.0, 0.6);
    auto H = assemble(basis, modes, V, N, 0.0);

    ModeEquation eq{modes.kinetic_diagonal(), N * H.pair_transform, L, N,
                    ModeKernelBuilder(modes)};
    Eigen::VectorXcd phi0 = zero_mode_data(M, 0.3);
    auto traj = evolve_modes(eq, phi0, 1.0, 1e-3);

    const double e0 = mode_energy(eq, phi0);
    for (const auto& s : traj.states) {
        CHECK(std::abs(s.norm() - 1.0) < 1e-10);
    }
    CHECK(mode_energy(eq, traj.back()) == doctest::Approx(e0).epsilon(1e-9));

    // Pure condensate in the zero mode only dephases.
    auto flat = evolve_modes(eq, zero_mode_data(M), 0.5, 1e-3);
    CHECK(std::abs(std::abs(flat.back()[(M - 1) / 2]) - 1.0) < 1e-10);
    CHECK(std::abs(flat.back()[0]) < 1e-12);
}

TEST_CASE("two-sided trajectories interpolate through t = 0") {
    const int M = 3;
    ModeBasis modes(M, 8.0);
    auto basis = std::make_shared<FockBasis>(M, 2);
    auto V = RadialPotential::square_well(2.0, 0.6);
    auto H = assemble(basis, modes, V, 4.0, 0.0);
    ModeEquation eq{modes.kinetic_diagonal(), 4.0 * H.pair_transform, 8.0, 4.0,
                    ModeKernelBuilder(modes)};

    Eigen::VectorXcd phi0 = zero_mode_data(M, 0.2);
    auto traj = evolve_modes_range(eq, phi0, -0.1, 0.5, 1e-3);
    CHECK(traj.times.front() <= -0.1 + 1e-12);
    CHECK(traj.times.back() >= 0.5 - 1e-12);
    CHECK((traj.at(0.0) - phi0).norm() < 1e-12);

    // Backward and forward legs join smoothly: the flow from -h to +h agrees
    // with dense output.
    auto fwd = evolve_modes(eq, traj.at(-0.05), 0.1, 1e-4);
    CHECK((fwd.back() - traj.at(0.05)).norm() < 1e-9);
}

TEST_CASE("free fluctuation dynamics leaves the vacuum invariant") {
    const int M = 3;
    const double N = 4.0;
    ModeBasis modes(M, 8.0);
    const int cutoff = weyl_cutoff_for(std::sqrt(N));
    auto basis = std::make_shared<FockBasis>(M, cutoff);
    auto H = assemble(basis, modes, RadialPotential::zero(), N, 0.0);

    ModeEquation eq{modes.kinetic_diagonal(), Eigen::VectorXd::Zero(2 * M - 1),
                    8.0, N, ModeKernelBuilder(modes)};
    auto traj = evolve_modes_range(eq, zero_mode_data(M, 0.4), -0.1, 0.6, 1e-3);

    ModeKernelBuilder zero_kernel(modes);
    FockVector psi = fluctuation_state(H, traj, zero_kernel, 0.5);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(std::abs(psi.amplitudes[0]) - 1.0) < 1e-7);

    auto dec = extract_generator(H, traj, zero_kernel, 0.25);
    CHECK(dec.linear.norm() < 1e-7);
    CHECK(dec.pair_block.norm() < 1e-7);
    CHECK((dec.dGamma_block -
           Eigen::MatrixXcd(modes.kinetic_diagonal().cast<cdouble>().asDiagonal()))
              .norm() < 1e-6);
    CHECK(dec.residual_norm < 1e-6);
    CHECK(std::abs(dec.phase_imag) < 1e-7);
}

TEST_CASE("extraction is independent of the particle cutoff") {
    const int M = 3;
    const double N = 4.0;
    ModeBasis modes(M, 8.0);
    auto V = RadialPotential::square_well(1.5, 0.6);

    QuadraticGeneratorDecomposition decs[2];
    int which = 0;
    for (int extra : {0, 2}) {
        const int cutoff = weyl_cutoff_for(std::sqrt(N)) + extra;
        auto basis = std::make_shared<FockBasis>(M, cutoff);
        auto H = assemble(basis, modes, V, N, 0.0);
        ModeEquation eq{modes.kinetic_diagonal(), N * H.pair_transform, 8.0, N,
                        ModeKernelBuilder(modes)};
        auto traj = evolve_modes_range(eq, zero_mode_data(M, 0.3), -0.1, 0.5, 1e-3);
        decs[which++] = extract_generator(H, traj, ModeKernelBuilder(modes), 0.2);
    }
    // Agreement is limited by the finite-difference extraction step and the
    // leak of the conjugating unitaries past the cutoff.
    CHECK((decs[0].dGamma_block - decs[1].dGamma_block).norm() < 1e-6);
    CHECK((decs[0].pair_block - decs[1].pair_block).norm() < 1e-6);
    CHECK((decs[0].linear - decs[1].linear).norm() < 1e-6);
    CHECK(std::abs(decs[0].phase - decs[1].phase) < 1e-6);
}

TEST_CASE("linear generator term cancels on the matching trajectory") {
    const int M = 3;
    const double N = 4.0, beta = 0.5, L = 8.0;
    ModeBasis modes(M, L);
    auto V = RadialPotential::square_well(1.5, 0.7);
    auto cell = solve_neumann_cell_1d(V, N, beta, L / 4.0);
    ModeKernelBuilder kernel(modes, N, cell);

    const int cutoff = weyl_cutoff_for(std::sqrt(N)) + 2;
    auto basis = std::make_shared<FockBasis>(M, cutoff);
    auto H = assemble(basis, modes, V, N, beta);

    ModeEquation eq{modes.kinetic_diagonal(), N * H.pair_transform, L, N, kernel};
    auto traj = evolve_modes_range(eq, zero_mode_data(M, 0.3), -0.1, 0.5, 1e-3);
    auto dec = extract_generator(H, traj, kernel, 0.2);
    CHECK(dec.linear.norm() < 1e-6);

    // A 10% coupling perturbation in the trajectory breaks the cancellation.
    ModeEquation wrong = eq;
    wrong.pair_transform_N = 1.1 * eq.pair_transform_N;
    auto traj_wrong =
        evolve_modes_range(wrong, zero_mode_data(M, 0.3), -0.1, 0.5, 1e-3);
    auto dec_wrong = extract_generator(H, traj_wrong, kernel, 0.2);
    CHECK(dec_wrong.linear.norm() > 10.0 * dec.linear.norm());
}

TEST_CASE("quadratic flow with a constant generator matches dense evolution") {
    const int M = 2, n_max = 16;
    auto basis = std::make_shared<FockBasis>(M, n_max);

    QuadraticGeneratorDecomposition dec;
    dec.phase = 0.7;
    dec.linear = Eigen::VectorXcd::Zero(M);
    dec.dGamma_block = random_hermitian(M, 4, 0.8);
    dec.pair_block = random_symmetric(M, 5, 0.2);

    GeneratorSampler sampler = [&](double) { return dec; };
    const std::vector<double> grid = {0.0, 0.25, 0.5};
    auto flow = quadratic_evolve(sampler, basis, grid, 0.025);

    CHECK(flow.states.size() == 3);
    CHECK(flow.phase_integral[2] == doctest::Approx(0.35).epsilon(1e-12));
    CHECK((flow.states[0].amplitudes - FockVector::vacuum(basis).amplitudes).norm() ==
          0.0);

    Eigen::MatrixXcd Q(quadratic_generator_matrix(dec, basis));
    Eigen::VectorXcd dense =
        dense_unitary(Q, 0.5) * FockVector::vacuum(basis).amplitudes;
    CHECK((flow.states[2].amplitudes - dense).norm() < 1e-9);
    CHECK(std::abs(flow.states[2].norm() - 1.0) < 1e-10);
}

TEST_CASE("frame ODE reproduces the quadratic state's reduced density") {
    const int M = 2, n_max = 18;
    auto basis = std::make_shared<FockBasis>(M, n_max);

    // Time-dependent quadratic generator.
    GeneratorSampler sampler = [&](double t) {
        QuadraticGeneratorDecomposition dec;
        dec.phase = 0.0;
        dec.linear = Eigen::VectorXcd::Zero(M);
        dec.dGamma_block = (1.0 + 0.5 * t) * random_hermitian(M, 11, 0.6);
        dec.pair_block = std::cos(t) * random_symmetric(M, 12, 0.25);
        return dec;
    };

    const double T = 0.8;
    const std::vector<double> grid = {0.0, T};
    auto flow = quadratic_evolve(sampler, basis, grid, 0.005);
    BogoliubovFrame fr = propagate_frame(sampler, M, T, 0.001);

    CHECK(fr.canonicity_defect() < 1e-8);
    Eigen::MatrixXcd gamma = reduced_density_1(flow.states[1]);
    Eigen::MatrixXcd expect = fr.sinh_block * fr.sinh_block.adjoint();
    CHECK((gamma - expect).norm() < 1e-5);
}

TEST_CASE("fluctuation pipeline produces consistent small-N diagnostics") {
    const int M = 3;
    const double N = 2.0, beta = 0.5, L = 8.0;
    ModeBasis modes(M, L);
    auto V = RadialPotential::square_well(1.0, 0.7);
    auto cell = solve_neumann_cell_1d(V, N, beta, L / 4.0);
    ModeKernelBuilder kernel(modes, N, cell);

    FluctuationPipelineOptions opt;
    opt.t_final = 0.2;
    opt.samples = 2;
    opt.quad_dt = 0.05;

    auto run = run_fluctuation_pipeline(V, N, beta, modes, zero_mode_data(M, 0.2),
                                        kernel, opt);
    CHECK(run.times.size() == 3);
    CHECK(run.exact_states.size() == 3);
    CHECK(run.quadratic_states.size() == 3);

    for (const auto& psi : run.exact_states)
        CHECK(std::abs(psi.norm() - 1.0) < 1e-6);

    auto err = norm_approximation_error(run);
    CHECK(err[0] < 1e-6);  // identical at t = 0
    for (double e : err) CHECK(e < 0.5);

    // Dropping the phase cannot improve the comparison on average.
    FluctuationRun no_phase = run;
    std::fill(no_phase.phase_integral.begin(), no_phase.phase_integral.end(), 0.0);
    auto err_np = norm_approximation_error(no_phase);
    double with = 0.0, without = 0.0;
    for (std::size_t i = 0; i < err.size(); ++i) {
        with += err[i];
        without += err_np[i];
    }
    CHECK(with <= without + 1e-12);

    auto basis = std::make_shared<FockBasis>(
        M, weyl_cutoff_for(std::sqrt(N)));
    auto H = assemble(basis, modes, V, N, beta);
    auto rep = gronwall_diagnostics(run, H);
    CHECK(rep.n2_bound_holds);
    CHECK(rep.fitted_C > 0.0);
    for (double m : rep.N_expect) CHECK(m < 1.0);  // gentle coupling
}
