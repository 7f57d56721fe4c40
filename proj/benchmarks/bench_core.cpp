#include <memory>
#include <random>

#include <benchmark/benchmark.h>

#include "boselab/fluctuations.hpp"

using namespace boselab;

namespace {

Eigen::VectorXcd random_vector(Eigen::Index n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = cdouble(g(rng), g(rng));
    v.normalize();
    return v;
}

void bench_assemble(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    ModeBasis modes(3, 8.0);
    auto basis = std::make_shared<FockBasis>(3, n_max);
    const auto V = RadialPotential::square_well(2.0, 0.7);
    for (auto _ : state) {
        auto H = assemble(basis, modes, V, 8.0, 0.5);
        benchmark::DoNotOptimize(H.assembled);
    }
    state.SetLabel("dim=" + std::to_string(basis->dimension()));
}
BENCHMARK(bench_assemble)->Arg(12)->Arg(18)->Arg(25);

void bench_expmv(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    ModeBasis modes(3, 8.0);
    auto basis = std::make_shared<FockBasis>(3, n_max);
    const auto V = RadialPotential::square_well(2.0, 0.7);
    const auto H = assemble(basis, modes, V, 8.0, 0.5);
    const Eigen::VectorXcd v = random_vector(basis->dimension(), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(expmv_hermitian(H.assembled, 0.1, v));
    }
    state.SetLabel("dim=" + std::to_string(basis->dimension()));
}
BENCHMARK(bench_expmv)->Arg(12)->Arg(18)->Arg(25);

void bench_kernel_build(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    ModeBasis modes(M, 8.0);
    const auto V = RadialPotential::square_well(2.0, 0.7);
    const auto cell = solve_neumann_cell_1d(V, 8.0, 0.5, 2.0);
    const ModeKernelBuilder builder(modes, 8.0, cell);
    const Eigen::VectorXcd phi = random_vector(M, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(builder(phi));
    }
}
BENCHMARK(bench_kernel_build)->Arg(3)->Arg(7)->Arg(15);

void bench_extraction(benchmark::State& state) {
    const int M = 3;
    const double N = 4.0, L = 8.0;
    ModeBasis modes(M, L);
    const auto V = RadialPotential::square_well(1.5, 0.7);
    auto basis = std::make_shared<FockBasis>(M, weyl_cutoff_for(std::sqrt(N)) + 2);
    const auto H = assemble(basis, modes, V, N, 0.0);
    const ModeEquation eq{modes.kinetic_diagonal(), N * H.pair_transform, L, N,
                          ModeKernelBuilder(modes)};
    Eigen::VectorXcd phi0 = Eigen::VectorXcd::Zero(M);
    phi0[1] = 1.0;
    const auto traj = evolve_modes_range(eq, phi0, -0.1, 0.5, 1e-3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            extract_generator(H, traj, ModeKernelBuilder(modes), 0.2));
    }
    state.SetLabel("dim=" + std::to_string(basis->dimension()));
}
BENCHMARK(bench_extraction);

}  // namespace

BENCHMARK_MAIN();
