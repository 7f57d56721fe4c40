#include <cmath>
#include <memory>
#include <random>

#include <doctest.h>

#include "boselab/bogoliubov.hpp"

using namespace boselab;

namespace {

Eigen::MatrixXcd random_symmetric_kernel(int M, unsigned seed, double hs_norm) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd k(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) k(i, j) = cdouble(g(rng), g(rng));
    k = 0.5 * (k + k.transpose().eval());
    return hs_norm * k / k.norm();
}

}  // namespace

TEST_CASE("zero kernel gives the identity frame") {
    BogoliubovFrame fr = bogoliubov_frame(Eigen::MatrixXcd::Zero(3, 3));
    CHECK((fr.cosh_block - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-15);
    CHECK(fr.sinh_block.norm() == 0.0);
    CHECK(fr.canonicity_defect() < 1e-15);
}

TEST_CASE("frames are canonical and symmetric for random kernels") {
    for (unsigned seed = 0; seed < 20; ++seed) {
        auto k = random_symmetric_kernel(3, seed, 0.3);
        BogoliubovFrame fr = bogoliubov_frame(k);
        CHECK(fr.canonicity_defect() < 1e-12);
        CHECK(fr.symmetry_defect() < 1e-12);
        // sinh block is symmetric; cosh block Hermitian with spectrum >= 1.
        CHECK((fr.sinh_block - fr.sinh_block.transpose()).norm() < 1e-13);
        CHECK((fr.cosh_block - fr.cosh_block.adjoint()).norm() < 1e-13);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(fr.cosh_block);
        CHECK(es.eigenvalues().minCoeff() >= 1.0 - 1e-12);
    }
}

TEST_CASE("Takagi factorization of complex symmetric matrices") {
    for (unsigned seed = 0; seed < 10; ++seed) {
        auto S = random_symmetric_kernel(4, 100 + seed, 1.7);
        Eigen::MatrixXcd W;
        Eigen::VectorXd sigma;
        takagi(S, W, sigma);
        CHECK((W.adjoint() * W - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-11);
        for (int i = 0; i + 1 < 4; ++i) CHECK(sigma[i] >= sigma[i + 1] - 1e-14);
        CHECK(sigma.minCoeff() >= -1e-14);
        Eigen::MatrixXcd rebuilt = W * sigma.asDiagonal() * W.transpose();
        CHECK((rebuilt - S).norm() < 1e-11);
    }
}

TEST_CASE("kernel_from_sinh inverts bogoliubov_frame") {
    for (unsigned seed = 0; seed < 10; ++seed) {
        auto k = random_symmetric_kernel(3, 200 + seed, 0.4);
        BogoliubovFrame fr = bogoliubov_frame(k);
        Eigen::MatrixXcd recovered = kernel_from_sinh(fr.sinh_block);
        CHECK((recovered - k).norm() < 1e-10);
    }
}

TEST_CASE("conjugation identity on low sectors for 20 random kernels") {
    const int M = 2, n_max = 24;
    auto basis = std::make_shared<FockBasis>(M, n_max);
    const std::int64_t low = basis->sector_offset(6);

    std::vector<Eigen::MatrixXcd> ladders_a, ladders_c;
    for (int p = 0; p < M; ++p) {
        ladders_a.emplace_back(annihilator(basis, p));
        ladders_c.emplace_back(creator(basis, p));
    }

    for (unsigned seed = 0; seed < 20; ++seed) {
        auto k = random_symmetric_kernel(M, 300 + seed, 0.3);
        BogoliubovFrame fr = bogoliubov_frame(k);
        Eigen::MatrixXcd T = bogoliubov_dense(k, basis);
        CHECK((T.adjoint() * T - Eigen::MatrixXcd::Identity(T.rows(), T.cols())).norm() <
              1e-10);

        for (int p = 0; p < M; ++p) {
            Eigen::MatrixXcd conj_ap = T.adjoint() * ladders_a[p] * T;
            Eigen::MatrixXcd expect =
                Eigen::MatrixXcd::Zero(T.rows(), T.cols());
            for (int q = 0; q < M; ++q)
                expect += fr.cosh_block(p, q) * ladders_a[q] +
                          fr.sinh_block(p, q) * ladders_c[q];
            CHECK((conj_ap - expect).topLeftCorner(low, low).norm() < 1e-6);
        }
    }
}

TEST_CASE("quasi-free vacuum has reduced density S S-dagger") {
    const int M = 3, n_max = 16;
    auto basis = std::make_shared<FockBasis>(M, n_max);
    auto k = random_symmetric_kernel(M, 42, 0.25);
    BogoliubovFrame fr = bogoliubov_frame(k);

    FockVector psi = apply_bogoliubov(k, FockVector::vacuum(basis));
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(psi.leak < 1e-10);

    Eigen::MatrixXcd gamma = reduced_density_1(psi);
    Eigen::MatrixXcd expect = fr.sinh_block * fr.sinh_block.adjoint();
    CHECK((gamma - expect).norm() < 1e-7);

    // Only even sectors are populated.
    for (int s = 1; s < n_max; s += 2) CHECK(psi.sector_norm2(s) < 1e-20);
}

TEST_CASE("leak budget guards the cutoff") {
    CHECK(bogoliubov_hs_budget(8) == doctest::Approx(0.1));
    CHECK(bogoliubov_hs_budget(16) == doctest::Approx(std::pow(10.0, -0.5)));

    auto basis = std::make_shared<FockBasis>(2, 4);
    auto k = random_symmetric_kernel(2, 9, 1.5);  // far past the budget for n_max = 4
    CHECK_THROWS(apply_bogoliubov(k, FockVector::vacuum(basis)));

    // Asymmetric kernels are rejected outright.
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 1) = 0.1;
    CHECK_THROWS(apply_bogoliubov(bad, FockVector::vacuum(basis)));
}
