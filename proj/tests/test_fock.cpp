#include <cmath>
#include <memory>
#include <random>

#include <doctest.h>

#include "boselab/fock_ops.hpp"
#include "boselab/weyl.hpp"

using namespace boselab;

namespace {

Eigen::VectorXcd random_modes(int M, unsigned seed, double scale = 1.0) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd f(M);
    for (int p = 0; p < M; ++p) f[p] = cdouble(g(rng), g(rng));
    return scale * f / f.norm();
}

FockVector random_state(std::shared_ptr<const FockBasis> basis, unsigned seed,
                        int max_sector) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    FockVector psi(basis);
    const std::int64_t top = basis->sector_offset(max_sector + 1);
    for (std::int64_t i = 0; i < top; ++i)
        psi.amplitudes[i] = cdouble(g(rng), g(rng));
    psi.normalize();
    return psi;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace

TEST_CASE("basis dimensions and graded-lex ordering") {
    CHECK(FockBasis(1, 2).dimension() == 3);
    CHECK(FockBasis(2, 2).dimension() == 6);
    FockBasis b(3, 4);
    CHECK(b.dimension() == 35);  // C(7, 3)

    // Vacuum first; totals nondecreasing; sector sizes = compositions.
    CHECK(b.total_occupation(0) == 0);
    for (std::int64_t i = 1; i < b.dimension(); ++i)
        CHECK(b.total_occupation(i) >= b.total_occupation(i - 1));
    for (int n = 0; n <= 4; ++n)
        CHECK(b.sector_size(n) == FockBasis::compositions(n, 3));

    // index_of inverts the enumeration.
    for (std::int64_t i = 0; i < b.dimension(); ++i)
        CHECK(b.index_of(b.occupation(i)) == i);

    // Lowering and raising tables are mutually consistent.
    for (std::int64_t i = 0; i < b.dimension(); ++i)
        for (int p = 0; p < 3; ++p) {
            const std::int64_t j = b.raise(i, p);
            if (j >= 0) CHECK(b.lower(j, p) == i);
            const std::int64_t k = b.lower(i, p);
            if (k >= 0) CHECK(b.raise(k, p) == i);
        }
}

TEST_CASE("low-sector indices coincide across particle cutoffs") {
    FockBasis small(3, 6), big(3, 12);
    for (std::int64_t i = 0; i < small.dimension(); ++i) {
        CHECK(big.total_occupation(i) == small.total_occupation(i));
        for (int p = 0; p < 3; ++p)
            CHECK(big.occupation(i)[p] == small.occupation(i)[p]);
    }
}

TEST_CASE("canonical commutation relations hold below the cutoff") {
    auto basis = std::make_shared<FockBasis>(3, 12);
    for (unsigned seed = 0; seed < 100; ++seed) {
        auto f = random_modes(3, 2 * seed + 1, 1.0 + 0.1 * (seed % 5));
        auto g = random_modes(3, 2 * seed + 2, 0.5 + 0.05 * (seed % 7));
        FockVector psi = random_state(basis, 1000 + seed, 10);  // sectors <= n_max - 2

        FockVector lhs = apply_annihilation(f, apply_creation(g, psi));
        FockVector rhs = apply_creation(g, apply_annihilation(f, psi));
        const cdouble ip = f.dot(g);  // <f, g>
        Eigen::VectorXcd resid = lhs.amplitudes - rhs.amplitudes - ip * psi.amplitudes;
        CHECK(resid.norm() < 1e-12);
        CHECK(lhs.leak == 0.0);  // creation from sectors <= n_max - 1 never truncates
    }
}

TEST_CASE("annihilation kills the vacuum") {
    auto basis = std::make_shared<FockBasis>(3, 5);
    FockVector vac = FockVector::vacuum(basis);
    auto f = random_modes(3, 4);
    CHECK(apply_annihilation(f, vac).amplitudes.norm() == 0.0);
}

TEST_CASE("repeated creation builds the normalized n-particle product state") {
    auto basis = std::make_shared<FockBasis>(3, 8);
    auto f = random_modes(3, 9);
    FockVector psi = FockVector::vacuum(basis);
    const int n = 4;
    for (int k = 0; k < n; ++k) psi = apply_creation(f, psi);
    CHECK(psi.norm() == doctest::Approx(std::sqrt(std::tgamma(n + 1.0))).epsilon(1e-12));

    // Amplitudes carry the multinomial structure sqrt(n!/prod n_p!) prod f^n_p.
    psi.amplitudes /= std::sqrt(std::tgamma(n + 1.0));
    const FockBasis& b = *basis;
    for (std::int64_t i = b.sector_offset(n); i < b.sector_offset(n + 1); ++i) {
        const int* occ = b.occupation(i);
        double lw = log_factorial(n);
        cdouble expect{1.0, 0.0};
        for (int p = 0; p < 3; ++p) {
            lw -= log_factorial(occ[p]);
            expect *= std::pow(f[p], occ[p]);
        }
        expect *= std::exp(0.5 * lw);
        CHECK(std::abs(psi.amplitudes[i] - expect) < 1e-12);
    }
}

TEST_CASE("smeared annihilation obeys the number bound") {
    auto basis = std::make_shared<FockBasis>(3, 10);
    auto f = random_modes(3, 13, 2.0);
    for (unsigned seed = 0; seed < 10; ++seed) {
        FockVector psi = random_state(basis, seed, 10);
        FockVector a_psi = apply_annihilation(f, psi);
        double n_half = 0.0;  // ||N^{1/2} psi||^2
        for (int s = 0; s <= 10; ++s) n_half += s * psi.sector_norm2(s);
        CHECK(a_psi.norm() <= f.norm() * std::sqrt(n_half) + 1e-12);
    }
}

TEST_CASE("second quantization of the identity is the number operator") {
    auto basis = std::make_shared<FockBasis>(3, 6);
    SparseOp N = second_quantize(Eigen::MatrixXcd::Identity(3, 3), basis);
    Eigen::VectorXd diag = number_diagonal(*basis);
    Eigen::MatrixXcd dense(N);
    CHECK((dense - Eigen::MatrixXcd(diag.cast<cdouble>().asDiagonal())).norm() < 1e-13);
}

TEST_CASE("second quantization is Hermitian and sector-bounded") {
    auto basis = std::make_shared<FockBasis>(3, 8);
    std::mt19937 rng(17);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd O(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) O(i, j) = cdouble(g(rng), g(rng));
    O = (O + O.adjoint().eval()) / 2.0;

    SparseOp dG = second_quantize(O, basis);
    Eigen::MatrixXcd dense(dG);
    CHECK((dense - dense.adjoint()).norm() < 1e-12);

    // |<dGamma(O)>| <= ||O||_op <N> on random states.
    const double op_norm =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(O).eigenvalues().cwiseAbs().maxCoeff();
    for (unsigned seed = 0; seed < 5; ++seed) {
        FockVector psi = random_state(basis, 40 + seed, 8);
        const double expect = psi.amplitudes.dot(dG * psi.amplitudes).real();
        double n_mean = 0.0;
        for (int s = 0; s <= 8; ++s) n_mean += s * psi.sector_norm2(s);
        CHECK(std::abs(expect) <= op_norm * n_mean + 1e-12);
    }

    // Product state |n e_p>: <dGamma(O)> = n O_pp.
    FockVector prod = FockVector::vacuum(basis);
    for (int k = 0; k < 3; ++k) prod = mode_create(prod, 1);
    prod.normalize();
    const double expect = prod.amplitudes.dot(dG * prod.amplitudes).real();
    CHECK(expect == doctest::Approx(3.0 * O(1, 1).real()).epsilon(1e-12));
}

TEST_CASE("coherent states have the Poisson-product amplitudes") {
    auto f = random_modes(3, 31, 1.2);
    const int cutoff = weyl_cutoff_for(f.norm());
    CHECK(cutoff >= f.squaredNorm() + 6.0 * f.norm() - 1.0);
    // Headroom past the documented budget so the eigenvalue identity, which
    // probes one sector above the Poisson tail, holds to tight tolerance.
    auto basis = std::make_shared<FockBasis>(3, cutoff + 6);
    FockVector psi = coherent_state(f, basis);

    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(psi.leak < 1e-8);

    const FockBasis& b = *basis;
    const double pref = std::exp(-0.5 * f.squaredNorm());
    for (std::int64_t i = 0; i < b.sector_offset(5); ++i) {
        const int* occ = b.occupation(i);
        cdouble expect{pref, 0.0};
        for (int p = 0; p < 3; ++p)
            expect *= std::pow(f[p], occ[p]) / std::sqrt(std::tgamma(occ[p] + 1.0));
        CHECK(std::abs(psi.amplitudes[i] - expect) < 1e-8);
    }

    // <N> = ||f||^2 and the eigenvalue property a_p psi = f_p psi.
    double n_mean = 0.0;
    for (int s = 0; s <= cutoff; ++s) n_mean += s * psi.sector_norm2(s);
    CHECK(n_mean == doctest::Approx(f.squaredNorm()).epsilon(1e-6));
    for (int p = 0; p < 3; ++p) {
        FockVector ap = mode_annihilate(psi, p);
        CHECK((ap.amplitudes - f[p] * psi.amplitudes).norm() < 1e-6);
    }
}

TEST_CASE("Weyl operators are unitary and shift the ladder operators") {
    auto f = random_modes(2, 8, 0.8);
    auto basis = std::make_shared<FockBasis>(2, 22);
    Eigen::MatrixXcd W = weyl_dense(f, basis);

    // Unitarity on the truncated space is exact (projected generator is
    // anti-Hermitian).
    CHECK((W.adjoint() * W - Eigen::MatrixXcd::Identity(W.rows(), W.cols())).norm() <
          1e-10);

    // W(f)* a_p W(f) = a_p + f_p on low sectors.
    const std::int64_t low = basis->sector_offset(6);
    for (int p = 0; p < 2; ++p) {
        Eigen::MatrixXcd A(annihilator(basis, p));
        Eigen::MatrixXcd shifted = W.adjoint() * A * W;
        Eigen::MatrixXcd expect =
            A + f[p] * Eigen::MatrixXcd::Identity(A.rows(), A.cols());
        CHECK((shifted - expect).topLeftCorner(low, low).norm() < 1e-7);
    }
}

TEST_CASE("creation past the cutoff is reported as leak") {
    auto basis = std::make_shared<FockBasis>(2, 3);
    FockVector top(basis);
    std::vector<int> occ = {2, 1};
    top.amplitudes[basis->index_of(occ)] = 1.0;
    FockVector up = mode_create(top, 0);
    CHECK(up.amplitudes.norm() == 0.0);
    CHECK(up.leak == doctest::Approx(3.0));  // (sqrt(n_p + 1))^2 = 3
}

TEST_CASE("one-particle reduced density") {
    auto basis = std::make_shared<FockBasis>(3, 16);

    CHECK(reduced_density_1(FockVector::vacuum(basis)).norm() == 0.0);

    auto f = random_modes(3, 77, 0.9);
    FockVector coh = coherent_state(f, basis);
    Eigen::MatrixXcd gamma = reduced_density_1(coh);
    CHECK((gamma - f * f.adjoint()).norm() < 1e-7);

    // trace gamma = <N> = sum_s s ||psi_s||^2 for any state.
    FockVector psi = random_state(basis, 5, 10);
    gamma = reduced_density_1(psi);
    double n_mean = 0.0;
    for (int s = 0; s <= 16; ++s) n_mean += s * psi.sector_norm2(s);
    CHECK(gamma.trace().real() == doctest::Approx(n_mean).epsilon(1e-12));
}

TEST_CASE("trace norm distance") {
    Eigen::MatrixXcd P1 = Eigen::MatrixXcd::Zero(3, 3), P2 = P1;
    P1(0, 0) = 1.0;
    P2(1, 1) = 1.0;
    CHECK(trace_norm_distance(P1, P2) == doctest::Approx(2.0).epsilon(1e-12));

    Eigen::VectorXd d1(3), d2(3);
    d1 << 1.0, -2.0, 0.5;
    d2 << 0.0, 1.0, 0.25;
    Eigen::MatrixXcd A = d1.cast<cdouble>().asDiagonal();
    Eigen::MatrixXcd B = d2.cast<cdouble>().asDiagonal();
    CHECK(trace_norm_distance(A, B) == doctest::Approx(4.25).epsilon(1e-12));

    CHECK_THROWS(trace_norm_distance(P1, Eigen::MatrixXcd::Random(3, 3)));
}
