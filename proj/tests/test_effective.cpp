#include <cmath>
#include <complex>

#include <doctest.h>

#include "boselab/effective.hpp"

using namespace boselab;

namespace {

const double kPi = 3.14159265358979323846;
const cdouble kI{0.0, 1.0};

GridField plane_wave(int mode, int n, double L) {
    GridField phi(1, n, L);
    for (int i = 0; i < n; ++i)
        phi.values[i] = std::exp(kI * (2.0 * kPi * mode / L) * phi.coordinate(i)) /
                        std::sqrt(L);
    return phi;
}

GridField bump_state(int n, double L) {
    GridField phi(1, n, L);
    for (int i = 0; i < n; ++i) {
        const double x = phi.coordinate(i);
        phi.values[i] = 1.0 + 0.3 * std::cos(2.0 * kPi * x / L) +
                        0.1 * std::sin(4.0 * kPi * x / L) * kI;
    }
    phi.normalize();
    return phi;
}

double max_diff(const GridField& a, const GridField& b) {
    return (a.values - b.values).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("free evolution of a plane wave is exact") {
    const double L = 2.0 * kPi;
    GridField phi0 = plane_wave(2, 32, L);
    EffectiveEquationSpec spec;
    spec.variant = EquationVariant::cubic_nls;
    spec.coupling = 0.0;

    auto traj = evolve(spec, phi0, 0.5, 0.01, 50);
    const double k2 = 4.0;  // mode 2 on the 2 pi torus
    GridField expect = phi0;
    expect.values *= std::exp(-kI * k2 * 0.5);
    CHECK(max_diff(traj.fields.back(), expect) < 1e-11);
}

TEST_CASE("cubic NLS conserves mass and energy") {
    const double L = 2.0 * kPi;
    GridField phi0 = bump_state(64, L);
    EffectiveEquationSpec spec;
    spec.variant = EquationVariant::cubic_nls;
    spec.coupling = 1.5;

    const double e0 = energy(phi0, spec, EnergyConvention::conserved);
    auto traj = evolve(spec, phi0, 1.0, 2.5e-4, 400);
    for (const auto& f : traj.fields) {
        CHECK(std::abs(f.norm() - 1.0) < 1e-12);
        CHECK(std::abs(energy(f, spec, EnergyConvention::conserved) - e0) < 1e-7);
    }
}

TEST_CASE("Strang splitting is second order in dt") {
    const double L = 2.0 * kPi;
    GridField phi0 = bump_state(64, L);
    EffectiveEquationSpec spec;
    spec.variant = EquationVariant::cubic_nls;
    spec.coupling = 2.0;

    const double T = 0.5;
    auto ref = evolve(spec, phi0, T, T / 1024, 1024).fields.back();
    auto coarse = evolve(spec, phi0, T, T / 32, 32).fields.back();
    auto fine = evolve(spec, phi0, T, T / 64, 64).fields.back();
    const double ec = max_diff(coarse, ref);
    const double ef = max_diff(fine, ref);
    CHECK(ec / ef > 3.5);  // halving dt cuts the error ~4x
    CHECK(ec / ef < 4.6);
}

TEST_CASE("Hartree with an on-site kernel reduces to the local cubic equation") {
    const double L = 2.0 * kPi;
    const int n = 64;
    GridField phi0 = bump_state(n, L);
    const double g = 1.2;

    EffectiveEquationSpec local;
    local.variant = EquationVariant::cubic_nls;
    local.coupling = g;

    EffectiveEquationSpec hartree;
    hartree.variant = EquationVariant::hartree;
    hartree.convolution_kernel = Eigen::VectorXd::Zero(n);
    hartree.convolution_kernel[0] = g / (L / n);  // grid delta of weight g

    auto a = evolve(local, phi0, 0.4, 1e-3, 400).fields.back();
    auto b = evolve(hartree, phi0, 0.4, 1e-3, 400).fields.back();
    CHECK(max_diff(a, b) < 1e-10);
}

TEST_CASE("periodized kernel sums images of a compact profile") {
    const double L = 4.0, V0 = 2.5, R = 0.3;
    auto profile = [=](double r) { return r < R ? V0 : 0.0; };
    auto k = periodized_kernel(profile, 1, 16, L);
    CHECK(k[0] == doctest::Approx(V0));   // x = 0
    CHECK(k[1] == doctest::Approx(V0));   // x = 0.25
    CHECK(k[15] == doctest::Approx(V0));  // x = 3.75 == -0.25 mod L
    CHECK(k[4] == doctest::Approx(0.0));  // x = 1
    CHECK(k[8] == doctest::Approx(0.0));  // x = 2
}

TEST_CASE("projected gradient matches a finite difference of the energy") {
    const double L = 2.0 * kPi;
    const int n = 32;
    GridField phi = bump_state(n, L);
    EffectiveEquationSpec spec;
    spec.variant = EquationVariant::cubic_nls;
    spec.coupling = 1.7;

    GridField d(1, n, L);
    for (int i = 0; i < n; ++i)
        d.values[i] = std::sin(3.0 * phi.coordinate(i)) +
                      kI * std::cos(phi.coordinate(i));

    for (auto conv : {EnergyConvention::gp_functional, EnergyConvention::conserved}) {
        GridField g = projected_gradient(phi, spec, conv);
        const double hv = phi.cell_volume();
        const double predicted = 2.0 * (hv * g.values.dot(d.values)).real();

        const double eps = 1e-6;
        GridField plus = phi, minus = phi;
        plus.values += eps * d.values;
        minus.values -= eps * d.values;
        plus.normalize();
        minus.normalize();
        const double fd =
            (energy(plus, spec, conv) - energy(minus, spec, conv)) / (2.0 * eps);
        CHECK(predicted == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("energy minimizer of the repulsive cubic equation is the flat state") {
    const double L = 2.0 * kPi;
    const int n = 32;
    GridField init = bump_state(n, L);
    EffectiveEquationSpec spec;
    spec.variant = EquationVariant::cubic_nls;
    spec.coupling = 3.0;

    GridField gs = minimize_energy(spec, init);
    const double e = energy(gs, spec, EnergyConvention::gp_functional);
    CHECK(e == doctest::Approx(spec.coupling / L).epsilon(1e-8));
    // Uniform modulus 1/sqrt(L).
    for (int i = 0; i < n; ++i)
        CHECK(std::abs(gs.values[i]) == doctest::Approx(1.0 / std::sqrt(L)).epsilon(1e-5));
    CHECK(projected_gradient(gs, spec, EnergyConvention::gp_functional).norm() < 1e-8);
}
