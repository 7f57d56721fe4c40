#include "boselab/scattering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

namespace boselab {

namespace {

constexpr double kPi = 3.14159265358979323846;

using State = std::array<double, 3>;  // u, u', quadrature
namespace ode = boost::numeric::odeint;

double interp(const std::vector<double>& grid, const std::vector<double>& vals, double r) {
    if (r <= grid.front()) return vals.front();
    if (r >= grid.back()) return vals.back();
    const double h = grid[1] - grid[0];
    auto i = static_cast<std::size_t>((r - grid.front()) / h);
    i = std::min(i, grid.size() - 2);
    const double w = (r - grid[i]) / h;
    return (1.0 - w) * vals[i] + w * vals[i + 1];
}

/// Integrates the radial system over [0, r_end], sampling (u, u') on a uniform
/// grid.  `rhs` supplies u'' and the quadrature integrand.  `break_r` marks the
/// potential support edge: the coefficients may jump there, so the integration
/// is split into two smooth legs with the edge on a step boundary (adaptive
/// error control assumes a smooth right-hand side within each step).  The left
/// leg evaluates the coefficients through their inside limit at the edge.
template <typename Rhs>
std::vector<State> integrate_radial(Rhs rhs, const State& y0, double r_end,
                                    int n_out, double tol, double break_r = 0.0) {
    std::vector<double> times(n_out);
    for (int i = 0; i < n_out; ++i) times[i] = r_end * i / (n_out - 1);

    std::vector<State> samples;
    samples.reserve(n_out);
    State y = y0;
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<State>());
    if (break_r > 0.0 && break_r < r_end) {
        const double eps = 1e-12 * r_end;
        const double inside = break_r * (1.0 - 1e-14);
        auto rhs_left = [&](const State& s, State& ds, double r) {
            rhs(s, ds, std::min(r, inside));
        };
        std::vector<double> left;
        for (double t : times)
            if (t < break_r - eps) left.push_back(t);
        const std::size_t kept = left.size();
        left.push_back(break_r);
        ode::integrate_times(stepper, rhs_left, y, left.begin(), left.end(),
                             break_r / (10.0 * n_out),
                             [&samples](const State& s, double) { samples.push_back(s); });
        const State at_break = samples.back();
        samples.resize(kept);
        for (double t : times)
            if (std::abs(t - break_r) <= eps) samples.push_back(at_break);

        std::vector<double> right{break_r};
        for (double t : times)
            if (t > break_r + eps) right.push_back(t);
        bool skip_first = true;
        y = at_break;
        ode::integrate_times(stepper, rhs, y, right.begin(), right.end(),
                             (r_end - break_r) / (10.0 * n_out),
                             [&](const State& s, double) {
                                 if (skip_first) {
                                     skip_first = false;
                                     return;
                                 }
                                 samples.push_back(s);
                             });
    } else {
        ode::integrate_times(stepper, rhs, y, times.begin(), times.end(),
                             r_end / (10.0 * n_out),
                             [&samples](const State& s, double) { samples.push_back(s); });
    }
    if (samples.size() != static_cast<std::size_t>(n_out))
        throw std::runtime_error("scattering: ODE integration did not converge");
    return samples;
}

RadialPotential scaled_3d(const RadialPotential& V, double N, double beta) {
    const double amp = std::pow(N, 3.0 * beta - 1.0);
    const double stretch = std::pow(N, beta);
    return RadialPotential([V, stretch](double r) { return V(stretch * r); },
                           V.support_radius() / stretch, amp);
}

RadialPotential scaled_1d(const RadialPotential& V, double N, double beta) {
    const double amp = std::pow(N, beta - 1.0);
    const double stretch = std::pow(N, beta);
    return RadialPotential([V, stretch](double r) { return V(stretch * r); },
                           V.support_radius() / stretch, amp);
}

/// Shoots the radial problem u'' = (W/2 - lambda) u with u(0)=0, u'(0)=1.
/// Quadrature component integrates `weight(r) * u(r)`.
std::vector<State> shoot_u(const RadialPotential& W, double lambda, double r_end,
                           int n_out, double tol,
                           const std::function<double(double)>& weight) {
    auto rhs = [&](const State& y, State& dy, double r) {
        dy[0] = y[1];
        dy[1] = (0.5 * W(r) - lambda) * y[0];
        dy[2] = weight ? weight(r) * y[0] : 0.0;
    };
    return integrate_radial(rhs, State{0.0, 1.0, 0.0}, r_end, n_out, tol,
                            W.support_radius());
}

/// Finds the smallest root of g in [0, inf) by forward scan plus bisection.
double smallest_root(const std::function<double(double)>& g, double scan_step,
                     int max_scan, double tol) {
    double a = 0.0, ga = g(a);
    if (std::abs(ga) <= tol) return 0.0;
    if (ga < 0.0) throw std::runtime_error("scattering: unexpected sign at lambda = 0");
    double b = 0.0, gb = ga;
    int k = 0;
    for (; k < max_scan; ++k) {
        a = b;
        ga = gb;
        b = a + scan_step;
        gb = g(b);
        if (gb <= 0.0) break;
    }
    if (k == max_scan)
        throw std::runtime_error("scattering: eigenvalue bracket not found");
    for (int it = 0; it < 200 && (b - a) > tol * std::max(1.0, b); ++it) {
        const double m = 0.5 * (a + b);
        if (g(m) > 0.0)
            a = m;
        else
            b = m;
    }
    return 0.5 * (a + b);
}

}  // namespace

double ScatteringSolution::f(double r) const {
    if (r >= potential_support && scattering_length_farfield != 0.0 && r > 0.0)
        return 1.0 - scattering_length_farfield / r;
    return interp(radial_grid, f_values, r);
}

double ScatteringSolution::omega(double r) const { return 1.0 - f(r); }

double NeumannCell::f(double r) const {
    if (r >= ell) return 1.0;
    return interp(radial_grid, f_values, r);
}

double NeumannCell::omega(double r) const { return 1.0 - f(r); }

ScatteringSolution solve_zero_energy(const RadialPotential& V, double r_max,
                                     const ScatteringOptions& opt) {
    if (r_max <= V.support_radius())
        throw std::invalid_argument("solve_zero_energy: r_max must exceed the potential support");
    if (opt.output_points < 8)
        throw std::invalid_argument("solve_zero_energy: resolution too coarse");

    ScatteringSolution sol;
    sol.potential_support = V.support_radius();
    sol.radial_grid.resize(opt.output_points);
    for (int i = 0; i < opt.output_points; ++i)
        sol.radial_grid[i] = r_max * i / (opt.output_points - 1);

    if (V.is_zero()) {
        sol.f_values.assign(opt.output_points, 1.0);
        sol.omega_values.assign(opt.output_points, 0.0);
        return sol;
    }

    // u = r f; quadrature accumulates int V u r dr (unnormalized int V f r^2 dr).
    auto samples = shoot_u(V, 0.0, r_max, opt.output_points, opt.ode_tolerance,
                           [&V](double r) { return V(r) * r; });

    const State& end = samples.back();
    const double slope = end[1];
    if (slope <= 0.0) throw std::runtime_error("solve_zero_energy: degenerate asymptote");
    sol.scattering_length_farfield = r_max - end[0] / slope;
    // 8 pi a0 = int V f = 4 pi int V f r^2 dr.
    sol.scattering_length = 0.5 * end[2] / slope;

    sol.f_values.resize(opt.output_points);
    sol.omega_values.resize(opt.output_points);
    sol.f_values[0] = 1.0 / slope;  // u/r -> u'(0) = 1 before normalization
    for (int i = 1; i < opt.output_points; ++i)
        sol.f_values[i] = samples[i][0] / (slope * sol.radial_grid[i]);
    for (int i = 0; i < opt.output_points; ++i)
        sol.omega_values[i] = 1.0 - sol.f_values[i];
    return sol;
}

ScatteringSolution scaled_scattering_profile(const RadialPotential& V, double N,
                                             double beta, double r_max,
                                             const ScatteringOptions& opt) {
    if (beta <= 0.0 || beta >= 1.0)
        throw std::invalid_argument("scaled_scattering_profile: beta must be in (0,1)");
    if (N < 2.0) throw std::invalid_argument("scaled_scattering_profile: N must be >= 2");
    return solve_zero_energy(scaled_3d(V, N, beta), r_max, opt);
}

NeumannCell solve_neumann_cell(const RadialPotential& V, double N, double beta,
                               double ell, const ScatteringOptions& opt) {
    if (beta <= 0.0 || beta >= 1.0)
        throw std::invalid_argument("solve_neumann_cell: beta must be in (0,1)");
    RadialPotential W = scaled_3d(V, N, beta);
    if (ell <= W.support_radius())
        throw std::invalid_argument("solve_neumann_cell: ell inside the potential support");

    // Coupling weight: N^{3b} V(N^b r) * u * r, i.e. N * W * u * r.
    auto weight = [&W, N](double r) { return N * W(r) * r; };

    auto boundary_defect = [&](double lambda) {
        auto s = shoot_u(W, lambda, ell, 64, opt.eigenvalue_tolerance, nullptr);
        // Neumann condition f'(ell) = 0 with f = u/r:  u'(ell) ell = u(ell).
        return s.back()[1] * ell - s.back()[0];
    };

    NeumannCell cell;
    cell.ell = ell;
    cell.scale_N = N;
    cell.beta = beta;
    cell.dimension = 3;
    cell.eigenvalue = V.is_zero()
                          ? 0.0
                          : smallest_root(boundary_defect, 0.25 / (ell * ell), 400,
                                          opt.eigenvalue_tolerance);

    auto samples = shoot_u(W, cell.eigenvalue, ell, opt.output_points,
                           opt.ode_tolerance, weight);
    const double u_ell = samples.back()[0];
    if (u_ell <= 0.0) throw std::runtime_error("solve_neumann_cell: eigen-solver non-convergence");
    const double norm = ell / u_ell;  // f(ell) = 1

    cell.radial_grid.resize(opt.output_points);
    cell.f_values.resize(opt.output_points);
    for (int i = 0; i < opt.output_points; ++i)
        cell.radial_grid[i] = ell * i / (opt.output_points - 1);
    cell.f_values[0] = norm;
    for (int i = 1; i < opt.output_points; ++i)
        cell.f_values[i] = norm * samples[i][0] / cell.radial_grid[i];
    cell.coupling_integral = 4.0 * kPi * norm * samples.back()[2];
    return cell;
}

NeumannCell solve_neumann_cell_1d(const RadialPotential& V, double N, double beta,
                                  double ell, const ScatteringOptions& opt) {
    if (beta <= 0.0 || beta >= 1.0)
        throw std::invalid_argument("solve_neumann_cell_1d: beta must be in (0,1)");
    RadialPotential W = scaled_1d(V, N, beta);
    if (ell <= W.support_radius())
        throw std::invalid_argument("solve_neumann_cell_1d: ell inside the potential support");

    // Even sector: f(0) = 1, f'(0) = 0; eigenvalue fixed by f'(ell) = 0.
    auto shoot_f = [&](double lambda, int n_out, double tol) {
        auto rhs = [&](const State& y, State& dy, double r) {
            dy[0] = y[1];
            dy[1] = (0.5 * W(r) - lambda) * y[0];
            dy[2] = N * W(r) * y[0];  // int N^b V(N^b x) f, half line
        };
        return integrate_radial(rhs, State{1.0, 0.0, 0.0}, ell, n_out, tol,
                                W.support_radius());
    };
    auto boundary_defect = [&](double lambda) {
        return shoot_f(lambda, 64, opt.eigenvalue_tolerance).back()[1];
    };

    NeumannCell cell;
    cell.ell = ell;
    cell.scale_N = N;
    cell.beta = beta;
    cell.dimension = 1;
    cell.eigenvalue = V.is_zero()
                          ? 0.0
                          : smallest_root(boundary_defect, 0.25 / (ell * ell), 400,
                                          opt.eigenvalue_tolerance);

    auto samples = shoot_f(cell.eigenvalue, opt.output_points, opt.ode_tolerance);
    const double f_ell = samples.back()[0];
    if (f_ell <= 0.0)
        throw std::runtime_error("solve_neumann_cell_1d: eigen-solver non-convergence");
    const double norm = 1.0 / f_ell;

    cell.radial_grid.resize(opt.output_points);
    cell.f_values.resize(opt.output_points);
    for (int i = 0; i < opt.output_points; ++i) {
        cell.radial_grid[i] = ell * i / (opt.output_points - 1);
        cell.f_values[i] = norm * samples[i][0];
    }
    cell.coupling_integral = 2.0 * norm * samples.back()[2];
    return cell;
}

double potential_integral(const RadialPotential& V, int dimension) {
    using boost::math::quadrature::gauss_kronrod;
    const double R = V.support_radius();
    if (V.is_zero()) return 0.0;
    if (dimension == 3) {
        auto g = [&V](double r) { return V(r) * r * r; };
        return 4.0 * kPi * gauss_kronrod<double, 61>::integrate(g, 0.0, R, 12, 1e-13);
    }
    auto g = [&V](double r) { return V(r); };
    return 2.0 * gauss_kronrod<double, 61>::integrate(g, 0.0, R, 12, 1e-13);
}

} // namespace boselab
