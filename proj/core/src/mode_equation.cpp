#include "boselab/mode_equation.hpp"

#include <cmath>
#include <stdexcept>

#include "boselab/bogoliubov.hpp"

namespace boselab {

namespace {
const cdouble kI{0.0, 1.0};
}

double ModeEquation::tensor_N(int p, int q, int r, int s) const {
    const int M = mode_count();
    const int half = (M - 1) / 2;
    if ((p - half) + (q - half) != (r - half) + (s - half)) return 0.0;
    return pair_transform_N[(p - r) + (M - 1)] / box_length;
}

Eigen::VectorXcd mode_rhs(const ModeEquation& eq, const Eigen::VectorXcd& phi) {
    const int M = eq.mode_count();
    if (phi.size() != M) throw std::invalid_argument("mode_rhs: dimension mismatch");

    Eigen::VectorXcd h = eq.kinetic.cast<cdouble>().cwiseProduct(phi);
    for (int m = 0; m < M; ++m) {
        cdouble cubic{0.0, 0.0};
        for (int q = 0; q < M; ++q)
            for (int r = 0; r < M; ++r) {
                const int s = m + q - r;  // momentum conservation
                if (s < 0 || s >= M) continue;
                cubic += eq.tensor_N(m, q, r, s) * std::conj(phi[q]) * phi[r] * phi[s];
            }
        h[m] += cubic;
    }

    if (!eq.kernel.is_zero()) {
        const Eigen::MatrixXcd k = eq.kernel(phi);
        const BogoliubovFrame frame = bogoliubov_frame(k);
        const Eigen::MatrixXcd CS = frame.cosh_block * frame.sinh_block;
        const Eigen::MatrixXcd SS = frame.sinh_block * frame.sinh_block.adjoint();
        for (int m = 0; m < M; ++m) {
            cdouble corr{0.0, 0.0};
            for (int q = 0; q < M; ++q)
                for (int r = 0; r < M; ++r) {
                    const int s = m + q - r;
                    if (s < 0 || s >= M) continue;
                    const double w = eq.tensor_N(m, q, r, s);
                    if (w == 0.0) continue;
                    corr += w * (std::conj(phi[q]) * CS(r, s) + phi[r] * SS(s, q) +
                                 phi[s] * SS(r, q));
                }
            h[m] += corr / eq.scale_N;
        }
    }
    return -kI * h;
}

Eigen::VectorXcd ModeTrajectory::at(double t) const {
    if (times.empty()) throw std::runtime_error("ModeTrajectory: empty");
    if (t <= times.front()) return states.front();
    if (t >= times.back()) return states.back();
    // Bracketing interval by binary search (times are increasing).
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t i1 = it - times.begin();
    const std::size_t i0 = i1 - 1;
    const double h = times[i1] - times[i0];
    const double s = (t - times[i0]) / h;
    // Cubic Hermite in s.
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * states[i0] + (h10 * h) * derivs[i0] + h01 * states[i1] +
           (h11 * h) * derivs[i1];
}

ModeTrajectory evolve_modes(const ModeEquation& eq, const Eigen::VectorXcd& phi0,
                            double t_final, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("evolve_modes: dt must be positive");
    const int steps = std::max(1, static_cast<int>(std::ceil(t_final / dt - 1e-12)));
    const double h = t_final / steps;

    ModeTrajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.derivs.reserve(steps + 1);

    Eigen::VectorXcd y = phi0;
    traj.times.push_back(0.0);
    traj.states.push_back(y);
    traj.derivs.push_back(mode_rhs(eq, y));

    for (int n = 0; n < steps; ++n) {
        const Eigen::VectorXcd k1 = traj.derivs.back();
        const Eigen::VectorXcd k2 = mode_rhs(eq, y + 0.5 * h * k1);
        const Eigen::VectorXcd k3 = mode_rhs(eq, y + 0.5 * h * k2);
        const Eigen::VectorXcd k4 = mode_rhs(eq, y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        traj.times.push_back((n + 1) * h);
        traj.states.push_back(y);
        traj.derivs.push_back(mode_rhs(eq, y));
    }
    return traj;
}

ModeTrajectory evolve_modes_range(const ModeEquation& eq, const Eigen::VectorXcd& phi0,
                                  double t_min, double t_max, double dt) {
    if (t_min > 0.0 || t_max <= 0.0)
        throw std::invalid_argument("evolve_modes_range: need t_min <= 0 < t_max");
    ModeTrajectory fwd = evolve_modes(eq, phi0, t_max, dt);
    if (t_min == 0.0) return fwd;

    // Backward leg: RK4 with a negative step from phi(0).
    const int steps = std::max(1, static_cast<int>(std::ceil(-t_min / dt - 1e-12)));
    const double h = t_min / steps;  // negative
    ModeTrajectory traj;
    Eigen::VectorXcd y = phi0;
    std::vector<double> bt{0.0};
    std::vector<Eigen::VectorXcd> bs{y}, bd{mode_rhs(eq, y)};
    for (int n = 0; n < steps; ++n) {
        const Eigen::VectorXcd k1 = bd.back();
        const Eigen::VectorXcd k2 = mode_rhs(eq, y + 0.5 * h * k1);
        const Eigen::VectorXcd k3 = mode_rhs(eq, y + 0.5 * h * k2);
        const Eigen::VectorXcd k4 = mode_rhs(eq, y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        bt.push_back((n + 1) * h);
        bs.push_back(y);
        bd.push_back(mode_rhs(eq, y));
    }
    // Stitch: backward samples reversed (excluding the duplicate t = 0),
    // then the forward leg.
    for (std::size_t i = bt.size(); i-- > 1;) {
        traj.times.push_back(bt[i]);
        traj.states.push_back(bs[i]);
        traj.derivs.push_back(bd[i]);
    }
    traj.times.insert(traj.times.end(), fwd.times.begin(), fwd.times.end());
    traj.states.insert(traj.states.end(), fwd.states.begin(), fwd.states.end());
    traj.derivs.insert(traj.derivs.end(), fwd.derivs.begin(), fwd.derivs.end());
    return traj;
}

} // namespace boselab
