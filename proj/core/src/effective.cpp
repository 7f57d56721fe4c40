#include "boselab/effective.hpp"

#include <cmath>
#include <stdexcept>

namespace boselab {

namespace {

const cdouble kI{0.0, 1.0};

void check_kernel(const EffectiveEquationSpec& spec, const GridField& phi) {
    if (spec.uses_convolution() && spec.convolution_kernel.size() != phi.size())
        throw std::invalid_argument("effective: convolution kernel does not match the grid");
}

/// Effective local potential U[phi] on the grid (convolution or contact).
Eigen::VectorXd interaction_potential(const EffectiveEquationSpec& spec,
                                      const GridField& phi,
                                      const Eigen::VectorXcd& kernel_hat) {
    Eigen::VectorXd density = phi.values.cwiseAbs2();
    if (!spec.uses_convolution()) return spec.coupling * density;
    // h^d * circular convolution, computed spectrally.
    Eigen::VectorXcd rho_hat =
        fft_forward(density.cast<cdouble>(), phi.dimension, phi.points_per_axis);
    Eigen::VectorXcd conv = fft_backward(rho_hat.cwiseProduct(kernel_hat),
                                         phi.dimension, phi.points_per_axis);
    return phi.cell_volume() * conv.real();
}

Eigen::VectorXcd kernel_spectrum(const EffectiveEquationSpec& spec, const GridField& phi) {
    if (!spec.uses_convolution()) return {};
    Eigen::VectorXcd k = spec.convolution_kernel.cast<cdouble>();
    return fft_forward(k, phi.dimension, phi.points_per_axis) *
           static_cast<double>(phi.size());  // unnormalized DFT of the kernel
}

}  // namespace

Trajectory evolve(const EffectiveEquationSpec& spec, const GridField& phi0,
                  double t_final, double dt, int sample_every) {
    if (dt <= 0.0) throw std::invalid_argument("evolve: dt must be positive");
    check_kernel(spec, phi0);
    if (std::abs(phi0.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("evolve: initial field must be normalized");

    const int n = phi0.points_per_axis;
    const int dim = phi0.dimension;
    const auto size = phi0.size();

    Eigen::VectorXcd half_kinetic(size);
    for (Eigen::Index i = 0; i < size; ++i)
        half_kinetic[i] = std::exp(-kI * (0.5 * dt) * fft_k2(i, dim, n, phi0.box_length));

    const Eigen::VectorXcd kernel_hat = kernel_spectrum(spec, phi0);

    const int steps = static_cast<int>(std::llround(t_final / dt));
    Trajectory traj;
    traj.times.push_back(0.0);
    traj.fields.push_back(phi0);

    GridField phi = phi0;
    for (int s = 1; s <= steps; ++s) {
        Eigen::VectorXcd c = fft_forward(phi);
        c.array() *= half_kinetic.array();
        phi.values = fft_backward(c, dim, n);

        // |phi| is invariant under the phase rotation, so the potential is
        // frozen during the substep and the exponential is exact.
        Eigen::VectorXd pot = interaction_potential(spec, phi, kernel_hat);
        for (Eigen::Index i = 0; i < size; ++i)
            phi.values[i] *= std::exp(-kI * dt * pot[i]);

        c = fft_forward(phi);
        c.array() *= half_kinetic.array();
        phi.values = fft_backward(c, dim, n);

        if (!phi.values.allFinite() || phi.values.cwiseAbs().maxCoeff() > 1e12)
            throw std::runtime_error("evolve: blow-up detected in the nonlinear substep");

        if (s % sample_every == 0 || s == steps) {
            traj.times.push_back(s * dt);
            traj.fields.push_back(phi);
        }
    }
    return traj;
}

double energy(const GridField& phi, const EffectiveEquationSpec& spec,
              EnergyConvention convention) {
    check_kernel(spec, phi);
    const int n = phi.points_per_axis;
    const int dim = phi.dimension;

    Eigen::VectorXcd c = fft_forward(phi);
    double kinetic = 0.0;
    for (Eigen::Index i = 0; i < phi.size(); ++i)
        kinetic += fft_k2(i, dim, n, phi.box_length) * std::norm(c[i]);
    kinetic *= phi.box_length;
    for (int d = 1; d < dim; ++d) kinetic *= phi.box_length;

    const double hv = phi.cell_volume();
    if (convention == EnergyConvention::gp_functional) {
        // int |grad phi|^2 + coupling * int |phi|^4, verbatim.
        return kinetic + spec.coupling * hv * phi.values.cwiseAbs2().cwiseAbs2().sum();
    }
    // Flow-invariant Hamiltonian of the active variant.
    if (!spec.uses_convolution())
        return kinetic + 0.5 * spec.coupling * hv * phi.values.cwiseAbs2().cwiseAbs2().sum();
    Eigen::VectorXd pot = interaction_potential(spec, phi, kernel_spectrum(spec, phi));
    return kinetic + 0.5 * hv * pot.dot(Eigen::VectorXd(phi.values.cwiseAbs2()));
}

GridField projected_gradient(const GridField& phi, const EffectiveEquationSpec& spec,
                             EnergyConvention convention) {
    check_kernel(spec, phi);
    const int n = phi.points_per_axis;
    const int dim = phi.dimension;

    // -Lap phi, spectrally.
    Eigen::VectorXcd c = fft_forward(phi);
    for (Eigen::Index i = 0; i < phi.size(); ++i)
        c[i] *= fft_k2(i, dim, n, phi.box_length);
    GridField grad = phi;
    grad.values = fft_backward(c, dim, n);

    if (convention == EnergyConvention::gp_functional) {
        grad.values += 2.0 * spec.coupling *
                       phi.values.cwiseAbs2().cast<cdouble>().cwiseProduct(phi.values).eval();
    } else if (!spec.uses_convolution()) {
        grad.values +=
            spec.coupling * phi.values.cwiseAbs2().cast<cdouble>().cwiseProduct(phi.values).eval();
    } else {
        Eigen::VectorXd pot = interaction_potential(spec, phi, kernel_spectrum(spec, phi));
        grad.values += pot.cast<cdouble>().cwiseProduct(phi.values).eval();
    }

    // Remove the radial component (unit-sphere constraint).
    const double hv = phi.cell_volume();
    const double radial = (hv * phi.values.dot(grad.values)).real();
    grad.values -= radial * phi.values;
    return grad;
}

GridField minimize_energy(const EffectiveEquationSpec& spec, const GridField& init,
                          const MinimizeOptions& opt, EnergyConvention convention) {
    if (spec.coupling < 0.0)
        throw std::invalid_argument("minimize_energy: repulsive coupling required");
    GridField phi = init;
    phi.normalize();

    double e = energy(phi, spec, convention);
    double step = opt.initial_step;
    // Near the minimum the energy decrease per step falls below the roundoff
    // of the energy itself and a strict-decrease line search stalls; from
    // there descend with the gradient norm as the acceptance measure, which
    // stays resolvable down to machine precision.
    bool polish = false;
    for (int it = 0; it < opt.max_iterations; ++it) {
        GridField grad = projected_gradient(phi, spec, convention);
        const double gnorm = grad.norm();
        if (gnorm <= opt.gradient_tolerance) return phi;
        if (!polish && gnorm <= 1e-6) {
            polish = true;
            step *= 0.5;  // back off from the line-search stability boundary
        }

        GridField trial = phi;
        trial.values = phi.values - step * grad.values;
        trial.normalize();
        if (polish) {
            if (projected_gradient(trial, spec, convention).norm() <= gnorm) {
                phi = trial;
            } else {
                step *= 0.5;
                if (step < 1e-16) return phi;  // gradient at its roundoff floor
            }
            continue;
        }

        double e_trial = energy(trial, spec, convention);
        if (e_trial <= e) {
            phi = trial;
            e = e_trial;
            step *= 1.1;
        } else {
            step *= 0.5;
            if (step < 1e-16) {
                polish = true;
                step = opt.initial_step * 0.01;
            }
        }
    }
    throw std::runtime_error("minimize_energy: iteration cap exceeded");
}

Eigen::VectorXd periodized_kernel(const std::function<double(double)>& radial_profile,
                                  int dim, int n, double box_length) {
    Eigen::Index size = n;
    for (int d = 1; d < dim; ++d) size *= n;
    Eigen::VectorXd out(size);
    const double h = box_length / n;
    const int images = 2;
    if (dim == 1) {
        for (int i = 0; i < n; ++i) {
            double v = 0.0;
            for (int m = -images; m <= images; ++m)
                v += radial_profile(std::abs(i * h + m * box_length));
            out[i] = v;
        }
        return out;
    }
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                double v = 0.0;
                for (int mx = -1; mx <= 1; ++mx)
                    for (int my = -1; my <= 1; ++my)
                        for (int mz = -1; mz <= 1; ++mz) {
                            const double x = ix * h + mx * box_length;
                            const double y = iy * h + my * box_length;
                            const double z = iz * h + mz * box_length;
                            v += radial_profile(std::sqrt(x * x + y * y + z * z));
                        }
                out[(static_cast<Eigen::Index>(ix) * n + iy) * n + iz] = v;
            }
    return out;
}

} // namespace boselab
