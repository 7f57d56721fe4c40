#pragma once

#include <functional>
#include <vector>

#include "boselab/grid_field.hpp"

namespace boselab {

enum class EquationVariant { hartree, cubic_nls, gross_pitaevskii, modified_gp, modified_nls };

enum class EnergyConvention { gp_functional, conserved };

/// One-particle effective equation i d/dt phi = -Lap phi + U[phi] phi.
/// Local variants use `coupling` (int V for cubic_nls, 8 pi a0 for
/// gross_pitaevskii); convolution variants carry the interaction sampled on
/// the simulation grid (hartree: V; modified variants: the f-weighted scaled
/// potential).
struct EffectiveEquationSpec {
    EquationVariant variant = EquationVariant::cubic_nls;
    double coupling = 0.0;
    Eigen::VectorXd convolution_kernel;  // empty for local variants
    double scale_N = 0.0;
    double beta = 0.0;
    double ell = 0.0;

    bool uses_convolution() const {
        return variant == EquationVariant::hartree ||
               variant == EquationVariant::modified_gp ||
               variant == EquationVariant::modified_nls;
    }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<GridField> fields;
};

/// Strang split-step spectral evolution; samples the field every
/// `sample_every` steps (the initial field is always included).
Trajectory evolve(const EffectiveEquationSpec& spec, const GridField& phi0,
                  double t_final, double dt, int sample_every = 1);

double energy(const GridField& phi, const EffectiveEquationSpec& spec,
              EnergyConvention convention);

/// Energy gradient projected on the tangent space of the unit sphere
/// (the variational derivative with the radial component removed).
GridField projected_gradient(const GridField& phi, const EffectiveEquationSpec& spec,
                             EnergyConvention convention);

struct MinimizeOptions {
    double gradient_tolerance = 1e-9;
    int max_iterations = 200000;
    double initial_step = 0.1;
};

/// Normalized projected-gradient descent; the energy sequence is nonincreasing.
GridField minimize_energy(const EffectiveEquationSpec& spec, const GridField& init,
                          const MinimizeOptions& opt = {},
                          EnergyConvention convention = EnergyConvention::gp_functional);

/// Samples sum_images profile(|x + m L|) on the periodic grid (compactly
/// supported radial profiles; images summed until they stop contributing).
Eigen::VectorXd periodized_kernel(const std::function<double(double)>& radial_profile,
                                  int dim, int n, double box_length);

} // namespace boselab
