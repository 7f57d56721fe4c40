#include "boselab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "boselab/csv.hpp"
#include "boselab/effective.hpp"
#include "boselab/fluctuations.hpp"
#include "boselab/scattering.hpp"
#include "boselab/serialize.hpp"

namespace boselab {

namespace {

using nlohmann::json;

constexpr const char* kVersionTag = "boselab 0.1.0";

const std::set<std::string> kCommonKeys = {"experiment", "output_dir", "seed"};
const std::set<std::string> kPotentialKeys = {"potential", "v0", "radius"};

struct ExperimentDef {
    std::string name;
    std::set<std::string> allowed;  // beyond common keys
    std::set<std::string> required;
};

const std::vector<ExperimentDef>& experiment_defs() {
    static const std::vector<ExperimentDef> defs = {
        {"scattering_study",
         {"potential", "v0", "radius", "r_max", "beta", "N_sweep"},
         {"potential", "r_max"}},
        {"effective_convergence",
         {"variant", "coupling", "grid_points", "box_length", "t_final", "dt_list"},
         {"variant", "coupling", "grid_points", "box_length", "t_final", "dt_list"}},
        {"mean_field_convergence",
         {"potential", "v0", "radius", "modes", "box_length", "N_sweep", "t_grid",
          "extra_cutoff", "phi_excitation"},
         {"potential", "modes", "box_length", "N_sweep", "t_grid"}},
        {"fluctuation_norm",
         {"potential", "v0", "radius", "modes", "box_length", "N_sweep", "beta",
          "ell", "kernel", "t_final", "samples", "quad_dt", "fd_step", "mode_dt",
          "extra_cutoff", "phi_excitation"},
         {"potential", "modes", "box_length", "N_sweep", "beta", "t_final"}},
        {"gronwall_diagnostics",
         {"potential", "v0", "radius", "modes", "box_length", "N_sweep", "beta",
          "ell", "kernel", "t_final", "samples", "mode_dt", "extra_cutoff",
          "phi_excitation"},
         {"potential", "modes", "box_length", "N_sweep", "beta", "t_final"}},
        {"ground_state",
         {"variant", "coupling", "grid_points", "box_length", "gradient_tolerance"},
         {"variant", "coupling", "grid_points", "box_length"}},
    };
    return defs;
}

const ExperimentDef* find_def(const std::string& name) {
    for (const auto& d : experiment_defs())
        if (d.name == name) return &d;
    return nullptr;
}

RadialPotential make_potential(const Config& cfg) {
    const std::string kind = cfg.get_string("potential");
    if (kind == "zero") return RadialPotential::zero();
    const double v0 = cfg.get_double("v0");
    const double radius = cfg.get_double("radius");
    if (kind == "square_well") return RadialPotential::square_well(v0, radius);
    if (kind == "bump") return RadialPotential::bump(v0, radius);
    throw std::runtime_error("unknown potential '" + kind + "'");
}

EquationVariant parse_variant(const std::string& name) {
    if (name == "hartree") return EquationVariant::hartree;
    if (name == "cubic_nls") return EquationVariant::cubic_nls;
    if (name == "gross_pitaevskii") return EquationVariant::gross_pitaevskii;
    if (name == "modified_gp") return EquationVariant::modified_gp;
    if (name == "modified_nls") return EquationVariant::modified_nls;
    throw std::runtime_error("unknown equation variant '" + name + "'");
}

/// Deterministic initial condensate orbital: dominant zero mode with a small
/// symmetric excitation of the |m| = 1 modes.
Eigen::VectorXcd default_phi0(int M, double excitation) {
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(M);
    const int half = (M - 1) / 2;
    phi[half] = 1.0;
    if (half >= 1) {
        phi[half - 1] = excitation;
        phi[half + 1] = excitation;
    }
    phi /= phi.norm();
    return phi;
}

ModeKernelBuilder make_kernel(const Config& cfg, const ModeBasis& modes, double N,
                              double beta) {
    const double L = modes.box_length();
    const std::string kind = cfg.get_string("kernel", "ell_midpoint");
    if (kind == "none") return ModeKernelBuilder(modes);
    const RadialPotential V = make_potential(cfg);
    const double ell = cfg.get_double("ell", L / 4.0);
    if (kind == "ell_midpoint") {
        const NeumannCell cell = solve_neumann_cell_1d(V, N, beta, ell);
        return ModeKernelBuilder(modes, N, cell);
    }
    if (kind == "gp_product") {
        // The profile has an exact a0/r tail beyond the support, so a short
        // radial grid suffices.
        const ScatteringSolution scat = solve_zero_energy(V, 2.0 * V.support_radius());
        return ModeKernelBuilder(modes, N, scat);
    }
    throw std::runtime_error("unknown kernel '" + kind + "'");
}

std::string check_config(const Config& cfg) {
    std::string name;
    try {
        name = cfg.get_string("experiment");
    } catch (const std::exception&) {
        return "missing required key 'experiment'";
    }
    const ExperimentDef* def = find_def(name);
    if (!def) return "unknown experiment '" + name + "'";

    std::set<std::string> allowed = kCommonKeys;
    allowed.insert(def->allowed.begin(), def->allowed.end());
    const auto unknown = cfg.unknown_keys(allowed);
    if (!unknown.empty()) return "unknown key '" + unknown.front() + "'";
    for (const auto& key : def->required)
        if (!cfg.has(key)) return "missing required key '" + key + "'";

    try {
        if (cfg.has("beta")) {
            const double beta = cfg.get_double("beta");
            if (beta < 0.0 || beta > 1.0) return "beta must lie in [0, 1]";
        }
        if (cfg.has("modes")) {
            const int M = cfg.get_int("modes");
            if (M < 1 || M % 2 == 0) return "modes must be odd and positive";
        }
        if (cfg.has("grid_points") && cfg.get_int("grid_points") < 2)
            return "grid_points must be at least 2";
        if (cfg.has("box_length") && cfg.get_double("box_length") <= 0.0)
            return "box_length must be positive";
        if (cfg.has("N_sweep"))
            for (double n : cfg.get_list("N_sweep"))
                if (n < 1.0) return "N_sweep entries must be >= 1";
        if (cfg.has("potential")) make_potential(cfg);
        if (cfg.has("variant")) parse_variant(cfg.get_string("variant"));
        if (cfg.has("t_final") && cfg.get_double("t_final") <= 0.0)
            return "t_final must be positive";
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

// ---- individual experiments ------------------------------------------------

void run_scattering_study(const Config& cfg, const std::string& dir, json& manifest) {
    const RadialPotential V = make_potential(cfg);
    const double r_max = cfg.get_double("r_max");
    const double beta = cfg.get_double("beta", 0.5);
    const std::vector<double> Ns = cfg.get_list("N_sweep", {1.0});

    CsvTable table({"N", "a_N", "N_a_N", "identity_residual", "decay_sup"});
    for (double N : Ns) {
        const ScatteringSolution sol =
            N == 1.0 ? solve_zero_energy(V, r_max)
                     : scaled_scattering_profile(V, N, beta, r_max);
        const double a = sol.scattering_length;
        const double residual =
            std::abs(a - sol.scattering_length_farfield) / (std::abs(a) + 1e-300);
        double sup = 0.0;
        for (std::size_t i = 0; i < sol.radial_grid.size(); ++i) {
            const double x = sol.radial_grid[i];
            sup = std::max(sup, N * (x + std::pow(N, -beta)) * sol.omega_values[i]);
        }
        table.add_row({N, a, N * a, residual, sup});
    }
    table.write(dir + "/scattering.csv");
    manifest["rows"] = table.row_count();
}

void run_effective_convergence(const Config& cfg, const std::string& dir,
                               json& manifest) {
    EffectiveEquationSpec spec;
    spec.variant = parse_variant(cfg.get_string("variant"));
    spec.coupling = cfg.get_double("coupling");
    const int n = cfg.get_int("grid_points");
    const double L = cfg.get_double("box_length");
    const double t_final = cfg.get_double("t_final");
    if (spec.uses_convolution())
        throw std::runtime_error(
            "effective_convergence: convolution variants need a potential grid; "
            "use cubic_nls or gross_pitaevskii here");

    GridField phi0(1, n, L);
    for (int i = 0; i < n; ++i) {
        const double x = phi0.coordinate(i);
        phi0.values[i] = 1.0 + 0.3 * std::cos(2.0 * M_PI * x / L);
    }
    phi0.normalize();

    CsvTable table({"dt", "mass_drift", "energy_drift"});
    for (double dt : cfg.get_list("dt_list")) {
        const Trajectory traj = evolve(spec, phi0, t_final, dt, 1 << 20);
        const GridField& last = traj.fields.back();
        const double mass_drift = std::abs(last.norm() - phi0.norm());
        const double e0 = energy(phi0, spec, EnergyConvention::conserved);
        const double e1 = energy(last, spec, EnergyConvention::conserved);
        table.add_row({dt, mass_drift, std::abs(e1 - e0)});
    }
    table.write(dir + "/effective_convergence.csv");
    manifest["rows"] = table.row_count();
}

void run_mean_field(const Config& cfg, const std::string& dir, json& manifest,
                    int& status) {
    const RadialPotential V = make_potential(cfg);
    const ModeBasis modes(cfg.get_int("modes"), cfg.get_double("box_length"));
    const Eigen::VectorXcd phi0 =
        default_phi0(modes.size(), cfg.get_double("phi_excitation", 0.2));
    const auto rows = mean_field_convergence(V, phi0, cfg.get_list("N_sweep"),
                                             cfg.get_list("t_grid"), modes,
                                             cfg.get_int("extra_cutoff", 0));

    CsvTable table({"N", "t", "trace_distance", "relative_distance", "leak"});
    double max_leak = 0.0;
    for (const auto& r : rows) {
        table.add_row({r.N, r.t, r.trace_distance, r.relative_distance, r.leak});
        max_leak = std::max(max_leak, r.leak);
    }
    table.write(dir + "/mean_field_convergence.csv");
    manifest["rows"] = table.row_count();
    manifest["max_leak"] = max_leak;

    // Monotonicity of the relative distance in N at fixed t is the hard
    // invariant of this experiment.
    for (double t : cfg.get_list("t_grid")) {
        if (t == 0.0) continue;
        double prev = -1.0;
        bool first = true;
        for (const auto& r : rows)
            if (r.t == t) {
                if (!first && r.relative_distance >= prev) status = experiment_invariant_violation;
                prev = r.relative_distance;
                first = false;
            }
    }
    if (max_leak > 1e-6) status = experiment_invariant_violation;
}

void run_fluctuation(const Config& cfg, const std::string& dir, json& manifest,
                     int& status, bool with_quadratic) {
    const RadialPotential V = make_potential(cfg);
    const ModeBasis modes(cfg.get_int("modes"), cfg.get_double("box_length"));
    const double beta = cfg.get_double("beta");
    const Eigen::VectorXcd phi0 =
        default_phi0(modes.size(), cfg.get_double("phi_excitation", 0.2));

    FluctuationPipelineOptions opt;
    opt.t_final = cfg.get_double("t_final");
    opt.samples = cfg.get_int("samples", 8);
    opt.quad_dt = cfg.get_double("quad_dt", 0.025);
    opt.fd_step = cfg.get_double("fd_step", 1e-3);
    opt.mode_dt = cfg.get_double("mode_dt", 1e-3);
    opt.extra_cutoff = cfg.get_int("extra_cutoff", 0);
    opt.with_quadratic = with_quadratic;

    CsvTable table(with_quadratic
                       ? std::vector<std::string>{"N", "t", "norm_error", "eta",
                                                  "linear_norm", "N_expect",
                                                  "N2_over_N", "H_expect", "K_expect",
                                                  "leak"}
                       : std::vector<std::string>{"N", "t", "N_expect", "N2_over_N",
                                                  "N2_beyond_budget", "H_expect",
                                                  "K_expect", "dN_dt", "leak"});
    json per_n = json::array();
    for (double N : cfg.get_list("N_sweep")) {
        const ModeKernelBuilder kernel = make_kernel(cfg, modes, N, beta);
        const FluctuationRun run =
            run_fluctuation_pipeline(V, N, beta, modes, phi0, kernel, opt);

        for (const auto& psi : run.exact_states)
            if (std::abs(psi.norm() - 1.0) > 1e-6)
                status = experiment_invariant_violation;

        if (with_quadratic) {
            const std::vector<double> err = norm_approximation_error(run);
            for (std::size_t i = 0; i < run.times.size(); ++i) {
                const auto& d = run.diagnostics[i];
                table.add_row({N, run.times[i], err[i], run.etas[i],
                               run.linear_norms[i], d.N_expect, d.N2_over_N,
                               d.H_expect, d.K_expect, d.leak});
            }
            json entry;
            entry["N"] = N;
            entry["final_norm_error"] = err.back();
            entry["phase_integral"] = run.phase_integral.back();
            per_n.push_back(entry);
        } else {
            // Gronwall table needs the assembled Hamiltonian again.
            const int cutoff = weyl_cutoff_for(std::sqrt(N)) + opt.extra_cutoff;
            auto basis = std::make_shared<const FockBasis>(modes.size(), cutoff);
            const ManyBodyHamiltonian H = assemble(basis, modes, V, N, beta);
            const GronwallReport rep = gronwall_diagnostics(run, H);
            for (std::size_t i = 0; i < rep.times.size(); ++i)
                table.add_row({N, rep.times[i], rep.N_expect[i], rep.N2_over_N[i],
                               rep.N2_beyond_budget[i], rep.H_expect[i],
                               rep.K_expect[i], rep.dN_dt[i],
                               run.diagnostics[i].leak});
            json entry;
            entry["N"] = N;
            entry["fitted_C"] = rep.fitted_C;
            entry["fitted_C_N2"] = rep.fitted_C_N2;
            entry["n2_bound_holds"] = rep.n2_bound_holds;
            per_n.push_back(entry);
            if (!rep.n2_bound_holds) status = experiment_invariant_violation;
        }
    }
    table.write(dir + (with_quadratic ? "/fluctuation_norm.csv" : "/gronwall.csv"));
    manifest["rows"] = table.row_count();
    manifest["per_N"] = per_n;
}

void run_ground_state(const Config& cfg, const std::string& dir, json& manifest) {
    EffectiveEquationSpec spec;
    spec.variant = parse_variant(cfg.get_string("variant"));
    spec.coupling = cfg.get_double("coupling");
    const int n = cfg.get_int("grid_points");
    const double L = cfg.get_double("box_length");
    if (spec.uses_convolution())
        throw std::runtime_error("ground_state: local variants only");

    GridField init(1, n, L);
    for (int i = 0; i < n; ++i) {
        const double x = init.coordinate(i);
        init.values[i] = 1.0 + 0.5 * std::cos(2.0 * M_PI * x / L);
    }
    init.normalize();

    MinimizeOptions opt;
    opt.gradient_tolerance = cfg.get_double("gradient_tolerance", 1e-9);
    const GridField phi = minimize_energy(spec, init, opt);

    CsvTable table({"x", "re", "im", "density"});
    for (int i = 0; i < n; ++i)
        table.add_row({phi.coordinate(i), phi.values[i].real(), phi.values[i].imag(),
                       std::norm(phi.values[i])});
    table.write(dir + "/ground_state.csv");
    manifest["energy"] = energy(phi, spec, EnergyConvention::gp_functional);
    manifest["gradient_norm"] =
        projected_gradient(phi, spec, EnergyConvention::gp_functional).norm();
    manifest["rows"] = table.row_count();
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& d : experiment_defs()) out.push_back(d.name);
        return out;
    }();
    return names;
}

int validate_experiment(const Config& cfg, std::string& message) {
    message = check_config(cfg);
    return message.empty() ? experiment_ok : experiment_config_error;
}

int run_experiment(const Config& cfg, std::string& message) {
    if (validate_experiment(cfg, message) != experiment_ok)
        return experiment_config_error;

    const std::string name = cfg.get_string("experiment");
    const std::string dir = cfg.get_string("output_dir", ".");
    const auto t0 = std::chrono::steady_clock::now();

    json manifest;
    manifest["experiment"] = name;
    manifest["version"] = kVersionTag;
    manifest["seed"] = cfg.get_int("seed", 0);
    json echo;
    for (const auto& [k, v] : cfg.entries()) echo[k] = v;
    manifest["config"] = echo;

    int status = experiment_ok;
    try {
        std::filesystem::create_directories(dir);
        if (name == "scattering_study")
            run_scattering_study(cfg, dir, manifest);
        else if (name == "effective_convergence")
            run_effective_convergence(cfg, dir, manifest);
        else if (name == "mean_field_convergence")
            run_mean_field(cfg, dir, manifest, status);
        else if (name == "fluctuation_norm")
            run_fluctuation(cfg, dir, manifest, status, true);
        else if (name == "gronwall_diagnostics")
            run_fluctuation(cfg, dir, manifest, status, false);
        else if (name == "ground_state")
            run_ground_state(cfg, dir, manifest);
    } catch (const std::filesystem::filesystem_error& e) {
        message = e.what();
        return experiment_io_error;
    } catch (const std::ios_base::failure& e) {
        message = e.what();
        return experiment_io_error;
    } catch (const std::exception& e) {
        message = e.what();
        return experiment_invariant_violation;
    }

    const auto t1 = std::chrono::steady_clock::now();
    manifest["wall_time_seconds"] =
        std::chrono::duration<double>(t1 - t0).count();
    manifest["status"] = status;
    try {
        write_file_atomic(dir + "/manifest.json", manifest.dump(2) + "\n");
    } catch (const std::exception& e) {
        message = e.what();
        return experiment_io_error;
    }
    if (status != experiment_ok) message = "numerical invariant violated";
    return status;
}

} // namespace boselab
