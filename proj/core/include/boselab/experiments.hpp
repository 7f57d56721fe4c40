#pragma once

#include <string>
#include <vector>

#include "boselab/config.hpp"

namespace boselab {

/// Exit codes of the experiment runner.
enum ExperimentStatus {
    experiment_ok = 0,
    experiment_config_error = 2,
    experiment_invariant_violation = 3,
    experiment_io_error = 4,
};

const std::vector<std::string>& experiment_names();

/// Validates the config (experiment selection, required keys, ranges,
/// unknown-key rejection) without running anything.  Returns experiment_ok or
/// experiment_config_error; on error `message` explains.
int validate_experiment(const Config& cfg, std::string& message);

/// Runs the selected experiment, writing CSV artifacts plus a manifest.json
/// into the configured output directory.  Returns an ExperimentStatus.
int run_experiment(const Config& cfg, std::string& message);

} // namespace boselab
