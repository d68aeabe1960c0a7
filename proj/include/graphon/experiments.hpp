#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphon/cli_support.hpp"
#include "graphon/report.hpp"

namespace graphon::experiments {

struct ExperimentConfig {
  std::string name;  // circle | sphere | wrandom-convergence | regularity

  // circle
  int n = 64;
  std::vector<int> multipliers{3, 5};
  int max_cycle = 8;
  double density_tolerance = 1e-9;
  double separation = 0.05;

  // sphere
  std::vector<int> dims{2, 3, 4};
  int N = 1500;
  std::string profile = "threshold:0";
  double slack = 0.05;

  // wrandom-convergence: source kernel (constant p on one atom when absent)
  std::optional<std::string> source;
  double p = 0.5;
  std::vector<int> sizes{50, 200};
  int track = 10;
  double top_tolerance = 0.1;

  // regularity
  double epsilon = 0.2;
  cli::ControlSpec control;
  double grid_cap = 1e300;

  std::vector<std::uint64_t> seeds;
  int threads = 1;
  int exact_limit = 22;
  int restarts = 32;
};

/// Runs one named experiment. Stochastic experiments require at least one seed.
/// Inputs are echoed except `threads`, which never affects results.
report::Report run_experiment(const ExperimentConfig& config);

}  // namespace graphon::experiments
