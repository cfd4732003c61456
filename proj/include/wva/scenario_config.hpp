#pragma once

#include <filesystem>
#include <istream>
#include <string_view>
#include <vector>

#include "wva/experiments.hpp"

/// Plain-text key = value scenario files; `#` and `;` start comments.
///
///     name = delta-scan
///     delta = 0.05, 0.1, 0.2          # or linspace(a, b, n) / logspace(a, b, n)
///     e0 = 10, 30                     # or alpha = ..., or darkport_intensity = ...
///     sigma = 0.5
///     sigma2 = 0
///     bs_mode = first-order           # or exact
///     methods = quantum, exact, quadrature, mc
///     mc_trials = 200000
///     mc_seed = 7
///     mc_estimator = weighted
///
///     [metadata]
///     note = anything
///
/// The grid is the Cartesian product delta × amplitude × sigma × sigma2, delta outermost.
namespace wva::experiments {

/// A comma list of numbers, or linspace(a, b, n) / logspace(a, b, n).
std::vector<double> parse_number_list(std::string_view text);

ScenarioSpec parse_scenario(std::istream& in);
ScenarioSpec load_scenario(const std::filesystem::path& path);

}  // namespace wva::experiments
