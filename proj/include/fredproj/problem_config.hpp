#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fredproj/solver.hpp"

namespace fredproj {

/// A problem plus the optional starting coefficients for k.
struct ProblemConfig {
  Problem problem;
  std::optional<Eigen::MatrixXd> k_init;  // (dim - m) x m
};

/// Loads the single-document JSON problem format (top-level keys: space,
/// operator, phi, constraints, k_init, solver; matrices inline or by CSV
/// path relative to the config file). Malformed JSON raises ConfigError
/// with a file:line anchor; semantic problems raise ConfigError naming the
/// offending key.
ProblemConfig load_problem_config(const std::filesystem::path& path);

/// Writes <name>.json plus CSV side files into dir; the result round-trips
/// through load_problem_config.
std::filesystem::path save_problem_config(const std::filesystem::path& dir,
                                          const std::string& name,
                                          const Problem& problem,
                                          const std::optional<Eigen::MatrixXd>&
                                              k_init = std::nullopt);

/// Applies one "key=value" solver override (CLI --override).
void apply_override(SolverSettings& settings, const std::string& spec);

}  // namespace fredproj
