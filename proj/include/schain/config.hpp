#pragma once

#include <string>

#include "schain/driver.hpp"

namespace schain {

/// Applies a flat `key = value` config file to `config`. Recognized keys:
/// k, alpha, gamma, epsilon, max_iter, seed, tol_f, kmeans_restarts.
/// '#' comments and blank lines are skipped; unknown keys are usage errors.
void apply_config_file(const std::string& path, SchainConfig& config);

void apply_config_text(const std::string& text, SchainConfig& config);

}  // namespace schain
