#pragma once

#include "diracqes/model.hpp"

#include <string>

namespace diracqes {

/// Problem-instance file with keys geometry, M, kappa, mu_n, alpha, beta,
/// alpha_poly, beta_poly, gamma_poly.
std::string to_json(const ProblemInstance& inst, int indent = 2);
/// Throws ConfigError on malformed input, ValidationError on invalid content.
ProblemInstance instance_from_json(const std::string& text);
ProblemInstance load_instance(const std::string& path);

} // namespace diracqes
