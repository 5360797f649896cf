#ifndef LEVSCAT_CONFIG_HPP
#define LEVSCAT_CONFIG_HPP

#include <string>

#include "levscat/potential.hpp"
#include "levscat/radial.hpp"

namespace levscat {

struct OutputSpec {
  std::string format = "csv";  // "csv" | "json"
  std::string path;            // empty = stdout
};

struct RunConfig {
  int n = 0;
  Potential potential = Potential::square_well(3, 0.0, 1.0);
  GridSpec grid{};
  SolverSettings solver{};
  bool tail_fit = true;
  OutputSpec output{};
};

/// Parse and validate a JSON run configuration. Strict: unknown keys are
/// fatal, all constraints checked (k_min > 0, k_max/k_min >= 10, tolerances
/// positive, profile/dimension compatibility, decay-exponent floor).
/// Throws ConfigError with the offending key path.
RunConfig parse_config(const std::string& text);

/// The effective configuration (defaults resolved) as canonical JSON text,
/// embedded into every report for auditability.
std::string echo_config(const RunConfig& cfg);

/// 17-significant-digit, locale-independent float serialization used by every
/// emitter (byte-stable across reruns).
std::string format_double(double x);

}  // namespace levscat

#endif
