#ifndef LEVSCAT_ERRORS_HPP
#define LEVSCAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace levscat {

/// Adaptive quadrature failed to converge or a tail bound was violated.
class IntegrationError : public std::runtime_error {
public:
  explicit IntegrationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operation requested on a profile that lacks the required smoothness.
class UnsupportedProfileError : public std::runtime_error {
public:
  explicit UnsupportedProfileError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Branch of the scattering phase could not be settled at the top of the grid.
class BranchError : public std::runtime_error {
public:
  explicit BranchError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Zero-energy growing/bounded coefficient ratio too close to the decision
/// threshold; finer solver settings are required.
class InconclusiveResonanceError : public std::runtime_error {
public:
  explicit InconclusiveResonanceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Power-law tail fit produced a non-integrable exponent.
class TailError : public std::runtime_error {
public:
  explicit TailError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Solver produced results outside its own accuracy contract (unitarity,
/// count consistency, failed bracketing).
class SolverAccuracyError : public std::runtime_error {
public:
  explicit SolverAccuracyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Config file violated the schema or a physics constraint.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace levscat

#endif
