#pragma once

#include <stdexcept>
#include <string>

namespace esg {

// Invalid configuration; message names the offending field.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

// Action outside the bounds declared by the environment config.
struct ActionError : std::runtime_error {
  explicit ActionError(const std::string& m) : std::runtime_error(m) {}
};

// Precondition violation in the analytic dilemma engine (bad lag, degenerate
// world, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};

// Sign-flip equation has no solution for the given world.
struct NoFlipError : DomainError {
  explicit NoFlipError(const std::string& m) : DomainError(m) {}
};

// Root bracketing failed; message carries the diagnostic endpoint values.
struct SearchError : std::runtime_error {
  explicit SearchError(const std::string& m) : std::runtime_error(m) {}
};

// Non-finite loss/gradient during optimization; message names the batch.
struct TrainingError : std::runtime_error {
  explicit TrainingError(const std::string& m) : std::runtime_error(m) {}
};

// Filesystem / serialization failure with path context.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace esg
