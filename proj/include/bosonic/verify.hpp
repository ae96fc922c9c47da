#pragma once

#include <string>
#include <vector>

#include "bosonic/io.hpp"

namespace bosonic {

struct Check {
  std::string name;
  bool passed = false;
  Json detail;
};

struct VerificationReport {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
  Json to_json() const;
};

/// parity-surjectivity, dyck-counts, multiplicities, gradient.
const std::vector<std::string>& verification_suites();

/// Throws ConfigurationError for an unknown suite.
VerificationReport run_verification(const std::string& suite, std::uint64_t seed = 0);

/// Parameter-shift against the analytic derivative of a Schwinger observable, per angle.
struct GradientComparison {
  std::size_t modes = 0;
  std::size_t angle = 0;
  double shift = 0.0;
  double reference = 0.0;
  double difference() const;
};

/// Random circuits with 2 <= M <= max_modes and random Hermitian observables.
std::vector<GradientComparison> schwinger_gradient_checks(std::size_t circuits, std::size_t max_modes,
                                                          std::uint64_t seed);
/// Exact-mode parity objectives of random QUBOs: parameter-shift against the central
/// finite difference with step epsilon.
std::vector<GradientComparison> parity_gradient_checks(std::size_t circuits, std::size_t max_modes, double epsilon,
                                                       std::uint64_t seed);

}  // namespace bosonic
