#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bosonic/interferometer.hpp"
#include "bosonic/parity.hpp"
#include "bosonic/problems.hpp"

namespace bosonic {

enum class GradientMethod { ParameterShift, FiniteDifference };
enum class SamplingBackend { Automatic, Distribution, Sequential };

struct SolverConfig {
  std::size_t depth = 1;
  bool exact = true;
  std::size_t samples = 0;  // N_s per evaluation in sampled mode
  double eta = 1.0;
  std::size_t max_iterations = 100;
  double plateau_tolerance = 1e-4;
  std::size_t plateau_window = 20;
  std::uint64_t master_seed = 0;
  bool optimize_phases = false;
  // Exact mode counts a bit string as observed when its mass reaches this value.
  double observation_threshold = 0.01;
  GradientMethod gradient = GradientMethod::ParameterShift;
  double fd_epsilon = 1e-5;
  SamplingBackend backend = SamplingBackend::Automatic;
};

/// Throws ConfigurationError on invalid settings.
void validate(const SolverConfig& config);

struct ObjectiveSpec {
  BitEnergy energy;
  int parity = 0;
  unsigned photons = 0;
};

/// sum_b beta_b E(b).
double objective_energy(const BitStringDistribution& dist, const ObjectiveSpec& spec);

/// Objective of one (n, j) configuration on a fixed circuit layout.
class Objective {
 public:
  struct Evaluation {
    double energy = 0.0;
    bool observed = false;  // whether any bit string was observed
    double best_energy = 0.0;
    BitString best_bits;
  };

  Objective(CircuitSpec circuit, ObjectiveSpec spec, const SolverConfig& config);
  ~Objective();
  Objective(Objective&&) noexcept;
  Objective& operator=(Objective&&) noexcept;

  /// Throws NumericIntegrityError when the energy is not finite.
  Evaluation evaluate(std::span<const double> angles, std::uint64_t stream_seed);
  std::size_t parameter_count() const noexcept { return parameters_; }
  const CircuitSpec& circuit() const noexcept { return circuit_; }

 private:
  struct Impl;
  CircuitSpec circuit_;
  std::size_t parameters_;
  std::unique_ptr<Impl> impl_;
};

using ScalarObjective = std::function<double(std::span<const double>)>;

/// (E(theta_i + pi/2) - E(theta_i - pi/2)) / 2.
double parameter_shift_gradient(const ScalarObjective& f, std::span<const double> angles, std::size_t index);

/// (E(theta_i + eps) - E(theta_i)) / eps, or the central difference when central is set.
double finite_difference_gradient(const ScalarObjective& f, std::span<const double> angles, std::size_t index,
                                  double epsilon, bool central = false);

/// theta - eta * gradient, each angle reduced to [0, 4 pi), the period of a half-angle gate.
std::vector<double> gradient_step(std::span<const double> angles, std::span<const double> gradient, double eta);

struct DescentTrace {
  unsigned photons = 0;
  int parity = 0;
  std::vector<double> energies;       // objective per iteration
  std::vector<double> best_energies;  // lowest observed bit-string energy so far
  std::vector<double> final_angles;
  std::size_t gradient_steps = 0;
  bool plateau_stop = false;
  double best_energy = 0.0;
  BitString best_bits;

  std::string tag() const;
};

struct SolverResult {
  double e_min = 0.0;
  BitString b_min;
  std::vector<DescentTrace> descents;
  std::uint64_t evaluation_count = 0;  // shots (or exact evaluations) spent on gradients
  std::uint64_t monitor_count = 0;     // shots (or exact evaluations) spent on learning-curve points
};

/// Four descents over (n, j) in the order (M,0), (M,1), (M-1,0), (M-1,1).
SolverResult run_variational(const ProblemSpec& problem, const SolverConfig& config);

struct FrontierPoint {
  double gamma = 0.0;
  double risk = 0.0;
  double ret = 0.0;
  double energy = 0.0;
  BitString bits;
};

struct PortfolioRun {
  std::vector<SolverResult> results;
  std::vector<FrontierPoint> frontier;
};

/// One run per gamma on copies of p with that risk aversion.
PortfolioRun run_portfolio(const PortfolioProblem& p, const SolverConfig& config, const std::vector<double>& gammas);

/// Return/risk of random binary allocations (non-empty bit strings, uniform).
std::vector<FrontierPoint> random_portfolios(const PortfolioProblem& p, std::size_t count, std::uint64_t seed);

}  // namespace bosonic
