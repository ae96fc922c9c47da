#include "bosonic/solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <map>
#include <tuple>

#include "bosonic/errors.hpp"
#include "bosonic/random.hpp"
#include "bosonic/sampling.hpp"

namespace bosonic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Half-angle gates: theta + 2 pi flips the sign of both gate modes, so the objective repeats only after 4 pi.
constexpr double kAnglePeriod = 2.0 * kTwoPi;
constexpr std::uint64_t kInitTag = 0x1A17;
constexpr std::size_t kDistributionSectorLimit = 4096;

}  // namespace

void validate(const SolverConfig& c) {
  if (!c.exact && c.samples < 1) throw ConfigurationError("sampled mode needs N_s >= 1");
  if (!(c.eta > 0.0) || !std::isfinite(c.eta)) throw ConfigurationError("learning rate eta must be > 0");
  if (c.max_iterations < 1) throw ConfigurationError("max_iterations must be >= 1");
  if (!(c.plateau_tolerance >= 0.0)) throw ConfigurationError("plateau tolerance must be >= 0");
  if (c.plateau_window < 1) throw ConfigurationError("plateau window must be >= 1");
  if (!(c.observation_threshold >= 0.0 && c.observation_threshold <= 1.0)) {
    throw ConfigurationError("observation threshold must lie in [0, 1]");
  }
  if (!(c.fd_epsilon > 0.0)) throw ConfigurationError("finite-difference epsilon must be > 0");
  if (c.depth < 1) throw ConfigurationError("depth must be >= 1");
}

double objective_energy(const BitStringDistribution& dist, const ObjectiveSpec& spec) {
  double e = 0.0;
  for (const auto& [b, beta] : dist) e += beta * spec.energy(b);
  return e;
}

struct Objective::Impl {
  enum class Mode { Exact, Distribution, Sequential } mode;
  ObjectiveSpec spec;
  double threshold = 0.0;
  std::size_t samples = 0;
  // Dense modes: parity class per basis index, with class energies and bit strings.
  std::unique_ptr<CircuitSimulator> sim;
  std::vector<std::uint32_t> klass;
  std::vector<double> class_energy;
  std::vector<BitString> class_bits;
  std::vector<Complex> amps;
  std::vector<double> probs, beta;
  std::unique_ptr<SequentialSampler> sampler;

  double energy_of(const BitString& b) const {
    const double e = spec.energy(b);
    if (!std::isfinite(e)) throw NumericIntegrityError("bit-string energy is not finite for " + b.to_string());
    return e;
  }
};

Objective::Objective(CircuitSpec circuit, ObjectiveSpec spec, const SolverConfig& config)
    : circuit_(std::move(circuit)),
      parameters_(circuit_.gates.size() * (config.optimize_phases ? 2 : 1)),
      impl_(std::make_unique<Impl>()) {
  validate(config);
  if (!spec.energy) throw ConfigurationError("objective has no energy function");
  impl_->spec = std::move(spec);
  impl_->threshold = config.observation_threshold;
  impl_->samples = config.samples;

  std::uint64_t sector = 0;
  bool sector_fits = true;
  try {
    sector = sector_size(circuit_.modes, circuit_.input.photons());
  } catch (const RefusalError&) {
    sector_fits = false;
  }
  sector_fits = sector_fits && sector <= kDenseSectorLimit;
  if (config.exact) {
    if (!sector_fits) throw RefusalError("exact mode needs a sector of at most " + std::to_string(kDenseSectorLimit) + " patterns");
    impl_->mode = Impl::Mode::Exact;
  } else if (config.backend == SamplingBackend::Distribution ||
             (config.backend == SamplingBackend::Automatic && sector_fits && sector <= kDistributionSectorLimit)) {
    if (!sector_fits) throw RefusalError("distribution sampling needs a dense sector");
    impl_->mode = Impl::Mode::Distribution;
  } else {
    impl_->mode = Impl::Mode::Sequential;
  }

  if (impl_->mode == Impl::Mode::Sequential) {
    if (circuit_.input.photons() > 255) throw ConfigurationError("sequential sampling supports at most 255 photons");
    impl_->sampler = std::make_unique<SequentialSampler>(circuit_);
    return;
  }
  impl_->sim = std::make_unique<CircuitSimulator>(circuit_);
  const auto& patterns = impl_->sim->basis().patterns();
  std::map<BitString, std::uint32_t> ids;
  impl_->klass.reserve(patterns.size());
  for (const auto& p : patterns) {
    BitString b = parity_map(p, impl_->spec.parity);
    auto [it, inserted] = ids.emplace(b, static_cast<std::uint32_t>(impl_->class_bits.size()));
    if (inserted) {
      impl_->class_energy.push_back(impl_->energy_of(b));
      impl_->class_bits.push_back(std::move(b));
    }
    impl_->klass.push_back(it->second);
  }
}

Objective::~Objective() = default;
Objective::Objective(Objective&&) noexcept = default;
Objective& Objective::operator=(Objective&&) noexcept = default;

Objective::Evaluation Objective::evaluate(std::span<const double> angles, std::uint64_t stream_seed) {
  if (angles.size() != parameters_) {
    throw ConfigurationError("expected " + std::to_string(parameters_) + " parameters, got " +
                             std::to_string(angles.size()));
  }
  Impl& im = *impl_;
  Evaluation ev;
  ev.best_energy = std::numeric_limits<double>::infinity();
  auto observe = [&](double e, const BitString& b) {
    if (!ev.observed || e < ev.best_energy) {
      ev.best_energy = e;
      ev.best_bits = b;
    }
    ev.observed = true;
  };

  if (im.mode == Impl::Mode::Sequential) {
    im.sampler->bind(angles);
    RandomStream rng(stream_seed);
    double acc = 0.0;
    for (std::size_t s = 0; s < im.samples; ++s) {
      const BitString b = parity_map(im.sampler->sample(rng), im.spec.parity);
      const double e = im.energy_of(b);
      acc += e;
      observe(e, b);
    }
    ev.energy = acc / static_cast<double>(im.samples);
  } else {
    im.sim->evolve_into(angles, im.amps);
    im.probs.resize(im.amps.size());
    for (std::size_t k = 0; k < im.amps.size(); ++k) im.probs[k] = std::norm(im.amps[k]);
    if (im.mode == Impl::Mode::Exact) {
      im.beta.assign(im.class_bits.size(), 0.0);
      double acc = 0.0;
      for (std::size_t k = 0; k < im.probs.size(); ++k) {
        acc += im.probs[k] * im.class_energy[im.klass[k]];
        im.beta[im.klass[k]] += im.probs[k];
      }
      ev.energy = acc;
      // Observed: every string at or above the threshold, and always the most likely one.
      std::size_t argmax = 0;
      for (std::size_t c = 0; c < im.beta.size(); ++c) {
        if (im.beta[c] > im.beta[argmax]) argmax = c;
        if (im.beta[c] >= im.threshold && im.beta[c] > 0.0) observe(im.class_energy[c], im.class_bits[c]);
      }
      observe(im.class_energy[argmax], im.class_bits[argmax]);
    } else {
      RandomStream rng(stream_seed);
      double acc = 0.0;
      for (auto idx : sample_indices(im.probs, im.samples, rng)) {
        const auto c = im.klass[idx];
        acc += im.class_energy[c];
        observe(im.class_energy[c], im.class_bits[c]);
      }
      ev.energy = acc / static_cast<double>(im.samples);
    }
  }
  if (!std::isfinite(ev.energy)) throw NumericIntegrityError("objective is not finite");
  return ev;
}

double parameter_shift_gradient(const ScalarObjective& f, std::span<const double> angles, std::size_t index) {
  if (index >= angles.size()) throw DomainError("parameter index out of range");
  std::vector<double> shifted(angles.begin(), angles.end());
  shifted[index] = angles[index] + std::numbers::pi / 2;
  const double plus = f(shifted);
  shifted[index] = angles[index] - std::numbers::pi / 2;
  const double minus = f(shifted);
  return (plus - minus) / 2.0;
}

double finite_difference_gradient(const ScalarObjective& f, std::span<const double> angles, std::size_t index,
                                  double epsilon, bool central) {
  if (index >= angles.size()) throw DomainError("parameter index out of range");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  std::vector<double> shifted(angles.begin(), angles.end());
  shifted[index] = angles[index] + epsilon;
  const double plus = f(shifted);
  if (central) {
    shifted[index] = angles[index] - epsilon;
    return (plus - f(shifted)) / (2.0 * epsilon);
  }
  return (plus - f(angles)) / epsilon;
}

std::vector<double> gradient_step(std::span<const double> angles, std::span<const double> gradient, double eta) {
  if (!(eta > 0.0)) throw DomainError("learning rate must be > 0");
  if (angles.size() != gradient.size()) throw DomainError("gradient length differs from the angle count");
  std::vector<double> out(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    double v = std::fmod(angles[k] - eta * gradient[k], kAnglePeriod);
    if (v < 0.0) v += kAnglePeriod;
    if (v >= kAnglePeriod) v = 0.0;
    out[k] = v;
  }
  return out;
}

std::string DescentTrace::tag() const { return "n" + std::to_string(photons) + "_j" + std::to_string(parity); }

SolverResult run_variational(const ProblemSpec& problem, const SolverConfig& config) {
  validate(config);
  const std::size_t m = problem_dimension(problem);
  if (m < 2) throw ConfigurationError("the solver needs at least 2 modes");
  if (config.depth > m - 1) {
    throw ConfigurationError("depth " + std::to_string(config.depth) + " exceeds M-1 = " + std::to_string(m - 1));
  }
  const BitEnergy energy = bitstring_energy(problem);
  SolverResult result;
  result.e_min = std::numeric_limits<double>::infinity();
  const std::uint64_t per_eval = config.exact ? 1 : config.samples;

  const unsigned sectors[2] = {static_cast<unsigned>(m), static_cast<unsigned>(m - 1)};
  std::uint64_t tag = 0;
  for (unsigned n : sectors) {
    for (int j : {0, 1}) {
      DescentTrace trace;
      trace.photons = n;
      trace.parity = j;
      trace.best_energy = std::numeric_limits<double>::infinity();
      Objective objective(make_circuit(m, n, config.depth), ObjectiveSpec{energy, j, n}, config);
      const std::size_t params = objective.parameter_count();

      RandomStream init(derive_seed(config.master_seed, {tag, kInitTag}));
      std::vector<double> angles(params);
      for (auto& a : angles) a = kTwoPi * init.uniform();

      auto track = [&](const Objective::Evaluation& ev) {
        if (!ev.observed) return;
        if (ev.best_energy < trace.best_energy) {
          trace.best_energy = ev.best_energy;
          trace.best_bits = ev.best_bits;
        }
        if (ev.best_energy < result.e_min) {
          result.e_min = ev.best_energy;
          result.b_min = ev.best_bits;
        }
      };

      double best_objective = std::numeric_limits<double>::infinity();
      std::vector<double> best_objective_history;
      std::vector<double> gradient(params);
      for (std::size_t t = 0; t < config.max_iterations; ++t) {
        const auto monitor = objective.evaluate(angles, derive_seed(config.master_seed, {tag, t, params, 0}));
        result.monitor_count += per_eval;
        track(monitor);
        trace.energies.push_back(monitor.energy);
        trace.best_energies.push_back(trace.best_energy);
        best_objective = std::min(best_objective, monitor.energy);
        best_objective_history.push_back(best_objective);
        const std::size_t w = config.plateau_window;
        if (t >= w && best_objective_history[t - w] - best_objective_history[t] < config.plateau_tolerance) {
          trace.plateau_stop = true;
          break;
        }

        for (std::size_t k = 0; k < params; ++k) {
          std::size_t sign = 1;
          auto f = [&](std::span<const double> a) {
            const auto ev = objective.evaluate(a, derive_seed(config.master_seed, {tag, t, k, sign++}));
            result.evaluation_count += per_eval;
            track(ev);
            return ev.energy;
          };
          if (config.gradient == GradientMethod::ParameterShift) {
            gradient[k] = parameter_shift_gradient(f, angles, k);
          } else {
            // Forward difference against the monitor value of this iteration.
            std::vector<double> shifted = angles;
            shifted[k] += config.fd_epsilon;
            gradient[k] = (f(shifted) - monitor.energy) / config.fd_epsilon;
          }
        }
        angles = gradient_step(angles, gradient, config.eta);
        ++trace.gradient_steps;
      }
      trace.final_angles = angles;
      result.descents.push_back(std::move(trace));
      ++tag;
    }
  }
  return result;
}

PortfolioRun run_portfolio(const PortfolioProblem& p, const SolverConfig& config, const std::vector<double>& gammas) {
  validate(p);
  if (gammas.empty()) throw ConfigurationError("no risk-aversion values given");
  PortfolioRun run;
  for (double g : gammas) {
    PortfolioProblem pg = p;
    pg.gamma = g;
    validate(pg);
    SolverResult r = run_variational(ProblemSpec{pg}, config);
    FrontierPoint fp;
    fp.gamma = g;
    fp.energy = r.e_min;
    fp.bits = r.b_min;
    const auto [ret, risk] = portfolio_return_risk(pg, binary_encode_weights(r.b_min, pg.bits_per_asset, pg.assets()));
    fp.ret = ret;
    fp.risk = risk;
    run.frontier.push_back(fp);
    run.results.push_back(std::move(r));
  }
  return run;
}

std::vector<FrontierPoint> random_portfolios(const PortfolioProblem& p, std::size_t count, std::uint64_t seed) {
  validate(p);
  const std::size_t m = p.dimension();
  RandomStream rng(derive_seed(seed, {0x52414E44ULL}));
  std::vector<FrontierPoint> out;
  out.reserve(count);
  while (out.size() < count) {
    std::vector<std::uint8_t> bits(m);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next() >> 63);
    BitString b(std::move(bits));
    if (b.ones() == 0) continue;
    FrontierPoint fp;
    fp.gamma = p.gamma;
    const Eigen::VectorXd w = binary_encode_weights(b, p.bits_per_asset, p.assets());
    std::tie(fp.ret, fp.risk) = portfolio_return_risk(p, w);
    fp.energy = portfolio_energy_normalized(p, w);
    fp.bits = std::move(b);
    out.push_back(std::move(fp));
  }
  return out;
}

}  // namespace bosonic
