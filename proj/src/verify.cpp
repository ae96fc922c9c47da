#include "bosonic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bosonic/combinatorics.hpp"
#include "bosonic/errors.hpp"
#include "bosonic/random.hpp"

namespace bosonic {

namespace {

// The 2x2 block e placed on modes (i, j); other diagonal entries are `rest`.
Eigen::MatrixXcd embedded(std::size_t modes, const TwoModeGate& g, const std::array<Complex, 4>& e, double rest = 1.0) {
  const auto m = static_cast<Eigen::Index>(modes);
  Eigen::MatrixXcd out = rest * Eigen::MatrixXcd::Identity(m, m);
  const auto i = static_cast<Eigen::Index>(g.i), j = static_cast<Eigen::Index>(g.j);
  out(i, i) = e[0];
  out(i, j) = e[1];
  out(j, i) = e[2];
  out(j, j) = e[3];
  return out;
}

// d/dtheta of the single-gate transfer matrix.
std::array<Complex, 4> transfer_derivative(double theta, double psi) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const Complex pre = 0.5 * std::polar(1.0, -psi / 2);
  const Complex ph = std::polar(1.0, psi);
  return {pre * (-s) * ph, pre * c * ph, pre * (-c), pre * (-s)};
}

Eigen::MatrixXcd random_hermitian(std::size_t m, RandomStream& rng) {
  const auto n = static_cast<Eigen::Index>(m);
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) a(r, c) = Complex(rng.normal(), rng.normal());
  }
  return (a + a.adjoint()) / 2.0;
}

CircuitSpec random_layout(std::size_t max_modes, RandomStream& rng, std::size_t min_modes = 2) {
  const std::size_t m = min_modes + rng.next() % (max_modes - min_modes + 1);
  const std::size_t depth = 1 + rng.next() % (m - 1);
  const unsigned n = static_cast<unsigned>(m - rng.next() % 2);
  return make_circuit(m, n, depth);
}

std::vector<double> random_angles(std::size_t count, RandomStream& rng) {
  std::vector<double> a(count);
  for (auto& v : a) v = 2.0 * std::numbers::pi * rng.uniform();
  return a;
}

Check make_check(std::string name, bool passed, Json detail = Json::object()) {
  return Check{std::move(name), passed, std::move(detail)};
}

void dyck_suite(VerificationReport& r) {
  struct Known {
    long k, d1, d2;
    std::uint64_t value;
  };
  for (const Known& q : {Known{7, 2, 1, 28}, Known{6, 2, 2, 19}, Known{6, 1, 1, 14}, Known{6, 3, 3, 20},
                         Known{8, 0, 0, 14}}) {
    const auto got = dyck_count({q.k, q.d1, q.d2});
    r.checks.push_back(make_check("dyck_count(" + std::to_string(q.k) + "," + std::to_string(q.d1) + "," +
                                      std::to_string(q.d2) + ")",
                                  got == q.value, {{"expected", q.value}, {"computed", got}}));
  }
  std::size_t cases = 0, mismatches = 0;
  for (long k = 0; k <= 16; ++k) {
    for (long d1 = 0; d1 <= k; ++d1) {
      for (long d2 = 0; d2 <= k; ++d2) {
        if ((k + d2 - d1) % 2 != 0) continue;
        ++cases;
        if (enumerate_dyck_paths({k, d1, d2}).size() != dyck_count({k, d1, d2})) ++mismatches;
      }
    }
  }
  r.checks.push_back(make_check("enumeration equals closed form for k <= 16", mismatches == 0,
                                {{"cases", cases}, {"mismatches", mismatches}}));
  const auto full = enumerate_basis(4, 3).size();
  r.checks.push_back(make_check("|H+(4,3)| = 20", full == 20, {{"computed", full}}));
  cases = 0;
  mismatches = 0;
  for (std::size_t m = 2; m <= 7; ++m) {
    for (unsigned n : {static_cast<unsigned>(m - 1), static_cast<unsigned>(m)}) {
      for (std::size_t d = 1; d < m; ++d) {
        ++cases;
        if (catalan_basis(m, n, d).size() != dyck_count(catalan_dyck_spec(m, n, d))) ++mismatches;
      }
    }
  }
  r.checks.push_back(make_check("catalan_basis size equals dyck_count for M <= 7", mismatches == 0,
                                {{"cases", cases}, {"mismatches", mismatches}}));
}

void surjectivity_suite(VerificationReport& r) {
  for (std::size_t m = 3; m <= 8; ++m) {
    const auto rep = verify_surjectivity(m, 1, {static_cast<unsigned>(m - 1), static_cast<unsigned>(m)}, {0, 1});
    r.checks.push_back(make_check("depth-1 coverage M=" + std::to_string(m), rep.is_complete,
                                  {{"covered", rep.covered_count()}, {"strings", 1ULL << m}}));
  }
  for (std::size_t m = 2; m <= 7; ++m) {
    const auto ca = full_depth_case_analysis(m);
    r.checks.push_back(make_check("full-depth case analysis M=" + std::to_string(m), ca.disjoint && ca.union_complete,
                                  {{"first_image", ca.first_image},
                                   {"second_image", ca.second_image},
                                   {"disjoint", ca.disjoint},
                                   {"union_complete", ca.union_complete}}));
  }
  for (std::size_t m = 2; m <= 10; ++m) {
    r.checks.push_back(make_check("box bit strings give distinct parities M=" + std::to_string(m),
                                  parity_distinctness_check(m)));
  }
}

void multiplicity_suite(VerificationReport& r) {
  for (unsigned m = 2; m <= 7; ++m) {
    for (unsigned n : {m - 1, m}) {
      const auto basis = enumerate_basis(m, n);
      // Exhaustive: patterns whose first e entries are even and the rest odd.
      std::vector<std::uint64_t> layout(m + 1, 0);
      for (const auto& p : basis.patterns()) {
        unsigned e = 0;
        while (e < m && p[e] % 2 == 0) ++e;
        bool ok = true;
        for (unsigned k = e; k < m; ++k) ok = ok && p[k] % 2 == 1;
        if (ok) ++layout[e];
      }
      std::size_t mismatches = 0;
      std::uint64_t total = 0;
      for (unsigned e = 0; e <= m; ++e) {
        if ((n - m + e) % 2 == 0) {
          const auto u = upsilon0(m, n, e);
          if (u != layout[e]) ++mismatches;
          total += binomial(m, e) * u;
        } else if (layout[e] != 0) {
          ++mismatches;
        }
        // upsilon0' counts the layout with M - e even entries first.
        if ((n - e) % 2 == 0 && upsilon0_prime(m, n, e) != layout[m - e]) ++mismatches;
      }
      const auto sector = sector_size(m, n);
      r.checks.push_back(make_check("multiplicities M=" + std::to_string(m) + " n=" + std::to_string(n),
                                    mismatches == 0 && total == sector,
                                    {{"mismatches", mismatches}, {"weighted_total", total}, {"sector", sector}}));
    }
  }
}

void gradient_suite(VerificationReport& r, std::uint64_t seed) {
  const auto sch = schwinger_gradient_checks(50, 5, seed);
  double worst = 0.0, worst_first = 0.0;
  std::size_t within = 0;
  for (const auto& c : sch) {
    worst = std::max(worst, c.difference());
    if (c.angle == 0) worst_first = std::max(worst_first, c.difference());
    within += c.difference() < 1e-8;
  }
  r.checks.push_back(make_check("parameter shift on Schwinger observables within 1e-8", worst < 1e-8,
                                {{"angles", sch.size()},
                                 {"within_tolerance", within},
                                 {"max_difference", worst},
                                 {"max_difference_first_gate", worst_first}}));
  const auto par = parity_gradient_checks(20, 5, 1e-5, seed);
  Json rows = Json::array();
  std::size_t agree = 0;
  double max_diff = 0.0;
  for (const auto& c : par) {
    const bool ok = c.difference() < 1e-6;
    agree += ok;
    max_diff = std::max(max_diff, c.difference());
    rows.push_back({{"M", c.modes}, {"angle", c.angle}, {"shift", c.shift}, {"central_difference", c.reference},
                    {"difference", c.difference()}, {"agree_1e-6", ok}});
  }
  // A measurement, not an assertion: the shift rule is exact only for frequency-one objectives.
  r.checks.push_back(make_check("parity objective: parameter shift vs central difference (report)", !par.empty(),
                                {{"angles", par.size()}, {"agreeing", agree}, {"max_difference", max_diff},
                                 {"per_angle", rows}}));
}

}  // namespace

double GradientComparison::difference() const { return std::abs(shift - reference); }

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Json VerificationReport::to_json() const {
  Json list = Json::array();
  for (const auto& c : checks) list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"suite", suite}, {"passed", passed()}, {"checks", list}};
}

const std::vector<std::string>& verification_suites() {
  static const std::vector<std::string> names{"parity-surjectivity", "dyck-counts", "multiplicities", "gradient"};
  return names;
}

VerificationReport run_verification(const std::string& suite, std::uint64_t seed) {
  VerificationReport r;
  r.suite = suite;
  if (suite == "parity-surjectivity") surjectivity_suite(r);
  else if (suite == "dyck-counts") dyck_suite(r);
  else if (suite == "multiplicities") multiplicity_suite(r);
  else if (suite == "gradient") gradient_suite(r, seed);
  else throw ConfigurationError("unknown verification suite '" + suite + "'");
  return r;
}

std::vector<GradientComparison> schwinger_gradient_checks(std::size_t circuits, std::size_t max_modes,
                                                          std::uint64_t seed) {
  if (max_modes < 2) throw DomainError("need at least 2 modes");
  RandomStream rng(derive_seed(seed, {0x5C4}));
  std::vector<GradientComparison> out;
  for (std::size_t c = 0; c < circuits; ++c) {
    const CircuitSpec circuit = random_layout(max_modes, rng);
    const auto angles = random_angles(2 * circuit.gate_count(), rng);
    const Eigen::MatrixXcd obs = random_hermitian(circuit.modes, rng);
    const auto gates = bind_angles(circuit, angles);
    for (std::size_t k = 0; k < gates.size(); ++k) {
      ScalarObjective f = [&](std::span<const double> a) { return schwinger_expectation(circuit, a, obs); };
      GradientComparison g;
      g.modes = circuit.modes;
      g.angle = k;
      g.shift = parameter_shift_gradient(f, angles, k);
      Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(circuit.modes, circuit.modes);
      Eigen::MatrixXcd dt = t;
      for (std::size_t q = 0; q < gates.size(); ++q) {
        const auto gq = embedded(circuit.modes, gates[q], gate_transfer(gates[q].theta, gates[q].psi));
        t = t * gq;
        dt = dt * (q == k ? embedded(circuit.modes, gates[q], transfer_derivative(gates[q].theta, gates[q].psi), 0.0) : gq);
      }
      const Eigen::MatrixXcd d = dt * obs * t.adjoint() + t * obs * dt.adjoint();
      double ref = 0.0;
      for (std::size_t a = 0; a < circuit.modes; ++a) ref += circuit.input[a] * d(a, a).real();
      g.reference = ref;
      out.push_back(g);
    }
  }
  return out;
}

std::vector<GradientComparison> parity_gradient_checks(std::size_t circuits, std::size_t max_modes, double epsilon,
                                                       std::uint64_t seed) {
  if (max_modes < 3) throw DomainError("need at least 3 modes");
  RandomStream rng(derive_seed(seed, {0x9A7}));
  std::vector<GradientComparison> out;
  for (std::size_t c = 0; c < circuits; ++c) {
    CircuitSpec circuit = random_layout(max_modes, rng, 3);
    const std::size_t m = circuit.modes;
    Eigen::MatrixXd q(m, m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) q(a, b) = rng.normal();
    }
    const QuboProblem qubo(q);
    SolverConfig cfg;
    Objective objective(circuit, ObjectiveSpec{bitstring_energy(qubo), static_cast<int>(rng.next() % 2),
                                               circuit.input.photons()},
                        cfg);
    const auto angles = random_angles(objective.parameter_count(), rng);
    ScalarObjective f = [&](std::span<const double> a) { return objective.evaluate(a, 0).energy; };
    for (std::size_t k = 0; k < angles.size(); ++k) {
      GradientComparison g;
      g.modes = m;
      g.angle = k;
      g.shift = parameter_shift_gradient(f, angles, k);
      g.reference = finite_difference_gradient(f, angles, k, epsilon, true);
      out.push_back(g);
    }
  }
  return out;
}

}  // namespace bosonic
