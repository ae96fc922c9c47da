#include "bosonic/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "bosonic/errors.hpp"

namespace bosonic {

namespace fs = std::filesystem;

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& rows, const std::string& what) {
  if (!rows.is_array() || rows.empty()) throw DataError(what + ": expected a non-empty array of rows");
  const std::size_t n = rows.size();
  const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  Eigen::MatrixXd m(n, cols);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != cols) {
      throw DataError(what + ": row " + std::to_string(r + 1) + " has the wrong length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!rows[r][c].is_number()) throw DataError(what + ": row " + std::to_string(r + 1) + " is not numeric");
      m(r, c) = rows[r][c].get<double>();
    }
  }
  return m;
}

Eigen::VectorXd vector_from_json(const Json& v, const std::string& what) {
  if (!v.is_array()) throw DataError(what + ": expected an array");
  Eigen::VectorXd out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number()) throw DataError(what + ": entry " + std::to_string(k + 1) + " is not numeric");
    out(k) = v[k].get<double>();
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

const char* gradient_name(GradientMethod g) {
  return g == GradientMethod::ParameterShift ? "parameter-shift" : "finite-difference";
}

const char* backend_name(SamplingBackend b) {
  switch (b) {
    case SamplingBackend::Automatic: return "auto";
    case SamplingBackend::Distribution: return "distribution";
    case SamplingBackend::Sequential: return "sequential";
  }
  return "auto";
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

}  // namespace

Json to_json(const CircuitSpec& c) {
  Json gates = Json::array();
  for (const auto& g : c.gates) gates.push_back({{"i", g.i}, {"j", g.j}, {"theta", g.theta}, {"psi", g.psi}});
  return {{"M", c.modes}, {"depth", c.depth}, {"input", c.input.counts()}, {"gates", gates}};
}

CircuitSpec circuit_from_json(const Json& doc) {
  try {
    CircuitSpec c;
    c.modes = doc.at("M").get<std::size_t>();
    c.depth = doc.at("depth").get<std::size_t>();
    c.input = DetectionPattern(doc.at("input").get<std::vector<DetectionPattern::Count>>());
    for (const auto& g : doc.at("gates")) {
      c.gates.push_back({g.at("i").get<std::size_t>(), g.at("j").get<std::size_t>(), g.value("theta", 0.0),
                         g.value("psi", 0.0)});
    }
    if (c.input.modes() != c.modes) throw ConfigurationError("circuit input length differs from M");
    for (const auto& g : c.gates) {
      if (g.i >= g.j || g.j >= c.modes) throw ConfigurationError("gate modes must satisfy i < j < M");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed circuit document: ") + e.what());
  }
}

Json to_json(const CoverageReport& r) {
  Json mult = Json::object();
  for (const auto& [b, count] : r.multiplicities) mult[b.to_string()] = count;
  Json missing = Json::array();
  for (const auto& b : r.missing) missing.push_back(b.to_string());
  return {{"M", r.modes},          {"depth", r.depth},     {"sectors", r.sectors},
          {"parities", r.parities}, {"covered", r.covered_count()}, {"missing", missing},
          {"multiplicities", mult}};
}

Json to_json(const SolverConfig& c) {
  return {{"depth", c.depth},
          {"exact", c.exact},
          {"samples", c.samples},
          {"eta", c.eta},
          {"max_iterations", c.max_iterations},
          {"plateau_tolerance", c.plateau_tolerance},
          {"plateau_window", c.plateau_window},
          {"master_seed", c.master_seed},
          {"optimize_phases", c.optimize_phases},
          {"observation_threshold", c.observation_threshold},
          {"gradient", gradient_name(c.gradient)},
          {"fd_epsilon", c.fd_epsilon},
          {"backend", backend_name(c.backend)}};
}

SolverConfig solver_config_from_json(const Json& doc, SolverConfig c) {
  if (!doc.is_object()) throw ConfigurationError("solver config must be a JSON object");
  static const std::set<std::string> known{"depth",          "exact",         "samples",
                                           "eta",            "max_iterations", "plateau_tolerance",
                                           "plateau_window", "master_seed",   "optimize_phases",
                                           "observation_threshold", "gradient", "fd_epsilon", "backend"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw ConfigurationError("unknown solver config key '" + key + "'");
  }
  try {
    c.depth = doc.value("depth", c.depth);
    c.exact = doc.value("exact", c.exact);
    c.samples = doc.value("samples", c.samples);
    c.eta = doc.value("eta", c.eta);
    c.max_iterations = doc.value("max_iterations", c.max_iterations);
    c.plateau_tolerance = doc.value("plateau_tolerance", c.plateau_tolerance);
    c.plateau_window = doc.value("plateau_window", c.plateau_window);
    c.master_seed = doc.value("master_seed", c.master_seed);
    c.optimize_phases = doc.value("optimize_phases", c.optimize_phases);
    c.observation_threshold = doc.value("observation_threshold", c.observation_threshold);
    c.fd_epsilon = doc.value("fd_epsilon", c.fd_epsilon);
    if (doc.contains("gradient")) {
      const auto g = doc["gradient"].get<std::string>();
      if (g == "parameter-shift") c.gradient = GradientMethod::ParameterShift;
      else if (g == "finite-difference") c.gradient = GradientMethod::FiniteDifference;
      else throw ConfigurationError("unknown gradient method '" + g + "'");
    }
    if (doc.contains("backend")) {
      const auto b = doc["backend"].get<std::string>();
      if (b == "auto") c.backend = SamplingBackend::Automatic;
      else if (b == "distribution") c.backend = SamplingBackend::Distribution;
      else if (b == "sequential") c.backend = SamplingBackend::Sequential;
      else throw ConfigurationError("unknown sampling backend '" + b + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("malformed solver config: ") + e.what());
  }
  validate(c);
  return c;
}

Json to_json(const ProblemSpec& problem) {
  return std::visit(
      [](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, QuboProblem>) {
          return {{"kind", "qubo"}, {"matrix", matrix_json(p.matrix())}};
        } else if constexpr (std::is_same_v<T, IsingProblem>) {
          std::vector<double> h(p.fields.data(), p.fields.data() + p.fields.size());
          return {{"kind", "ising"}, {"couplings", matrix_json(p.couplings)}, {"fields", h}, {"constant", p.constant}};
        } else if constexpr (std::is_same_v<T, MobiusProblem>) {
          return {{"kind", "mobius"}, {"n", p.spins()}, {"ja", p.ja()}, {"jb", p.jb()}};
        } else {
          std::vector<double> mu(p.mu.data(), p.mu.data() + p.mu.size());
          return {{"kind", "portfolio"},
                  {"mu", mu},
                  {"sigma", matrix_json(p.sigma)},
                  {"gamma", p.gamma},
                  {"bits_per_asset", p.bits_per_asset},
                  {"approach", p.approach == PortfolioApproach::Normalized ? "normalized" : "penalty"},
                  {"penalty_b", p.penalty_b},
                  {"zero_penalty", p.zero_penalty}};
        }
      },
      problem);
}

ProblemSpec problem_from_json(const Json& doc, const fs::path& base_dir) {
  try {
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "qubo") {
      if (doc.contains("path")) return read_qubo(resolve(base_dir, doc["path"].get<std::string>()));
      return QuboProblem(matrix_from_json(doc.at("matrix"), "qubo matrix"));
    }
    if (kind == "ising") {
      IsingProblem p;
      p.couplings = matrix_from_json(doc.at("couplings"), "ising couplings");
      p.fields = vector_from_json(doc.at("fields"), "ising fields");
      p.constant = doc.value("constant", 0.0);
      if (p.couplings.rows() != p.fields.size() || p.couplings.cols() != p.fields.size()) {
        throw DataError("ising couplings and fields differ in size");
      }
      return p;
    }
    if (kind == "mobius") {
      return MobiusProblem(doc.at("n").get<std::size_t>(), doc.at("ja").get<double>(), doc.at("jb").get<double>());
    }
    if (kind == "portfolio") {
      Eigen::VectorXd mu;
      Eigen::MatrixXd sigma;
      if (doc.contains("prices")) {
        const auto stats = portfolio_returns_from_prices(read_prices_csv(resolve(base_dir, doc["prices"].get<std::string>())));
        mu = stats.mu;
        sigma = stats.sigma;
      } else if (doc.contains("synthetic")) {
        const auto& s = doc["synthetic"];
        const auto stats = portfolio_returns_from_prices(synthetic_prices(
            s.at("assets").get<std::size_t>(), s.value("days", std::size_t{500}), s.value("seed", std::uint64_t{0})));
        mu = stats.mu;
        sigma = stats.sigma;
      } else {
        mu = vector_from_json(doc.at("mu"), "portfolio mu");
        sigma = matrix_from_json(doc.at("sigma"), "portfolio sigma");
      }
      if (sigma.rows() != mu.size() || sigma.cols() != mu.size()) throw DataError("mu and Sigma differ in size");
      const auto approach_name = doc.value("approach", std::string("normalized"));
      PortfolioApproach approach;
      if (approach_name == "normalized") approach = PortfolioApproach::Normalized;
      else if (approach_name == "penalty") approach = PortfolioApproach::PenaltyQubo;
      else throw ConfigurationError("unknown portfolio approach '" + approach_name + "'");
      PortfolioProblem p = make_portfolio(std::move(mu), std::move(sigma), doc.value("gamma", 1.0),
                                          doc.value("bits_per_asset", 1u), approach);
      p.penalty_b = doc.value("penalty_b", p.penalty_b);
      p.zero_penalty = doc.value("zero_penalty", p.zero_penalty);
      validate(p);
      return p;
    }
    throw ConfigurationError("unknown problem kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed problem document: ") + e.what());
  }
}

Json to_json(const SolverResult& r) {
  Json descents = Json::array();
  for (const auto& d : r.descents) {
    descents.push_back({{"config_tag", d.tag()},
                        {"photons", d.photons},
                        {"parity", d.parity},
                        {"gradient_steps", d.gradient_steps},
                        {"plateau_stop", d.plateau_stop},
                        {"best_energy", number_or_null(d.best_energy)},
                        {"best_bitstring", d.best_bits.to_string()},
                        {"final_objective", d.energies.empty() ? Json(nullptr) : Json(d.energies.back())},
                        {"final_angles", d.final_angles}});
  }
  return {{"e_min", number_or_null(r.e_min)},
          {"b_min", r.b_min.to_string()},
          {"evaluation_count", r.evaluation_count},
          {"monitor_count", r.monitor_count},
          {"descents", descents}};
}

Json to_json(const FrontierPoint& p) {
  return {{"gamma", p.gamma}, {"risk", p.risk}, {"return", p.ret}, {"energy", number_or_null(p.energy)},
          {"bitstring", p.bits.to_string()}};
}

Json to_json(const YoungLattice& lattice) {
  Json vertices = Json::array();
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    const auto& f = lattice.vertices()[k];
    const DetectionPattern p = cascade_ferrers_to_pattern(f);
    vertices.push_back({{"id", k},
                        {"diagram", f.columns()},
                        {"pattern", p.counts()},
                        {"bits", parity_map(p, 0).to_string()}});
  }
  Json edges = Json::array();
  for (const auto& [a, b] : lattice.cover_edges()) edges.push_back({a, b});
  return {{"top", lattice.mu().columns()}, {"vertices", vertices}, {"edges", edges}};
}

std::string learning_curve_csv(const SolverResult& r) {
  std::string out = "config_tag,iteration,energy,best_energy\n";
  for (const auto& d : r.descents) {
    for (std::size_t t = 0; t < d.energies.size(); ++t) {
      out += d.tag() + "," + std::to_string(t) + "," + format_double(d.energies[t]) + "," +
             format_double(d.best_energies[t]) + "\n";
    }
  }
  return out;
}

std::string frontier_csv(const std::vector<FrontierPoint>& points) {
  std::string out = "gamma,risk,return,bitstring\n";
  for (const auto& p : points) {
    out += format_double(p.gamma) + "," + format_double(p.risk) + "," + format_double(p.ret) + "," +
           p.bits.to_string() + "\n";
  }
  return out;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  if (!out) throw DataError("failed writing " + path.string());
}

Eigen::MatrixXd read_matrix_csv(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> values;
    for (const auto& cell : split_csv_line(line)) {
      double v;
      if (!parse_double(cell, v) || !std::isfinite(v)) {
        throw DataError(path.string() + ": row " + std::to_string(row) + ": '" + cell + "' is not a number");
      }
      values.push_back(v);
    }
    if (!rows.empty() && values.size() != rows.front().size()) {
      throw DataError(path.string() + ": row " + std::to_string(row) + " has " + std::to_string(values.size()) +
                      " entries, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw DataError(path.string() + ": no data");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QuboProblem read_qubo(const fs::path& path) {
  Eigen::MatrixXd m;
  if (path.extension() == ".json") {
    Json doc;
    try {
      doc = Json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(path.string() + ": " + e.what());
    }
    m = matrix_from_json(doc.is_object() ? doc.at("matrix") : doc, path.string());
  } else {
    m = read_matrix_csv(path);
  }
  if (m.rows() != m.cols()) throw DataError(path.string() + ": QUBO matrix must be square");
  return QuboProblem(std::move(m));
}

PriceTable read_prices_csv(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
  const auto header = split_csv_line(line);
  if (header.size() < 2) throw DataError(path.string() + ": header needs a date column and at least one asset");
  PriceTable t;
  t.assets.assign(header.begin() + 1, header.end());
  std::vector<std::vector<double>> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw DataError(path.string() + ": row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                      " columns, expected " + std::to_string(header.size()));
    }
    t.dates.push_back(cells[0]);
    std::vector<double> values;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      double v;
      if (cells[c].empty() || cells[c] == "NA" || cells[c] == "NaN" || cells[c] == "nan") {
        v = std::numeric_limits<double>::quiet_NaN();
      } else if (!parse_double(cells[c], v)) {
        throw DataError(path.string() + ": row " + std::to_string(row) + ": '" + cells[c] + "' is not a number");
      }
      values.push_back(v);
    }
    rows.push_back(std::move(values));
  }
  t.prices.resize(rows.size(), t.assets.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) t.prices(r, c) = rows[r][c];
  }
  return t;
}

}  // namespace bosonic
