#include "bosonic/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>

#include "bosonic/errors.hpp"
#include "bosonic/io.hpp"
#include "bosonic/lattice.hpp"
#include "bosonic/verify.hpp"

namespace bosonic {

namespace fs = std::filesystem;

namespace {

constexpr const char* kCsvSchemas =
    "CSV outputs:\n"
    "  learning curve : config_tag,iteration,energy,best_energy\n"
    "  frontier/random: gamma,risk,return,bitstring\n"
    "Every result JSON holds run_config (problem inline, solver settings, master_seed);\n"
    "pass it back with --config to replay the run.";

struct SolverFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool exact = false;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> depth;
  std::optional<double> eta;
  std::optional<std::size_t> iterations;
  std::optional<double> threshold;
  std::string backend;
  bool phases = false;
  std::string output;
  std::string name;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f, const std::string& default_name) {
  f.name = default_name;
  cmd->add_option("--config", f.config_path, "run config JSON, or a previous result JSON to replay");
  cmd->add_option("--seed", f.seed, "master seed");
  auto* exact = cmd->add_flag("--exact", f.exact, "objective from the full output distribution");
  cmd->add_option("--samples", f.samples, "N_s shots per evaluation (sampled mode)")->excludes(exact);
  cmd->add_option("--depth", f.depth, "number of Reck slices");
  cmd->add_option("--eta", f.eta, "learning rate");
  cmd->add_option("--iterations", f.iterations, "maximum iterations per descent");
  cmd->add_option("--threshold", f.threshold, "exact-mode observation threshold on bit-string mass");
  cmd->add_option("--backend", f.backend, "sampling backend")->check(CLI::IsMember({"auto", "distribution", "sequential"}));
  cmd->add_flag("--phases", f.phases, "optimize phase-shifter angles as well");
  cmd->add_option("--output", f.output, std::string("output directory (default $") + kOutputDirEnv + " or .)");
  cmd->add_option("--name", f.name, "file name prefix");
}

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

// Loads --config; a result document is unwrapped to its run_config.
Json load_run_config(const std::string& path, const std::string& command) {
  if (path.empty()) return Json::object();
  Json doc;
  try {
    doc = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path + ": " + e.what());
  }
  if (doc.contains("run_config")) doc = doc["run_config"];
  if (!doc.is_object()) throw ConfigurationError(path + ": config must be a JSON object");
  if (doc.contains("command") && doc["command"] != command) {
    throw ConfigurationError(path + ": config is for '" + doc["command"].get<std::string>() + "', not '" + command + "'");
  }
  return doc;
}

SolverConfig resolve_solver(const Json& doc, const SolverFlags& f, SolverConfig base) {
  if (doc.contains("solver")) base = solver_config_from_json(doc["solver"], base);
  if (f.seed) base.master_seed = *f.seed;
  if (f.exact) {
    base.exact = true;
    base.samples = 0;
  }
  if (f.samples) {
    base.exact = false;
    base.samples = *f.samples;
  }
  if (f.depth) base.depth = *f.depth;
  if (f.eta) base.eta = *f.eta;
  if (f.iterations) base.max_iterations = *f.iterations;
  if (f.threshold) base.observation_threshold = *f.threshold;
  if (f.phases) base.optimize_phases = true;
  if (!f.backend.empty()) base = solver_config_from_json(Json{{"backend", f.backend}}, base);
  validate(base);
  return base;
}

fs::path config_dir(const std::string& path) {
  return path.empty() ? fs::path() : fs::path(path).parent_path();
}

int finish_solver_output(const SolverResult& r, Json doc, const fs::path& dir, const std::string& name,
                         std::ostream& out) {
  doc["result"] = to_json(r);
  const fs::path json_path = dir / (name + "_result.json");
  const fs::path csv_path = dir / (name + "_curve.csv");
  write_text_file(json_path, doc.dump(2) + "\n");
  write_text_file(csv_path, learning_curve_csv(r));
  out << "E_min " << (std::isfinite(r.e_min) ? std::to_string(r.e_min) : "none") << " b_min " << r.b_min.to_string()
      << "\nwrote " << json_path.string() << "\nwrote " << csv_path.string() << "\n";
  return std::isfinite(r.e_min) ? 0 : 1;
}

int cmd_solve_qubo(const SolverFlags& f, const std::string& matrix, std::ostream& out) {
  const Json doc = load_run_config(f.config_path, "solve-qubo");
  std::optional<ProblemSpec> problem;
  if (!matrix.empty()) problem = read_qubo(matrix);
  else if (doc.contains("problem")) problem = problem_from_json(doc["problem"], config_dir(f.config_path));
  else throw ConfigurationError("no QUBO matrix given (--matrix or a config with a problem)");
  const SolverConfig cfg = resolve_solver(doc, f, {});
  Json result{{"run_config", {{"command", "solve-qubo"}, {"problem", to_json(*problem)}, {"solver", to_json(cfg)}}}};
  return finish_solver_output(run_variational(*problem, cfg), std::move(result), output_dir(f.output), f.name, out);
}

int cmd_solve_mobius(const SolverFlags& f, std::optional<std::size_t> n, std::optional<double> ja,
                     std::optional<double> jb, std::ostream& out) {
  const Json doc = load_run_config(f.config_path, "solve-mobius");
  Json pdoc = doc.value("problem", Json{{"kind", "mobius"}, {"n", 8}, {"ja", 0.5}, {"jb", -0.2}});
  if (n) pdoc["n"] = *n;
  if (ja) pdoc["ja"] = *ja;
  if (jb) pdoc["jb"] = *jb;
  const ProblemSpec problem = problem_from_json(pdoc);
  const double analytic = mobius_min(std::get<MobiusProblem>(problem));
  const SolverConfig cfg = resolve_solver(doc, f, {});
  Json result{{"run_config", {{"command", "solve-mobius"}, {"problem", to_json(problem)}, {"solver", to_json(cfg)}}},
              {"analytic_minimum", analytic}};
  return finish_solver_output(run_variational(problem, cfg), std::move(result), output_dir(f.output), f.name, out);
}

struct PortfolioFlags {
  std::string prices, mu, sigma;
  std::optional<std::size_t> synthetic;
  std::size_t days = 500;
  std::uint64_t data_seed = 0;
  std::vector<double> gammas;
  std::optional<unsigned> bits;
  std::string approach;
  std::optional<std::size_t> random;
};

Eigen::VectorXd read_vector_csv(const std::string& path) {
  const Eigen::MatrixXd m = read_matrix_csv(path);
  if (m.rows() != 1 && m.cols() != 1) throw DataError(path + ": expected a single row or column");
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

int cmd_solve_portfolio(const SolverFlags& f, const PortfolioFlags& pf, std::ostream& out) {
  const Json doc = load_run_config(f.config_path, "solve-portfolio");
  Json pdoc = doc.value("problem", Json{{"kind", "portfolio"}});
  auto drop_data = [&] {
    for (const char* k : {"mu", "sigma", "prices", "synthetic"}) pdoc.erase(k);
  };
  if (!pf.prices.empty()) {
    drop_data();
    pdoc["prices"] = fs::absolute(pf.prices).string();
  } else if (pf.synthetic) {
    drop_data();
    pdoc["synthetic"] = {{"assets", *pf.synthetic}, {"days", pf.days}, {"seed", pf.data_seed}};
  } else if (!pf.mu.empty() || !pf.sigma.empty()) {
    if (pf.mu.empty() || pf.sigma.empty()) throw ConfigurationError("--mu and --sigma go together");
    drop_data();
    const Eigen::VectorXd mu = read_vector_csv(pf.mu);
    const Eigen::MatrixXd sigma = read_matrix_csv(pf.sigma);
    pdoc["mu"] = std::vector<double>(mu.data(), mu.data() + mu.size());
    pdoc["sigma"] = to_json(ProblemSpec{IsingProblem{sigma, Eigen::VectorXd::Zero(sigma.rows()), 0.0}})["couplings"];
  }
  if (pf.bits) pdoc["bits_per_asset"] = *pf.bits;
  if (!pf.approach.empty()) pdoc["approach"] = pf.approach;
  if (!pdoc.contains("mu") && !pdoc.contains("prices") && !pdoc.contains("synthetic")) {
    throw ConfigurationError("no portfolio data given (--prices, --mu/--sigma or --synthetic)");
  }
  const PortfolioProblem problem = std::get<PortfolioProblem>(problem_from_json(pdoc, config_dir(f.config_path)));
  std::vector<double> gammas = pf.gammas;
  if (gammas.empty()) gammas = doc.value("gammas", std::vector<double>{1.0});
  const std::size_t random = pf.random.value_or(doc.value("random_portfolios", std::size_t{0}));
  const SolverConfig cfg = resolve_solver(doc, f, {});

  Json run_config{{"command", "solve-portfolio"}, {"problem", to_json(ProblemSpec{problem})}, {"solver", to_json(cfg)},
                  {"gammas", gammas}, {"random_portfolios", random}};
  const fs::path dir = output_dir(f.output);
  const PortfolioRun run = run_portfolio(problem, cfg, gammas);
  Json per_gamma = Json::array();
  bool ok = true;
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    const std::string stem = f.name + "_gamma" + std::to_string(k);
    Json single = run_config;
    single["gamma_index"] = k;
    single["result"] = to_json(run.results[k]);
    single["frontier_point"] = to_json(run.frontier[k]);
    write_text_file(dir / (stem + "_result.json"), single.dump(2) + "\n");
    write_text_file(dir / (stem + "_curve.csv"), learning_curve_csv(run.results[k]));
    per_gamma.push_back(to_json(run.frontier[k]));
    ok = ok && std::isfinite(run.results[k].e_min);
  }
  write_text_file(dir / (f.name + "_frontier.csv"), frontier_csv(run.frontier));
  Json summary{{"run_config", run_config}, {"frontier", per_gamma}};
  if (random > 0) {
    write_text_file(dir / (f.name + "_random.csv"), frontier_csv(random_portfolios(problem, random, cfg.master_seed)));
  }
  write_text_file(dir / (f.name + "_result.json"), summary.dump(2) + "\n");
  out << frontier_csv(run.frontier) << "wrote " << (dir / (f.name + "_result.json")).string() << "\n";
  return ok ? 0 : 1;
}

int cmd_enumerate(std::size_t m, unsigned n, std::size_t depth, bool json, std::ostream& out) {
  const DyckSpec spec = catalan_dyck_spec(m, n, depth);
  const auto closed = dyck_count(spec);
  const auto basis = catalan_basis(m, n, depth);
  if (json) {
    Json patterns = Json::array();
    for (const auto& p : basis) patterns.push_back(p.to_string());
    out << Json{{"M", m}, {"n", n}, {"depth", depth}, {"dyck", {spec.k, spec.delta1, spec.delta2}},
                {"closed_form", closed}, {"count", basis.size()}, {"patterns", patterns}}
               .dump(2)
        << "\n";
  } else {
    out << "M=" << m << " n=" << n << " depth=" << depth << "\n"
        << "dyck=(" << spec.k << "," << spec.delta1 << "," << spec.delta2 << ") closed_form=" << closed
        << " count=" << basis.size() << "\n";
    for (const auto& p : basis) out << p.to_string() << "\n";
  }
  return basis.size() == closed ? 0 : 1;
}

std::vector<unsigned> parse_uint_list(const std::string& text) {
  std::vector<unsigned> out;
  std::string t;
  for (char ch : text) {
    if (ch != '(' && ch != ')' && ch != ' ') t += ch;
  }
  std::istringstream in(t);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    if (cell.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != cell.size()) throw ConfigurationError("'" + cell + "' is not a non-negative integer");
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

struct LatticeFlags {
  std::optional<std::string> mu;
  std::string catalan;
  std::vector<unsigned> boolean;
  std::string counting = "interval";
  std::string format = "text";
  std::string output;
  bool ordinal = false;
};

int cmd_lattice(const LatticeFlags& lf, std::ostream& out) {
  std::optional<YoungLattice> lattice;
  if (!lf.catalan.empty()) {
    const auto v = parse_uint_list(lf.catalan);
    if (v.size() != 3) throw ConfigurationError("--catalan expects M,n,depth");
    lattice = catalan_lattice(v[0], v[1], v[2]);
  } else if (lf.mu) {
    const auto mu = parse_uint_list(*lf.mu);
    for (std::size_t k = 1; k < mu.size(); ++k) {
      if (mu[k] < mu[k - 1]) throw ConfigurationError("mu must be non-decreasing");
    }
    lattice = young_lattice(ExtendedFerrers::from_partition(mu));
  } else {
    throw ConfigurationError("give --mu or --catalan");
  }
  const BooleanCounting counting = lf.counting == "sublattice" ? BooleanCounting::Sublattice : BooleanCounting::Interval;
  Json doc = to_json(*lattice);
  std::string text = export_lattice_text(*lattice);
  Json counts = Json::object();
  for (unsigned k : lf.boolean) {
    const auto c = count_boolean_sublattices(*lattice, k, counting);
    counts["B" + std::to_string(k)] = c;
    text += "# B" + std::to_string(k) + " " + lf.counting + " count " + std::to_string(c) + "\n";
  }
  if (!lf.boolean.empty()) doc["boolean_counts"] = {{"definition", lf.counting}, {"counts", counts}};
  if (lf.ordinal) {
    const auto os = ordinal_sum_decomposition(*lattice);
    doc["ordinal_sum"] = os.to_string();
    text += "# ordinal sum " + os.to_string() + "\n";
  }
  const std::string payload = lf.format == "json" ? doc.dump(2) + "\n" : text;
  if (lf.output.empty()) {
    out << payload;
  } else {
    write_text_file(lf.output, payload);
    out << "wrote " << lf.output << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& out) {
  const auto report = run_verification(suite, seed);
  out << report.to_json().dump(2) << "\n";
  return report.passed() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational boson-sampling solver and lattice enumerator"};
  app.footer(kCsvSchemas);
  app.require_subcommand(1);

  SolverFlags qf, mf, pflags;
  std::string matrix;
  auto* qubo = app.add_subcommand("solve-qubo", "minimize x^T Q x");
  add_solver_flags(qubo, qf, "qubo");
  qubo->add_option("--matrix", matrix, "QUBO matrix (header-free CSV or JSON)");

  std::optional<std::size_t> n;
  std::optional<double> ja, jb;
  auto* mobius = app.add_subcommand("solve-mobius", "Moebius ladder Ising ground state");
  add_solver_flags(mobius, mf, "mobius");
  mobius->add_option("--n", n, "number of spins (even, >= 4)");
  mobius->add_option("--ja", ja, "ring coupling");
  mobius->add_option("--jb", jb, "rung coupling");

  PortfolioFlags pf;
  auto* portfolio = app.add_subcommand("solve-portfolio", "efficient frontier over risk aversion values");
  add_solver_flags(portfolio, pflags, "portfolio");
  portfolio->add_option("--prices", pf.prices, "price CSV: date,<asset>,...");
  portfolio->add_option("--mu", pf.mu, "expected returns CSV");
  portfolio->add_option("--sigma", pf.sigma, "covariance CSV");
  portfolio->add_option("--synthetic", pf.synthetic, "generate prices for this many assets");
  portfolio->add_option("--days", pf.days, "days of synthetic prices");
  portfolio->add_option("--data-seed", pf.data_seed, "seed of synthetic prices");
  portfolio->add_option("--gamma", pf.gammas, "risk aversion values (default 1)")->delimiter(',');
  portfolio->add_option("--bits", pf.bits, "bits per asset");
  portfolio->add_option("--approach", pf.approach, "objective")->check(CLI::IsMember({"normalized", "penalty"}));
  portfolio->add_option("--random", pf.random, "random-portfolio baseline draws");

  std::size_t em = 0, edepth = 0;
  unsigned en = 0;
  bool ejson = false;
  auto* enumerate = app.add_subcommand("enumerate", "list the depth-limited basis of (M, n)");
  enumerate->add_option("M", em)->required();
  enumerate->add_option("n", en)->required();
  enumerate->add_option("depth", edepth)->required();
  enumerate->add_flag("--json", ejson);

  LatticeFlags lf;
  auto* lattice = app.add_subcommand("lattice", "export a Young lattice with diagram, pattern and bit-string labels");
  lattice->add_option("--mu", lf.mu, "partition, e.g. 2,3,4 (empty for the trivial lattice)");
  lattice->add_option("--catalan", lf.catalan, "M,n,depth");
  lattice->add_option("--boolean", lf.boolean, "count B_k sublattices")->delimiter(',');
  lattice->add_option("--counting", lf.counting)->check(CLI::IsMember({"interval", "sublattice"}));
  lattice->add_option("--format", lf.format)->check(CLI::IsMember({"text", "json"}));
  lattice->add_option("--output", lf.output, "file (default stdout)");
  lattice->add_flag("--ordinal-sum", lf.ordinal, "greedy Boolean ordinal-sum decomposition");

  std::string suite;
  std::uint64_t vseed = 0;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "parity-surjectivity | dyck-counts | multiplicities | gradient")->required();
  verify->add_option("--seed", vseed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*qubo) return cmd_solve_qubo(qf, matrix, out);
    if (*mobius) return cmd_solve_mobius(mf, n, ja, jb, out);
    if (*portfolio) return cmd_solve_portfolio(pflags, pf, out);
    if (*enumerate) return cmd_enumerate(em, en, edepth, ejson, out);
    if (*lattice) return cmd_lattice(lf, out);
    if (*verify) return cmd_verify(suite, vseed, out);
  } catch (const NumericIntegrityError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 1;
  } catch (const RefusalError& e) {
    err << "refused: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace bosonic
