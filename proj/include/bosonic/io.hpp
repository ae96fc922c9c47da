#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "bosonic/interferometer.hpp"
#include "bosonic/lattice.hpp"
#include "bosonic/parity.hpp"
#include "bosonic/problems.hpp"
#include "bosonic/solver.hpp"

namespace bosonic {

using Json = nlohmann::ordered_json;

/// {M, depth, input, gates: [{i, j, theta, psi}]}
Json to_json(const CircuitSpec& circuit);
CircuitSpec circuit_from_json(const Json& doc);

/// {M, depth, sectors, parities, covered, missing, multiplicities}
Json to_json(const CoverageReport& report);

/// Every field written explicitly so a replay does not depend on defaults.
Json to_json(const SolverConfig& config);
/// Fields absent from doc keep the value in base; unknown keys are a ConfigurationError.
SolverConfig solver_config_from_json(const Json& doc, SolverConfig base = {});

/// Problems serialize inline (matrices included) so outputs replay without the input files.
Json to_json(const ProblemSpec& problem);
/// Accepts the inline form plus {"kind": "qubo", "path": ...} and portfolio data given as
/// {"prices": path} or {"synthetic": {assets, days, seed}}. Relative paths resolve against base_dir.
ProblemSpec problem_from_json(const Json& doc, const std::filesystem::path& base_dir = {});

Json to_json(const SolverResult& result);
Json to_json(const FrontierPoint& point);
Json to_json(const YoungLattice& lattice);

/// Columns: config_tag, iteration, energy, best_energy.
std::string learning_curve_csv(const SolverResult& result);
/// Columns: gamma, risk, return, bitstring.
std::string frontier_csv(const std::vector<FrontierPoint>& points);

/// Dense header-free numeric CSV. Throws DataError naming the file and row.
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);
/// CSV (dense, header-free) or JSON ({"matrix": [[...]]} or a bare array of rows), chosen by extension.
QuboProblem read_qubo(const std::filesystem::path& path);
/// Header "date,<asset>,..."; empty cells or NA become NaN and are rejected downstream.
PriceTable read_prices_csv(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace bosonic
