#pragma once

#include <string>
#include <vector>

#include "duel/accuracy.hpp"
#include "duel/solver.hpp"
#include "json.hpp"

namespace duel {

// Rounds to the 12 significant digits used in every written file.
double round12(double v);
// Copy of `j` with every floating-point number rounded by round12.
nlohmann::json rounded(const nlohmann::json& j);

std::string table_csv(const TTable& table);
nlohmann::json table_sidecar(const TTable& table, const std::string& csv_name);

nlohmann::json to_json(const DuelParameters& params);
nlohmann::json to_json(const SolverConfig& config);
DuelParameters params_from_json(const nlohmann::json& j);
SolverConfig config_from_json(const nlohmann::json& j);

struct TableFile {
  std::string sidecar_path;
  std::string csv_path;
  nlohmann::json sidecar;
  DuelParameters params;
  SolverConfig config;
  std::vector<double> grid;
  std::vector<std::vector<double>> curves;  // T_1..T_m on the grid
};

// Reads a sidecar and the CSV it names (resolved relative to the sidecar).
TableFile read_table(const std::string& sidecar_path);
void read_table_csv(const std::string& path, TableFile& into);

void write_text(const std::string& path, const std::string& text);
std::string sha256_file(const std::string& path);

}  // namespace duel
