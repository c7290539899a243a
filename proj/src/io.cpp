#include "duel/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace duel {
namespace {

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

double round12(double v) { return std::strtod(g12(v).c_str(), nullptr); }

nlohmann::json rounded(const nlohmann::json& j) {
  if (j.is_number_float()) return round12(j.get<double>());
  if (!j.is_structured()) return j;
  nlohmann::json out = j;
  for (auto& item : out) item = rounded(item);
  return out;
}

std::string table_csv(const TTable& table) {
  std::string out = "x";
  for (int k = 1; k <= table.m(); ++k) out += ",T_" + std::to_string(k);
  out += '\n';
  for (std::size_t i = 0; i < table.grid().size(); ++i) {
    out += g12(table.grid()[i]);
    for (int k = 1; k <= table.m(); ++k) out += "," + g12(table.curve(k)[i]);
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const DuelParameters& p) {
  return {{"p1", p.p1.spec()}, {"p2", p.p2.spec()}, {"a", p.a}, {"m", p.m}, {"A1", p.A1}, {"A2", p.A2}};
}

nlohmann::json to_json(const SolverConfig& c) {
  return {{"a0", c.a0},
          {"a", c.a},
          {"h", c.h},
          {"u0", c.u0},
          {"eps", c.eps},
          {"ode_tol", c.ode_tol},
          {"root_tol", c.root_tol},
          {"max_delta_halvings", c.max_delta_halvings},
          {"boundary_tol", c.boundary_tol}};
}

DuelParameters params_from_json(const nlohmann::json& j) {
  DuelParameters p;
  p.p1 = AccuracyFunction::parse(j.at("p1").get<std::string>());
  p.p2 = AccuracyFunction::parse(j.at("p2").get<std::string>());
  p.a = j.at("a").get<double>();
  p.m = j.at("m").get<int>();
  p.A1 = j.at("A1").get<double>();
  p.A2 = j.at("A2").get<double>();
  p.validate();
  return p;
}

SolverConfig config_from_json(const nlohmann::json& j) {
  SolverConfig c;
  c.a0 = j.at("a0").get<double>();
  c.a = j.at("a").get<double>();
  c.h = j.at("h").get<double>();
  c.u0 = j.at("u0").get<double>();
  c.eps = j.at("eps").get<double>();
  c.ode_tol = j.at("ode_tol").get<double>();
  c.root_tol = j.at("root_tol").get<double>();
  c.max_delta_halvings = j.at("max_delta_halvings").get<int>();
  c.boundary_tol = j.at("boundary_tol").get<double>();
  return c;
}

nlohmann::json table_sidecar(const TTable& table, const std::string& csv_name) {
  nlohmann::json values = nlohmann::json::array();
  for (double v : table.values()) values.push_back(round12(v));
  nlohmann::json forms = nlohmann::json::array();
  nlohmann::json diagnostics = nlohmann::json::array();
  double worst = 0.0;
  if (!table.grid().empty()) {
    for (int k = 1; k <= table.m(); ++k) {
      const ValueForms f = value_forms(table, table.a(), k);
      forms.push_back({{"k", k},
                       {"product", round12(f.product)},
                       {"exponential", round12(f.exponential)},
                       {"gap", round12(f.gap())}});
    }
    const auto& grid = table.grid();
    for (int i = 0; i < 50; ++i) {
      const double x = grid.front() + (grid.back() - grid.front()) * i / 49.0;
      for (int k = 1; k <= table.m(); ++k) worst = std::max(worst, equilibrium_residual(table, x, k));
    }
  }
  for (const auto& d : table.diagnostics()) {
    diagnostics.push_back({{"k", d.k},
                           {"delta", round12(d.delta)},
                           {"u0", round12(d.u0)},
                           {"u_star", round12(d.u_star)},
                           {"u_cover", round12(d.u_cover)},
                           {"initial_gap", round12(d.initial_gap)},
                           {"max_gap_increase", round12(d.max_gap_increase)},
                           {"min_bracket", round12(d.min_bracket)},
                           {"boundary_bound", round12(d.boundary_bound)},
                           {"halvings", d.halvings},
                           {"steps", d.steps}});
  }
  return {{"format", "duel-ttable/1"},
          {"csv", csv_name},
          {"params", to_json(table.params())},
          {"config", to_json(table.config())},
          {"values", values},
          {"value_forms", forms},
          {"curve_tolerance", round12(table.curve_tolerance())},
          {"resolved_from", round12(table.resolved_from())},
          {"max_residual_50xm", round12(worst)},
          {"levels", diagnostics}};
}

void read_table_csv(const std::string& path, TableFile& into) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open table " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x", 0) != 0)
    throw std::invalid_argument(path + ": missing 'x,T_1,...' header");
  const int m = static_cast<int>(std::count(line.begin(), line.end(), ','));
  into.grid.clear();
  into.curves.assign(static_cast<std::size_t>(m), {});
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream fields(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(fields, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0')
        throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      row.push_back(v);
    }
    if (static_cast<int>(row.size()) != m + 1)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected " +
                                  std::to_string(m + 1) + " columns");
    into.grid.push_back(row[0]);
    for (int k = 0; k < m; ++k) into.curves[static_cast<std::size_t>(k)].push_back(row[k + 1]);
  }
}

TableFile read_table(const std::string& sidecar_path) {
  std::ifstream in(sidecar_path);
  if (!in) throw std::invalid_argument("cannot open sidecar " + sidecar_path);
  TableFile file;
  file.sidecar_path = sidecar_path;
  try {
    file.sidecar = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(sidecar_path + ": " + e.what());
  }
  if (file.sidecar.value("format", "") != "duel-ttable/1")
    throw std::invalid_argument(sidecar_path + ": not a duel table sidecar");
  try {
    file.params = params_from_json(file.sidecar.at("params"));
    file.config = config_from_json(file.sidecar.at("config"));
    const auto dir = std::filesystem::path(sidecar_path).parent_path();
    file.csv_path = (dir / file.sidecar.at("csv").get<std::string>()).string();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(sidecar_path + ": " + e.what());
  }
  read_table_csv(file.csv_path, file);
  if (static_cast<int>(file.curves.size()) != file.params.m)
    throw std::invalid_argument(file.csv_path + ": column count does not match m");
  return file;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

}  // namespace duel
