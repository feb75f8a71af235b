#include "jtent/sweep_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "jtent/errors.hpp"

namespace jtent {

namespace {

const char* status_of(const SweepRow& row) {
  if (row.failed()) return "error";
  if (row.report.degeneracy_caveat) return "caveat";
  return "ok";
}

nlohmann::json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_header() {
  return "t,omega_1,omega_2,k_1,k_2,J,N,en_s_b1b2,en_s_b1,en_s_b2,en_b1_b2,energy,gap,r1,r2,"
         "valid,degenerate,verify_diff,basis,status";
}

std::string csv_line(const SweepRow& row) {
  const auto& p = row.params;
  const auto& r = row.report;
  std::string s;
  auto num = [&s](double x) {
    s += format_number(x);
    s += ',';
  };
  num(row.t);
  num(p.omega_1);
  num(p.omega_2);
  num(p.k_1);
  num(p.k_2);
  num(p.J);
  s += std::to_string(p.N) + ',';
  num(r.en_s_b1b2);
  num(r.en_s_b1);
  num(r.en_s_b2);
  num(r.en_b1_b2);
  num(row.energy);
  num(row.gap);
  num(row.validity.r1);
  num(row.validity.r2);
  s += (row.validity_available && row.validity.valid) ? "1," : "0,";
  s += r.degeneracy_caveat ? "1," : "0,";
  num(row.verify_diff);
  s += to_string(row.basis_used);
  s += ',';
  s += status_of(row);
  return s;
}

std::string to_csv(const SweepResult& result) {
  std::string out = csv_header() + '\n';
  for (const auto& row : result.rows) out += csv_line(row) + '\n';
  return out;
}

nlohmann::json row_json(const SweepRow& row) {
  const auto& p = row.params;
  const auto& r = row.report;
  nlohmann::json j;
  j["t"] = row.t;
  j["params"] = {{"omega_q", p.omega_q}, {"omega_1", p.omega_1}, {"omega_2", p.omega_2},
                 {"k_1", p.k_1},         {"k_2", p.k_2},         {"J", p.J},
                 {"N", p.N}};
  j["basis"] = to_string(row.basis_used);
  j["en_s_b1b2"] = number_or_null(r.en_s_b1b2);
  j["en_s_b1"] = number_or_null(r.en_s_b1);
  j["en_s_b2"] = number_or_null(r.en_s_b2);
  j["en_b1_b2"] = number_or_null(r.en_b1_b2);
  j["energy"] = number_or_null(row.energy);
  j["gap"] = number_or_null(row.gap);
  if (row.validity_available)
    j["validity"] = {{"r1", number_or_null(row.validity.r1)},
                     {"r2", number_or_null(row.validity.r2)},
                     {"valid", row.validity.valid}};
  else
    j["validity"] = nullptr;
  j["degenerate"] = r.degeneracy_caveat;
  j["verify_diff"] = number_or_null(row.verify_diff);
  j["status"] = status_of(row);
  if (row.failed()) j["error"] = row.error;
  return j;
}

nlohmann::json manifest_json(const SweepResult& result) {
  const auto& s = result.spec;
  nlohmann::json spec = {
      {"name", s.name},
      {"control", s.control},
      {"rule", s.rule_description},
      {"grid", {{"t_min", s.grid.t_min}, {"t_max", s.grid.t_max}, {"step", s.grid.step}}},
      {"points", s.grid.count()},
      {"basis", to_string(s.basis)},
      {"N", s.N},
      {"emit_validity", s.emit_validity},
      {"verify_increment", s.verify_increment},
      {"verify_points", s.verify_points},
  };
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& row : result.rows)
    if (row.failed()) errors.push_back({{"t", row.t}, {"message", row.error}});
  return {
      {"spec", spec},
      {"code_version", result.manifest.code_version},
      {"cutoff", s.N},
      {"basis", to_string(s.basis)},
      {"timestamp", result.manifest.timestamp},
      {"runtime_seconds", result.manifest.runtime_seconds},
      {"jobs", result.manifest.jobs},
      {"rows", result.rows.size()},
      {"flagged_rows", result.flagged_count()},
      {"row_errors", errors},
  };
}

nlohmann::json to_json(const SweepResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows) rows.push_back(row_json(row));
  return {{"manifest", manifest_json(result)}, {"rows", rows}};
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot move output into place at " + path.string());
  }
}

std::filesystem::path manifest_path_for(const std::filesystem::path& csv_path) {
  return csv_path.string() + ".manifest.json";
}

}  // namespace jtent
