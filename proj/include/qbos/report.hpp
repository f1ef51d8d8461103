// report.hpp
// Versioned JSON run reports, CSV point clouds and gnuplot scripts.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbos/config_io.hpp"
#include "qbos/equilibrium.hpp"

namespace qbos {

inline constexpr const char* kSchemaVersion = "1";

struct RunReport {
  std::string schema_version = kSchemaVersion;
  std::string case_tag;  // empty for ad-hoc scans
  GameConfig config;
  GridPair grids;
  double epsilon = kScanEpsilon;
  std::vector<EquilibriumReport> equilibria;
  std::optional<DeviationCertificate> certificate;
  std::string summary;
};

// %.17g, with ".0" appended to integral values so they stay floating point.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

// nlohmann's serializer prints the shortest round-trip form; reports pin
// every float to 17 significant digits instead.
inline void dump_json(const nlohmann::json& j, std::string& out, int indent, int depth) {
  const auto pad = [&](int d) { out.append(static_cast<std::size_t>(d * indent), ' '); };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        out += nlohmann::json(it.key()).dump();
        out += ": ";
        dump_json(it.value(), out, indent, depth + 1);
      }
      out += '\n';
      pad(depth);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool scalars = std::all_of(j.begin(), j.end(), [](const auto& e) { return e.is_primitive(); });
      if (scalars) {
        out += '[';
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          dump_json(j[k], out, indent, depth + 1);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        pad(depth + 1);
        dump_json(j[k], out, indent, depth + 1);
      }
      out += '\n';
      pad(depth);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

inline std::string dump_json17(const nlohmann::json& j) {
  std::string out;
  detail::dump_json(j, out, 2, 0);
  out += '\n';
  return out;
}

inline nlohmann::json to_json(const Profile& p) {
  return {{"alice", to_json(p.alice)},
          {"bob", to_json(p.bob)},
          {"payoffs", {{"alice", p.payoffs.alice}, {"bob", p.payoffs.bob}}}};
}

inline nlohmann::json to_json(const EquilibriumReport& r) {
  nlohmann::json j = to_json(r.profile);
  j["epsilon"] = r.epsilon;
  j["verdict"] = to_string(r.verdict);
  if (r.best_deviation)
    j["best_deviation"] = {{"player", to_string(r.best_deviation->player)},
                           {"params", to_json(r.best_deviation->params)},
                           {"gain", r.best_deviation->gain}};
  else
    j["best_deviation"] = nullptr;
  return j;
}

inline nlohmann::json to_json(const DeviationCertificate& c) {
  return {{"grids", to_json(c.grids)}, {"min_best_gain", c.min_best_gain}, {"witness", to_json(c.witness)}};
}

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& e : r.equilibria) eqs.push_back(to_json(e));
  nlohmann::json j = {{"schema_version", r.schema_version}};
  if (!r.case_tag.empty()) j["case"] = r.case_tag;
  j["config_echo"] = to_json(r.config);
  j["grid_echo"] = to_json(r.grids);
  j["epsilon"] = r.epsilon;
  j["equilibria"] = eqs;
  j["certificate"] = r.certificate ? to_json(*r.certificate) : nlohmann::json(nullptr);
  j["summary"] = r.summary;
  return j;
}

inline std::string report_json(const RunReport& r) { return dump_json17(to_json(r)); }

inline constexpr const char* kCsvHeader = "theta_A,alpha_A,beta_A,theta_B,alpha_B,beta_B,payoff_A,payoff_B";

inline std::string equilibria_csv(const std::vector<EquilibriumReport>& eqs) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& e : eqs) {
    const auto& p = e.profile;
    for (double v : {p.alice.theta, p.alice.alpha, p.alice.beta, p.bob.theta, p.bob.alpha, p.bob.beta,
                     p.payoffs.alice}) {
      out += format_double(v);
      out += ',';
    }
    out += format_double(p.payoffs.bob);
    out += '\n';
  }
  return out;
}

// 3-D scatter of the equilibrium point cloud: theta_A horizontal, theta_B
// (omega) vertical, alpha_A as depth, coloured by Alice's payoff.
inline std::string gnuplot_script(const std::string& csv_name, const std::string& title) {
  std::ostringstream gp;
  gp << "# gnuplot -p " << "<this file>\n"
     << "set datafile separator ','\n"
     << "set title '" << title << "'\n"
     << "set xlabel 'theta (Alice)'\nset ylabel 'alpha (Alice)'\nset zlabel 'omega (Bob)'\n"
     << "set xrange [0:2*pi]\nset yrange [0:2*pi]\nset zrange [0:2*pi]\n"
     << "set ticslevel 0\nset view 60,30\n"
     << "splot '" << csv_name << "' every ::1 using 1:2:4:7 with points pt 7 ps 0.6 palette notitle\n";
  return gp.str();
}

// Writes through a temporary file so a failed run never leaves a partial
// output behind.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

inline std::filesystem::path csv_sidecar(const std::filesystem::path& json_path) {
  auto p = json_path;
  return p.replace_extension(".csv");
}

struct WrittenFiles {
  std::filesystem::path json, csv;
  std::optional<std::filesystem::path> gnuplot;
};

inline WrittenFiles write_report(const RunReport& report, const std::filesystem::path& json_path,
                                 bool with_gnuplot = false) {
  WrittenFiles files{json_path, csv_sidecar(json_path), std::nullopt};
  const std::string json = report_json(report);
  const std::string csv = equilibria_csv(report.equilibria);
  write_file_atomic(files.json, json);
  write_file_atomic(files.csv, csv);
  if (with_gnuplot) {
    auto gp = json_path;
    gp.replace_extension(".gp");
    write_file_atomic(gp, gnuplot_script(files.csv.filename().string(),
                                         report.case_tag.empty() ? "equilibria" : report.case_tag));
    files.gnuplot = gp;
  }
  return files;
}

}  // namespace qbos
