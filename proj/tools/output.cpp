#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace ellgas::cli {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json manifest_json(const RunManifest& m) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = m.tool_version;
  j["command"] = m.command;
  j["params"] = {{"t", m.params.t}, {"T", m.params.T}, {"n", m.params.n}, {"N", m.params.N}};
  if (m.seed)
    j["seed"] = *m.seed;
  else
    j["seed"] = nullptr;
  auto report = nlohmann::json::array();
  for (const auto& c : m.tolerance_report)
    report.push_back({{"check", c.name}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}});
  j["tolerance_report"] = report;
  return j;
}

std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i)
    os << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::logic_error("csv_text: ragged row");
    for (std::size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
  return os.str();
}

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

}  // namespace

void emit_json(const std::string& path, nlohmann::json payload, const RunManifest& m) {
  payload["manifest"] = manifest_json(m);
  const std::string text = payload.dump(2) + "\n";
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
  std::cerr << "wall_time_s=" << m.wall_time << "\n";
}

void emit_csv(const std::string& path, const std::string& text, const RunManifest& m) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cerr << manifest_json(m).dump(2) << "\n";
  } else {
    write_file(path, text);
    write_file(path + ".manifest.json", manifest_json(m).dump(2) + "\n");
  }
  std::cerr << "wall_time_s=" << m.wall_time << "\n";
}

}  // namespace ellgas::cli
