#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ellgas/params.hpp"
#include "ellgas/validation.hpp"

namespace ellgas::cli {

inline constexpr const char* kSchemaVersion = "1";

/// Reproducibility record attached to every output.  wall_time is reported
/// on stderr and kept out of written manifests so that reruns with identical
/// inputs produce byte-identical files.
struct RunManifest {
  std::string command;
  EnsembleParams params;
  std::optional<std::uint64_t> seed;
  std::string tool_version;
  double wall_time = 0.0;
  std::vector<CheckResult> tolerance_report;
};

/// 17 significant digits, '.' decimal, no locale surprises.
std::string format_g17(double v);

nlohmann::json manifest_json(const RunManifest& m);

/// Header + rows, LF endings; empty cells stay empty.
std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

/// JSON output: the manifest is embedded under "manifest"; written to stdout
/// or to the given path.
void emit_json(const std::string& path, nlohmann::json payload, const RunManifest& m);

/// CSV output: to a file with a sidecar `<path>.manifest.json`, or to stdout
/// with the manifest going to stderr.
void emit_csv(const std::string& path, const std::string& text, const RunManifest& m);

}  // namespace ellgas::cli
