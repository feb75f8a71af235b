#pragma once

#include <filesystem>
#include <string>

#include "jtent/sweeps.hpp"
#include "json.hpp"

namespace jtent {

// CSV layout: one header line, one line per row, LF endings, numbers with
// 12 significant digits (nan for missing values), booleans as 0/1.
// Column order puts t first so the file loads directly into gnuplot.

std::string csv_header();
std::string csv_line(const SweepRow& row);
std::string to_csv(const SweepResult& result);

/// Manifest sidecar: spec echo, code version, timing and row diagnostics.
nlohmann::json manifest_json(const SweepResult& result);

/// Full result (manifest plus rows) as one JSON document.
nlohmann::json to_json(const SweepResult& result);
nlohmann::json row_json(const SweepRow& row);

/// "%.12g"; "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double x);

/// Writes to a sibling temporary file and renames it over `path`, so
/// readers never observe a partial file.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

/// `<path>.manifest.json`
std::filesystem::path manifest_path_for(const std::filesystem::path& csv_path);

}  // namespace jtent
