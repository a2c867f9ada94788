#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sagnac/scenario.hpp"

namespace sagnac {

struct Table {
  std::string file;  // e.g. "energy_sweep.csv"
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct StudyResult {
  std::vector<Table> tables;
  nlohmann::ordered_json summary;
};

/// Runs the scenario's study. `jobs` bounds the worker threads used for
/// independent sweep points; results do not depend on it.
StudyResult run_study(const ScenarioFile& file, unsigned jobs);

/// "%.15g"; non-finite values print as nan / inf / -inf.
std::string format_number(double v);

std::string to_csv(const Table& table);

/// Writes every table as CSV plus metadata.json (and results.json when
/// `json_mirror`). Creates `out_dir` if needed.
void write_results(const std::filesystem::path& out_dir, const ScenarioFile& file,
                   const StudyResult& result, double wall_time_s, bool json_mirror);

std::string tool_version();

}  // namespace sagnac
