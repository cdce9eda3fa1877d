#pragma once

#include "landscape/network.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace landscape::io {

using Json = nlohmann::json;

/// Reads the dataset CSV format:
///   d0=<int>,N=<int>
///   <f1>,...,<fd0>,<label>     (N lines, label 0 or 1)
/// Throws Parse (naming the 1-based line) and LabelDomain.
Dataset load_dataset_csv(const std::filesystem::path& path);
Dataset parse_dataset_csv(const std::string& text);
std::string format_dataset_csv(const Dataset& data);

/// Writes via a temporary file in the same directory and renames it into
/// place, so a failed write never leaves a partial file. Throws Io.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

/// A plot-ready table: header plus rows of numbers.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool operator==(const Table&) const = default;
};

std::string format_csv(const Table& table);
Json to_json(const Table& table);
Table table_from_json(const Json& j);

/// Everything needed to rerun a command and compare its outputs.
struct RunRecord {
  std::string command;
  Json config = Json::object();
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;
  std::map<std::string, Table> tables;
  Json scalars = Json::object();

  bool operator==(const RunRecord&) const = default;
};

/// Top-level object {command, config, seed, started, finished, outputs}.
Json to_json(const RunRecord& record);
RunRecord record_from_json(const Json& j);

std::string serialize(const RunRecord& record);
RunRecord deserialize(const std::string& text);

/// UTC timestamp in ISO-8601 form.
std::string utc_now();

}  // namespace landscape::io
