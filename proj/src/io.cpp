#include "landscape/io.hpp"

#include "landscape/error.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace landscape::io {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::size_t parse_count(std::string_view field, std::string_view key, std::size_t line) {
  field = trim(field);
  const std::string prefix = std::string(key) + "=";
  if (field.substr(0, prefix.size()) != prefix) {
    parse_error(line, "header must be 'd0=<int>,N=<int>'");
  }
  field.remove_prefix(prefix.size());
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || value == 0) {
    parse_error(line, "field '" + std::string(key) + "' must be a positive integer");
  }
  return value;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Dataset parse_dataset_csv(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;

  // Header.
  std::size_t d0 = 0, n = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (trim(raw).empty()) continue;
    const auto fields = split(trim(raw), ',');
    if (fields.size() != 2) parse_error(line_no, "header must be 'd0=<int>,N=<int>'");
    d0 = parse_count(fields[0], "d0", line_no);
    n = parse_count(fields[1], "N", line_no);
    break;
  }
  if (d0 == 0) throw Error(ErrorKind::Parse, "line 1: missing header 'd0=<int>,N=<int>'");

  Dataset data;
  data.X.resize(static_cast<Eigen::Index>(d0), static_cast<Eigen::Index>(n));
  data.y.resize(static_cast<Eigen::Index>(n));
  std::size_t sample = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (sample == n) parse_error(line_no, "more data lines than N=" + std::to_string(n));
    const auto fields = split(line, ',');
    if (fields.size() != d0 + 1) {
      parse_error(line_no, "expected " + std::to_string(d0 + 1) + " fields, found " +
                               std::to_string(fields.size()));
    }
    const auto col = static_cast<Eigen::Index>(sample);
    for (std::size_t i = 0; i < d0; ++i) {
      double v = 0.0;
      if (!parse_double(fields[i], v) || !std::isfinite(v)) {
        parse_error(line_no, "field " + std::to_string(i + 1) + " is not a finite decimal number");
      }
      data.X(static_cast<Eigen::Index>(i), col) = v;
    }
    double label = 0.0;
    if (!parse_double(fields[d0], label)) parse_error(line_no, "label is not a number");
    if (label != 0.0 && label != 1.0) {
      throw Error(ErrorKind::LabelDomain,
                  "line " + std::to_string(line_no) + ": label must be 0 or 1, found '" +
                      std::string(trim(fields[d0])) + "'");
    }
    data.y(col) = label;
    ++sample;
  }
  if (sample != n) {
    parse_error(line_no, "expected " + std::to_string(n) + " data lines, found " + std::to_string(sample));
  }
  return data;
}

Dataset load_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open dataset '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset_csv(buf.str());
}

std::string format_dataset_csv(const Dataset& data) {
  std::string out = "d0=" + std::to_string(data.d0()) + ",N=" + std::to_string(data.size()) + "\n";
  for (Eigen::Index n = 0; n < data.size(); ++n) {
    for (Eigen::Index i = 0; i < data.d0(); ++i) out += format_number(data.X(i, n)) + ",";
    out += data.y(n) == 1.0 ? "1\n" : "0\n";
  }
  return out;
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error(ErrorKind::Io, "write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw Error(ErrorKind::Io, "cannot move output into '" + path.string() + "': " + ec.message());
  }
}

std::string format_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out += (c ? "," : "") + table.columns[c];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + format_number(row[c]);
    out += "\n";
  }
  return out;
}

Json to_json(const Table& table) {
  return Json{{"columns", table.columns}, {"rows", table.rows}};
}

Table table_from_json(const Json& j) {
  Table t;
  t.columns = j.at("columns").get<std::vector<std::string>>();
  t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
  return t;
}

Json to_json(const RunRecord& r) {
  Json tables = Json::object();
  for (const auto& [name, table] : r.tables) tables[name] = to_json(table);
  return Json{{"command", r.command},
              {"config", r.config},
              {"seed", r.seed},
              {"started", r.started},
              {"finished", r.finished},
              {"outputs", Json{{"tables", tables}, {"scalars", r.scalars}}}};
}

RunRecord record_from_json(const Json& j) {
  RunRecord r;
  try {
    r.command = j.at("command").get<std::string>();
    r.config = j.at("config");
    r.seed = j.at("seed").get<std::uint64_t>();
    r.started = j.value("started", "");
    r.finished = j.value("finished", "");
    const Json& outputs = j.at("outputs");
    if (outputs.contains("tables")) {
      for (const auto& [name, table] : outputs.at("tables").items()) {
        r.tables.emplace(name, table_from_json(table));
      }
    }
    r.scalars = outputs.value("scalars", Json::object());
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed run record: ") + e.what());
  }
  return r;
}

std::string serialize(const RunRecord& record) { return to_json(record).dump(2) + "\n"; }

RunRecord deserialize(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("run record is not valid JSON: ") + e.what());
  }
  return record_from_json(j);
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace landscape::io
