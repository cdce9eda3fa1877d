// Command-line front end for the loss-landscape toolkit.

#include "landscape/commands.hpp"
#include "landscape/error.hpp"
#include "landscape/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using landscape::io::Json;

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

// Every flag maps one-to-one onto a config key; a command rejects keys it
// does not use, naming the key.
constexpr Flag kVolumeFlags[] = {
    {"--d0", "d0", "input dimension"},
    {"--d1", "d1", "hidden units drawn"},
    {"--d1-star", "d1_star", "rows of the target weights"},
    {"--n", "n", "samples / rows of C"},
    {"--m", "m", "inner dimension or coherence rows"},
    {"--l", "l", "columns of B"},
    {"--rho", "rho", "leak slope"},
    {"--eps", "eps", "coherence threshold"},
    {"--sin-alpha", "sin_alpha", "angular margin"},
    {"--trials", "trials", "Monte Carlo trials"},
    {"--seed", "seed", "base seed"},
};

constexpr Flag kBoundFlags[] = {
    {"--n", "n", "samples"},
    {"--d0", "d0", "input dimension"},
    {"--d1", "d1", "hidden units"},
    {"--d1-star", "d1_star", "width of the zero-error network"},
    {"--epsilon", "epsilon", "epsilon in (0, 1]"},
    {"--rho", "rho", "leak slope"},
    {"--lim-ratio", "lim_ratio", "finite stand-in for lim d0/N"},
    {"--sin-alpha", "sin_alpha", "angular margin"},
    {"--m", "m", "rows / inner dimension"},
    {"--l", "l", "columns"},
    {"--eps", "eps", "coherence threshold"},
    {"--x", "x", "angle (lower) or cosine level u (upper)"},
    {"--side", "side", "beta bound side: lower or upper"},
    {"--tol", "tol", "solver tolerance"},
};

constexpr Flag kConstructFlags[] = {
    {"--d0", "d0", "synthetic input dimension"},
    {"--n", "n", "synthetic sample count"},
    {"--seed", "seed", "base seed"},
    {"--rho", "rho", "leak slope"},
    {"--beta", "beta", "eps1 fraction in (0, 1)"},
    {"--gamma", "gamma", "eps2 / eps1 in (0, 1)"},
    {"--target-d1", "target_d1", "pad to this many hidden units"},
};

constexpr Flag kOracleFlags[] = {
    {"--d0", "d0", "input dimension"},
    {"--d1", "d1", "hidden units"},
    {"--n", "n", "samples (at most 22)"},
    {"--rho", "rho", "leak slope"},
    {"--seed", "seed", "base seed"},
    {"--random-pattern", "random_pattern", "draw the pattern directly (true) or from Gaussian weights (false)"},
};

/// Parses a flag value as a JSON scalar, falling back to a plain string.
Json flag_value(const std::string& text) {
  try {
    Json j = Json::parse(text);
    if (j.is_number() || j.is_boolean()) return j;
  } catch (const Json::exception&) {
  }
  return text;
}

template <std::size_t N>
void add_flags(CLI::App* app, const Flag (&flags)[N], std::map<std::string, std::string>& values) {
  for (const Flag& f : flags) app->add_option(f.name, values[f.key], f.help);
}

Json flags_to_config(const std::map<std::string, std::string>& values, const CLI::App* app,
                     const std::map<std::string, std::string>& names) {
  Json config = Json::object();
  for (const auto& [key, name] : names) {
    if (app->count(name) > 0) config[key] = flag_value(values.at(key));
  }
  return config;
}

template <std::size_t N>
std::map<std::string, std::string> names_of(const Flag (&flags)[N]) {
  std::map<std::string, std::string> out;
  for (const Flag& f : flags) out[f.key] = f.name;
  return out;
}

Json read_config_file(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw landscape::Error(landscape::ErrorKind::Io, "cannot open config '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw landscape::Error(landscape::ErrorKind::Config, "config '" + path + "' is not valid JSON: " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw landscape::Error(landscape::ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loss-landscape experiments for one-hidden-layer leaky-ReLU networks"};
  app.require_subcommand(1);

  std::string out_path;
  std::string csv_path;
  std::string csv_table;

  auto add_outputs = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "write the run record (JSON) here");
    sub->add_option("--csv", csv_path, "write a result table (CSV) here");
    sub->add_option("--table", csv_table, "table to write with --csv (default: the first)");
  };

  // construct
  std::map<std::string, std::string> construct_values;
  std::string dataset_path;
  auto* construct = app.add_subcommand("construct", "build a zero-error global minimum");
  auto* dataset_opt = construct->add_option("--data", dataset_path, "dataset CSV");
  add_flags(construct, kConstructFlags, construct_values);
  dataset_opt->excludes(construct->get_option("--d0"))->excludes(construct->get_option("--n"));
  add_outputs(construct);

  // train / scan / diagnostic
  std::string config_path;
  std::map<std::string, CLI::App*> trainers;
  for (const char* name : {"train", "scan", "diagnostic"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " protocol from a JSON config");
    sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    add_outputs(sub);
    trainers[name] = sub;
  }

  // volume
  std::map<std::string, std::string> volume_values;
  std::string volume_kind;
  auto* vol = app.add_subcommand("volume", "Monte Carlo volume estimators");
  vol->add_option("kind", volume_kind, "angular | global | orthant | coherence | margin")
      ->required()
      ->check(CLI::IsMember({"angular", "global", "orthant", "coherence", "margin"}));
  add_flags(vol, kVolumeFlags, volume_values);
  add_outputs(vol);

  // bounds
  std::map<std::string, std::string> bound_values;
  std::string bound_name;
  auto* bnd = app.add_subcommand("bounds", "evaluate a bound formula");
  bnd->add_option("name", bound_name,
                  "theta-star | gamma-eps | suboptimal | global-lower | delta | ratio | dichotomy | "
                  "coherence-tail | orthant | beta")
      ->required()
      ->check(CLI::IsMember({"theta-star", "gamma-eps", "suboptimal", "global-lower", "delta",
                             "ratio", "dichotomy", "coherence-tail", "orthant", "beta"}));
  add_flags(bnd, kBoundFlags, bound_values);
  add_outputs(bnd);

  // rank-oracle
  std::map<std::string, std::string> oracle_values;
  auto* oracle = app.add_subcommand("rank-oracle", "check the subset rank condition against rank(A o X)");
  add_flags(oracle, kOracleFlags, oracle_values);
  add_outputs(oracle);

  // replay
  std::string record_path;
  auto* replay = app.add_subcommand("replay", "rerun a saved record and compare outputs bit for bit");
  replay->add_option("record", record_path, "run record JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (replay->parsed()) {
      const auto record = landscape::io::deserialize(read_file(record_path));
      if (landscape::cli::replay_matches(record)) {
        std::cout << "replay of '" << record.command << "' matches\n";
        return 0;
      }
      std::cerr << "error: replay of '" << record.command << "' differs from the record\n";
      return 2;
    }

    std::string command;
    Json config;
    if (construct->parsed()) {
      command = "construct";
      config = flags_to_config(construct_values, construct, names_of(kConstructFlags));
      if (!dataset_path.empty()) config["dataset"] = dataset_path;
    } else if (vol->parsed()) {
      command = "volume " + volume_kind;
      config = flags_to_config(volume_values, vol, names_of(kVolumeFlags));
    } else if (bnd->parsed()) {
      command = "bounds " + bound_name;
      config = flags_to_config(bound_values, bnd, names_of(kBoundFlags));
    } else if (oracle->parsed()) {
      command = "rank-oracle";
      config = flags_to_config(oracle_values, oracle, names_of(kOracleFlags));
    } else {
      for (const auto& [name, sub] : trainers) {
        if (sub->parsed()) command = name;
      }
      config = read_config_file(config_path);
    }

    const auto record = landscape::cli::execute(command, config);
    std::cout << landscape::cli::summarize(record);

    if (!csv_path.empty()) {
      if (record.tables.empty()) {
        throw landscape::Error(landscape::ErrorKind::Config, "'" + command + "' produces no tables");
      }
      const auto it = csv_table.empty() ? record.tables.begin() : record.tables.find(csv_table);
      if (it == record.tables.end()) {
        throw landscape::Error(landscape::ErrorKind::Config, "no table named '" + csv_table + "'");
      }
      landscape::io::atomic_write(csv_path, landscape::io::format_csv(it->second));
    }
    if (!out_path.empty()) landscape::io::atomic_write(out_path, landscape::io::serialize(record));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return landscape::cli::exit_code_for(e);
  }
}
