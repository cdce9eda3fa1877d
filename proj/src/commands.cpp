#include "landscape/commands.hpp"

#include "landscape/bounds.hpp"
#include "landscape/construct.hpp"
#include "landscape/error.hpp"
#include "landscape/rng.hpp"
#include "landscape/stationarity.hpp"
#include "landscape/train.hpp"
#include "landscape/volume.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>

namespace landscape::cli {

namespace {

/// Reads typed values out of a flat JSON object, remembering each value
/// used so the record can store the fully resolved configuration.
class ConfigReader {
 public:
  static bool non_negative_integer(const Json& j) {
    return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
  }

  ConfigReader(const Json& in, std::string command) : in_(in), command_(std::move(command)) {
    if (!in_.is_object()) throw Error(ErrorKind::Config, "config for '" + command_ + "' must be a JSON object");
  }

  bool has(const std::string& key) const { return in_.contains(key); }

  std::size_t size(const std::string& key, std::size_t fallback) {
    return static_cast<std::size_t>(u64(key, fallback));
  }

  std::uint64_t u64(const std::string& key, std::uint64_t fallback) {
    std::uint64_t v = fallback;
    if (const Json* j = find(key)) {
      if (!non_negative_integer(*j)) bad(key, "a non-negative integer");
      v = j->get<std::uint64_t>();
    }
    resolved_[key] = v;
    return v;
  }

  double real(const std::string& key, double fallback) {
    double v = fallback;
    if (const Json* j = find(key)) {
      if (!j->is_number()) bad(key, "a number");
      v = j->get<double>();
    }
    resolved_[key] = v;
    return v;
  }

  bool flag(const std::string& key, bool fallback) {
    bool v = fallback;
    if (const Json* j = find(key)) {
      if (!j->is_boolean()) bad(key, "true or false");
      v = j->get<bool>();
    }
    resolved_[key] = v;
    return v;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    std::string v = fallback;
    if (const Json* j = find(key)) {
      if (!j->is_string()) bad(key, "a string");
      v = j->get<std::string>();
    }
    resolved_[key] = v;
    return v;
  }

  std::vector<std::size_t> sizes(const std::string& key, std::vector<std::size_t> fallback) {
    if (const Json* j = find(key)) {
      if (!j->is_array() || j->empty()) bad(key, "a non-empty list of non-negative integers");
      fallback.clear();
      for (const auto& e : *j) {
        if (!non_negative_integer(e)) bad(key, "a non-empty list of non-negative integers");
        fallback.push_back(e.get<std::size_t>());
      }
    }
    resolved_[key] = fallback;
    return fallback;
  }

  std::vector<double> reals(const std::string& key, std::vector<double> fallback) {
    if (const Json* j = find(key)) {
      if (!j->is_array() || j->empty()) bad(key, "a non-empty list of numbers");
      fallback.clear();
      for (const auto& e : *j) {
        if (!e.is_number()) bad(key, "a non-empty list of numbers");
        fallback.push_back(e.get<double>());
      }
    }
    resolved_[key] = fallback;
    return fallback;
  }

  /// Rejects keys that were never read. Call after every read.
  void finish() const {
    for (const auto& [key, value] : in_.items()) {
      if (!resolved_.contains(key)) {
        throw Error(ErrorKind::Config, "unknown config key '" + key + "' for '" + command_ + "'");
      }
    }
  }

  const Json& resolved() const { return resolved_; }

 private:
  const Json* find(const std::string& key) const {
    auto it = in_.find(key);
    return it == in_.end() ? nullptr : &*it;
  }

  [[noreturn]] void bad(const std::string& key, const std::string& expected) const {
    throw Error(ErrorKind::Config, "config key '" + key + "' must be " + expected);
  }

  const Json& in_;
  std::string command_;
  Json resolved_ = Json::object();
};

struct Output {
  std::map<std::string, io::Table> tables;
  Json scalars = Json::object();
};

train::TrainConfig read_train(ConfigReader& c, train::TrainConfig base) {
  base.epochs = c.size("epochs", base.epochs);
  base.lr = c.real("lr", base.lr);
  base.batch = c.size("batch", base.batch);
  base.beta1 = c.real("beta1", base.beta1);
  base.beta2 = c.real("beta2", base.beta2);
  base.adam_eps = c.real("adam_eps", base.adam_eps);
  base.lr_decay_epochs = c.size("lr_decay_epochs", base.lr_decay_epochs);
  base.rho = c.real("rho", base.rho);
  base.stop_on_zero_mce = c.flag("stop_on_zero_mce", base.stop_on_zero_mce);
  return base;
}

/// Dataset from either a CSV path or a synthetic Gaussian spec.
Dataset read_dataset(ConfigReader& c, std::uint64_t seed, std::string_view label,
                     std::size_t default_d0, std::size_t default_n) {
  if (c.has("dataset")) {
    if (c.has("d0") || c.has("n")) {
      throw Error(ErrorKind::Config, "config keys 'dataset' and 'd0'/'n' are mutually exclusive");
    }
    return io::load_dataset_csv(c.text("dataset", ""));
  }
  const std::size_t d0 = c.size("d0", default_d0);
  const std::size_t n = c.size("n", default_n);
  if (d0 == 0 || n == 0) throw Error(ErrorKind::Config, "config keys 'd0' and 'n' must be positive");
  return train::gen_gaussian_dataset(d0, n, rng::derive_seed(seed, label));
}

void require_positive(std::size_t v, const std::string& key) {
  if (v == 0) throw Error(ErrorKind::Config, "config key '" + key + "' must be positive");
}

Output run_construct(ConfigReader& c, std::uint64_t seed) {
  ConstructOptions opt;
  opt.rho = c.real("rho", 0.0);
  opt.beta = c.real("beta", 0.5);
  opt.gamma = c.real("gamma", 0.5);
  if (c.has("target_d1")) opt.target_d1 = c.size("target_d1", 0);
  opt.seed = rng::derive_seed(seed, "construct");
  const Dataset data = read_dataset(c, seed, "construct-data", 20, 200);
  c.finish();

  const Construction built = build_global_minimum(data, opt);
  const LossEval eval = evaluate(built.params, data);
  const double mce = mce_from_output(eval.output, data.y);
  const double min_input = min_neural_input(built.params.W, data.X);

  Output out;
  auto& s = out.scalars;
  s["d0"] = data.d0();
  s["n"] = data.size();
  s["positives"] = static_cast<std::size_t>((data.y.array() == 1.0).count());
  s["blocks"] = built.blocks.size();
  s["d1_star"] = built.d1_star;
  s["zero_error_width"] = zero_error_width(static_cast<std::size_t>(data.size()),
                                           static_cast<std::size_t>(data.d0()));
  s["mse"] = eval.mse;
  s["mce"] = mce;
  s["min_neural_input"] = min_input;
  if (!built.blocks.empty()) {
    const Matrix active = built.params.W.topRows(static_cast<Eigen::Index>(4 * built.blocks.size()));
    const MarginCertificate margin = angular_margin(data.X, active);
    s["sin_alpha"] = margin.sin_alpha;
    s["margin_neuron"] = margin.neuron;
    s["margin_sample"] = margin.sample;
  }

  io::Table blocks{{"block", "size", "eps1", "eps2", "output_scale", "w_tilde_norm"}, {}};
  for (std::size_t b = 0; b < built.blocks.size(); ++b) {
    const auto& blk = built.blocks[b];
    blocks.rows.push_back({static_cast<double>(b), static_cast<double>(blk.subset.size()), blk.eps1,
                           blk.eps2, blk.output_scale, blk.w_tilde.norm()});
  }
  out.tables["blocks"] = std::move(blocks);

  if (!(eval.mse <= 1e-18) || mce != 0.0 || !(min_input > 0.0)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "construction check failed: mse %.3g, mce %.3g, min input %.3g",
                  eval.mse, mce, min_input);
    throw Error(ErrorKind::VerificationFailed, buf);
  }
  return out;
}

Output run_train(ConfigReader& c, std::uint64_t seed) {
  train::TrainConfig cfg = read_train(c, train::scan_protocol());
  const bool whiten = c.flag("whiten", false);
  const Dataset raw = read_dataset(c, seed, "train-data", 10, 50);
  const std::size_t d1 = c.size("d1", static_cast<std::size_t>(raw.d0()));
  require_positive(d1, "d1");
  c.finish();
  cfg.seed = rng::derive_seed(seed, "train");
  train::validate(cfg);

  Dataset data = raw;
  if (whiten) data.X = train::zca_whiten(raw.X).Xw;
  const NetParams init = train::he_init(d1, static_cast<std::size_t>(data.d0()),
                                        rng::derive_seed(seed, "train-init"), cfg.rho);
  const train::TrainResult r = train::adam_train(init, data, cfg);

  Output out;
  out.scalars = Json{{"d0", data.d0()},
                     {"d1", d1},
                     {"n", data.size()},
                     {"final_mse", r.final_mse},
                     {"final_mce", r.final_mce},
                     {"min_neural_input", r.min_neural_input},
                     {"epochs_run", r.epochs_run}};
  io::Table history{{"epoch", "mse", "mce"}, {}};
  for (std::size_t e = 0; e < r.history.size(); ++e) {
    history.rows.push_back({static_cast<double>(e + 1), r.history[e].mse, r.history[e].mce});
  }
  out.tables["history"] = std::move(history);
  return out;
}

Output run_scan(ConfigReader& c, std::uint64_t seed) {
  train::TrainConfig cfg = read_train(c, train::scan_protocol());
  const auto d_values = c.sizes("d_values", {10, 20, 30});
  const auto factors = c.reals("factors", {0.5, 4.0});
  const std::size_t seeds = c.size("seeds", 5);
  require_positive(seeds, "seeds");
  c.finish();
  cfg.seed = seed;
  train::validate(cfg);

  const auto cells = train::scan_overparam(d_values, factors, seeds, cfg);
  Output out;
  io::Table table{{"d", "factor", "N", "params_over_N", "mce_mean", "mce_std", "mce_median"}, {}};
  io::Table runs{{"d", "factor", "N", "seed_index", "final_mce", "epochs_run"}, {}};
  for (const auto& cell : cells) {
    table.rows.push_back({static_cast<double>(cell.d), cell.factor, static_cast<double>(cell.n),
                          cell.params_over_n, cell.mce_mean, cell.mce_std, cell.mce_median});
    for (std::size_t s = 0; s < cell.final_mce.size(); ++s) {
      runs.rows.push_back({static_cast<double>(cell.d), cell.factor, static_cast<double>(cell.n),
                           static_cast<double>(s), cell.final_mce[s],
                           static_cast<double>(cell.epochs_run[s])});
    }
  }
  out.tables["cells"] = std::move(table);
  out.tables["runs"] = std::move(runs);
  out.scalars["cells"] = cells.size();
  return out;
}

Output run_diagnostic(ConfigReader& c, std::uint64_t seed) {
  train::TrainConfig cfg = read_train(c, train::diagnostic_protocol());
  const std::size_t d = c.size("d", 20);
  const std::size_t seeds = c.size("seeds", 10);
  require_positive(seeds, "seeds");
  c.finish();
  cfg.seed = seed;
  train::validate(cfg);

  const auto rows = train::dlm_diagnostic(d, seeds, cfg);
  Output out;
  io::Table table{{"seed_index", "N", "min_input", "mse", "mce", "decay_monotone_fraction"}, {}};
  double worst_input = rows.empty() ? 0.0 : rows.front().min_neural_input;
  double worst_mse = 0.0;
  for (const auto& r : rows) {
    table.rows.push_back({static_cast<double>(r.seed_index), static_cast<double>(r.n),
                          r.min_neural_input, r.final_mse, r.final_mce, r.decay_monotone_fraction});
    worst_input = std::min(worst_input, r.min_neural_input);
    worst_mse = std::max(worst_mse, r.final_mse);
  }
  out.tables["seeds"] = std::move(table);
  out.scalars = Json{{"d", d}, {"seeds", seeds}, {"smallest_min_input", worst_input}, {"largest_mse", worst_mse}};
  return out;
}

void put_estimate(Output& out, const volume::MCEstimate& e) {
  out.scalars["hits"] = e.hits;
  out.scalars["trials"] = e.trials;
  out.scalars["estimate"] = e.estimate;
  out.scalars["ci_low"] = e.ci_low;
  out.scalars["ci_high"] = e.ci_high;
  out.scalars["std_error"] = e.std_error();
}

Output run_volume(const std::string& kind, ConfigReader& c, std::uint64_t seed) {
  const std::uint64_t trials = c.u64("trials", kind == "coherence" ? 10000 : 100000);
  require_positive(trials, "trials");
  Output out;

  if (kind == "angular") {
    const std::size_t d0 = c.size("d0", 3);
    const std::size_t d1 = c.size("d1", 1);
    const std::size_t n = c.size("n", 1);
    const double rho = c.real("rho", 0.0);
    c.finish();
    require_positive(d0 * d1 * n, "d0/d1/n");
    auto data_stream = rng::make_stream(rng::derive_seed(seed, "volume-data"), rng::StreamId::Data);
    const Matrix X = volume::gaussian_matrix(static_cast<Eigen::Index>(d0), static_cast<Eigen::Index>(n), data_stream);
    auto w_stream = rng::make_stream(rng::derive_seed(seed, "volume-pattern"), rng::StreamId::Weights);
    const Matrix W0 = volume::gaussian_matrix(static_cast<Eigen::Index>(d1), static_cast<Eigen::Index>(d0), w_stream);
    volume::RegionSpec region{volume::ActivationRegion{activation_pattern(W0, X, rho), X, rho},
                              static_cast<Eigen::Index>(d1), static_cast<Eigen::Index>(d0)};
    put_estimate(out, volume::estimate_angular_volume(region, trials, seed));
    if (n == 1) out.scalars["exact"] = std::ldexp(1.0, -static_cast<int>(d1));
  } else if (kind == "global") {
    const std::size_t d0 = c.size("d0", 3);
    const std::size_t n = c.size("n", 10);
    const std::size_t d1_star = c.size("d1_star", 1);
    const std::size_t d1 = c.size("d1", d1_star);
    c.finish();
    require_positive(d0 * n * d1_star, "d0/n/d1_star");
    auto data_stream = rng::make_stream(rng::derive_seed(seed, "volume-data"), rng::StreamId::Data);
    const Matrix X = volume::gaussian_matrix(static_cast<Eigen::Index>(d0), static_cast<Eigen::Index>(n), data_stream);
    auto w_stream = rng::make_stream(rng::derive_seed(seed, "volume-target"), rng::StreamId::Weights);
    const Matrix Wstar = volume::gaussian_matrix(static_cast<Eigen::Index>(d1_star), static_cast<Eigen::Index>(d0), w_stream);
    const double sin_alpha = angular_margin(X, Wstar).sin_alpha;
    put_estimate(out, volume::estimate_global_region_volume(X, Wstar, static_cast<Eigen::Index>(d1), trials, seed));
    const auto bound = bounds::global_volume_lower_bound(d0, d1_star, sin_alpha);
    out.scalars["sin_alpha"] = sin_alpha;
    out.scalars["bound"] = bound.exact;
    out.scalars["bound_log"] = bound.exact_log;
  } else if (kind == "orthant") {
    const std::size_t n = c.size("n", 1);
    const std::size_t m = c.size("m", 1);
    const std::size_t l = c.size("l", 1);
    c.finish();
    require_positive(n * m * l, "n/m/l");
    put_estimate(out, volume::estimate_orthant_probability(n, m, l, trials, seed));
    if (static_cast<double>(m * l) > static_cast<double>(n) && n >= l && m <= n) {
      const auto bound = bounds::orthant_probability_bound(n, m, l);
      out.scalars["bound"] = bound.value();
      out.scalars["bound_log"] = bound.log;
    }
  } else if (kind == "coherence") {
    const std::size_t m = c.size("m", 2000);
    const std::size_t n = c.size("n", 5);
    const double eps = c.real("eps", 0.3);
    c.finish();
    put_estimate(out, volume::estimate_coherence_tail(m, n, eps, trials, seed));
    out.scalars["bound"] = bounds::coherence_tail_bound(m, n, eps);
  } else if (kind == "margin") {
    const std::size_t d0 = c.size("d0", 3);
    const std::size_t n = c.size("n", 10);
    const double sin_alpha = c.real("sin_alpha", 0.5);
    c.finish();
    require_positive(d0 * n, "d0/n");
    if (!(sin_alpha >= 0.0 && sin_alpha < 1.0)) {
      throw Error(ErrorKind::DomainError, "sin_alpha must lie in [0, 1)");
    }
    Matrix Wstar = Matrix::Zero(1, static_cast<Eigen::Index>(d0));
    Wstar(0, 0) = 1.0;
    put_estimate(out, volume::estimate_margin_probability(Wstar, n, sin_alpha, trials, seed));
    if (d0 >= 2) {
      const double per_sample = bounds::beta_angle_bound(d0, std::acos(sin_alpha), bounds::BetaSide::Lower);
      out.scalars["bound"] = std::pow(per_sample, static_cast<double>(n));
    }
  } else {
    throw Error(ErrorKind::Config, "unknown volume estimator '" + kind + "'");
  }
  return out;
}

bounds::BoundInputs read_bound_inputs(ConfigReader& c) {
  bounds::BoundInputs in;
  in.n = c.size("n", 10000);
  in.d0 = c.size("d0", 100);
  in.d1 = c.size("d1", 100);
  in.d1_star = c.size("d1_star", 4);
  in.epsilon = c.real("epsilon", 0.1);
  in.rho = c.real("rho", 0.0);
  in.lim_ratio = c.real("lim_ratio", 0.0);
  c.finish();
  bounds::validate(in);
  return in;
}

Output run_bounds(const std::string& name, ConfigReader& c) {
  Output out;
  auto& s = out.scalars;
  if (name == "theta-star") {
    const double tol = c.real("tol", 1e-6);
    c.finish();
    const auto t = bounds::find_theta_star(tol);
    s = Json{{"theta", t.theta}, {"psi", t.psi_at_theta}, {"objective", t.objective}};
  } else if (name == "gamma-eps") {
    s["value"] = bounds::gamma_epsilon(read_bound_inputs(c));
  } else if (name == "suboptimal") {
    const auto v = bounds::suboptimal_volume_bound(read_bound_inputs(c));
    s = Json{{"value", v.value()}, {"log", v.log}};
  } else if (name == "ratio") {
    const auto r = bounds::ratio_bound(read_bound_inputs(c));
    s = Json{{"log", r.log_ratio}, {"log_companion", r.log_companion}};
  } else if (name == "global-lower") {
    const std::size_t d0 = c.size("d0", 3);
    const std::size_t d1_star = c.size("d1_star", 1);
    const double sin_alpha = c.real("sin_alpha", 0.5);
    c.finish();
    const auto g = bounds::global_volume_lower_bound(d0, d1_star, sin_alpha);
    s = Json{{"value", g.exact}, {"log", g.exact_log}, {"asymptotic_log", g.asymptotic_log}};
  } else if (name == "delta") {
    const std::size_t d0 = c.size("d0", 100);
    const std::size_t n = c.size("n", 10000);
    c.finish();
    const double v = bounds::delta_probability(d0, n);
    s = Json{{"value", v}, {"log", std::log(v)}};
  } else if (name == "dichotomy") {
    const std::size_t n = c.size("n", 8);
    const std::size_t d0 = c.size("d0", 2);
    c.finish();
    const auto d = bounds::dichotomy_count_bound(n, d0);
    s = Json{{"value", d.schlafli},
             {"saturated", d.saturated},
             {"log", static_cast<double>(std::log(d.schlafli_real))},
             {"loose_log", std::log(2.0) + static_cast<double>(d0) * std::log(static_cast<double>(n))}};
  } else if (name == "coherence-tail") {
    const std::size_t m = c.size("m", 2000);
    const std::size_t n = c.size("n", 5);
    const double eps = c.real("eps", 0.3);
    c.finish();
    const double v = bounds::coherence_tail_bound(m, n, eps);
    s = Json{{"value", v}, {"log", std::log(v)}};
  } else if (name == "orthant") {
    const std::size_t n = c.size("n", 40);
    const std::size_t m = c.size("m", 20);
    const std::size_t l = c.size("l", 8);
    c.finish();
    const auto v = bounds::orthant_probability_bound(n, m, l);
    s = Json{{"value", v.value()}, {"log", v.log}};
  } else if (name == "beta") {
    const std::size_t d0 = c.size("d0", 3);
    const double x = c.real("x", 0.1);
    const std::string side = c.text("side", "upper");
    c.finish();
    if (side != "upper" && side != "lower") {
      throw Error(ErrorKind::Config, "config key 'side' must be 'upper' or 'lower'");
    }
    const double v = bounds::beta_angle_bound(
        d0, x, side == "upper" ? bounds::BetaSide::Upper : bounds::BetaSide::Lower);
    s = Json{{"value", v}, {"log", std::log(v)}};
  } else {
    throw Error(ErrorKind::Config, "unknown bound '" + name + "'");
  }
  // log(0) from an underflowed bound cannot be stored in JSON.
  for (auto it = s.begin(); it != s.end(); ++it) {
    if (it->is_number_float() && !std::isfinite(it->get<double>())) *it = nullptr;
  }
  return out;
}

Output run_rank_oracle(ConfigReader& c, std::uint64_t seed) {
  const std::size_t d0 = c.size("d0", 2);
  const std::size_t d1 = c.size("d1", 2);
  const std::size_t n = c.size("n", 4);
  const double rho = c.real("rho", 0.5);
  const bool random_pattern = c.flag("random_pattern", true);
  c.finish();
  require_positive(d0 * d1 * n, "d0/d1/n");
  if (rho == 1.0) throw Error(ErrorKind::BadLeak, "rho must differ from 1");

  auto data_stream = rng::make_stream(rng::derive_seed(seed, "oracle-data"), rng::StreamId::Data);
  const auto rows = static_cast<Eigen::Index>(d1);
  const auto cols = static_cast<Eigen::Index>(n);
  const Matrix X = volume::gaussian_matrix(static_cast<Eigen::Index>(d0), cols, data_stream);
  Matrix A(rows, cols);
  if (random_pattern) {
    auto s = rng::make_stream(rng::derive_seed(seed, "oracle-pattern"), rng::StreamId::Weights);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) A(i, j) = (s.next_u64() >> 63) ? 1.0 : rho;
  } else {
    auto s = rng::make_stream(rng::derive_seed(seed, "oracle-weights"), rng::StreamId::Weights);
    A = activation_pattern(volume::gaussian_matrix(rows, static_cast<Eigen::Index>(d0), s), X, rho).A;
  }
  const RankConditionResult r = rank_condition_oracle(A, X);
  const std::size_t rank = linalg::numerical_rank(khatri_rao(A, X));

  Output out;
  out.scalars = Json{{"condition_holds", r.holds},
                     {"khatri_rao_rank", rank},
                     {"full_column_rank", rank == n},
                     {"agree", r.holds == (rank == n)}};
  io::Table pattern{{"row", "col", "slope"}, {}};
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      pattern.rows.push_back({static_cast<double>(i), static_cast<double>(j), A(i, j)});
  out.tables["pattern"] = std::move(pattern);
  io::Table witness{{"sample"}, {}};
  if (r.witness) {
    for (std::size_t k : *r.witness) witness.rows.push_back({static_cast<double>(k)});
  }
  out.tables["witness"] = std::move(witness);
  return out;
}

std::pair<std::string, std::string> split_command(const std::string& command) {
  const auto space = command.find(' ');
  if (space == std::string::npos) return {command, ""};
  return {command.substr(0, space), command.substr(space + 1)};
}

}  // namespace

std::vector<std::string> command_names() {
  return {"construct",          "train",          "scan",
          "diagnostic",         "rank-oracle",    "volume angular",
          "volume global",      "volume orthant", "volume coherence",
          "volume margin",      "bounds theta-star", "bounds gamma-eps",
          "bounds suboptimal",  "bounds global-lower", "bounds delta",
          "bounds ratio",       "bounds dichotomy", "bounds coherence-tail",
          "bounds orthant",     "bounds beta"};
}

io::RunRecord execute(const std::string& command, const Json& config) {
  const auto [head, sub] = split_command(command);
  ConfigReader c(config, command);
  io::RunRecord record;
  record.command = command;
  record.started = io::utc_now();

  Output out;
  if (head == "bounds") {
    out = run_bounds(sub, c);
  } else {
    const std::uint64_t seed = c.u64("seed", 0);
    record.seed = seed;
    if (head == "construct" && sub.empty()) out = run_construct(c, seed);
    else if (head == "train" && sub.empty()) out = run_train(c, seed);
    else if (head == "scan" && sub.empty()) out = run_scan(c, seed);
    else if (head == "diagnostic" && sub.empty()) out = run_diagnostic(c, seed);
    else if (head == "rank-oracle" && sub.empty()) out = run_rank_oracle(c, seed);
    else if (head == "volume") out = run_volume(sub, c, seed);
    else throw Error(ErrorKind::Config, "unknown command '" + command + "'");
  }

  record.config = c.resolved();
  record.tables = std::move(out.tables);
  record.scalars = std::move(out.scalars);
  record.finished = io::utc_now();
  return record;
}

bool replay_matches(const io::RunRecord& record) {
  const io::RunRecord again = execute(record.command, record.config);
  return again.tables == record.tables && again.scalars == record.scalars;
}

std::string summarize(const io::RunRecord& record) {
  std::string out;
  for (const auto& [key, value] : record.scalars.items()) {
    std::string text;
    if (value.is_number_float()) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.10g", value.get<double>());
      text = buf;
    } else {
      text = value.dump();
    }
    out += key + " = " + text + "\n";
  }
  return out;
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return err->is_numerical() ? 2 : 1;
  return 1;
}

}  // namespace landscape::cli
