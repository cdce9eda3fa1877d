// Acceptance checks AC1..AC10. Prints one PASS/FAIL line per criterion.
//   acceptance          run all
//   acceptance AC3 AC7  run the named ones
// Exit status is 0 only when every requested criterion passes.

#include "landscape/bounds.hpp"
#include "landscape/commands.hpp"
#include "landscape/construct.hpp"
#include "landscape/dichotomy.hpp"
#include "landscape/error.hpp"
#include "landscape/io.hpp"
#include "landscape/linalg.hpp"
#include "landscape/network.hpp"
#include "landscape/rng.hpp"
#include "landscape/stationarity.hpp"
#include "landscape/train.hpp"
#include "landscape/volume.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace landscape;
using landscape::io::Json;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Outcome ac1() {
  Outcome out;
  const Timer timer;
  const std::size_t d0s[] = {5, 20};
  const std::size_t ns[] = {50, 400};
  const double rhos[] = {0.0, 0.1};
  double worst_mse = 0.0;
  double smallest_input = INFINITY;
  int width_checked = 0;
  for (std::size_t i = 0; i < 30; ++i) {
    const std::size_t d0 = d0s[i % 2];
    const std::size_t n = ns[(i / 2) % 2];
    const double rho = rhos[(i / 4) % 2];
    const std::uint64_t seed = rng::derive_seed(0, "ac1", {i});
    const Dataset data = train::gen_gaussian_dataset(d0, n, seed);
    try {
      ConstructOptions opt;
      opt.rho = rho;
      opt.seed = seed;
      const Construction c = build_global_minimum(data, opt);
      const double m = mse(c.params, data);
      const double e = mce(c.params, data);
      const double mi = min_neural_input(c.params.W, data.X);
      worst_mse = std::max(worst_mse, m);
      smallest_input = std::min(smallest_input, mi);
      out.check(m <= 1e-18, "instance " + std::to_string(i) + " mse " + fmt(m));
      out.check(e == 0.0, "instance " + std::to_string(i) + " mce " + fmt(e));
      out.check(mi > 0.0, "instance " + std::to_string(i) + " min input " + fmt(mi));
      if (data.y.sum() <= static_cast<double>(n) / 2.0) {
        ++width_checked;
        const std::size_t want = zero_error_width(n, d0);
        out.check(c.d1_star == want && static_cast<std::size_t>(c.params.d1()) == want,
                  "instance " + std::to_string(i) + " width " + std::to_string(c.params.d1()) +
                      " != " + std::to_string(want));
      }
    } catch (const std::exception& ex) {
      out.check(false, "instance " + std::to_string(i) + " threw: " + ex.what());
    }
  }
  const double t = timer.seconds();
  out.check(t < 10.0, "runtime " + fmt(t) + " s >= 10 s");
  out.detail << "30 instances, worst mse " << fmt(worst_mse) << ", smallest min input "
             << fmt(smallest_input) << ", width checked on " << width_checked << ", " << fmt(t, "%.2f")
             << " s";
  return out;
}

Outcome ac2() {
  Outcome out;
  double worst_identity = 0.0;
  double worst_fd = 0.0;
  std::size_t draws = 0;
  std::size_t redraws = 0;
  for (std::uint64_t attempt = 0; draws < 100; ++attempt) {
    auto s = rng::make_stream(rng::derive_seed(0, "ac2", {attempt}), rng::StreamId::Data);
    const auto d0 = static_cast<Eigen::Index>(2 + s.below(5));
    const auto d1 = static_cast<Eigen::Index>(2 + s.below(5));
    const auto n = static_cast<Eigen::Index>(3 + s.below(18));
    NetParams p;
    p.rho = s.below(2) ? 0.0 : s.uniform(0.0, 0.9);
    p.W = volume::gaussian_matrix(d1, d0, s);
    p.z = volume::gaussian_matrix(d1, 1, s);
    Dataset data;
    data.X = volume::gaussian_matrix(d0, n, s);
    data.y = Vector(n);
    for (Eigen::Index k = 0; k < n; ++k) data.y(k) = static_cast<double>(s.below(2));
    // Stay clear of kinks so the finite-difference step never crosses one.
    if (min_neural_input(p.W, data.X) < 1e-3 || p.z.cwiseAbs().minCoeff() < 1e-3) {
      ++redraws;
      continue;
    }
    ++draws;

    const LossEval ev = evaluate(p, data);
    const Matrix a = activation_pattern(p.W, data.X, p.rho).A;
    const Vector lhs = khatri_rao(a, data.X) * ev.residual;
    const Gradient g = gradient(p, data);
    const Vector grad_tilde = gradient_wrt_scaled_weights(p, g);
    const double gap = (lhs + 0.5 * static_cast<double>(n) * grad_tilde).norm();
    const double identity_rel = gap / (1.0 + ev.residual.norm());
    worst_identity = std::max(worst_identity, identity_rel);

    const double h = 1e-6;
    Vector analytic(d1 * d0 + d1);
    Vector numeric(d1 * d0 + d1);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < d1; ++i) {
      for (Eigen::Index j = 0; j < d0; ++j, ++k) {
        NetParams up = p, down = p;
        up.W(i, j) += h;
        down.W(i, j) -= h;
        numeric(k) = (mse(up, data) - mse(down, data)) / (2.0 * h);
        analytic(k) = g.dW(i, j);
      }
    }
    for (Eigen::Index i = 0; i < d1; ++i, ++k) {
      NetParams up = p, down = p;
      up.z(i) += h;
      down.z(i) -= h;
      numeric(k) = (mse(up, data) - mse(down, data)) / (2.0 * h);
      analytic(k) = g.dz(i);
    }
    const double fd_rel = (numeric - analytic).norm() / std::max(analytic.norm(), 1e-300);
    worst_fd = std::max(worst_fd, fd_rel);
    out.check(identity_rel <= 1e-8, "draw " + std::to_string(attempt) + " identity " + fmt(identity_rel));
    out.check(fd_rel <= 1e-5, "draw " + std::to_string(attempt) + " finite differences " + fmt(fd_rel));
  }
  out.detail << "100 draws (" << redraws << " redrawn near a kink), worst identity gap "
             << fmt(worst_identity) << "/(1+|e|), worst finite-difference error " << fmt(worst_fd);
  return out;
}

Outcome ac3() {
  Outcome out;
  const Timer timer;
  const Eigen::Index d0 = 2;
  const Eigen::Index d1 = 2;
  const double rho = 0.5;
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  std::size_t holds = 0;
  for (Eigen::Index n = 2; n <= 4; ++n) {
    const std::uint64_t patterns = std::uint64_t{1} << (d1 * n);
    for (std::uint64_t bits = 0; bits < patterns; ++bits) {
      Matrix a(d1, n);
      for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < d1; ++r) {
          a(r, c) = (bits >> (c * d1 + r)) & 1u ? 1.0 : rho;
        }
      }
      for (std::uint64_t draw = 0; draw < 20; ++draw) {
        auto s = rng::make_stream(rng::derive_seed(0, "ac3", {static_cast<std::uint64_t>(n), bits, draw}),
                                  rng::StreamId::Data);
        const Matrix x = volume::gaussian_matrix(d0, n, s);
        const bool condition = rank_condition_oracle(a, x).holds;
        const bool full_rank =
            linalg::numerical_rank(khatri_rao(a, x)) == static_cast<std::size_t>(n);
        ++cases;
        holds += condition;
        if (condition != full_rank) ++mismatches;
      }
    }
  }
  const double t = timer.seconds();
  out.check(mismatches == 0, std::to_string(mismatches) + " mismatches");
  out.check(t < 60.0, "runtime " + fmt(t) + " s >= 60 s");
  out.detail << cases << " (pattern, X) cases, condition holds in " << holds << ", " << mismatches
             << " mismatches, " << fmt(t, "%.2f") << " s";
  return out;
}

Outcome ac4() {
  Outcome out;
  const Timer timer;
  const auto r = bounds::find_theta_star();
  const double t = timer.seconds();
  out.check(std::abs(r.theta - 23.25) <= 0.05, "theta " + fmt(r.theta) + " not within 23.25 +- 0.05");
  out.check(std::abs(r.psi_at_theta - 0.1062) <= 0.001,
            "psi " + fmt(r.psi_at_theta) + " not within 0.1062 +- 0.001");
  out.check(std::abs(r.objective - 0.6478) <= 0.002,
            "objective " + fmt(r.objective) + " not within 0.6478 +- 0.002");
  out.check(t < 1.0, "runtime " + fmt(t) + " s >= 1 s");
  out.detail << "theta* " << fmt(r.theta) << ", psi " << fmt(r.psi_at_theta) << ", objective "
             << fmt(r.objective) << ", " << fmt(t, "%.3f") << " s";
  return out;
}

Outcome ac5() {
  Outcome out;
  const Timer timer;
  train::TrainConfig config = train::scan_protocol();
  config.seed = 0;
  const auto cells = train::scan_overparam({10, 20, 30}, {0.5, 4.0}, 5, config);
  for (const auto& cell : cells) {
    const double med = median(cell.final_mce);
    const std::string name = "d=" + std::to_string(cell.d) + " N=" + std::to_string(cell.n);
    if (cell.factor < 1.0) {
      out.check(med == 0.0, name + " median mce " + fmt(med) + " != 0");
    } else {
      out.check(med > 0.05, name + " median mce " + fmt(med) + " <= 0.05");
    }
    out.detail << name << ": median " << fmt(med, "%.4f") << "; ";
  }
  const double t = timer.seconds();
  out.check(t < 900.0, "runtime " + fmt(t) + " s >= 15 min");
  out.detail << fmt(t, "%.1f") << " s";
  return out;
}

Outcome ac6() {
  Outcome out;
  const Timer timer;
  train::TrainConfig config = train::diagnostic_protocol();
  config.seed = 0;
  const auto rows = train::dlm_diagnostic(20, 10, config);
  int ratio_ok = 0;
  double smallest_input = INFINITY;
  double largest_mse = 0.0;
  for (const auto& r : rows) {
    const std::string name = "seed " + std::to_string(r.seed_index);
    out.check(r.n == 80, name + " N " + std::to_string(r.n));
    out.check(r.min_neural_input >= 1e-3, name + " min input " + fmt(r.min_neural_input));
    out.check(r.final_mse <= 1e-7, name + " mse " + fmt(r.final_mse));
    if (r.min_neural_input >= 1e3 * r.final_mse) ++ratio_ok;
    smallest_input = std::min(smallest_input, r.min_neural_input);
    largest_mse = std::max(largest_mse, r.final_mse);
  }
  out.check(ratio_ok >= 9, "input/mse ratio >= 1e3 in only " + std::to_string(ratio_ok) + "/10");
  const double t = timer.seconds();
  out.check(t < 600.0, "runtime " + fmt(t) + " s >= 10 min");
  out.detail << "10 seeds, smallest min input " << fmt(smallest_input) << ", largest mse "
             << fmt(largest_mse) << ", ratio ok in " << ratio_ok << "/10, " << fmt(t, "%.1f") << " s";
  return out;
}

Outcome ac7() {
  Outcome out;
  const Timer timer;
  const std::uint64_t trials = 100000;

  // (a) halfspace {w : w.x < 0} in R^3
  {
    const Matrix x{{0.3}, {-1.2}, {0.8}};
    ActivationPattern pattern{Matrix::Ones(1, 1), BoolMatrix::Constant(1, 1, false)};
    pattern.A(0, 0) = 0.0;
    volume::RegionSpec region{volume::ActivationRegion{pattern, x, 0.0}, 1, 3};
    const auto e = volume::estimate_angular_volume(region, trials, rng::derive_seed(0, "ac7a"));
    const double sigma = e.std_error_at(0.5);
    out.check(std::abs(e.estimate - 0.5) <= 3.0 * sigma, "(a) estimate " + fmt(e.estimate));
    out.detail << "(a) " << fmt(e.estimate) << " vs 0.5;";
  }

  // (b) single-row sign match around w* = e3 with every sample within 30 degrees of +-e3
  {
    const double alpha = std::numbers::pi / 3.0;
    const Matrix wstar{{0.0, 0.0, 1.0}};
    auto s = rng::make_stream(rng::derive_seed(0, "ac7b-data"), rng::StreamId::Data);
    const Eigen::Index n = 12;
    Matrix x(3, n);
    for (Eigen::Index c = 0; c < n;) {
      const Matrix v = volume::gaussian_matrix(3, 1, s);
      if (std::abs(v(2, 0)) / v.norm() > std::sin(alpha)) x.col(c++) = v;
    }
    const double margin = angular_margin(x, wstar).sin_alpha;
    const double bound = std::pow(std::sin(alpha), 2) / (2.0 * std::exp(bounds::log_beta(0.5, 1.0)));
    const auto e = volume::estimate_global_region_volume(x, wstar, 1, trials, rng::derive_seed(0, "ac7b"));
    out.check(margin >= std::sin(alpha), "(b) data margin " + fmt(margin));
    out.check(e.estimate >= bound - 3.0 * e.std_error(), "(b) estimate " + fmt(e.estimate) + " < " + fmt(bound));
    out.detail << " (b) " << fmt(e.estimate) << " >= " << fmt(bound) << ";";
  }

  // (c) P(|cos(w, e3)| < 0.1) at d0 = 3
  {
    const double u = 0.1;
    volume::RegionSpec region{volume::CustomRegion{[u](const Matrix& w) {
                                return std::abs(w(0, 2)) < u * w.norm();
                              }},
                              1, 3};
    const auto e = volume::estimate_angular_volume(region, trials, rng::derive_seed(0, "ac7c"));
    const double bound = bounds::beta_angle_bound(3, u, bounds::BetaSide::Upper);
    out.check(e.estimate <= bound + 3.0 * e.std_error_at(bound), "(c) estimate " + fmt(e.estimate));
    out.detail << " (c) " << fmt(e.estimate) << " <= " << fmt(bound) << ";";
  }

  // (d) coherence tail, M = 2000, N = 5, eps = 0.3
  {
    const auto e = volume::estimate_coherence_tail(2000, 5, 0.3, 10000, rng::derive_seed(0, "ac7d"));
    const double bound = 0.0277;
    out.check(e.estimate <= bound + 3.0 * e.std_error(), "(d) estimate " + fmt(e.estimate));
    out.detail << " (d) " << fmt(e.estimate) << " <= " << fmt(bound) << " (formula "
               << fmt(bounds::coherence_tail_bound(2000, 5, 0.3)) << ");";
  }

  const double t = timer.seconds();
  out.check(t < 300.0, "runtime " + fmt(t) + " s >= 5 min");
  out.detail << " " << fmt(t, "%.1f") << " s";
  return out;
}

Outcome ac8() {
  Outcome out;
  struct Case {
    std::size_t n, m, l;
    double truth;
  };
  for (const Case& c : {Case{1, 1, 1, 0.5}, Case{2, 1, 1, 0.25}}) {
    const auto e = volume::estimate_orthant_probability(c.n, c.m, c.l, 100000,
                                                         rng::derive_seed(0, "ac8", {c.n}));
    const double sigma = e.std_error_at(c.truth);
    const std::string name = "(" + std::to_string(c.n) + "," + std::to_string(c.m) + "," +
                             std::to_string(c.l) + ")";
    out.check(std::abs(e.estimate - c.truth) <= 3.0 * sigma, name + " estimate " + fmt(e.estimate));
    out.detail << (c.n == 1 ? "" : "; ") << name << " " << fmt(e.estimate) << " vs " << c.truth
               << " (3 sigma " << fmt(3 * sigma) << ")";
  }
  return out;
}

Outcome ac9() {
  Outcome out;
  int cells = 0;
  int cells_ok = 0;
  for (std::size_t d0 : {2u, 3u}) {
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto bound = bounds::dichotomy_count_bound(n, d0).schlafli;
      int equal = 0;
      for (std::uint64_t draw = 0; draw < 10; ++draw) {
        auto s = rng::make_stream(rng::derive_seed(0, "ac9", {d0, n, draw}), rng::StreamId::Data);
        const Matrix x = volume::gaussian_matrix(static_cast<Eigen::Index>(d0), static_cast<Eigen::Index>(n), s);
        const std::size_t count = dichotomy::count_by_feasibility(x);
        if (d0 == 2) {
          const std::size_t swept = dichotomy::count_by_angular_sweep(x);
          out.check(swept == count, "d0=2 N=" + std::to_string(n) + " sweep " + std::to_string(swept) +
                                        " != feasibility " + std::to_string(count));
        }
        out.check(count <= bound, "d0=" + std::to_string(d0) + " N=" + std::to_string(n) + " count " +
                                      std::to_string(count) + " > " + std::to_string(bound));
        equal += count == bound;
      }
      ++cells;
      cells_ok += equal >= 9;
      out.check(equal >= 9, "d0=" + std::to_string(d0) + " N=" + std::to_string(n) + " equality in " +
                                std::to_string(equal) + "/10");
    }
  }
  out.detail << cells << " (d0, N) cells, equality in >= 9/10 draws for " << cells_ok;
  return out;
}

Outcome ac10() {
  Outcome out;
  setenv("LANDSCAPE_THREADS", "1", 1);
  const std::vector<std::pair<std::string, Json>> commands = {
      {"construct", {{"d0", 6}, {"n", 60}, {"seed", 3}, {"rho", 0.1}}},
      {"train", {{"d0", 5}, {"n", 30}, {"d1", 10}, {"epochs", 60}, {"seed", 4}}},
      {"scan", {{"d_values", {4, 6}}, {"factors", {0.5, 4.0}}, {"seeds", 2}, {"epochs", 40}, {"seed", 5}}},
      {"diagnostic", {{"d", 8}, {"seeds", 3}, {"epochs", 60}, {"lr_decay_epochs", 30}, {"seed", 6}}},
      {"volume angular", {{"trials", 5000}, {"seed", 7}}},
      {"volume global", {{"trials", 5000}, {"seed", 8}}},
      {"volume orthant", {{"trials", 5000}, {"seed", 9}}},
      {"volume coherence", {{"trials", 2000}, {"seed", 10}}},
      {"volume margin", {{"trials", 5000}, {"seed", 11}}},
      {"rank-oracle", {{"seed", 12}}},
      {"bounds theta-star", Json::object()},
  };
  int replayed = 0;
  for (const auto& [command, config] : commands) {
    try {
      const auto record = cli::execute(command, config);
      const auto reread = io::deserialize(io::serialize(record));
      const bool ok = reread == record && cli::replay_matches(reread);
      out.check(ok, command + " replay differs");
      replayed += ok;
    } catch (const std::exception& e) {
      out.check(false, command + " threw: " + e.what());
    }
  }

  // Monte Carlo estimators at 1, 2 and 8 workers.
  using Estimator = std::function<volume::MCEstimate(std::size_t)>;
  const Matrix x = [] {
    auto s = rng::make_stream(99, rng::StreamId::Data);
    return volume::gaussian_matrix(4, 6, s);
  }();
  const Matrix wstar = x.leftCols(4).transpose().topRows(2);
  const ActivationPattern pattern = activation_pattern(wstar, x, 0.0);
  const std::vector<std::pair<std::string, Estimator>> estimators = {
      {"angular",
       [&](std::size_t t) {
         volume::RegionSpec r{volume::ActivationRegion{pattern, x, 0.0}, 2, 4};
         return volume::estimate_angular_volume(r, 20000, 21, t);
       }},
      {"global", [&](std::size_t t) { return volume::estimate_global_region_volume(x, wstar, 3, 20000, 22, t); }},
      {"orthant", [](std::size_t t) { return volume::estimate_orthant_probability(8, 4, 3, 20000, 23, t); }},
      {"coherence", [](std::size_t t) { return volume::estimate_coherence_tail(30, 6, 0.5, 5000, 24, t); }},
      {"margin", [&](std::size_t t) { return volume::estimate_margin_probability(wstar, 3, 0.2, 20000, 25, t); }},
  };
  int mc_ok = 0;
  for (const auto& [name, run] : estimators) {
    const auto one = run(1);
    const bool ok = one == run(2) && one == run(8);
    out.check(ok, name + " differs across worker counts");
    mc_ok += ok;
  }
  out.detail << replayed << "/" << commands.size() << " command records replay bit-for-bit, " << mc_ok
             << "/" << estimators.size() << " estimators identical at 1/2/8 workers";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::function<Outcome()>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  if (wanted.empty()) {
    for (int i = 1; i <= 10; ++i) wanted.push_back("AC" + std::to_string(i));
  }
  bool all = true;
  for (const auto& name : wanted) {
    const auto it = criteria.find(name);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion '%s'\n", name.c_str());
      return 2;
    }
    Outcome o;
    try {
      o = it->second();
    } catch (const std::exception& e) {
      o.check(false, std::string("threw: ") + e.what());
    }
    std::string line = o.detail.str();
    for (const auto& f : o.failures) line += " | failed: " + f;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), line.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
