#include "landscape/train.hpp"

#include "landscape/error.hpp"
#include "landscape/parallel.hpp"
#include "landscape/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace landscape::train {

TrainConfig scan_protocol() {
  TrainConfig c;
  c.epochs = 4000;
  c.lr = 0.01;
  c.lr_decay_epochs = 0;
  c.stop_on_zero_mce = true;
  return c;
}

TrainConfig diagnostic_protocol() {
  TrainConfig c;
  c.epochs = 2000;
  c.lr = 7e-4;
  c.lr_decay_epochs = 1000;
  c.stop_on_zero_mce = false;
  return c;
}

void validate(const TrainConfig& c) {
  if (!(c.lr > 0.0)) throw Error(ErrorKind::Config, "lr must be positive");
  if (!(c.beta1 >= 0.0 && c.beta1 < 1.0)) throw Error(ErrorKind::Config, "beta1 must lie in [0, 1)");
  if (!(c.beta2 >= 0.0 && c.beta2 < 1.0)) throw Error(ErrorKind::Config, "beta2 must lie in [0, 1)");
  if (!(c.adam_eps > 0.0)) throw Error(ErrorKind::Config, "adam_eps must be positive");
  if (c.lr_decay_epochs > c.epochs) {
    throw Error(ErrorKind::Config, "lr_decay_epochs cannot exceed epochs");
  }
  if (c.rho == 1.0) throw Error(ErrorKind::BadLeak, "rho must differ from 1");
}

Dataset gen_gaussian_dataset(std::size_t d0, std::size_t n, std::uint64_t seed) {
  if (d0 < 1 || n < 1) throw Error(ErrorKind::DomainError, "dataset needs d0, N >= 1");
  auto xs = rng::make_stream(seed, rng::StreamId::Data);
  auto ys = rng::make_stream(seed, rng::StreamId::Labels);
  Dataset data;
  data.X.resize(static_cast<Eigen::Index>(d0), static_cast<Eigen::Index>(n));
  data.y.resize(static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < data.X.cols(); ++j) {
    for (Eigen::Index i = 0; i < data.X.rows(); ++i) data.X(i, j) = xs.normal();
    data.y(j) = static_cast<double>(ys.next_u64() >> 63);
  }
  return data;
}

NetParams he_init(std::size_t d1, std::size_t d0, std::uint64_t seed, double rho) {
  if (d1 < 1 || d0 < 1) throw Error(ErrorKind::DomainError, "he_init needs d1, d0 >= 1");
  auto s = rng::make_stream(seed, rng::StreamId::Init);
  const double w_bound = std::sqrt(6.0 / static_cast<double>(d0));
  const double z_bound = std::sqrt(6.0 / static_cast<double>(d1));
  NetParams p;
  p.rho = rho;
  p.W.resize(static_cast<Eigen::Index>(d1), static_cast<Eigen::Index>(d0));
  p.z.resize(static_cast<Eigen::Index>(d1));
  for (Eigen::Index j = 0; j < p.W.cols(); ++j) {
    for (Eigen::Index i = 0; i < p.W.rows(); ++i) p.W(i, j) = s.uniform(-w_bound, w_bound);
  }
  for (Eigen::Index i = 0; i < p.z.size(); ++i) p.z(i) = s.uniform(-z_bound, z_bound);
  return p;
}

std::size_t default_batch(std::size_t n, std::size_t d) {
  return std::max<std::size_t>(1, std::min(n / 2, d / 2));
}

double learning_rate(const TrainConfig& c, std::size_t epoch) {
  const std::size_t decay_start = c.epochs - c.lr_decay_epochs;
  if (c.lr_decay_epochs == 0 || epoch < decay_start) return c.lr;
  // 10^-3 reached at the last epoch of the phase.
  const double progress = static_cast<double>(epoch - decay_start + 1) /
                          static_cast<double>(c.lr_decay_epochs);
  return c.lr * std::pow(1e-3, progress);
}

AdamState::AdamState(Eigen::Index size, double beta1, double beta2, double eps)
    : m_(Vector::Zero(size)), v_(Vector::Zero(size)), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void AdamState::step(Eigen::Ref<Vector> theta, const Vector& grad, double lr) {
  ++t_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseAbs2();
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  theta.array() -= lr * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps_);
}

TrainResult adam_train(NetParams params, const Dataset& data, const TrainConfig& config) {
  validate(config);
  validate(data);
  params.rho = config.rho;
  validate(params);
  if (params.W.cols() != data.d0()) {
    throw Error(ErrorKind::ShapeMismatch, "network input size differs from data dimension");
  }

  const auto n = static_cast<std::size_t>(data.size());
  const std::size_t batch =
      config.batch > 0 ? std::min(config.batch, n) : default_batch(n, static_cast<std::size_t>(data.d0()));
  const std::uint64_t shuffle_seed = rng::derive_seed(config.seed, "shuffle");

  AdamState w_state(params.W.size(), config.beta1, config.beta2, config.adam_eps);
  AdamState z_state(params.z.size(), config.beta1, config.beta2, config.adam_eps);

  TrainResult result;
  result.history.reserve(config.epochs);
  std::vector<std::size_t> order(n);
  Matrix xb(data.d0(), static_cast<Eigen::Index>(batch));
  Vector yb(static_cast<Eigen::Index>(batch));

  const LossEval start = evaluate_fast(params, data);
  EpochMetrics current{start.mse, mce_from_output(start.output, data.y)};
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.stop_on_zero_mce && current.mce == 0.0) break;
    const double lr = learning_rate(config, epoch);

    std::iota(order.begin(), order.end(), std::size_t{0});
    auto shuffle = rng::make_stream(shuffle_seed, rng::StreamId::Shuffle, epoch);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[shuffle.below(i)]);

    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t size = std::min(batch, n - start);
      xb.resize(data.d0(), static_cast<Eigen::Index>(size));
      yb.resize(static_cast<Eigen::Index>(size));
      for (std::size_t j = 0; j < size; ++j) {
        xb.col(static_cast<Eigen::Index>(j)) = data.X.col(static_cast<Eigen::Index>(order[start + j]));
        yb(static_cast<Eigen::Index>(j)) = data.y(static_cast<Eigen::Index>(order[start + j]));
      }
      const Gradient g = gradient_fast(params, xb, yb);
      w_state.step(Eigen::Map<Vector>(params.W.data(), params.W.size()),
                   Eigen::Map<const Vector>(g.dW.data(), g.dW.size()), lr);
      z_state.step(params.z, g.dz, lr);
    }

    const LossEval loss = evaluate_fast(params, data);
    if (!std::isfinite(loss.mse)) {
      throw Error(ErrorKind::NonFinite,
                  "loss became non-finite at epoch " + std::to_string(epoch + 1));
    }
    current = {loss.mse, mce_from_output(loss.output, data.y)};
    result.history.push_back(current);
    ++result.epochs_run;
  }

  const LossEval final_loss = evaluate(params, data);
  result.final_mse = final_loss.mse;
  result.final_mce = mce_from_output(final_loss.output, data.y);
  result.min_neural_input = min_neural_input(params.W, data.X);
  result.params = std::move(params);
  return result;
}

Matrix covariance(const Matrix& X) {
  const Vector mean = X.rowwise().mean();
  const Matrix centered = X.colwise() - mean;
  return centered * centered.transpose() / static_cast<double>(X.cols());
}

WhitenResult zca_whiten(const Matrix& X, double eps) {
  if (X.cols() < 2) throw Error(ErrorKind::DomainError, "zca_whiten needs at least two samples");
  WhitenResult out;
  out.mean = X.rowwise().mean();
  const Matrix centered = X.colwise() - out.mean;
  const Matrix cov = centered * centered.transpose() / static_cast<double>(X.cols());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  // Tiny negative eigenvalues from roundoff are clamped before the shift.
  const Vector scale =
      (eig.eigenvalues().array().max(0.0) + eps).rsqrt().matrix();
  out.transform = eig.eigenvectors() * scale.asDiagonal() * eig.eigenvectors().transpose();
  out.Xw = out.transform * centered;
  return out;
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

std::vector<ScanCell> scan_overparam(const std::vector<std::size_t>& d_values,
                                     const std::vector<double>& n_factors, std::size_t seeds,
                                     const TrainConfig& config, std::size_t threads) {
  if (d_values.empty() || n_factors.empty() || seeds == 0) {
    throw Error(ErrorKind::Config, "scan needs nonempty d_values, n_factors and seeds >= 1");
  }
  validate(config);

  std::vector<ScanCell> cells;
  for (std::size_t d : d_values) {
    for (double factor : n_factors) {
      ScanCell cell;
      cell.d = d;
      cell.factor = factor;
      cell.n = static_cast<std::size_t>(std::floor(factor * static_cast<double>(d * d) + 1e-9));
      if (d < 1 || cell.n < 1) throw Error(ErrorKind::Config, "scan cell has d or N below 1");
      cell.params_over_n = static_cast<double>(parameter_count(static_cast<Eigen::Index>(d),
                                                               static_cast<Eigen::Index>(d))) /
                           static_cast<double>(cell.n);
      cell.final_mce.assign(seeds, 0.0);
      cell.epochs_run.assign(seeds, 0);
      cells.push_back(std::move(cell));
    }
  }

  parallel_for(cells.size() * seeds, threads, [&](std::size_t job) {
    const std::size_t c = job / seeds;
    const std::size_t s = job % seeds;
    ScanCell& cell = cells[c];
    const std::uint64_t fi = c % n_factors.size();
    const Dataset data = gen_gaussian_dataset(
        cell.d, cell.n, rng::derive_seed(config.seed, "scan-data", {cell.d, fi, s}));
    TrainConfig run = config;
    run.seed = rng::derive_seed(config.seed, "scan-train", {cell.d, fi, s});
    const NetParams init =
        he_init(cell.d, cell.d, rng::derive_seed(config.seed, "scan-init", {cell.d, fi, s}), run.rho);
    const TrainResult r = adam_train(init, data, run);
    cell.final_mce[s] = r.final_mce;
    cell.epochs_run[s] = r.epochs_run;
  });

  for (ScanCell& cell : cells) {
    const double k = static_cast<double>(seeds);
    cell.mce_mean = std::accumulate(cell.final_mce.begin(), cell.final_mce.end(), 0.0) / k;
    double ss = 0.0;
    for (double v : cell.final_mce) ss += (v - cell.mce_mean) * (v - cell.mce_mean);
    cell.mce_std = seeds > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
    cell.mce_median = median(cell.final_mce);
  }
  return cells;
}

std::vector<DiagnosticRow> dlm_diagnostic(std::size_t d, std::size_t seeds,
                                          const TrainConfig& config, std::size_t threads) {
  if (d < 4) throw Error(ErrorKind::DomainError, "dlm_diagnostic needs d >= 4");
  if (seeds == 0) throw Error(ErrorKind::Config, "dlm_diagnostic needs seeds >= 1");
  validate(config);
  const std::size_t n = d * d / 5;

  std::vector<DiagnosticRow> rows(seeds);
  parallel_for(seeds, threads, [&](std::size_t s) {
    const Dataset data = gen_gaussian_dataset(d, n, rng::derive_seed(config.seed, "diag-data", {d, s}));
    TrainConfig run = config;
    run.seed = rng::derive_seed(config.seed, "diag-train", {d, s});
    const TrainResult r =
        adam_train(he_init(d, d, rng::derive_seed(config.seed, "diag-init", {d, s}), run.rho), data, run);

    DiagnosticRow& row = rows[s];
    row.seed_index = s;
    row.n = n;
    row.min_neural_input = r.min_neural_input;
    row.final_mse = r.final_mse;
    row.final_mce = r.final_mce;
    const std::size_t phase = std::min(config.lr_decay_epochs, r.history.size());
    std::size_t steady = 0;
    for (std::size_t e = r.history.size() - phase; e < r.history.size(); ++e) {
      if (e > 0 && r.history[e].mse <= r.history[e - 1].mse) ++steady;
    }
    row.decay_monotone_fraction = phase > 0 ? static_cast<double>(steady) / static_cast<double>(phase) : 1.0;
  });
  return rows;
}

}  // namespace landscape::train
