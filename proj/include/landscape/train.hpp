#pragma once

#include "landscape/network.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace landscape::train {

struct TrainConfig {
  std::size_t epochs = 4000;
  double lr = 0.1;
  /// Mini-batch size; 0 selects floor(min(N/2, d/2)) (at least 1).
  std::size_t batch = 0;
  double beta1 = 0.9;
  double beta2 = 0.99;
  double adam_eps = 1e-8;
  /// Length of the final phase over which lr decays exponentially by 10^3.
  std::size_t lr_decay_epochs = 0;
  std::uint64_t seed = 0;
  double rho = 0.0;
  bool stop_on_zero_mce = true;
};

/// Throws Config on out-of-range fields.
void validate(const TrainConfig& config);

struct EpochMetrics {
  double mse = 0.0;
  double mce = 0.0;
};

struct TrainResult {
  NetParams params;
  double final_mse = 0.0;
  double final_mce = 0.0;
  double min_neural_input = 0.0;
  std::size_t epochs_run = 0;
  std::vector<EpochMetrics> history;
};

/// X entries i.i.d. N(0, 1); labels i.i.d. fair coin in {0, 1}.
Dataset gen_gaussian_dataset(std::size_t d0, std::size_t n, std::uint64_t seed);

/// Uniform fan-in initialization with variance 2/fan_in: W from
/// U[-sqrt(6/d0), sqrt(6/d0)], z from U[-sqrt(6/d1), sqrt(6/d1)].
NetParams he_init(std::size_t d1, std::size_t d0, std::uint64_t seed, double rho = 0.0);

/// Default mini-batch size floor(min(N/2, d/2)), at least 1.
std::size_t default_batch(std::size_t n, std::size_t d);

/// Learning rate used in `epoch` (0-based) under the decay schedule.
double learning_rate(const TrainConfig& config, std::size_t epoch);

/// Adam with bias correction over per-epoch shuffled mini-batches.
/// Throws NonFinite (naming the epoch) if the loss diverges.
TrainResult adam_train(NetParams params, const Dataset& data, const TrainConfig& config);

/// State of a single Adam-optimized parameter block, exposed for tests.
class AdamState {
 public:
  AdamState(Eigen::Index size, double beta1, double beta2, double eps);

  /// Applies one update in place; returns nothing, counts steps internally.
  void step(Eigen::Ref<Vector> theta, const Vector& grad, double lr);

  std::size_t steps() const { return t_; }

 private:
  Vector m_;
  Vector v_;
  double beta1_;
  double beta2_;
  double eps_;
  std::size_t t_ = 0;
};

struct WhitenResult {
  Matrix Xw;
  Matrix transform;  // U (Lambda + eps I)^{-1/2} U^T
  Vector mean;
};

/// ZCA whitening of the columns of X (N >= 2). Covariance uses 1/N.
WhitenResult zca_whiten(const Matrix& X, double eps = 1e-5);

/// Sample covariance (1/N) of the columns of X.
Matrix covariance(const Matrix& X);

struct ScanCell {
  std::size_t d = 0;
  double factor = 0.0;
  std::size_t n = 0;
  double params_over_n = 0.0;
  double mce_mean = 0.0;
  double mce_std = 0.0;
  double mce_median = 0.0;
  std::vector<double> final_mce;  // one per seed
  std::vector<std::size_t> epochs_run;
};

/// Over-parameterization scan: for each d and factor, d0 = d1 = d and
/// N = floor(factor d^2), trained from `seeds` fresh seeds.
std::vector<ScanCell> scan_overparam(const std::vector<std::size_t>& d_values,
                                     const std::vector<double>& n_factors, std::size_t seeds,
                                     const TrainConfig& config, std::size_t threads = 0);

struct DiagnosticRow {
  std::size_t seed_index = 0;
  std::size_t n = 0;
  double min_neural_input = 0.0;
  double final_mse = 0.0;
  double final_mce = 0.0;
  /// Fraction of the decay-phase epochs whose MSE did not exceed the previous one.
  double decay_monotone_fraction = 0.0;
};

/// Differentiability diagnostic: N = floor(d^2 / 5), per-seed final
/// min |w_i^T x(n)| and final MSE. Throws DomainError for d < 4.
std::vector<DiagnosticRow> dlm_diagnostic(std::size_t d, std::size_t seeds,
                                          const TrainConfig& config, std::size_t threads = 0);

}  // namespace landscape::train

namespace landscape::train {

/// Gaussian-data scan protocol: lr 0.01, at most 4000 epochs, stop at MCE = 0.
TrainConfig scan_protocol();

/// Differentiability protocol: 1000 epochs at lr 7e-4, then 1000 epochs of
/// exponential decay, no early stop.
TrainConfig diagnostic_protocol();

}  // namespace landscape::train
