#include "landscape/bounds.hpp"

#include "landscape/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace landscape::bounds {

namespace {

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;  // log(sqrt(2 pi))

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double log_std_cdf(double x) { return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2)); }

}  // namespace

NormalValues std_normal(double x) {
  return {std::exp(-0.5 * x * x - kLogSqrtTwoPi), 0.5 * std::erfc(-x / std::numbers::sqrt2)};
}

long double g(long double x) {
  if (x <= 0.0L) return 0.0L;
  const long double log_cdf = std::log(0.5L * std::erfc(-x / std::numbers::sqrt2_v<long double>));
  return std::exp(std::log(x) + log_cdf + 0.5L * x * x + static_cast<long double>(kLogSqrtTwoPi));
}

double g_inverse(long double t) {
  if (!(t > 0.0L)) return 0.0;
  long double lo = 0.0L;
  long double hi = 1.0L;
  while (g(hi) < t) {
    lo = hi;
    hi *= 2.0L;
  }
  for (int iter = 0; iter < 200; ++iter) {
    const long double mid = 0.5L * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>(0.5L * (lo + hi));
}

double psi(double theta) {
  if (!(theta > 0.0)) {
    throw Error(ErrorKind::DomainError, "psi: theta must be positive");
  }
  const double x = g_inverse(theta);
  return x * x / (2.0 * theta) - log_std_cdf(x);
}

ThetaStar find_theta_star(double tol) {
  const auto objective = [](double theta) {
    const double p = psi(theta);
    return p * p * p * theta * theta;
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 1.0;
  double b = 200.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  ThetaStar out;
  out.theta = 0.5 * (a + b);
  out.psi_at_theta = psi(out.theta);
  out.objective = objective(out.theta);
  return out;
}

double LogValue::value() const { return std::exp(log); }

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

void validate(const BoundInputs& in) {
  if (in.n == 0 || in.d0 == 0 || in.d1 == 0 || in.d1_star == 0) {
    throw Error(ErrorKind::DomainError, "bound inputs: counts must be >= 1");
  }
  if (!(in.epsilon > 0.0 && in.epsilon <= 1.0)) {
    throw Error(ErrorKind::DomainError, "bound inputs: epsilon must lie in (0, 1]");
  }
  if (!(in.lim_ratio >= 0.0)) {
    throw Error(ErrorKind::DomainError, "bound inputs: lim_ratio must be >= 0");
  }
}

double gamma_epsilon(const BoundInputs& in) {
  validate(in);
  if (in.rho == 1.0) throw Error(ErrorKind::BadLeak, "gamma_epsilon: rho must differ from 1");
  if (in.rho == 0.0) return 0.23 * std::pow(in.epsilon, 0.75);
  return 0.23 * std::pow(std::max(in.lim_ratio, in.epsilon), 0.75);
}

namespace {

double volume_exponent(const BoundInputs& in, double gamma) {
  const double n = static_cast<double>(in.n);
  const double params = static_cast<double>(in.d1) * static_cast<double>(in.d0);
  return -gamma * std::pow(n, 0.75) * std::pow(params, 0.25);
}

}  // namespace

LogValue suboptimal_volume_bound(const BoundInputs& in) {
  return {volume_exponent(in, gamma_epsilon(in))};
}

GlobalVolumeBound global_volume_lower_bound(std::size_t d0, std::size_t d1_star,
                                            double sin_alpha) {
  if (d0 < 2) throw Error(ErrorKind::DomainError, "global_volume_lower_bound: d0 must be >= 2");
  if (!(sin_alpha > 0.0 && sin_alpha <= 1.0)) {
    throw Error(ErrorKind::DomainError, "global_volume_lower_bound: sin_alpha must lie in (0, 1]");
  }
  const double m = static_cast<double>(d0 - 1);
  const double per_row =
      std::log(2.0) + m * std::log(sin_alpha) - std::log(m) - log_beta(0.5, m / 2.0);
  GlobalVolumeBound out;
  out.exact_log = static_cast<double>(d1_star) * per_row;
  out.exact = std::exp(out.exact_log);
  out.asymptotic_log =
      static_cast<double>(d0) * static_cast<double>(d1_star) * std::log(sin_alpha);
  return out;
}

double delta_probability(std::size_t d0, std::size_t n) {
  if (d0 < 2 || n < 1) throw Error(ErrorKind::DomainError, "delta_probability: need d0 >= 2, N >= 1");
  const double d = static_cast<double>(d0);
  return std::sqrt(8.0 / std::numbers::pi) / std::sqrt(d) +
         2.0 * std::sqrt(d) * std::sqrt(std::log(d)) / static_cast<double>(n);
}

RatioBound ratio_bound(const BoundInputs& in) {
  const double gamma = gamma_epsilon(in);
  const double n = static_cast<double>(in.n);
  return {volume_exponent(in, gamma), -gamma * n * std::log(n)};
}

DichotomyCount dichotomy_count_bound(std::size_t n, std::size_t d0) {
  if (n < 1 || d0 < 1) throw Error(ErrorKind::DomainError, "dichotomy_count_bound: need N, d0 >= 1");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  DichotomyCount out;
  const std::size_t top = std::min(d0 - 1, n - 1);
  unsigned __int128 binom = 1;  // C(n-1, k)
  unsigned __int128 sum = 0;
  bool binom_saturated = false;
  long double binom_real = 1.0L;
  long double sum_real = 0.0L;
  for (std::size_t k = 0; k <= top; ++k) {
    if (k > 0) {
      binom_real = binom_real * static_cast<long double>(n - k) / static_cast<long double>(k);
      if (!binom_saturated) {
        binom = binom * (n - k) / k;  // exact: C(n-1,k-1)(n-k) is divisible by k
        if (binom > kMax) binom_saturated = true;
      }
    }
    sum_real += binom_real;
    if (!binom_saturated) sum += binom;
  }
  const unsigned __int128 doubled = 2 * sum;
  out.saturated = binom_saturated || doubled > kMax;
  out.schlafli = out.saturated ? kMax : static_cast<std::uint64_t>(doubled);
  out.schlafli_real = 2.0L * sum_real;
  out.loose = 2.0 * std::pow(static_cast<double>(n), static_cast<double>(d0));
  return out;
}

double coherence_tail_bound(std::size_t m, std::size_t n, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw Error(ErrorKind::DomainError, "coherence_tail_bound: eps must lie in (0, 1]");
  }
  const double nn = static_cast<double>(n);
  return clamp01(2.0 * nn * nn * std::exp(-static_cast<double>(m) * eps * eps / 24.0));
}

LogValue orthant_probability_bound(std::size_t n, std::size_t m, std::size_t l) {
  if (n == 0 || m == 0 || l == 0) {
    throw Error(ErrorKind::DomainError, "orthant bound: N, M, L must be >= 1");
  }
  if (n < l || m > n) {
    throw Error(ErrorKind::DomainError, "orthant bound requires N >= L and M <= N");
  }
  const double alpha = static_cast<double>(m) * static_cast<double>(l) / static_cast<double>(n);
  if (!(alpha > 1.0)) {
    throw Error(ErrorKind::DomainError,
                "orthant bound requires alpha = M*L/N > 1 (got " + std::to_string(alpha) + ")");
  }
  return {-0.4 * static_cast<double>(n) * std::pow(alpha, 0.25)};
}

double beta_angle_bound(std::size_t d0, double arg, BetaSide side) {
  if (d0 < 2) throw Error(ErrorKind::DomainError, "beta_angle_bound: d0 must be >= 2");
  const double m = static_cast<double>(d0 - 1);
  const double log_b = log_beta(0.5, m / 2.0);
  if (side == BetaSide::Lower) {
    if (!(arg > 0.0 && arg <= std::numbers::pi / 2.0 + 1e-15)) {
      throw Error(ErrorKind::DomainError, "beta lower bound: angle must lie in (0, pi/2]");
    }
    return clamp01(std::exp(std::log(2.0) + m * std::log(std::sin(arg)) - std::log(m) - log_b));
  }
  if (!(arg >= 0.0 && arg <= 1.0)) {
    throw Error(ErrorKind::DomainError, "beta upper bound: u must lie in [0, 1]");
  }
  return clamp01(2.0 * arg * std::exp(-log_b));
}

}  // namespace landscape::bounds
