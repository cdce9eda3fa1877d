#pragma once

#include <cstddef>
#include <cstdint>

namespace landscape::bounds {

struct NormalValues {
  double pdf = 0.0;
  double cdf = 0.0;
};

/// Standard normal density and distribution function (erfc based).
NormalValues std_normal(double x);

/// g(x) = x Phi(x) / phi(x) for x >= 0.
long double g(long double x);
/// Inverse of g on [0, inf) by bisection with geometric bracket expansion.
double g_inverse(long double t);

/// psi(theta) = g^-1(theta)^2 / (2 theta) - log Phi(g^-1(theta)), theta > 0.
/// Throws DomainError for theta <= 0.
double psi(double theta);

struct ThetaStar {
  double theta = 0.0;
  double psi_at_theta = 0.0;
  double objective = 0.0;  // psi^3(theta) theta^2
};

/// Maximizes psi^3(theta) theta^2 on [1, 200] by golden-section search.
ThetaStar find_theta_star(double tol = 1e-6);

/// A bound value kept in log domain; value() may underflow to 0.
struct LogValue {
  double log = 0.0;
  double value() const;
};

struct BoundInputs {
  std::size_t n = 1;
  std::size_t d0 = 1;
  std::size_t d1 = 1;
  std::size_t d1_star = 1;
  double epsilon = 0.5;
  double rho = 0.0;
  /// Finite stand-in for lim d0(N)/N.
  double lim_ratio = 0.0;
};

/// Throws DomainError when counts are zero or epsilon is outside (0, 1].
void validate(const BoundInputs& in);

/// 0.23 max(lim_ratio, eps)^{3/4}, or 0.23 eps^{3/4} for rho = 0.
/// Throws BadLeak for rho = 1.
double gamma_epsilon(const BoundInputs& in);

/// exp(-gamma_eps N^{3/4} (d1 d0)^{1/4}): expected angular volume of
/// sub-optimal differentiable local minima.
LogValue suboptimal_volume_bound(const BoundInputs& in);

struct GlobalVolumeBound {
  double exact = 0.0;
  double exact_log = 0.0;
  double asymptotic_log = 0.0;  // d0 d1* log(sin alpha)
};

/// [2 sin^{d0-1}(alpha) / ((d0-1) B(1/2, (d0-1)/2))]^{d1*}.
GlobalVolumeBound global_volume_lower_bound(std::size_t d0, std::size_t d1_star,
                                            double sin_alpha);

/// sqrt(8/pi) d0^{-1/2} + 2 d0^{1/2} sqrt(log d0) / N.
double delta_probability(std::size_t d0, std::size_t n);

struct RatioBound {
  double log_ratio = 0.0;      // -gamma_eps N^{3/4} (d1 d0)^{1/4}
  double log_companion = 0.0;  // -gamma_eps N log N
};

RatioBound ratio_bound(const BoundInputs& in);

struct DichotomyCount {
  std::uint64_t schlafli = 0;  // saturates at UINT64_MAX
  bool saturated = false;
  long double schlafli_real = 0.0L;
  double loose = 0.0;  // 2 N^{d0}
};

/// Number of linear dichotomies of N generic points in R^{d0} through the
/// origin: 2 sum_{k=0}^{d0-1} C(N-1, k), and the loose bound 2 N^{d0}.
DichotomyCount dichotomy_count_bound(std::size_t n, std::size_t d0);

/// min(1, 2 N^2 exp(-M eps^2 / 24)).
double coherence_tail_bound(std::size_t m, std::size_t n, double eps);

/// log bound -0.4 N alpha^{1/4}, alpha = M L / N. Throws DomainError for
/// alpha <= 1 or when N < L or M > N.
LogValue orthant_probability_bound(std::size_t n, std::size_t m, std::size_t l);

enum class BetaSide { Lower, Upper };

/// Lower: 2 sin^{d0-1}(angle) / ((d0-1) B(1/2,(d0-1)/2)) <= P(|cos| > cos angle).
/// Upper: 2u / B(1/2,(d0-1)/2) >= P(|cos| < u). Both clamped to [0, 1].
double beta_angle_bound(std::size_t d0, double angle_or_u, BetaSide side);

/// log B(a, b) via lgamma.
double log_beta(double a, double b);

}  // namespace landscape::bounds
