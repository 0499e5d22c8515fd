#pragma once

// Closed-form FTRL pieces shared by the scalar and vector optimizers.
//
// Regularizer:  psi(w) = (|w|+1) log(|w|+1) - |w|     (natural log)
// One-step objective:  F(w) = <g_sum, w> + psi(w)/eta
// Minimizer:  w* = -(g_sum/|g_sum|) (exp(eta |g_sum|) - 1),  w* = 0 if g_sum = 0.

#include <cmath>
#include <stdexcept>
#include <string>

#include "rexp/vec.hpp"

namespace rexp {

// exp argument past this would overflow the closed form; callers see a
// std::overflow_error instead of inf iterates.
inline constexpr double kExpArgLimit = 700.0;

inline double psi(double w) {
  check_finite(w, "psi");
  const double a = std::abs(w);
  return (a + 1.0) * std::log1p(a) - a;
}

inline double psi(const Vec& w) {
  check_finite(w, "psi");
  return psi(norm(w));
}

namespace detail {
inline double argmin_magnitude(double gnorm, double eta, const char* where) {
  if (!std::isfinite(gnorm) || !std::isfinite(eta))
    throw std::invalid_argument(std::string(where) + ": non-finite input");
  if (eta <= 0.0)
    throw std::invalid_argument(std::string(where) + ": eta must be positive");
  const double x = eta * gnorm;
  if (x > kExpArgLimit)
    throw std::overflow_error(std::string(where) + ": exp argument " +
                              std::to_string(x) + " exceeds overflow guard");
  return std::expm1(x);
}
}  // namespace detail

inline double ftrl_argmin(double g_sum, double eta) {
  const double mag = detail::argmin_magnitude(std::abs(g_sum), eta, "ftrl_argmin");
  return g_sum > 0.0 ? -mag : (g_sum < 0.0 ? mag : 0.0);
}

inline Vec ftrl_argmin(const Vec& g_sum, double eta) {
  check_finite(g_sum, "ftrl_argmin");
  const double gn = norm(g_sum);
  Vec w(g_sum.size(), 0.0);
  if (gn == 0.0) return w;
  const double mag = detail::argmin_magnitude(gn, eta, "ftrl_argmin");
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = -g_sum[i] / gn * mag;
  return w;
}

}  // namespace rexp
