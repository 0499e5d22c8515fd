#pragma once

// Adversarial gradient sequence that forces large regret on any one-dimensional
// online learner whose horizon satisfies two feasibility conditions.
//
// The adversary plays g = -1 while the learner's iterate stays below a
// threshold th = exp(sqrt(T)/(4 ln2 c))/2.  If the iterate ever reaches th,
// it answers once with g = 2T and plays 0 forever after.  Either way the
// learner's regret against the natural comparator (u = 2 th if it stayed low,
// u = 0 if it crossed) is at least lower_bound_value below.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rexp {

inline constexpr std::int64_t kHorizonScanCap = 10000000;

namespace detail {
inline double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

inline void check_adversary_args(double c, double k, double eps, const char* where) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument(std::string(where) + ": c must be positive and finite");
  if (!(k > 0.0) || !std::isfinite(k))
    throw std::invalid_argument(std::string(where) + ": k must be positive and finite");
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument(std::string(where) + ": eps must lie in (0, 0.5)");
}
}  // namespace detail

struct AdversaryParams {
  double c = 1.0;
  double k = 1.0;
  double eps = 0.25;
  std::int64_t horizon = 0;
  double threshold = 0.0;
};

inline double crossing_threshold(std::int64_t horizon, double c) {
  return 0.5 * std::exp(std::sqrt(static_cast<double>(horizon)) / (4.0 * std::numbers::ln2 * c));
}

struct ConditionDetails {
  bool low_case_ok = false;   // condition (1)
  bool high_case_ok = false;  // condition (2)
  bool both() const { return low_case_ok && high_case_ok; }
};

// Feasibility of the construction at horizon T, evaluated in log space so the
// exp terms cannot overflow:
//   (1)  T/4 e^{sqrt(T)/(4 ln2 c)} > k ln2 sqrt(T) + k e^{(2T)^{1/2-eps}}
//   (2)  T/2 e^{sqrt(T)/(4 ln2 c)} > 2kT e^{(2T)^{1/2-eps}} + 2kT sqrt(T) ln(2T+1)
inline ConditionDetails condition_details(double c, double k, double eps, std::int64_t horizon) {
  detail::check_adversary_args(c, k, eps, "condition_details");
  if (horizon < 1) throw std::invalid_argument("condition_details: horizon must be >= 1");
  const double T = static_cast<double>(horizon);
  const double sqT = std::sqrt(T);
  const double lboost = sqT / (4.0 * std::numbers::ln2 * c);  // log of the e^{...} factor
  const double lex = std::pow(2.0 * T, 0.5 - eps);            // log of e^{(2T)^{1/2-eps}}
  const double lhs1 = std::log(T / 4.0) + lboost;
  const double rhs1 = detail::logaddexp(std::log(k * std::numbers::ln2 * sqT),
                                        std::log(k) + lex);
  const double lhs2 = std::log(T / 2.0) + lboost;
  const double rhs2 = detail::logaddexp(std::log(2.0 * k * T) + lex,
                                        std::log(2.0 * k * T * sqT * std::log(2.0 * T + 1.0)));
  return {lhs1 > rhs1, lhs2 > rhs2};
}

inline bool conditions_hold(double c, double k, double eps, std::int64_t horizon) {
  return condition_details(c, k, eps, horizon).both();
}

// Smallest horizon satisfying both conditions, by upward scan from 1.
inline std::int64_t find_min_horizon(double c, double k, double eps) {
  detail::check_adversary_args(c, k, eps, "find_min_horizon");
  for (std::int64_t T = 1; T <= kHorizonScanCap; ++T)
    if (conditions_hold(c, k, eps, T)) return T;
  throw std::runtime_error("find_min_horizon: no feasible horizon up to " +
                           std::to_string(kHorizonScanCap));
}

inline AdversaryParams make_adversary_params(double c, double k, double eps,
                                             std::int64_t horizon) {
  detail::check_adversary_args(c, k, eps, "make_adversary_params");
  if (horizon < 1)
    throw std::invalid_argument("make_adversary_params: horizon must be >= 1");
  return {c, k, eps, horizon, crossing_threshold(horizon, c)};
}

enum class AdversaryPhase { probing, punished, done };
enum class EpisodeCase { stayed_low, crossed };

class CheckmateAdversary {
 public:
  explicit CheckmateAdversary(const AdversaryParams& p) : p_(p) {
    if (p.horizon < 1 || p.threshold <= 0.0)
      throw std::invalid_argument("CheckmateAdversary: params not initialized");
  }

  // Gradient for the step at which the learner plays w.
  double next(double w) {
    if (!std::isfinite(w)) throw std::invalid_argument("CheckmateAdversary::next: non-finite iterate");
    switch (phase_) {
      case AdversaryPhase::probing:
        if (w >= p_.threshold) {
          phase_ = AdversaryPhase::punished;
          return 2.0 * static_cast<double>(p_.horizon);
        }
        return -1.0;
      case AdversaryPhase::punished:
        phase_ = AdversaryPhase::done;
        return 0.0;
      case AdversaryPhase::done:
        return 0.0;
    }
    return 0.0;  // unreachable
  }

  AdversaryPhase phase() const { return phase_; }
  bool crossed() const { return phase_ != AdversaryPhase::probing; }
  EpisodeCase episode_case() const {
    return crossed() ? EpisodeCase::crossed : EpisodeCase::stayed_low;
  }
  const AdversaryParams& params() const { return p_; }

 private:
  AdversaryParams p_;
  AdversaryPhase phase_ = AdversaryPhase::probing;
};

// Regret, against comparator u, that the episode guarantees when the largest
// gradient magnitude was l_max:
//   (k + c |u| ln|u|) l_max sqrt(T) ln(l_max + 1) + k l_max e^{(2T)^{1/2-eps}}
// Stayed-low episodes use u = 2 threshold and l_max = 1; crossed episodes use
// u = 0 and l_max = 2T.
inline double lower_bound_value(const AdversaryParams& p, double u, double l_max) {
  if (!(l_max > 0.0)) throw std::invalid_argument("lower_bound_value: l_max must be positive");
  if (!std::isfinite(u)) throw std::invalid_argument("lower_bound_value: non-finite u");
  const double au = std::abs(u);
  const double xlogx = au == 0.0 ? 0.0 : au * std::log(au);
  const double T = static_cast<double>(p.horizon);
  return (p.k + p.c * xlogx) * l_max * std::sqrt(T) * std::log(l_max + 1.0) +
         p.k * l_max * std::exp(std::pow(2.0 * T, 0.5 - p.eps));
}

}  // namespace rexp
