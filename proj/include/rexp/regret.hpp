#pragma once

// Regret accounting for linear (or linearized) losses, plus the adaptive
// upper bound certified for the rescaled-exponential optimizer.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "rexp/ftrl.hpp"
#include "rexp/vec.hpp"

namespace rexp {

// Accumulates sum_t <g_t, w_t> and sum_t g_t so regret against any fixed
// comparator u is available afterwards: R(u) = sum<g_t, w_t> - <sum g_t, u>.
class RegretLedger {
 public:
  explicit RegretLedger(std::size_t dim) : g_total_(dim, 0.0) {}

  void record(const Vec& g, const Vec& w) {
    check_same_dim(g, g_total_, "RegretLedger::record");
    check_finite(g, "RegretLedger::record");
    loss_dot_sum_ += dot(g, w);
    for (std::size_t i = 0; i < g.size(); ++i) g_total_[i] += g[i];
    ++t_;
  }

  double regret(const Vec& u) const {
    check_same_dim(u, g_total_, "RegretLedger::regret");
    return loss_dot_sum_ - dot(g_total_, u);
  }

  double loss_dot_sum() const { return loss_dot_sum_; }
  const Vec& g_total() const { return g_total_; }
  std::int64_t steps() const { return t_; }

 private:
  double loss_dot_sum_ = 0.0;
  Vec g_total_;
  std::int64_t t_ = 0;
};

// Per-run statistics the regret bound needs.  l_first is the first nonzero
// gradient norm, l_max the running max, max_ratio the largest |g_t| relative
// to the max over strictly earlier steps, m_max the largest optimizer M seen.
struct RunStats {
  double l_max = 0.0;
  double l_first = 0.0;
  double m_max = 0.0;
  double sq_sum = 0.0;
  double max_ratio = 0.0;
  std::int64_t steps = 0;
};

class RunTracker {
 public:
  // Call once per optimizer step with |g_t| and the optimizer's M afterwards.
  void observe(double g_norm, double m_after) {
    if (s_.l_first == 0.0) {
      if (g_norm == 0.0) return;  // pre-start steps don't count
      s_.l_first = g_norm;
    }
    if (s_.l_max > 0.0) s_.max_ratio = std::max(s_.max_ratio, g_norm / s_.l_max);
    s_.l_max = std::max(s_.l_max, g_norm);
    s_.sq_sum += g_norm * g_norm;
    s_.m_max = std::max(s_.m_max, m_after);
    ++s_.steps;
  }

  const RunStats& stats() const { return s_; }

 private:
  RunStats s_;
};

// Adaptive regret upper bound against a comparator of norm u_norm:
//   (2 psi(u) + 96) (log2(l_max/l_first) + 1) sqrt(m_max + sq_sum)
//   + 8 l_max (log2(l_max/l_first) + 1) exp(min(8 max_ratio^2, sqrt(steps/2)))
// The min is applied to the exponents before exponentiating so the bound is
// finite whenever its smaller branch is.  Zero-gradient runs get bound 0.
inline double regret_bound(const RunStats& s, double u_norm) {
  if (s.l_first == 0.0) return 0.0;
  const double epochs = std::log2(s.l_max / s.l_first) + 1.0;
  const double lead = (2.0 * psi(u_norm) + 96.0) * epochs * std::sqrt(s.m_max + s.sq_sum);
  const double expo = std::min(8.0 * s.max_ratio * s.max_ratio,
                               std::sqrt(static_cast<double>(s.steps) / 2.0));
  return lead + 8.0 * s.l_max * epochs * std::exp(expo);
}

inline double regret_bound(const RunStats& s, const Vec& u) {
  return regret_bound(s, norm(u));
}

}  // namespace rexp
