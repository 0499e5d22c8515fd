#pragma once

// Parameter-free FTRL optimizer with doubling-style epoch resets.
//
// Within an epoch starting at step t*, with L the scale estimate fixed at the
// epoch start and p = 1/L:
//     S_t = sum_{s=t*..t} |g_s|^2
//     M_t = max(M_{t-1}, |g_{t*:t}|/p - S_t)        (M_{t*-1} = 0)
//     eta_t = 1 / (k sqrt(2) sqrt(M_t + S_t))
//     w_{t+1} = anchor - (g_{t*:t}/|g_{t*:t}|) (exp(eta_t |g_{t*:t}|) - 1)
// A step with |g_t| > 2L closes the epoch after the update: the scale estimate
// becomes |g_t|, the accumulator clears, and the next iterate is the anchor
// (the origin, or the previous played iterate for the re-centered variant).
// Until the first nonzero gradient, the iterate is 0 and nothing is counted.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rexp/ftrl.hpp"
#include "rexp/vec.hpp"

namespace rexp {

inline constexpr double kDefaultK = std::numbers::sqrt2;

class RescaledExp1D {
 public:
  explicit RescaledExp1D(double k = kDefaultK, bool recenter = false)
      : k_(k), recenter_(recenter) {
    if (!(k > 0.0)) throw std::invalid_argument("RescaledExp1D: k must be positive");
  }

  double step(double g) {
    if (!std::isfinite(g)) throw std::invalid_argument("RescaledExp1D::step: non-finite gradient");
    if (!started_) {
      if (g == 0.0) return w_;  // not yet started; nothing counts
      started_ = true;
      l_ = std::abs(g);
      p_ = 1.0 / l_;
    }
    const double played = w_;
    ++t_;
    m_ = std::max(m_, std::abs(gsum_ + g) / p_ - (sq_ + g * g));
    gsum_ += g;
    sq_ += g * g;
    w_ = anchor_ + offset();
    if (std::abs(g) > 2.0 * l_) {
      l_ = std::abs(g);
      p_ = 1.0 / l_;
      gsum_ = 0.0;
      sq_ = 0.0;
      m_ = 0.0;
      epoch_start_ = t_ + 1;
      ++resets_;
      anchor_ = recenter_ ? prev_played_ : 0.0;
      w_ = anchor_;
    }
    prev_played_ = played;
    return w_;
  }

  double current() const { return w_; }
  bool started() const { return started_; }
  double scale_estimate() const { return l_; }
  double inv_scale() const { return p_; }
  double g_sum() const { return gsum_; }
  double sq_sum() const { return sq_; }
  double m() const { return m_; }
  double anchor() const { return anchor_; }
  std::int64_t steps() const { return t_; }
  std::int64_t epoch_start() const { return epoch_start_; }
  int epochs() const { return started_ ? resets_ + 1 : 0; }
  int resets() const { return resets_; }
  // Infinite while the epoch accumulator is empty; step() never divides by it then.
  double eta() const { return 1.0 / (k_ * std::numbers::sqrt2 * std::sqrt(m_ + sq_)); }

 private:
  double offset() const {
    if (m_ + sq_ <= 0.0) return 0.0;  // empty epoch or all-zero gradients
    try {
      return ftrl_argmin(gsum_, eta());
    } catch (const std::overflow_error& e) {
      throw std::overflow_error("step " + std::to_string(t_) + ": " + e.what());
    }
  }

  double k_;
  bool recenter_;
  bool started_ = false;
  double l_ = 0.0, p_ = 0.0;
  double gsum_ = 0.0, sq_ = 0.0, m_ = 0.0;
  double anchor_ = 0.0, w_ = 0.0, prev_played_ = 0.0;
  std::int64_t t_ = 0, epoch_start_ = 1;
  int resets_ = 0;
};

class RescaledExp {
 public:
  explicit RescaledExp(std::size_t dim, double k = kDefaultK, bool recenter = false)
      : k_(k), recenter_(recenter), gsum_(dim, 0.0), gsum_next_(dim, 0.0),
        anchor_(dim, 0.0), w_(dim, 0.0), prev_played_(dim, 0.0),
        scratch_played_(dim, 0.0) {
    if (!(k > 0.0)) throw std::invalid_argument("RescaledExp: k must be positive");
  }

  const Vec& step(const Vec& g) {
    check_same_dim(g, w_, "RescaledExp::step");
    check_finite(g, "RescaledExp::step");
    const double gn = norm(g);
    if (!started_) {
      if (gn == 0.0) return w_;
      started_ = true;
      l_ = gn;
      p_ = 1.0 / l_;
    }
    scratch_played_ = w_;  // w_t; prev_played_ still holds w_{t-1} for the anchor
    ++t_;
    for (std::size_t i = 0; i < g.size(); ++i) gsum_next_[i] = gsum_[i] + g[i];
    m_ = std::max(m_, norm(gsum_next_) / p_ - (sq_ + gn * gn));
    gsum_.swap(gsum_next_);
    sq_ += gn * gn;
    if (m_ + sq_ > 0.0) {
      try {
        w_ = ftrl_argmin(gsum_, eta());
      } catch (const std::overflow_error& e) {
        throw std::overflow_error("step " + std::to_string(t_) + ": " + e.what());
      }
      for (std::size_t i = 0; i < w_.size(); ++i) w_[i] += anchor_[i];
    } else {
      w_ = anchor_;
    }
    if (gn > 2.0 * l_) {
      l_ = gn;
      p_ = 1.0 / l_;
      std::fill(gsum_.begin(), gsum_.end(), 0.0);
      sq_ = 0.0;
      m_ = 0.0;
      epoch_start_ = t_ + 1;
      ++resets_;
      if (recenter_)
        anchor_ = prev_played_;
      else
        std::fill(anchor_.begin(), anchor_.end(), 0.0);
      w_ = anchor_;
    }
    prev_played_.swap(scratch_played_);
    return w_;
  }

  const Vec& current() const { return w_; }
  std::size_t dim() const { return w_.size(); }
  bool started() const { return started_; }
  double scale_estimate() const { return l_; }
  double inv_scale() const { return p_; }
  const Vec& g_sum() const { return gsum_; }
  double sq_sum() const { return sq_; }
  double m() const { return m_; }
  const Vec& anchor() const { return anchor_; }
  std::int64_t steps() const { return t_; }
  std::int64_t epoch_start() const { return epoch_start_; }
  int epochs() const { return started_ ? resets_ + 1 : 0; }
  int resets() const { return resets_; }
  double eta() const { return 1.0 / (k_ * std::numbers::sqrt2 * std::sqrt(m_ + sq_)); }

 private:
  double k_;
  bool recenter_;
  bool started_ = false;
  double l_ = 0.0, p_ = 0.0;
  Vec gsum_, gsum_next_;
  double sq_ = 0.0, m_ = 0.0;
  Vec anchor_, w_, prev_played_, scratch_played_;
  std::int64_t t_ = 0, epoch_start_ = 1;
  int resets_ = 0;
};

// One independent scalar optimizer per coordinate; resets fire per coordinate.
class CoordinateWiseRescaledExp {
 public:
  explicit CoordinateWiseRescaledExp(std::size_t dim, double k = kDefaultK,
                                     bool recenter = false)
      : coords_(dim, RescaledExp1D(k, recenter)), w_(dim, 0.0) {}

  const Vec& step(const Vec& g) {
    check_same_dim(g, w_, "CoordinateWiseRescaledExp::step");
    check_finite(g, "CoordinateWiseRescaledExp::step");
    for (std::size_t i = 0; i < g.size(); ++i) w_[i] = coords_[i].step(g[i]);
    return w_;
  }

  const Vec& current() const { return w_; }
  std::size_t dim() const { return w_.size(); }
  const RescaledExp1D& coord(std::size_t i) const { return coords_.at(i); }
  int epochs() const {
    int e = 0;
    for (const auto& c : coords_) e = std::max(e, c.epochs());
    return e;
  }
  // Largest per-coordinate M; the per-coordinate regret bounds each use their own.
  double m() const {
    double m = 0.0;
    for (const auto& c : coords_) m = std::max(m, c.m());
    return m;
  }

 private:
  std::vector<RescaledExp1D> coords_;
  Vec w_;
};

}  // namespace rexp
