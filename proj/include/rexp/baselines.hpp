#pragma once

// Baseline online optimizers, each in its standard published form with fixed
// internal constants; the single swept hyperparameter `scale` multiplies the
// update (the learning rate, or the betting fraction for pistol).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "rexp/vec.hpp"

namespace rexp {

enum class BaselineAlgo { adagrad, adam, adadelta, pistol, scale_invariant, sgd_decay };

inline std::optional<BaselineAlgo> baseline_from_name(const std::string& s) {
  if (s == "adagrad") return BaselineAlgo::adagrad;
  if (s == "adam") return BaselineAlgo::adam;
  if (s == "adadelta") return BaselineAlgo::adadelta;
  if (s == "pistol") return BaselineAlgo::pistol;
  if (s == "scale_invariant") return BaselineAlgo::scale_invariant;
  if (s == "sgd_decay") return BaselineAlgo::sgd_decay;
  return std::nullopt;
}

inline const char* baseline_name(BaselineAlgo a) {
  switch (a) {
    case BaselineAlgo::adagrad: return "adagrad";
    case BaselineAlgo::adam: return "adam";
    case BaselineAlgo::adadelta: return "adadelta";
    case BaselineAlgo::pistol: return "pistol";
    case BaselineAlgo::scale_invariant: return "scale_invariant";
    case BaselineAlgo::sgd_decay: return "sgd_decay";
  }
  return "?";
}

struct BaselineConfig {
  double scale = 1.0;
  double eps = 1e-8;
  double beta1 = 0.9, beta2 = 0.999;          // adam
  double rho = 0.95;                          // adadelta
  double decay = 0.95, decay_steps = 500.0;   // sgd_decay: lr_t = scale * decay^(t/decay_steps)
  double pistol_a = 1.0, pistol_b = 0.5;      // pistol: b is multiplied by scale
};

class Baseline {
 public:
  Baseline(BaselineAlgo algo, std::size_t dim, BaselineConfig cfg = {})
      : algo_(algo), cfg_(cfg), w_(dim, 0.0), s1_(dim, 0.0), s2_(dim, 0.0), s3_(dim, 0.0) {
    if (!(cfg.scale > 0.0) || !std::isfinite(cfg.scale))
      throw std::invalid_argument("Baseline: scale must be positive and finite");
  }

  const Vec& step(const Vec& g) {
    check_same_dim(g, w_, "Baseline::step");
    check_finite(g, "Baseline::step");
    ++t_;
    switch (algo_) {
      case BaselineAlgo::adagrad:
        for (std::size_t i = 0; i < g.size(); ++i) {
          s1_[i] += g[i] * g[i];
          w_[i] -= cfg_.scale * g[i] / (std::sqrt(s1_[i]) + cfg_.eps);
        }
        break;
      case BaselineAlgo::adam: {
        const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
        const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
        for (std::size_t i = 0; i < g.size(); ++i) {
          s1_[i] = cfg_.beta1 * s1_[i] + (1.0 - cfg_.beta1) * g[i];
          s2_[i] = cfg_.beta2 * s2_[i] + (1.0 - cfg_.beta2) * g[i] * g[i];
          w_[i] -= cfg_.scale * (s1_[i] / bc1) / (std::sqrt(s2_[i] / bc2) + cfg_.eps);
        }
        break;
      }
      case BaselineAlgo::adadelta:
        for (std::size_t i = 0; i < g.size(); ++i) {
          s1_[i] = cfg_.rho * s1_[i] + (1.0 - cfg_.rho) * g[i] * g[i];
          const double d = -std::sqrt(s2_[i] + cfg_.eps) / std::sqrt(s1_[i] + cfg_.eps) * g[i];
          s2_[i] = cfg_.rho * s2_[i] + (1.0 - cfg_.rho) * d * d;
          w_[i] += cfg_.scale * d;
        }
        break;
      case BaselineAlgo::pistol:
        // s1 = theta (minus the gradient sum), s2 = alpha (sum |g|), s3 = running max |g|
        for (std::size_t i = 0; i < g.size(); ++i) {
          s3_[i] = std::max(s3_[i], std::abs(g[i]));
          if (s3_[i] == 0.0) continue;  // coordinate not yet active
          s1_[i] -= g[i];
          s2_[i] += std::abs(g[i]);
          const double denom = cfg_.pistol_a * s3_[i] * (s2_[i] + s3_[i]);
          w_[i] = std::sqrt(s2_[i]) * cfg_.pistol_b * cfg_.scale * s1_[i] *
                  std::exp(s1_[i] * s1_[i] / (2.0 * denom)) / denom;
        }
        break;
      case BaselineAlgo::scale_invariant:
        // s1 = theta, s2 = sum (g/B)^2 with B the running max |g|, s3 = B.
        // Rescaling any coordinate's gradients rescales theta and B alike and
        // leaves s2 unchanged, so predictions <w, x> are unchanged.
        for (std::size_t i = 0; i < g.size(); ++i) {
          s3_[i] = std::max(s3_[i], std::abs(g[i]));
          if (s3_[i] == 0.0) continue;
          s1_[i] -= g[i];
          s2_[i] += (g[i] / s3_[i]) * (g[i] / s3_[i]);
          w_[i] = s2_[i] > 0.0 ? cfg_.scale * s1_[i] / (s3_[i] * std::sqrt(s2_[i])) : 0.0;
        }
        break;
      case BaselineAlgo::sgd_decay: {
        const double lr = cfg_.scale *
            std::pow(cfg_.decay, static_cast<double>(t_ - 1) / cfg_.decay_steps);
        for (std::size_t i = 0; i < g.size(); ++i) w_[i] -= lr * g[i];
        break;
      }
    }
    return w_;
  }

  const Vec& current() const { return w_; }
  BaselineAlgo algo() const { return algo_; }
  std::size_t dim() const { return w_.size(); }
  std::int64_t steps() const { return t_; }

 private:
  BaselineAlgo algo_;
  BaselineConfig cfg_;
  Vec w_, s1_, s2_, s3_;
  std::int64_t t_ = 0;
};

}  // namespace rexp
