#pragma once

// Deterministic synthetic binary-classification sets in libsvm format.
// A fixed random hyperplane labels sparse uniform examples.  Most examples
// keep a minimum margin from the plane; an optional fraction is instead drawn
// from a thin band hugging the decision boundary, which keeps the set
// linearly separable while bounding how much loss any one-pass learner can
// shed.  The noisy variant flips a fraction of labels.  Identical arguments
// always produce identical bytes.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rexp/numfmt.hpp"
#include "rexp/rng.hpp"

namespace rexp {

struct SyntheticSpec {
  std::size_t n = 10000;
  std::size_t dim = 20;
  double density = 0.6;     // probability a coordinate is present
  double margin = 0.25;     // minimum |<w*, x>|
  double hard_frac = 0.0;   // fraction of examples drawn near the boundary
  double hard_lo = 0.0;     // margin band [lo, hi] for those hard examples
  double hard_hi = 0.0;
  double flip_prob = 0.0;   // label noise
  std::uint64_t seed = 1;
};

inline std::string synthetic_libsvm(const SyntheticSpec& spec) {
  SplitMix gen(spec.seed);
  std::vector<double> plane(spec.dim);
  for (auto& c : plane) c = gen.uniform_pm();

  std::string out;
  out.reserve(spec.n * spec.dim * 8);
  std::vector<std::pair<std::size_t, double>> feats;
  for (std::size_t i = 0; i < spec.n; ++i) {
    const bool hard = spec.hard_frac > 0.0 && gen.uniform() < spec.hard_frac;
    double m = 0.0;
    for (;;) {  // resample until the margin rule holds and the example is nonempty
      feats.clear();
      m = 0.0;
      for (std::size_t j = 0; j < spec.dim; ++j) {
        if (gen.uniform() >= spec.density) continue;
        const double v = gen.uniform_pm();
        feats.emplace_back(j + 1, v);
        m += plane[j] * v;
      }
      if (feats.empty()) continue;
      const double am = std::abs(m);
      if (hard ? (am >= spec.hard_lo && am <= spec.hard_hi) : (am >= spec.margin)) break;
    }
    int label = m > 0.0 ? +1 : -1;
    if (spec.flip_prob > 0.0 && gen.uniform() < spec.flip_prob) label = -label;
    out += label > 0 ? "+1" : "-1";
    for (const auto& [idx, val] : feats) {
      out += ' ';
      out += std::to_string(idx);
      out += ':';
      out += format_double(val);
    }
    out += '\n';
  }
  return out;
}

// The two bundled benchmark sets.  The separable one mixes comfortable
// margins with a 30% band of near-boundary examples so no learner can push
// the average loss toward zero within a single pass.
inline std::string separable_dataset(std::size_t n = 10000) {
  return synthetic_libsvm({n, 20, 0.6, 0.25, 0.3, 0.01, 0.03, 0.0, 20240601ull});
}

inline std::string noisy_dataset(std::size_t n = 10000) {
  return synthetic_libsvm({n, 20, 0.6, 0.25, 0.0, 0.0, 0.0, 0.15, 20240602ull});
}

}  // namespace rexp
