#pragma once

// Hinge loss over sparse examples:  l(w) = max(0, 1 - y <w, x>).
// Subgradient is -y x when the margin is violated and 0 otherwise; the kink
// at margin exactly 1 takes the 0 side.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rexp/vec.hpp"

namespace rexp {

// One libsvm-style example: 1-based feature indices, strictly increasing.
struct SparseExample {
  std::vector<std::pair<int, double>> features;
  int label = 0;  // -1 or +1
};

inline double sparse_dot(const Vec& w, const SparseExample& ex) {
  double s = 0.0;
  for (const auto& [idx, val] : ex.features) {
    if (idx < 1 || static_cast<std::size_t>(idx) > w.size())
      throw std::out_of_range("sparse_dot: feature index " + std::to_string(idx) +
                              " outside model dimension " + std::to_string(w.size()));
    s += w[static_cast<std::size_t>(idx) - 1] * val;
  }
  return s;
}

inline double hinge_loss(const Vec& w, const SparseExample& ex) {
  return std::max(0.0, 1.0 - ex.label * sparse_dot(w, ex));
}

// Writes the dense subgradient into g (sized to the model dimension).
inline void hinge_subgradient(const Vec& w, const SparseExample& ex, Vec& g) {
  if (g.size() != w.size()) g.assign(w.size(), 0.0);
  else std::fill(g.begin(), g.end(), 0.0);
  if (ex.label * sparse_dot(w, ex) < 1.0)
    for (const auto& [idx, val] : ex.features)
      g[static_cast<std::size_t>(idx) - 1] = -ex.label * val;
}

}  // namespace rexp
