#pragma once

// Strict libsvm-format reader:  `label idx:val idx:val ...` per line, feature
// indices 1-based and strictly increasing, `#` starts a comment, CRLF
// tolerated.  Malformed input fails fast with the 1-based line number; labels
// are mapped to {-1,+1} either as-is or by an auto-built two-value map.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rexp/hinge.hpp"
#include "rexp/numfmt.hpp"

namespace rexp {

struct ParseError : std::runtime_error {
  std::int64_t line;
  ParseError(std::int64_t ln, const std::string& msg)
      : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

namespace detail {
// Whole-token numeric parse; rejects trailing junk.  from_chars takes no
// leading '+', so one explicit plus before a digit or '.' is stripped first
// ("+1" is the most common libsvm label).
template <typename T>
inline bool parse_number(std::string_view tok, T& out) {
  if (tok.size() >= 2 && tok[0] == '+' &&
      ((tok[1] >= '0' && tok[1] <= '9') || tok[1] == '.'))
    tok.remove_prefix(1);
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}
}  // namespace detail

struct RawExample {
  double label = 0.0;
  std::vector<std::pair<int, double>> features;
};

inline RawExample parse_line_raw(std::string_view line, std::int64_t line_no = 1) {
  if (auto hash = line.find('#'); hash != std::string_view::npos)
    line = line.substr(0, hash);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
    line.remove_suffix(1);

  RawExample ex;
  std::size_t pos = 0;
  auto next_token = [&]() -> std::string_view {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    return line.substr(start, pos - start);
  };

  const std::string_view label_tok = next_token();
  if (label_tok.empty()) throw ParseError(line_no, "empty line: missing label");
  if (!detail::parse_number(label_tok, ex.label) || !std::isfinite(ex.label))
    throw ParseError(line_no, "malformed label '" + std::string(label_tok) + "'");

  int prev_idx = 0;
  for (std::string_view tok = next_token(); !tok.empty(); tok = next_token()) {
    const std::size_t colon = tok.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon == tok.size() - 1)
      throw ParseError(line_no, "malformed feature '" + std::string(tok) + "'");
    int idx = 0;
    double val = 0.0;
    if (!detail::parse_number(tok.substr(0, colon), idx))
      throw ParseError(line_no, "malformed feature index in '" + std::string(tok) + "'");
    if (idx < 1)
      throw ParseError(line_no, "feature index " + std::to_string(idx) + " must be >= 1");
    if (idx <= prev_idx)
      throw ParseError(line_no, "feature indices must be strictly increasing (" +
                                    std::to_string(prev_idx) + " then " + std::to_string(idx) + ")");
    if (!detail::parse_number(tok.substr(colon + 1), val) || !std::isfinite(val))
      throw ParseError(line_no, "malformed feature value in '" + std::string(tok) + "'");
    ex.features.emplace_back(idx, val);
    prev_idx = idx;
  }
  return ex;
}

// Maps raw numeric labels to {-1,+1}.  The identity map accepts only raw
// values -1 and +1; a two-value map sends the numerically smaller raw label
// to -1 and the larger to +1.
class LabelMap {
 public:
  static LabelMap identity() { return LabelMap(); }

  static LabelMap from_values(double a, double b) {
    if (a == b) throw std::invalid_argument("LabelMap: need two distinct label values");
    LabelMap m;
    m.neg_ = std::min(a, b);
    m.pos_ = std::max(a, b);
    return m;
  }

  int map(double raw) const {
    if (neg_) {
      if (raw == *neg_) return -1;
      if (raw == *pos_) return +1;
    } else {
      if (raw == -1.0) return -1;
      if (raw == 1.0) return +1;
    }
    throw std::invalid_argument("unmappable label value " + std::to_string(raw));
  }

  bool is_identity() const { return !neg_.has_value(); }

 private:
  std::optional<double> neg_, pos_;
};

inline std::string serialize(const SparseExample& ex) {
  std::string out = ex.label > 0 ? "+1" : "-1";
  for (const auto& [idx, val] : ex.features) {
    out += ' ';
    out += std::to_string(idx);
    out += ':';
    out += format_double(val);
  }
  return out;
}

inline SparseExample parse_line(std::string_view line, std::int64_t line_no = 1,
                                const LabelMap& map = LabelMap::identity()) {
  RawExample raw = parse_line_raw(line, line_no);
  SparseExample ex;
  try {
    ex.label = map.map(raw.label);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
  ex.features = std::move(raw.features);
  return ex;
}

// A fully validated libsvm dataset.  The constructor scans every line once
// (recording byte offsets and building the label map); examples are streamed
// again on each pass rather than held in memory.
class Dataset {
 public:
  enum class Order { file, shuffled };

  static Dataset open(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
    Dataset ds;
    ds.path_ = path;
    ds.scan(in, path);
    return ds;
  }

  static Dataset from_text(std::string text, const std::string& name = "<memory>") {
    Dataset ds;
    ds.text_ = std::move(text);
    std::istringstream in(ds.text_);
    ds.scan(in, name);
    return ds;
  }

  std::size_t size() const { return offsets_.size(); }
  std::size_t dimension() const { return dim_; }
  const LabelMap& labels() const { return map_; }
  const std::string& name() const { return name_; }

  // Streams every example once in the requested order.  The callback returns
  // false to stop early.  Shuffled order is a seeded Fisher-Yates permutation,
  // identical for identical seeds.
  void for_each(Order order, std::uint64_t seed,
                const std::function<bool(const SparseExample&)>& fn) const {
    std::vector<std::size_t> perm(offsets_.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    if (order == Order::shuffled) {
      std::mt19937_64 gen(seed);
      for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[gen() % i]);
    }
    std::ifstream file;
    if (!path_.empty()) {
      file.open(path_, std::ios::binary);
      if (!file) throw std::runtime_error("cannot reopen dataset '" + path_ + "'");
    }
    std::string line;
    for (std::size_t idx : perm) {
      if (!path_.empty()) {
        file.seekg(static_cast<std::streamoff>(offsets_[idx]));
        std::getline(file, line);
      } else {
        line.assign(text_, offsets_[idx], line_len(idx));
      }
      if (!fn(parse_line(line, static_cast<std::int64_t>(idx) + 1, map_))) return;
    }
  }

 private:
  Dataset() = default;

  std::size_t line_len(std::size_t idx) const {
    if (idx + 1 < offsets_.size()) return offsets_[idx + 1] - offsets_[idx] - 1;
    std::size_t len = text_.size() - offsets_[idx];  // tail: newline optional
    if (len > 0 && text_[offsets_[idx] + len - 1] == '\n') --len;
    return len;
  }

  void scan(std::istream& in, const std::string& name) {
    name_ = name;
    std::set<double> raw_labels;
    std::string line;
    std::int64_t line_no = 0;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
      ++line_no;
      offsets_.push_back(offset);
      offset += line.size() + 1;
      RawExample raw = parse_line_raw(line, line_no);
      raw_labels.insert(raw.label);
      for (const auto& [idx, val] : raw.features)
        dim_ = std::max(dim_, static_cast<std::size_t>(idx));
    }
    if (offsets_.empty()) return;  // empty dataset: zero examples, identity map
    if (raw_labels.size() > 2) {
      std::string vals;
      for (double v : raw_labels) vals += (vals.empty() ? "" : ", ") + std::to_string(v);
      throw std::runtime_error("dataset '" + name + "' has " +
                               std::to_string(raw_labels.size()) +
                               " distinct labels (" + vals + "); need a binary problem");
    }
    const bool pm_one =
        (raw_labels.size() == 1 && (*raw_labels.begin() == 1.0 || *raw_labels.begin() == -1.0)) ||
        (raw_labels.size() == 2 && *raw_labels.begin() == -1.0 && *std::next(raw_labels.begin()) == 1.0);
    if (pm_one)
      map_ = LabelMap::identity();
    else if (raw_labels.size() == 2)
      map_ = LabelMap::from_values(*raw_labels.begin(), *std::next(raw_labels.begin()));
    else
      throw std::runtime_error("dataset '" + name + "' has a single label value " +
                               std::to_string(*raw_labels.begin()) +
                               "; cannot infer a binary mapping");
  }

  std::string path_;   // set for file-backed datasets
  std::string text_;   // set for in-memory datasets
  std::string name_;
  std::vector<std::size_t> offsets_;
  std::size_t dim_ = 0;
  LabelMap map_;
};

}  // namespace rexp
