#pragma once

// One-pass online linear classification harness: stream a libsvm dataset
// through a learner under hinge loss, report the average loss over the pass,
// sweep baseline hyperparameters, normalize results across algorithms, and
// drive the lower-bound adversary.  Run reports serialize to a fixed CSV
// schema; identical inputs give identical bytes except the wall_time_ms
// column.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rexp/adversary.hpp"
#include "rexp/baselines.hpp"
#include "rexp/hinge.hpp"
#include "rexp/libsvm.hpp"
#include "rexp/numfmt.hpp"
#include "rexp/regret.hpp"
#include "rexp/rescaled_exp.hpp"

namespace rexp {

// ---------------------------------------------------------------- learners

class Learner {
 public:
  virtual ~Learner() = default;
  virtual const Vec& current() const = 0;
  virtual void step(const Vec& g) = 0;
  virtual std::optional<int> epochs() const { return std::nullopt; }
  virtual std::optional<double> m_value() const { return std::nullopt; }
};

namespace detail {
class VectorRescaledExpLearner final : public Learner {
 public:
  VectorRescaledExpLearner(std::size_t dim, bool recenter) : opt_(dim, kDefaultK, recenter) {}
  const Vec& current() const override { return opt_.current(); }
  void step(const Vec& g) override { opt_.step(g); }
  std::optional<int> epochs() const override { return opt_.epochs(); }
  std::optional<double> m_value() const override { return opt_.m(); }
 private:
  RescaledExp opt_;
};

class CoordRescaledExpLearner final : public Learner {
 public:
  CoordRescaledExpLearner(std::size_t dim, bool recenter) : opt_(dim, kDefaultK, recenter) {}
  const Vec& current() const override { return opt_.current(); }
  void step(const Vec& g) override { opt_.step(g); }
  std::optional<int> epochs() const override { return opt_.epochs(); }
  std::optional<double> m_value() const override { return opt_.m(); }
 private:
  CoordinateWiseRescaledExp opt_;
};

class BaselineLearner final : public Learner {
 public:
  BaselineLearner(BaselineAlgo algo, std::size_t dim, double scale)
      : opt_(algo, dim, make_config(scale)) {}
  const Vec& current() const override { return opt_.current(); }
  void step(const Vec& g) override { opt_.step(g); }
 private:
  static BaselineConfig make_config(double scale) {
    BaselineConfig cfg;
    cfg.scale = scale;
    return cfg;
  }
  Baseline opt_;
};

class ZeroLearner final : public Learner {
 public:
  explicit ZeroLearner(std::size_t dim) : w_(dim, 0.0) {}
  const Vec& current() const override { return w_; }
  void step(const Vec& g) override { check_same_dim(g, w_, "ZeroLearner::step"); }
 private:
  Vec w_;
};
}  // namespace detail

inline bool is_run_algorithm(const std::string& name) {
  return name == "rescaledexp" || baseline_from_name(name).has_value();
}

// `hyper` is required for baselines and must be absent for rescaledexp and
// the constant-zero learner.
inline std::unique_ptr<Learner> make_learner(const std::string& name, std::size_t dim,
                                             std::optional<double> hyper,
                                             bool coordinate_wise = true,
                                             bool recenter = false) {
  if (name == "rescaledexp") {
    if (hyper)
      throw std::invalid_argument("rescaledexp is parameter-free; --hyper is not accepted");
    if (coordinate_wise)
      return std::make_unique<detail::CoordRescaledExpLearner>(dim, recenter);
    return std::make_unique<detail::VectorRescaledExpLearner>(dim, recenter);
  }
  if (name == "zero") {
    if (hyper) throw std::invalid_argument("zero learner takes no hyperparameter");
    return std::make_unique<detail::ZeroLearner>(dim);
  }
  if (auto algo = baseline_from_name(name)) {
    if (!hyper)
      throw std::invalid_argument("algorithm '" + name + "' requires --hyper");
    return std::make_unique<detail::BaselineLearner>(*algo, dim, *hyper);
  }
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

// ---------------------------------------------------------------- run once

struct RunConfig {
  std::string algo = "rescaledexp";
  std::optional<double> hyper;
  bool coordinate_wise = true;
  bool recenter = false;
  std::uint64_t seed = 0;
  Dataset::Order order = Dataset::Order::file;
  std::string dataset_label;  // recorded in the CSV; defaults to the dataset name
};

struct RunReport {
  std::string algorithm;
  std::string variant;                   // rescaledexp only
  std::optional<double> hyperparameter;  // baselines only
  std::string dataset;
  std::uint64_t seed = 0;
  std::string ordering;
  std::uint64_t n_examples = 0;
  double average_loss = 0.0;
  std::optional<int> epochs_used;        // rescaledexp only
  double wall_time_ms = 0.0;
};

inline std::string variant_string(const RunConfig& cfg) {
  if (cfg.algo != "rescaledexp") return "";
  std::string v = cfg.coordinate_wise ? "coordinate" : "full";
  if (cfg.recenter) v += "+recenter";
  return v;
}

// One pass over the dataset.  A non-finite loss or iterate stops the pass and
// reports average_loss = inf (the run "diverged"); optimizer overflow guards
// propagate as errors, with the failing step index in the message.
inline RunReport run_once(const Dataset& ds, const RunConfig& cfg) {
  if (!is_run_algorithm(cfg.algo))
    throw std::invalid_argument("unknown algorithm '" + cfg.algo + "'");
  auto learner = make_learner(cfg.algo, ds.dimension(), cfg.hyper,
                              cfg.coordinate_wise, cfg.recenter);
  RunReport rep;
  rep.algorithm = cfg.algo;
  rep.variant = variant_string(cfg);
  rep.hyperparameter = cfg.hyper;
  rep.dataset = cfg.dataset_label.empty() ? ds.name() : cfg.dataset_label;
  rep.seed = cfg.seed;
  rep.ordering = cfg.order == Dataset::Order::file ? "file" : "shuffle";
  if (ds.size() == 0)
    throw std::runtime_error("dataset '" + ds.name() + "' has no examples to run on");

  const auto t0 = std::chrono::steady_clock::now();
  double loss_sum = 0.0;
  std::uint64_t n = 0;
  bool diverged = false;
  Vec g(ds.dimension(), 0.0);
  ds.for_each(cfg.order, cfg.seed, [&](const SparseExample& ex) {
    const Vec& w = learner->current();
    loss_sum += hinge_loss(w, ex);
    ++n;
    if (!std::isfinite(loss_sum)) {
      diverged = true;
      return false;
    }
    hinge_subgradient(w, ex, g);
    learner->step(g);
    if (!all_finite(learner->current())) {
      diverged = true;
      return false;
    }
    return true;
  });
  const auto t1 = std::chrono::steady_clock::now();

  rep.n_examples = n;
  rep.average_loss = diverged ? std::numeric_limits<double>::infinity()
                              : loss_sum / static_cast<double>(n);
  rep.epochs_used = learner->epochs();
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rep;
}

// ---------------------------------------------------------------- CSV

inline const char* kRunCsvHeader =
    "algorithm,variant,hyperparameter,dataset,seed,ordering,n_examples,"
    "average_loss,epochs_used,wall_time_ms";

inline void write_csv(std::ostream& out, const std::vector<RunReport>& reports) {
  out << kRunCsvHeader << '\n';
  for (const auto& r : reports) {
    out << r.algorithm << ',' << r.variant << ','
        << (r.hyperparameter ? format_double(*r.hyperparameter) : "") << ','
        << r.dataset << ',' << r.seed << ',' << r.ordering << ','
        << r.n_examples << ',' << format_double(r.average_loss) << ','
        << (r.epochs_used ? std::to_string(*r.epochs_used) : "") << ','
        << format_double(r.wall_time_ms) << '\n';
  }
}

namespace detail {
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error(std::string("bad ") + what + " '" + s + "' in CSV");
  return v;
}
}  // namespace detail

inline std::vector<RunReport> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRunCsvHeader)
    throw std::runtime_error("unexpected CSV header '" + line + "'");
  std::vector<RunReport> out;
  std::int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 10)
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 10 fields, got " +
                               std::to_string(f.size()));
    RunReport r;
    r.algorithm = f[0];
    r.variant = f[1];
    if (!f[2].empty()) r.hyperparameter = parse_double(f[2]);
    r.dataset = f[3];
    r.seed = detail::parse_u64(f[4], "seed");
    r.ordering = f[5];
    r.n_examples = detail::parse_u64(f[6], "n_examples");
    r.average_loss = parse_double(f[7]);
    if (!f[8].empty()) r.epochs_used = static_cast<int>(detail::parse_u64(f[8], "epochs_used"));
    r.wall_time_ms = parse_double(f[9]);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------- sweep

inline std::vector<double> coarse_grid() {
  std::vector<double> g;
  for (int i = -5; i <= 2; ++i) g.push_back(std::pow(10.0, i));
  return g;
}

inline std::vector<double> refine_multipliers() {
  return {0.2, 0.4, 0.8, 2.0, 4.0, 6.0, 8.0};
}

struct SweepOutcome {
  RunReport best;
  std::vector<RunReport> runs;
};

// Two-stage hyperparameter sweep for baselines (8 coarse powers of ten, then
// 7 multiples of the coarse winner); rescaledexp needs no sweep and runs
// once.  Ties prefer the smaller hyperparameter.  If every run diverges the
// sweep fails.
inline SweepOutcome run_sweep(const Dataset& ds, RunConfig cfg) {
  SweepOutcome out;
  if (cfg.algo == "rescaledexp") {
    cfg.hyper.reset();
    out.best = run_once(ds, cfg);
    out.runs.push_back(out.best);
    return out;
  }
  if (!baseline_from_name(cfg.algo))
    throw std::invalid_argument("unknown algorithm '" + cfg.algo + "'");

  const RunReport* best = nullptr;
  auto run_at = [&](double hyper) {
    cfg.hyper = hyper;
    out.runs.push_back(run_once(ds, cfg));
  };
  auto better = [](const RunReport& a, const RunReport& b) {
    if (a.average_loss != b.average_loss) return a.average_loss < b.average_loss;
    return *a.hyperparameter < *b.hyperparameter;
  };
  for (double h : coarse_grid()) run_at(h);
  for (const auto& r : out.runs)
    if (std::isfinite(r.average_loss) && (!best || better(r, *best))) best = &r;
  if (!best)
    throw std::runtime_error("sweep: every coarse hyperparameter diverged for '" + cfg.algo +
                             "' on '" + ds.name() + "'");
  const double center = *best->hyperparameter;
  for (double b : refine_multipliers()) run_at(center * b);
  best = nullptr;
  for (const auto& r : out.runs)
    if (std::isfinite(r.average_loss) && (!best || better(r, *best))) best = &r;
  out.best = *best;
  return out;
}

// ---------------------------------------------------------------- aggregate

struct AggregateRow {
  std::string algorithm;
  std::string dataset;
  std::optional<double> best_hyper;
  double best_loss = 0.0;
  double normalized = 0.0;
};

struct NormalizedTable {
  std::vector<AggregateRow> rows;                     // one per (algorithm, dataset)
  std::vector<std::pair<std::string, double>> means;  // one per algorithm
};

// Normalizes each algorithm's best average loss on a dataset by the best
// loss any algorithm achieved there, then averages per algorithm across
// datasets.  Every (algorithm, dataset) pair must have at least one finite
// run.
inline NormalizedTable aggregate(const std::vector<RunReport>& reports) {
  if (reports.empty()) throw std::runtime_error("aggregate: no run reports");
  std::set<std::string> algos, datasets;
  for (const auto& r : reports) {
    algos.insert(r.algorithm);
    datasets.insert(r.dataset);
  }
  std::map<std::pair<std::string, std::string>, const RunReport*> best;
  for (const auto& r : reports) {
    if (!std::isfinite(r.average_loss)) continue;
    auto& slot = best[{r.algorithm, r.dataset}];
    if (!slot) {
      slot = &r;
      continue;
    }
    const double ha = r.hyperparameter.value_or(-std::numeric_limits<double>::infinity());
    const double hb = slot->hyperparameter.value_or(-std::numeric_limits<double>::infinity());
    if (r.average_loss < slot->average_loss ||
        (r.average_loss == slot->average_loss && ha < hb))
      slot = &r;
  }
  NormalizedTable table;
  std::map<std::string, double> ds_min;
  for (const auto& ds : datasets) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& a : algos) {
      auto it = best.find({a, ds});
      if (it == best.end())
        throw std::runtime_error("aggregate: no finite run for algorithm '" + a +
                                 "' on dataset '" + ds + "'");
      m = std::min(m, it->second->average_loss);
    }
    ds_min[ds] = m;
  }
  std::map<std::string, double> mean_sum;
  for (const auto& a : algos) {
    for (const auto& ds : datasets) {
      const RunReport* r = best[{a, ds}];
      AggregateRow row;
      row.algorithm = a;
      row.dataset = ds;
      row.best_hyper = r->hyperparameter;
      row.best_loss = r->average_loss;
      row.normalized = r->average_loss / ds_min[ds];
      mean_sum[a] += row.normalized;
      table.rows.push_back(std::move(row));
    }
    table.means.emplace_back(a, mean_sum[a] / static_cast<double>(datasets.size()));
  }
  return table;
}

inline void write_aggregate_csv(std::ostream& out, const NormalizedTable& t) {
  out << "algorithm,dataset,best_hyperparameter,best_loss,normalized_loss\n";
  for (const auto& r : t.rows)
    out << r.algorithm << ',' << r.dataset << ','
        << (r.best_hyper ? format_double(*r.best_hyper) : "") << ','
        << format_double(r.best_loss) << ',' << format_double(r.normalized) << '\n';
  for (const auto& [algo, mean] : t.means)
    out << algo << ",(mean),,," << format_double(mean) << '\n';
}

// ---------------------------------------------------------------- adversary

struct AdversaryReport {
  std::string learner;
  std::int64_t horizon = 0;
  EpisodeCase episode = EpisodeCase::stayed_low;
  std::int64_t crossed_at = 0;  // 0 when the iterate never reached the threshold
  double u = 0.0;
  double l_max = 0.0;
  double max_ratio = 0.0;
  double measured_regret = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;  // the adaptive upper bound evaluated on the run's stats
};

// Plays one full episode at the smallest feasible horizon.  Baselines run at
// scale 1; rescaledexp and the zero learner take no hyperparameter.
inline AdversaryReport run_adversary_episode(const std::string& learner_name, double c,
                                             double k, double eps,
                                             bool coordinate_wise = true,
                                             bool recenter = false) {
  const std::int64_t T = find_min_horizon(c, k, eps);
  const AdversaryParams params = make_adversary_params(c, k, eps, T);
  const bool takes_hyper =
      learner_name != "rescaledexp" && learner_name != "zero";
  auto learner = make_learner(learner_name, 1,
                              takes_hyper ? std::optional<double>(1.0) : std::nullopt,
                              coordinate_wise, recenter);
  CheckmateAdversary adv(params);
  RegretLedger ledger(1);
  RunTracker tracker;
  AdversaryReport rep;
  rep.learner = learner_name;
  rep.horizon = T;
  Vec gv(1, 0.0);
  for (std::int64_t t = 1; t <= T; ++t) {
    const Vec& w = learner->current();
    const bool was_probing = !adv.crossed();
    const double g = adv.next(w[0]);
    if (was_probing && adv.crossed()) rep.crossed_at = t;
    gv[0] = g;
    ledger.record(gv, w);
    learner->step(gv);
    tracker.observe(std::abs(g), learner->m_value().value_or(0.0));
  }
  rep.episode = adv.episode_case();
  rep.u = rep.episode == EpisodeCase::crossed ? 0.0 : 2.0 * params.threshold;
  rep.l_max = tracker.stats().l_max;
  rep.max_ratio = tracker.stats().max_ratio;
  rep.measured_regret = ledger.regret({rep.u});
  rep.lower_bound = lower_bound_value(params, rep.u, rep.l_max);
  rep.upper_bound = regret_bound(tracker.stats(), std::abs(rep.u));
  return rep;
}

inline void write_adversary_csv(std::ostream& out, const AdversaryReport& r) {
  out << "learner,horizon,case,crossed_at,u,l_max,max_ratio,measured_regret,"
         "lower_bound,upper_bound\n";
  out << r.learner << ',' << r.horizon << ','
      << (r.episode == EpisodeCase::crossed ? "crossed" : "stayed_low") << ','
      << r.crossed_at << ',' << format_double(r.u) << ',' << format_double(r.l_max) << ','
      << format_double(r.max_ratio) << ',' << format_double(r.measured_regret) << ','
      << format_double(r.lower_bound) << ',' << format_double(r.upper_bound) << '\n';
}

}  // namespace rexp
