// Command-line driver: single-pass runs, hyperparameter sweeps, normalized
// aggregation, adversary episodes, and the library's self-check suite.
//
// Output goes to --out when given, else to $REXP_OUT_DIR/<subcommand>.csv
// when that env var is set, else to stdout.  Failures exit nonzero after one
// machine-readable `error: ...` line on stderr.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rexp/rexp.hpp"

namespace {

std::string default_out_path(const std::string& filename) {
  const char* dir = std::getenv("REXP_OUT_DIR");
  if (!dir || !*dir) return {};
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / filename).string();
}

void emit(const std::string& explicit_path, const std::string& fallback_name,
          const std::string& content) {
  const std::string path = explicit_path.empty() ? default_out_path(fallback_name) : explicit_path;
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

struct RunArgs {
  std::string algo;
  std::string dataset;
  std::optional<double> hyper;
  bool coordinate_wise = true;
  bool recenter = false;
  std::uint64_t seed = 0;
  std::string order = "file";
  std::string out;
};

rexp::RunConfig to_config(const RunArgs& a) {
  rexp::RunConfig cfg;
  cfg.algo = a.algo;
  cfg.hyper = a.hyper;
  cfg.coordinate_wise = a.coordinate_wise;
  cfg.recenter = a.recenter;
  cfg.seed = a.seed;
  cfg.order = a.order == "file" ? rexp::Dataset::Order::file : rexp::Dataset::Order::shuffled;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-pass online linear classification harness"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "One pass over a libsvm dataset, one run-report CSV row");
  run->add_option("--algo", run_args.algo,
                  "rescaledexp | adagrad | adam | adadelta | pistol | scale_invariant | sgd_decay")
      ->required();
  run->add_option("--dataset", run_args.dataset, "libsvm file path")->required();
  run->add_option("--hyper", run_args.hyper, "hyperparameter (baselines only)");
  run->add_option("--coordinate-wise", run_args.coordinate_wise,
                  "rescaledexp: one scalar instance per coordinate (default true)");
  run->add_option("--recenter", run_args.recenter,
                  "rescaledexp: re-center epochs on the previous iterate (default false)");
  run->add_option("--seed", run_args.seed, "shuffle seed (default 0)");
  run->add_option("--order", run_args.order, "example order (default file)")
      ->check(CLI::IsMember({"file", "shuffle"}));
  run->add_option("--out", run_args.out, "output CSV path");

  RunArgs sweep_args;
  auto* sweep = app.add_subcommand(
      "sweep", "Hyperparameter sweep (8 coarse + 7 refined runs; rescaledexp runs once)");
  sweep->add_option("--algo", sweep_args.algo, "algorithm name")->required();
  sweep->add_option("--dataset", sweep_args.dataset, "libsvm file path")->required();
  sweep->add_option("--out", sweep_args.out, "output CSV path");

  std::vector<std::string> agg_in;
  std::string agg_out;
  auto* agg = app.add_subcommand("aggregate", "Normalize run-report CSVs across datasets");
  agg->add_option("--in", agg_in, "run-report CSV path(s)")->required()->expected(-1);
  agg->add_option("--out", agg_out, "output CSV path");

  std::string adv_learner = "rescaledexp", adv_out;
  double adv_c = 1.0, adv_k = 1.0, adv_eps = 0.25;
  auto* adv = app.add_subcommand(
      "adversary", "Full episode against the checkmate adversary at the minimum feasible horizon");
  adv->add_option("--learner", adv_learner,
                  "any run algorithm, or 'zero' for the constant-zero player");
  adv->add_option("--c", adv_c, "threshold growth constant (default 1)");
  adv->add_option("--k", adv_k, "target bound constant (default 1)");
  adv->add_option("--eps", adv_eps, "exponent shrink, in (0, 0.5) (default 0.25)");
  adv->add_option("--out", adv_out, "output CSV path");

  std::string verify_check;
  auto* verify = app.add_subcommand("verify", "Run the library's acceptance checks");
  verify->add_option("--check", verify_check, "run a single named check");

  try {
    app.parse(argc, argv);

    if (run->parsed()) {
      const rexp::Dataset ds = rexp::Dataset::open(run_args.dataset);
      const rexp::RunReport rep = rexp::run_once(ds, to_config(run_args));
      std::ostringstream os;
      rexp::write_csv(os, {rep});
      emit(run_args.out, "run.csv", os.str());
    } else if (sweep->parsed()) {
      const rexp::Dataset ds = rexp::Dataset::open(sweep_args.dataset);
      const rexp::SweepOutcome outcome = rexp::run_sweep(ds, to_config(sweep_args));
      std::ostringstream os;
      rexp::write_csv(os, outcome.runs);
      emit(sweep_args.out, "sweep.csv", os.str());
    } else if (agg->parsed()) {
      std::vector<rexp::RunReport> reports;
      for (const auto& path : agg_in) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open run-report CSV '" + path + "'");
        std::vector<rexp::RunReport> part;
        try {
          part = rexp::read_csv(in);
        } catch (const std::exception& e) {
          throw std::runtime_error(path + ": " + e.what());
        }
        reports.insert(reports.end(), part.begin(), part.end());
      }
      const rexp::NormalizedTable table = rexp::aggregate(reports);
      std::ostringstream os;
      rexp::write_aggregate_csv(os, table);
      emit(agg_out, "aggregate.csv", os.str());
    } else if (adv->parsed()) {
      const rexp::AdversaryReport rep =
          rexp::run_adversary_episode(adv_learner, adv_c, adv_k, adv_eps);
      std::ostringstream os;
      rexp::write_adversary_csv(os, rep);
      emit(adv_out, "adversary.csv", os.str());
    } else if (verify->parsed()) {
      std::vector<rexp::CheckResult> results;
      if (verify_check.empty())
        results = rexp::run_all_checks();
      else
        results.push_back(rexp::run_check(verify_check));
      int failed = 0;
      for (const auto& r : results) {
        std::cout << rexp::format_check_line(r) << '\n';
        if (!r.pass) ++failed;
      }
      if (failed > 0) {
        std::cerr << "error: " << failed << " of " << results.size() << " checks failed\n";
        return 1;
      }
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    const int code = e.get_exit_code();
    return code == 0 ? 1 : code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
