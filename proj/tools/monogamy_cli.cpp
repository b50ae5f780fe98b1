// monogamy: reproduce the worked examples, run verification campaigns, and
// measure states from JSON files.
//
// Exit status: 0 all checks pass, 1 an applicable inequality is violated,
// 2 usage, configuration or input-file error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monogamy/bounds.hpp"
#include "monogamy/harness/campaign.hpp"
#include "monogamy/harness/examples.hpp"
#include "monogamy/harness/io.hpp"
#include "monogamy/harness/measure.hpp"

namespace {

using namespace monogamy;
using namespace monogamy::harness;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct GridFlags {
  std::optional<double> min, max;
  double step = 0.05;

  void add(CLI::App* app) {
    app->add_option("--alpha-min", min, "Smallest alpha of the grid");
    app->add_option("--alpha-max", max, "Largest alpha of the grid");
    app->add_option("--alpha-step", step, "Grid spacing")->capture_default_str();
  }
};

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

std::vector<BoundId> parse_bounds(const std::vector<std::string>& names) {
  std::vector<BoundId> ids;
  for (const auto& n : names) {
    auto id = parse_bound(n);
    if (!id) throw ConfigError("unknown bound '" + n + "'");
    ids.push_back(*id);
  }
  return ids;
}

// "sqrt2" is accepted wherever an alpha is expected.
double parse_alpha(const std::string& s) {
  if (s == "sqrt2" || s == "sqrt(2)") return std::numbers::sqrt2;
  if (s == "-sqrt2" || s == "-sqrt(2)") return -std::numbers::sqrt2;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad alpha '" + s + "'");
  }
}

std::vector<double> parse_alphas(const std::vector<std::string>& raw) {
  std::vector<double> out;
  for (const auto& s : raw) out.push_back(parse_alpha(s));
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Concurrence / entanglement-of-formation monogamy bounds"};
  app.require_subcommand(1);

  // example
  auto* ex = app.add_subcommand("example", "Residual curves y1 (tightened) and y2 (baseline) for example 1, 2 or 3");
  int ex_id = 1;
  GridFlags ex_grid;
  std::string ex_out;
  ex->add_option("--id", ex_id, "Example number (1, 2, 3)")->required();
  ex_grid.add(ex);
  ex->add_option("--out", ex_out, "CSV output path (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "Monte Carlo check of the inequalities on Haar-random pure states");
  CampaignConfig cfg;
  std::vector<std::string> ver_bounds{"ckw"};
  std::vector<std::string> ver_alphas{"2"};
  std::string ver_out;
  bool ver_timing = false;
  std::optional<std::uint64_t> replay;
  ver->add_option("--samples", cfg.num_samples, "Samples per qubit count")->capture_default_str();
  ver->add_option("--qubits", cfg.qubit_counts, "Qubit counts (3..12)")->capture_default_str();
  ver->add_option("--alpha", ver_alphas, "Exponents; each bound uses those in its range")->capture_default_str();
  ver->add_option("--bound", ver_bounds, "Bounds to check")->capture_default_str();
  ver->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  ver->add_option("--tolerance", cfg.tolerance, "Slack below -tolerance counts as a violation")->capture_default_str();
  ver->add_option("--tail-trials", cfg.tail_trials, "Decomposition-search trials for bracketed tails")
      ->capture_default_str();
  ver->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
  ver->add_option("--out", ver_out, "JSON output path (default stdout)");
  ver->add_flag("--timing", ver_timing, "Include runtime figures in the JSON");
  ver->add_option("--replay-seed", replay, "Print the reports for one recorded sample seed");

  // measure
  auto* mea = app.add_subcommand("measure", "Concurrences and EoF of a JSON state file");
  std::string mea_state, mea_out;
  std::optional<std::string> mea_focus;
  std::vector<std::string> mea_order, mea_bounds, mea_alphas{"2"};
  std::uint64_t mea_seed = 1;
  mea->add_option("--state", mea_state, "State file")->required();
  mea->add_option("--focus", mea_focus, "Focus party label (default: first qubit)");
  mea->add_option("--order", mea_order, "Order of the remaining parties B_1 .. B_{N-1}");
  mea->add_option("--bound", mea_bounds, "Also evaluate these bounds");
  mea->add_option("--alpha", mea_alphas, "Exponents for --bound")->capture_default_str();
  mea->add_option("--seed", mea_seed, "Seed for decomposition searches")->capture_default_str();
  mea->add_option("--out", mea_out, "JSON output path (default stdout)");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Residual curves of two bounds for a state file");
  std::string sw_state, sw_out, sw_bound, sw_baseline;
  std::optional<std::string> sw_focus;
  std::vector<std::string> sw_order;
  GridFlags sw_grid;
  sw->add_option("--state", sw_state, "Pure state file")->required();
  sw->add_option("--bound", sw_bound, "Tightened bound (y1)")->required();
  sw->add_option("--baseline", sw_baseline, "Baseline bound (y2)")->required();
  sw->add_option("--focus", sw_focus, "Focus party label");
  sw->add_option("--order", sw_order, "Order of the remaining parties");
  sw_grid.add(sw);
  sw->add_option("--out", sw_out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*ex) {
      check_example_id(ex_id);
      std::vector<double> grid = default_example_grid(ex_id);
      if (ex_grid.min || ex_grid.max) {
        const double lo = ex_grid.min.value_or(grid.front());
        const double hi = ex_grid.max.value_or(grid.back());
        grid = alpha_grid(lo, hi, ex_grid.step);
      }
      const auto run = run_example(ex_id, grid);
      std::cerr << example_summary(run);
      emit(ex_out, sweep_csv(run.sweep));
      return kExitPass;
    }

    if (*ver) {
      cfg.bound_kinds = parse_bounds(ver_bounds);
      cfg.alphas = parse_alphas(ver_alphas);
      if (replay) {
        cfg.validate();
        if (cfg.qubit_counts.size() != 1) throw ConfigError("--replay-seed needs exactly one --qubits value");
        json reports = json::array();
        bool violated = false;
        for (const auto& r : replay_sample(cfg.qubit_counts.front(), *replay, cfg.kinds(), cfg.tail_trials)) {
          reports.push_back(to_json(r));
          violated = violated || r.violated(cfg.tolerance);
        }
        emit(ver_out, json{{"seed", *replay}, {"reports", reports}}.dump(2) + "\n");
        return violated ? kExitViolation : kExitPass;
      }
      const auto result = run_campaign(cfg);
      emit(ver_out, to_json(result, ver_timing).dump(2) + "\n");
      std::cerr << "verify: " << result.runtime.samples << " samples, " << result.total_failed() << " failures, "
                << result.runtime.seconds << " s\n";
      return result.total_failed() == 0 ? kExitPass : kExitViolation;
    }

    if (*mea) {
      const auto file = read_state_file(mea_state);
      const auto spec = partition_for(file.reg(), mea_focus, mea_order);
      std::vector<BoundKind> kinds;
      const auto alphas = parse_alphas(mea_alphas);
      for (auto id : parse_bounds(mea_bounds)) {
        if (id == BoundId::ckw) {
          kinds.push_back({id, 2.0, {}});
          continue;
        }
        for (double a : alphas)
          if (alpha_in_range(id, a)) kinds.push_back({id, a, {}});
      }
      emit(mea_out, measure_json(file, spec, kinds, 200, mea_seed).dump(2) + "\n");
      return kExitPass;
    }

    if (*sw) {
      const auto file = read_state_file(sw_state);
      const auto psi = file.pure_state();
      const auto spec = partition_for(psi.reg(), sw_focus, sw_order);
      const auto tight = parse_bounds({sw_bound}).front();
      const auto base = parse_bounds({sw_baseline}).front();
      if (!sw_grid.min || !sw_grid.max) throw ConfigError("sweep needs --alpha-min and --alpha-max");
      const auto grid = alpha_grid(*sw_grid.min, *sw_grid.max, sw_grid.step);
      for (double a : grid)
        if (!alpha_in_range(tight, a) || !alpha_in_range(base, a))
          throw ConfigError("alpha " + format_double(a) + " outside the range of the chosen bounds");
      const auto prof = profile(psi, spec);
      emit(sw_out, sweep_csv(residual_sweep(prof, {tight, 2.0, {}}, {base, 2.0, {}}, grid)));
      return kExitPass;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
