#pragma once

// Monte Carlo verification campaigns over Haar-random pure states.
//
// Sample i of a q-qubit run draws its state from
// SeededSampler(derive_seed(derive_seed(seed, q), i)); that per-sample seed is
// what failures record, and replay_sample() rebuilds the identical reports
// from it. Results do not depend on the number of worker threads.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "monogamy/bounds.hpp"
#include "monogamy/harness/io.hpp"
#include "monogamy/states.hpp"

namespace monogamy::harness {

struct CampaignConfig {
  std::size_t num_samples = 1000;
  std::vector<std::size_t> qubit_counts{3};
  std::vector<double> alphas{2.0};
  std::vector<BoundId> bound_kinds{BoundId::ckw};
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  std::size_t tail_trials = 64;
  std::size_t threads = 1;

  void validate() const {
    if (num_samples < 1) throw ConfigError("num_samples must be >= 1");
    if (!(tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
    if (qubit_counts.empty()) throw ConfigError("need at least one qubit count");
    if (bound_kinds.empty()) throw ConfigError("need at least one bound");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    for (auto q : qubit_counts)
      if (q < 3 || q > kMaxQubits) throw ConfigError("qubit counts must lie in 3..12");
    for (auto id : bound_kinds) {
      if (id == BoundId::ckw) continue;
      const bool any = std::any_of(alphas.begin(), alphas.end(), [&](double a) { return alpha_in_range(id, a); });
      if (!any) throw ConfigError("invalid bound/alpha combination: no alpha in range for '" +
                                  std::string(bound_name(id)) + "'");
      if ((id == BoundId::split_weighted || id == BoundId::eof_split_weighted) &&
          std::any_of(qubit_counts.begin(), qubit_counts.end(), [](auto q) { return q < 4; }))
        throw ConfigError("bound '" + std::string(bound_name(id)) + "' needs at least 4 qubits");
    }
  }

  /// Every (bound, alpha) pair a sample is checked against.
  std::vector<BoundKind> kinds() const {
    std::vector<BoundKind> out;
    for (auto id : bound_kinds) {
      if (id == BoundId::ckw) {
        out.push_back({id, 2.0, {}});
        continue;
      }
      for (double a : alphas)
        if (alpha_in_range(id, a)) out.push_back({id, a, {}});
    }
    return out;
  }
};

struct FailureRecord {
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  double slack = 0.0;
};

struct BoundCounters {
  std::size_t qubits = 0;
  BoundKind kind;
  std::size_t evaluated = 0;
  std::size_t applicable = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t indeterminate = 0;
  std::size_t not_applicable = 0;
  std::size_t strict_checked = 0;
  std::size_t strict_violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::optional<FailureRecord> worst;  // smallest slack among applicable samples
  std::vector<FailureRecord> failures;  // first few, in sample order
};

struct RuntimeStats {
  double seconds = 0.0;
  std::size_t samples = 0;
  std::size_t threads = 1;
};

struct CampaignResult {
  CampaignConfig config;
  std::vector<BoundCounters> bounds;
  RuntimeStats runtime;

  std::size_t total_failed() const {
    std::size_t n = 0;
    for (const auto& b : bounds) n += b.failed;
    return n;
  }
};

inline constexpr std::size_t kMaxRecordedFailures = 16;

inline std::uint64_t sample_seed(std::uint64_t base, std::size_t qubits, std::size_t index) {
  return derive_seed(derive_seed(base, qubits), index);
}

inline PureState sample_state(std::size_t qubits, std::uint64_t seed) {
  SeededSampler sampler(seed);
  return haar_random_pure(qubits, sampler);
}

/// Reports for one sample, rebuilt from its recorded seed.
inline std::vector<BoundReport> replay_sample(std::size_t qubits, std::uint64_t seed,
                                              const std::vector<BoundKind>& kinds, std::size_t tail_trials = 64) {
  const auto psi = sample_state(qubits, seed);
  const auto prof = profile(psi, PartitionSpec::natural(psi.reg()), ProfileOptions{tail_trials, seed});
  std::vector<BoundReport> out;
  out.reserve(kinds.size());
  for (const auto& k : kinds) out.push_back(evaluate(prof, k));
  return out;
}

namespace detail {

inline void record(BoundCounters& c, const BoundReport& r, std::size_t sample, std::uint64_t seed, double tol) {
  ++c.evaluated;
  switch (r.applicability) {
    case Applicability::not_applicable: ++c.not_applicable; return;
    case Applicability::indeterminate: ++c.indeterminate; return;
    case Applicability::applicable: break;
  }
  ++c.applicable;
  if (r.slack < c.worst_slack || (r.slack == c.worst_slack && c.worst && sample < c.worst->sample)) {
    c.worst_slack = r.slack;
    c.worst = FailureRecord{sample, seed, r.slack};
  }
  if (r.violated(tol)) {
    ++c.failed;
    if (c.failures.size() < kMaxRecordedFailures) c.failures.push_back({sample, seed, r.slack});
  } else {
    ++c.passed;
  }
  if (r.strict_checked) {
    ++c.strict_checked;
    if (!r.strictly_satisfied) ++c.strict_violations;
  }
}

// Folds a later chunk into an earlier one; chunks cover increasing sample ranges.
inline void merge(BoundCounters& into, const BoundCounters& from) {
  into.evaluated += from.evaluated;
  into.applicable += from.applicable;
  into.passed += from.passed;
  into.failed += from.failed;
  into.indeterminate += from.indeterminate;
  into.not_applicable += from.not_applicable;
  into.strict_checked += from.strict_checked;
  into.strict_violations += from.strict_violations;
  if (from.worst && (!into.worst || from.worst_slack < into.worst_slack)) {
    into.worst_slack = from.worst_slack;
    into.worst = from.worst;
  }
  for (const auto& f : from.failures)
    if (into.failures.size() < kMaxRecordedFailures) into.failures.push_back(f);
}

inline std::vector<BoundCounters> run_range(const CampaignConfig& cfg, const std::vector<BoundKind>& kinds,
                                            std::size_t qubits, std::size_t begin, std::size_t end) {
  std::vector<BoundCounters> counters;
  for (const auto& k : kinds) {
    BoundCounters c;
    c.qubits = qubits;
    c.kind = k;
    counters.push_back(std::move(c));
  }
  for (std::size_t i = begin; i < end; ++i) {
    const auto seed = sample_seed(cfg.seed, qubits, i);
    const auto reports = replay_sample(qubits, seed, kinds, cfg.tail_trials);
    for (std::size_t k = 0; k < kinds.size(); ++k) record(counters[k], reports[k], i, seed, cfg.tolerance);
  }
  return counters;
}

}  // namespace detail

inline CampaignResult run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto kinds = cfg.kinds();
  CampaignResult result;
  result.config = cfg;

  for (auto qubits : cfg.qubit_counts) {
    const std::size_t workers = std::min(cfg.threads, cfg.num_samples);
    std::vector<std::vector<BoundCounters>> chunks(workers);
    const auto bounds_of = [&](std::size_t w) { return cfg.num_samples * w / workers; };
    if (workers == 1) {
      chunks[0] = detail::run_range(cfg, kinds, qubits, 0, cfg.num_samples);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] { chunks[w] = detail::run_range(cfg, kinds, qubits, bounds_of(w), bounds_of(w + 1)); });
      for (auto& t : pool) t.join();
    }
    auto merged = std::move(chunks[0]);
    for (std::size_t w = 1; w < workers; ++w)
      for (std::size_t k = 0; k < merged.size(); ++k) detail::merge(merged[k], chunks[w][k]);
    result.bounds.insert(result.bounds.end(), merged.begin(), merged.end());
  }

  result.runtime.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.runtime.samples = cfg.num_samples * cfg.qubit_counts.size();
  result.runtime.threads = cfg.threads;
  return result;
}

inline json to_json(const CampaignConfig& c) {
  json bounds = json::array();
  for (auto id : c.bound_kinds) bounds.push_back(std::string(bound_name(id)));
  return json{{"num_samples", c.num_samples}, {"qubit_counts", c.qubit_counts}, {"alphas", c.alphas},
              {"bound_kinds", std::move(bounds)}, {"seed", c.seed},          {"tolerance", c.tolerance},
              {"tail_trials", c.tail_trials}};
}

/// Campaign summary; runtime figures only when `include_runtime` is set so the
/// default output is byte-stable for a fixed configuration.
inline json to_json(const CampaignResult& r, bool include_runtime = false) {
  json bounds = json::array();
  for (const auto& b : r.bounds) {
    json failures = json::array();
    for (const auto& f : b.failures)
      failures.push_back(json{{"sample", f.sample}, {"seed", f.seed}, {"slack", f.slack}});
    json entry{{"qubits", b.qubits},
               {"bound", std::string(bound_name(b.kind.id))},
               {"alpha", b.kind.alpha},
               {"evaluated", b.evaluated},
               {"applicable", b.applicable},
               {"passed", b.passed},
               {"failed", b.failed},
               {"indeterminate", b.indeterminate},
               {"not_applicable", b.not_applicable}};
    if (b.kind.id == BoundId::negative_power_upper) {
      entry["strict_checked"] = b.strict_checked;
      entry["strict_violations"] = b.strict_violations;
    }
    if (b.worst) entry["worst"] = json{{"slack", b.worst->slack}, {"sample", b.worst->sample}, {"seed", b.worst->seed}};
    else entry["worst"] = nullptr;
    entry["failures"] = std::move(failures);
    bounds.push_back(std::move(entry));
  }
  json j{{"format_version", kFormatVersion},
         {"rng", std::string(SeededSampler::algorithm_id)},
         {"config", to_json(r.config)},
         {"total_failed", r.total_failed()},
         {"bounds", std::move(bounds)}};
  if (include_runtime)
    j["runtime"] = json{{"seconds", r.runtime.seconds}, {"samples", r.runtime.samples}, {"threads", r.runtime.threads}};
  return j;
}

}  // namespace monogamy::harness
