#pragma once

// Monogamy inequalities for concurrence and entanglement of formation.
//
// A pure N-qubit state is viewed from a focus qubit A against the ordered
// parties B_1 .. B_{N-1}. Lower bounds compare C^a_{A|B_1..B_{N-1}} (or E^a)
// with a weighted sum of pairwise terms C^a_{AB_i}; the weighted variants
// only apply when the pairwise terms are ordered against the tail
// concurrences C_{A|B_{i+1}..B_{N-1}}.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "monogamy/linalg.hpp"
#include "monogamy/measures.hpp"
#include "monogamy/states.hpp"

namespace monogamy {

// Tolerance on the ordering comparisons; ties satisfy ">=".
inline constexpr double kConditionTol = 1e-12;
// Pairwise concurrences at or below this are dropped from the negative-power bound.
inline constexpr double kZeroConcurrence = 1e-12;
// Strictness of the negative-power bound is only judged when every retained term exceeds this.
inline constexpr double kStrictPairFloor = 1e-6;
inline constexpr double kStrictMargin = 1e-14;

enum class BoundId {
  ckw,                   // C^2 >= sum C_ABi^2
  alpha_power,           // C^a >= sum C_ABi^a (a >= 2); C^a <= sum C_ABi^a (a < 0)
  tripartite,            // C^a_{A|B1 rest} >= C^a_AB1 + (a/2) C^a_{A|rest}
  split_weighted,        // mixed ordering split at m, weights (a/2)^k
  ordered_weighted,      // fully ordered, weights (a/2)^{i-1}
  negative_power_upper,  // C^a < (1/k) sum of the k nonzero C_ABi^a, a < 0
  eof_alpha_power,       // E^a >= sum E_ABi^a (a >= sqrt2)
  eof_split_weighted,    // mixed ordering split at m, weights (a/sqrt2)^k
  eof_ordered_weighted,  // fully ordered, weights (a/sqrt2)^{i-1}
};

inline constexpr std::array<BoundId, 9> kAllBounds{
    BoundId::ckw,           BoundId::alpha_power,      BoundId::tripartite,
    BoundId::split_weighted, BoundId::ordered_weighted, BoundId::negative_power_upper,
    BoundId::eof_alpha_power, BoundId::eof_split_weighted, BoundId::eof_ordered_weighted};

inline std::string_view bound_name(BoundId id) {
  switch (id) {
    case BoundId::ckw: return "ckw";
    case BoundId::alpha_power: return "alpha-power";
    case BoundId::tripartite: return "tripartite";
    case BoundId::split_weighted: return "split";
    case BoundId::ordered_weighted: return "ordered";
    case BoundId::negative_power_upper: return "upper";
    case BoundId::eof_alpha_power: return "eof-alpha-power";
    case BoundId::eof_split_weighted: return "eof-split";
    case BoundId::eof_ordered_weighted: return "eof-ordered";
  }
  return "?";
}

inline std::optional<BoundId> parse_bound(std::string_view name) {
  for (auto id : kAllBounds)
    if (bound_name(id) == name) return id;
  return std::nullopt;
}

inline bool is_eof_bound(BoundId id) {
  return id == BoundId::eof_alpha_power || id == BoundId::eof_split_weighted || id == BoundId::eof_ordered_weighted;
}

inline bool alpha_in_range(BoundId id, double alpha) {
  if (!std::isfinite(alpha)) return false;
  switch (id) {
    case BoundId::ckw: return std::abs(alpha - 2.0) < 1e-12;
    case BoundId::alpha_power: return alpha >= 2.0 || alpha < 0.0;
    case BoundId::tripartite:
    case BoundId::split_weighted:
    case BoundId::ordered_weighted: return alpha >= 2.0;
    case BoundId::negative_power_upper: return alpha < 0.0;
    case BoundId::eof_alpha_power:
    case BoundId::eof_split_weighted:
    case BoundId::eof_ordered_weighted: return alpha >= std::numbers::sqrt2 - 1e-12;
  }
  return false;
}

struct BoundKind {
  BoundId id = BoundId::ckw;
  double alpha = 2.0;
  std::optional<std::size_t> m;  // split index; chosen automatically when empty

  bool upper_bound() const {
    return id == BoundId::negative_power_upper || (id == BoundId::alpha_power && alpha < 0.0);
  }

  void validate() const {
    if (!alpha_in_range(id, alpha))
      throw std::invalid_argument("bound '" + std::string(bound_name(id)) + "' does not accept alpha = " +
                                  std::to_string(alpha));
  }
};

/// Interval known to contain a quantity; lower == upper when computed exactly.
struct Estimate {
  double lower = 0.0;
  double upper = 0.0;

  static Estimate exact(double v) { return {v, v}; }
  bool is_exact() const { return lower == upper; }
  double value() const {
    if (!is_exact()) throw std::logic_error("estimate is only bracketed");
    return lower;
  }
};

enum class Tri { yes, no, unknown };
enum class Relation { ge, le };

struct ConditionRecord {
  std::size_t index = 0;  // i in C_{AB_i} versus C_{A|B_{i+1}..B_{N-1}}
  Relation required = Relation::ge;
  double pair = 0.0;
  Estimate tail;
  Tri outcome = Tri::unknown;
};

inline Tri compare(double pair, const Estimate& tail, Relation rel) {
  if (rel == Relation::ge) {
    if (pair >= tail.upper - kConditionTol) return Tri::yes;
    if (pair < tail.lower - kConditionTol) return Tri::no;
  } else {
    if (pair <= tail.lower + kConditionTol) return Tri::yes;
    if (pair > tail.upper + kConditionTol) return Tri::no;
  }
  return Tri::unknown;
}

enum class Applicability { applicable, not_applicable, indeterminate };

inline std::string_view applicability_name(Applicability a) {
  switch (a) {
    case Applicability::applicable: return "applicable";
    case Applicability::not_applicable: return "not_applicable";
    case Applicability::indeterminate: return "indeterminate";
  }
  return "?";
}

struct BoundReport {
  BoundKind kind;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs for lower bounds, rhs - lhs for upper bounds
  Applicability applicability = Applicability::applicable;
  std::string reason;
  std::vector<ConditionRecord> conditions;
  std::vector<double> coefficients;      // weight of each pairwise term in the rhs
  std::vector<std::size_t> dropped_terms;  // 1-based i of C_{AB_i} removed as zero
  bool strict_checked = false;
  bool strictly_satisfied = false;

  bool applicable() const { return applicability == Applicability::applicable; }
  bool upper_bound() const { return kind.upper_bound(); }
  bool violated(double tol) const { return applicable() && slack < -tol; }
  double residual() const { return lhs - rhs; }
};

// --- profile ----------------------------------------------------------------

/// Focus party and the ordered remaining parties B_1 .. B_{N-1}. Each party
/// is a group of qubit labels.
struct PartitionSpec {
  std::string focus;
  std::vector<std::vector<std::string>> rest;

  // focus (default: first qubit) against every other qubit in register order.
  static PartitionSpec natural(const QubitRegister& reg, std::optional<std::string> focus = std::nullopt) {
    PartitionSpec spec{focus.value_or(reg.labels().front()), {}};
    for (const auto& l : reg.labels())
      if (l != spec.focus) spec.rest.push_back({l});
    spec.validate(reg);
    return spec;
  }

  std::size_t num_parties() const { return rest.size() + 1; }

  void validate(const QubitRegister& reg) const {
    std::vector<bool> seen(reg.num_qubits(), false);
    const auto mark = [&](const std::string& l) {
      const auto p = reg.position(l);
      if (seen[p]) throw std::invalid_argument("partition: label '" + l + "' used twice");
      seen[p] = true;
    };
    mark(focus);
    for (const auto& party : rest) {
      if (party.empty()) throw std::invalid_argument("partition: empty party");
      for (const auto& l : party) mark(l);
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw std::invalid_argument("partition: parties must cover the register");
  }
};

/// Every concurrence and EoF value the bounds consume.
struct PairwiseProfile {
  std::vector<std::string> parties;  // A, B_1, ..., B_{N-1}
  double c_focus_rest = 0.0;         // C_{A|B_1..B_{N-1}}
  std::vector<double> c_pair;        // C_{AB_i}, i = 1..N-1
  std::vector<Estimate> c_tail;      // C_{A|B_{i+1}..B_{N-1}}, i = 1..N-2
  std::vector<double> e_pair;        // E_{AB_i}
  double e_focus_rest = 0.0;         // E_{A|B_1..B_{N-1}}

  std::size_t num_parties() const { return c_pair.size() + 1; }
};

struct ProfileOptions {
  std::size_t tail_trials = 64;  // decomposition search for bracketed tails; 0 leaves the upper end at 1
  std::uint64_t seed = 0x5eedULL;
};

/// Measures a pure state under `spec`.
///
/// Pairwise terms use the two-qubit closed form on the reductions, the focus
/// cut uses the pure-state formula. A tail C_{A|B_{i+1}..B_{N-1}} is exact
/// when it is a two-qubit reduction or when the reduction is pure; otherwise
/// it is bracketed between sqrt(sum of its pairwise C^2) and a
/// decomposition-search upper bound.
inline PairwiseProfile profile(const PureState& psi, const PartitionSpec& spec, const ProfileOptions& opts = {}) {
  spec.validate(psi.reg());
  if (spec.num_parties() < 3) throw std::invalid_argument("profile: need at least 3 parties");
  for (const auto& party : spec.rest)
    if (party.size() != 1) throw std::invalid_argument("profile: multi-qubit parties are not supported");

  const std::size_t n = spec.num_parties();
  PairwiseProfile p;
  p.parties.push_back(spec.focus);
  for (const auto& party : spec.rest) p.parties.push_back(party.front());

  const auto cut = Bipartition::of(psi.reg(), {spec.focus});
  p.c_focus_rest = std::min(1.0, concurrence_pure(psi, cut));
  p.e_focus_rest = std::min(1.0, eof_pure(psi, cut));

  for (std::size_t i = 1; i < n; ++i) {
    const std::vector<std::string> keep{spec.focus, p.parties[i]};
    const double c = concurrence_two_qubit_mixed(reduce(psi, keep));
    p.c_pair.push_back(c);
    p.e_pair.push_back(eof_from_squared_concurrence(c * c));
  }

  for (std::size_t i = 1; i + 1 < n; ++i) {
    std::vector<std::string> keep{spec.focus};
    keep.insert(keep.end(), p.parties.begin() + static_cast<std::ptrdiff_t>(i + 1), p.parties.end());
    const auto rho = reduce(psi, keep);
    if (keep.size() == 2) {
      p.c_tail.push_back(Estimate::exact(concurrence_two_qubit_mixed(rho)));
      continue;
    }
    const auto es = hermitian_eigensystem(rho.matrix());
    const auto tail_cut = Bipartition::of(rho.reg(), {spec.focus});
    if (es.values[1] <= kSupportCutoff) {
      const ComplexVector top = es.vectors.col(0).normalized();
      p.c_tail.push_back(Estimate::exact(std::min(1.0, concurrence_pure(top, rho.reg(), tail_cut))));
      continue;
    }
    double sq = 0.0;
    for (std::size_t k = i + 1; k < n; ++k) sq += p.c_pair[k - 1] * p.c_pair[k - 1];
    const double upper =
        opts.tail_trials == 0
            ? 1.0
            : std::min(1.0, convex_roof_upper_bound(rho, tail_cut, Measure::concurrence,
                                                    ConvexRoofOptions{opts.tail_trials, derive_seed(opts.seed, i), 2}));
    p.c_tail.push_back({std::min(std::sqrt(sq), upper), upper});
  }
  return p;
}

// --- coefficients -----------------------------------------------------------

/// Weights of C^a_{AB_1} .. C^a_{AB_{N-1}} in a lower bound over N parties.
/// tripartite has two weights: C^a_{AB_1} and the tail C^a_{A|B_2..}.
inline std::vector<double> lower_bound_coefficients(BoundId id, double alpha, std::size_t n,
                                                    std::optional<std::size_t> m = std::nullopt) {
  if (n < 3) throw std::invalid_argument("coefficients: need at least 3 parties");
  const std::size_t terms = n - 1;
  const double ratio = is_eof_bound(id) ? alpha / std::numbers::sqrt2 : alpha / 2.0;
  std::vector<double> w(terms, 1.0);
  switch (id) {
    case BoundId::ckw:
    case BoundId::alpha_power:
    case BoundId::eof_alpha_power: break;
    case BoundId::tripartite: w = {1.0, ratio}; break;
    case BoundId::ordered_weighted:
    case BoundId::eof_ordered_weighted:
      for (std::size_t i = 0; i < terms; ++i) w[i] = std::pow(ratio, static_cast<double>(i));
      break;
    case BoundId::split_weighted:
    case BoundId::eof_split_weighted: {
      if (n < 4) throw std::invalid_argument("split bound needs at least 4 parties");
      if (!m || *m < 1 || *m > n - 3) throw std::invalid_argument("split index m must satisfy 1 <= m <= N-3");
      const double mm = static_cast<double>(*m);
      for (std::size_t i = 1; i <= terms; ++i) {
        if (i <= *m) w[i - 1] = std::pow(ratio, static_cast<double>(i - 1));
        else if (i <= n - 2) w[i - 1] = std::pow(ratio, mm + 1.0);
        else w[i - 1] = std::pow(ratio, mm);
      }
      break;
    }
    case BoundId::negative_power_upper: throw std::invalid_argument("coefficients: not a lower bound");
  }
  return w;
}

// --- evaluation -------------------------------------------------------------

namespace detail {

inline double power(double base, double alpha) { return base <= 0.0 ? 0.0 : std::pow(base, alpha); }

inline Applicability combine(const std::vector<ConditionRecord>& conds) {
  bool unknown = false;
  for (const auto& c : conds) {
    if (c.outcome == Tri::no) return Applicability::not_applicable;
    if (c.outcome == Tri::unknown) unknown = true;
  }
  return unknown ? Applicability::indeterminate : Applicability::applicable;
}

// Conditions C_{AB_i} (rel_i) C_{A|B_{i+1}..}: ">=" for i <= m_ge, "<=" afterwards.
inline std::vector<ConditionRecord> ordering_conditions(const PairwiseProfile& p, std::size_t m_ge) {
  std::vector<ConditionRecord> conds;
  for (std::size_t i = 1; i + 1 < p.num_parties(); ++i) {
    ConditionRecord c;
    c.index = i;
    c.required = i <= m_ge ? Relation::ge : Relation::le;
    c.pair = p.c_pair[i - 1];
    c.tail = p.c_tail[i - 1];
    c.outcome = compare(c.pair, c.tail, c.required);
    conds.push_back(c);
  }
  return conds;
}

inline void check_profile(const PairwiseProfile& p) {
  const auto n = p.num_parties();
  if (n < 3 || p.e_pair.size() != n - 1 || p.c_tail.size() != n - 2)
    throw std::invalid_argument("profile is incomplete");
}

inline BoundReport weighted_sum(const PairwiseProfile& p, BoundKind kind) {
  const bool eof = is_eof_bound(kind.id);
  const auto& terms = eof ? p.e_pair : p.c_pair;
  const double alpha = kind.alpha;
  BoundReport r;
  r.lhs = power(eof ? p.e_focus_rest : p.c_focus_rest, alpha);

  const bool split = kind.id == BoundId::split_weighted || kind.id == BoundId::eof_split_weighted;
  const bool ordered = kind.id == BoundId::ordered_weighted || kind.id == BoundId::eof_ordered_weighted;
  const std::size_t n = p.num_parties();
  if (split) {
    if (n < 4) throw std::invalid_argument("split bound needs at least 4 parties");
    if (kind.m) {
      if (*kind.m < 1 || *kind.m > n - 3) throw std::invalid_argument("split index m must satisfy 1 <= m <= N-3");
      r.conditions = ordering_conditions(p, *kind.m);
      r.applicability = combine(r.conditions);
    } else {
      // Largest admissible m; fall back to the largest undecided one, else N-3.
      std::optional<std::size_t> undecided;
      for (std::size_t m = n - 3; m >= 1 && !kind.m; --m) {
        const auto conds = ordering_conditions(p, m);
        const auto a = combine(conds);
        if (a == Applicability::applicable) kind.m = m;
        else if (a == Applicability::indeterminate && !undecided) undecided = m;
      }
      if (!kind.m) kind.m = undecided.value_or(n - 3);
      r.conditions = ordering_conditions(p, *kind.m);
      r.applicability = combine(r.conditions);
    }
  } else if (ordered) {
    r.conditions = ordering_conditions(p, n - 2);
    r.applicability = combine(r.conditions);
  }
  r.kind = kind;
  r.coefficients = lower_bound_coefficients(kind.id, alpha, n, kind.m);
  for (std::size_t i = 0; i < terms.size(); ++i) r.rhs += r.coefficients[i] * power(terms[i], alpha);
  if (r.applicability == Applicability::not_applicable) r.reason = "ordering conditions fail";
  if (r.applicability == Applicability::indeterminate) r.reason = "tail concurrence only bracketed";
  return r;
}

}  // namespace detail

namespace detail {

// Negative-power upper bounds over the k nonzero pairwise terms, with weight
// 1/k (mean) or 1 (plain sum). Zero terms would contribute +infinity.
inline BoundReport negative_power_report(const PairwiseProfile& p, const BoundKind& kind, bool mean) {
  BoundReport r;
  r.kind = kind;
  const double alpha = kind.alpha;
  r.coefficients.assign(p.c_pair.size(), 0.0);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < p.c_pair.size(); ++i) {
    if (p.c_pair[i] > kZeroConcurrence) kept.push_back(i);
    else r.dropped_terms.push_back(i + 1);
  }
  if (p.c_focus_rest <= kZeroConcurrence) {
    r.applicability = Applicability::not_applicable;
    r.reason = "C_A|rest = 0; negative power undefined";
    r.lhs = std::numeric_limits<double>::infinity();
    r.rhs = std::numeric_limits<double>::infinity();
    return r;
  }
  r.lhs = std::pow(p.c_focus_rest, alpha);
  if (kept.empty()) {
    r.applicability = Applicability::not_applicable;
    r.reason = "all pairwise concurrences vanish";
    r.rhs = std::numeric_limits<double>::infinity();
    return r;
  }
  const double weight = mean ? 1.0 / static_cast<double>(kept.size()) : 1.0;
  bool above_floor = true;
  for (auto i : kept) {
    r.coefficients[i] = weight;
    r.rhs += weight * std::pow(p.c_pair[i], alpha);
    above_floor = above_floor && p.c_pair[i] > kStrictPairFloor;
  }
  if (!r.dropped_terms.empty()) r.reason = "zero pairwise terms dropped";
  r.slack = r.rhs - r.lhs;
  r.strict_checked = above_floor;
  r.strictly_satisfied = r.lhs <= r.rhs - kStrictMargin;
  return r;
}

}  // namespace detail

/// Concurrence lower bounds: ckw, alpha-power, tripartite, split, ordered.
/// alpha-power with alpha < 0 is reported as the matching upper bound
/// C^a <= sum of the nonzero C_ABi^a.
inline BoundReport eval_lower_bound(const PairwiseProfile& p, BoundKind kind) {
  detail::check_profile(p);
  if (kind.id == BoundId::negative_power_upper || is_eof_bound(kind.id))
    throw std::invalid_argument("eval_lower_bound: not a concurrence lower bound");
  kind.validate();
  if (kind.upper_bound()) return detail::negative_power_report(p, kind, false);

  BoundReport r;
  if (kind.id == BoundId::tripartite) {
    r.kind = kind;
    const double alpha = kind.alpha;
    const Estimate& tail = p.c_tail.front();
    ConditionRecord c{1, Relation::ge, p.c_pair.front(), tail, compare(p.c_pair.front(), tail, Relation::ge)};
    r.conditions = {c};
    r.coefficients = lower_bound_coefficients(kind.id, alpha, p.num_parties());
    r.lhs = detail::power(p.c_focus_rest, alpha);
    r.rhs = detail::power(p.c_pair.front(), alpha) + r.coefficients[1] * detail::power(tail.upper, alpha);
    r.applicability = detail::combine(r.conditions);
    if (!tail.is_exact() && r.applicability == Applicability::applicable) {
      r.applicability = Applicability::indeterminate;
      r.reason = "tail concurrence only bracketed; rhs uses its upper end";
    } else if (r.applicability == Applicability::not_applicable) {
      r.reason = "C_AB1 < C_A|rest";
    }
  } else {
    r = detail::weighted_sum(p, kind);
  }
  r.slack = r.lhs - r.rhs;
  return r;
}

/// EoF lower bounds; applicability is decided on concurrences.
inline BoundReport eval_eof_bound(const PairwiseProfile& p, BoundKind kind) {
  detail::check_profile(p);
  if (!is_eof_bound(kind.id)) throw std::invalid_argument("eval_eof_bound: not an EoF bound");
  kind.validate();
  auto r = detail::weighted_sum(p, kind);
  r.slack = r.lhs - r.rhs;
  return r;
}

/// C^a_{A|B_1..B_{N-1}} < (1/k) sum C^a_{AB_i} over the k nonzero pairwise terms, a < 0.
inline BoundReport eval_negative_power_upper(const PairwiseProfile& p, double alpha) {
  detail::check_profile(p);
  BoundKind kind{BoundId::negative_power_upper, alpha, std::nullopt};
  kind.validate();
  return detail::negative_power_report(p, kind, true);
}

/// Dispatches on the bound family.
inline BoundReport evaluate(const PairwiseProfile& p, const BoundKind& kind) {
  if (kind.id == BoundId::negative_power_upper) return eval_negative_power_upper(p, kind.alpha);
  if (is_eof_bound(kind.id)) return eval_eof_bound(p, kind);
  return eval_lower_bound(p, kind);
}

// --- residual sweeps --------------------------------------------------------

struct SweepPoint {
  double alpha = 0.0;
  double y1 = 0.0;  // tightened bound residual lhs - rhs
  double y2 = 0.0;  // baseline residual lhs - rhs
  Applicability applicability = Applicability::applicable;  // of the tightened bound
};

struct AlphaSweep {
  BoundId tightened = BoundId::tripartite;
  BoundId baseline = BoundId::alpha_power;
  std::vector<SweepPoint> points;
};

/// Grid min, min + step, ... up to max (inclusive within 1e-9 steps).
inline std::vector<double> alpha_grid(double min, double max, double step) {
  if (!(step > 0.0) || !(max >= min) || !std::isfinite(min) || !std::isfinite(max))
    throw std::invalid_argument("alpha grid: need step > 0 and max >= min");
  const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = min + static_cast<double>(i) * step;
  return grid;
}

inline AlphaSweep residual_sweep(const PairwiseProfile& p, BoundKind tightened, BoundKind baseline,
                                 const std::vector<double>& alphas) {
  if (alphas.empty()) throw std::invalid_argument("residual_sweep: empty alpha grid");
  AlphaSweep sweep{tightened.id, baseline.id, {}};
  sweep.points.reserve(alphas.size());
  for (double a : alphas) {
    tightened.alpha = a;
    baseline.alpha = a;
    const auto t = evaluate(p, tightened);
    const auto b = evaluate(p, baseline);
    sweep.points.push_back({a, t.residual(), b.residual(), t.applicability});
  }
  return sweep;
}

}  // namespace monogamy
