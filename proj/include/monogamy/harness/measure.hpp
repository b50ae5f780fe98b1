#pragma once

// `measure` command: every quantity the bounds consume, as JSON.

#include <optional>
#include <string>
#include <vector>

#include "monogamy/bounds.hpp"
#include "monogamy/harness/io.hpp"
#include "monogamy/measures.hpp"

namespace monogamy::harness {

inline PartitionSpec partition_for(const QubitRegister& reg, const std::optional<std::string>& focus,
                                   const std::vector<std::string>& order) {
  try {
    if (order.empty()) return PartitionSpec::natural(reg, focus);
    PartitionSpec spec{focus.value_or(reg.labels().front()), {}};
    for (const auto& l : order) spec.rest.push_back({l});
    spec.validate(reg);
    return spec;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

/// Pure inputs: the full profile. Mixed inputs: pairwise terms exactly, and
/// the focus cut as an interval between sqrt(sum C_ABi^2) and a
/// decomposition-search upper bound (exact for two qubits).
inline json measure_json(const StateFile& file, const PartitionSpec& spec, const std::vector<BoundKind>& kinds = {},
                         std::size_t trials = 200, std::uint64_t seed = 1) {
  if (file.is_pure()) {
    const auto psi = file.pure_state();
    if (spec.num_parties() == 2) {
      const auto cut = Bipartition::of(psi.reg(), {spec.focus});
      return json{{"format_version", kFormatVersion}, {"kind", "pure"},
                  {"concurrence", concurrence_pure(psi, cut)}, {"eof", eof_pure(psi, cut)}};
    }
    const auto prof = profile(psi, spec, ProfileOptions{64, seed});
    json j = to_json(prof);
    j["kind"] = "pure";
    if (!kinds.empty()) {
      json reports = json::array();
      for (const auto& k : kinds) reports.push_back(to_json(evaluate(prof, k)));
      j["bounds"] = std::move(reports);
    }
    return j;
  }

  const auto rho = file.density();
  if (!kinds.empty()) throw ConfigError("bounds need a pure state file");
  if (rho.num_qubits() == 2) {
    return json{{"format_version", kFormatVersion}, {"kind", "mixed"},
                {"concurrence", concurrence_two_qubit_mixed(rho)}, {"eof", eof_two_qubit_mixed(rho)}};
  }
  std::vector<double> c_pair, e_pair;
  double sq = 0.0;
  for (const auto& party : spec.rest) {
    if (party.size() != 1) throw ConfigError("multi-qubit parties are not supported");
    const std::vector<std::string> keep{spec.focus, party.front()};
    const double c = concurrence_two_qubit_mixed(rho.reduce(keep));
    c_pair.push_back(c);
    e_pair.push_back(eof_from_squared_concurrence(c * c));
    sq += c * c;
  }
  const auto cut = Bipartition::of(rho.reg(), {spec.focus});
  const double upper = std::min(
      1.0, convex_roof_upper_bound(rho, cut, Measure::concurrence, ConvexRoofOptions{trials, seed, 2}));
  json parties = json::array({spec.focus});
  for (const auto& party : spec.rest) parties.push_back(party.front());
  return json{{"format_version", kFormatVersion},
              {"kind", "mixed"},
              {"parties", std::move(parties)},
              {"c_focus_rest", to_json(Estimate{std::min(std::sqrt(sq), upper), upper})},
              {"c_pair", c_pair},
              {"e_pair", e_pair},
              {"indeterminate_tails", true}};
}

}  // namespace monogamy::harness
