#pragma once

// The three worked examples: state construction -> profile -> residual sweep.
//
//   1  five equal Schmidt amplitudes, tripartite weighted bound vs alpha-power, alpha >= 2
//   2  same state, negative-power upper bound vs alpha-power, alpha < 0
//   3  three-qubit W state, ordered EoF bound vs EoF alpha-power, alpha >= sqrt2

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "monogamy/bounds.hpp"
#include "monogamy/harness/io.hpp"
#include "monogamy/states.hpp"

namespace monogamy::harness {

struct ExampleRun {
  int id = 0;
  PairwiseProfile profile;
  AlphaSweep sweep;
};

inline void check_example_id(int id) {
  if (id < 1 || id > 3) throw ConfigError("example id must be 1, 2 or 3");
}

inline PureState example_state(int id) {
  check_example_id(id);
  if (id == 3) return w_state(3);
  const double l = std::sqrt(5.0) / 5.0;
  return generalized_schmidt(SchmidtParams{{l, l, l, l, l}, 0.0});
}

inline std::pair<BoundKind, BoundKind> example_bounds(int id) {
  check_example_id(id);
  switch (id) {
    case 1: return {{BoundId::tripartite, 2.0, {}}, {BoundId::alpha_power, 2.0, {}}};
    case 2: return {{BoundId::negative_power_upper, -1.0, {}}, {BoundId::alpha_power, -1.0, {}}};
    default:
      return {{BoundId::eof_ordered_weighted, std::numbers::sqrt2, {}},
              {BoundId::eof_alpha_power, std::numbers::sqrt2, {}}};
  }
}

inline std::vector<double> default_example_grid(int id) {
  check_example_id(id);
  switch (id) {
    case 1: return alpha_grid(2.0, 5.0, 0.05);
    case 2: return alpha_grid(-5.0, -0.05, 0.05);
    default: return alpha_grid(std::numbers::sqrt2, 4.0, 0.05);
  }
}

inline void check_example_grid(int id, const std::vector<double>& grid) {
  check_example_id(id);
  if (grid.empty()) throw ConfigError("alpha grid is empty");
  const auto [tight, base] = example_bounds(id);
  for (double a : grid) {
    if (!alpha_in_range(tight.id, a) || !alpha_in_range(base.id, a)) {
      const char* range = id == 1 ? "alpha >= 2" : id == 2 ? "alpha < 0" : "alpha >= sqrt(2)";
      throw ConfigError("example " + std::to_string(id) + " needs " + range + "; got " + format_double(a));
    }
  }
}

inline ExampleRun run_example(int id, const std::vector<double>& grid) {
  check_example_grid(id, grid);
  const auto psi = example_state(id);
  ExampleRun run;
  run.id = id;
  run.profile = profile(psi, PartitionSpec::natural(psi.reg()));
  const auto [tight, base] = example_bounds(id);
  run.sweep = residual_sweep(run.profile, tight, base, grid);
  return run;
}

inline std::string example_summary(const ExampleRun& run) {
  std::ostringstream os;
  const auto& p = run.profile;
  os << "example " << run.id << ": " << (run.id == 3 ? "W state" : "generalized Schmidt, lambda_i = sqrt(5)/5")
     << '\n';
  os << "  C_A|BC = " << format_double(p.c_focus_rest) << "  C_AB = " << format_double(p.c_pair[0])
     << "  C_AC = " << format_double(p.c_pair[1]) << '\n';
  os << "  E_A|BC = " << format_double(p.e_focus_rest) << "  E_AB = " << format_double(p.e_pair[0])
     << "  E_AC = " << format_double(p.e_pair[1]) << '\n';
  os << "  y1: " << bound_name(run.sweep.tightened) << ", y2: " << bound_name(run.sweep.baseline) << ", "
     << run.sweep.points.size() << " alpha values\n";
  return os.str();
}

}  // namespace monogamy::harness
