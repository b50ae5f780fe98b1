#pragma once

// State files, CSV sweeps and JSON views of profiles and reports.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "monogamy/bounds.hpp"
#include "monogamy/measures.hpp"
#include "monogamy/states.hpp"

namespace monogamy::harness {

using json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

/// Bad command-line or campaign configuration (exit status 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file (exit status 2).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- state files ------------------------------------------------------------

struct StateFile {
  std::string format_version = kFormatVersion;
  std::size_t num_qubits = 0;
  std::vector<std::string> labels;              // optional; defaults to A, B, C, ...
  std::optional<std::vector<cplx>> amplitudes;  // 2^n, most significant qubit first
  std::optional<std::vector<cplx>> density_matrix;  // 4^n, row-major

  bool is_pure() const { return amplitudes.has_value(); }

  QubitRegister reg() const {
    return labels.empty() ? QubitRegister::with_default_labels(num_qubits) : QubitRegister(labels);
  }

  PureState pure_state() const {
    if (!amplitudes) throw FormatError("state file holds a density matrix, not amplitudes");
    ComplexVector v(static_cast<Eigen::Index>(amplitudes->size()));
    for (std::size_t i = 0; i < amplitudes->size(); ++i) v(static_cast<Eigen::Index>(i)) = (*amplitudes)[i];
    return PureState(reg(), v);
  }

  DensityMatrix density() const {
    if (amplitudes) return DensityMatrix(pure_state());
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    ComplexMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) m(i, j) = (*density_matrix)[static_cast<std::size_t>(i * d + j)];
    return DensityMatrix(reg(), m);
  }
};

namespace detail {

inline std::vector<cplx> complex_list(const json& j, std::size_t expected, const char* field) {
  if (!j.is_array()) throw FormatError(std::string(field) + " must be an array");
  if (j.size() != expected)
    throw FormatError(std::string(field) + " must have " + std::to_string(expected) + " entries");
  std::vector<cplx> out;
  out.reserve(expected);
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw FormatError(std::string(field) + " entries must be [real, imag] pairs");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

inline json complex_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

}  // namespace detail

inline StateFile parse_state_file(const json& j) {
  if (!j.is_object()) throw FormatError("state file must be a JSON object");
  StateFile s;
  if (!j.contains("format_version") || !j["format_version"].is_string())
    throw FormatError("state file needs a string format_version");
  s.format_version = j["format_version"].get<std::string>();
  if (s.format_version != kFormatVersion)
    throw FormatError("unsupported format_version '" + s.format_version + "'");
  if (!j.contains("num_qubits") || !j["num_qubits"].is_number_integer())
    throw FormatError("state file needs a positive integer num_qubits");
  const auto n = j["num_qubits"].get<std::int64_t>();
  if (n < 1 || n > static_cast<std::int64_t>(kMaxQubits)) throw FormatError("num_qubits out of range 1..12");
  s.num_qubits = static_cast<std::size_t>(n);
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw FormatError("labels must be an array of strings");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw FormatError("labels must be an array of strings");
      s.labels.push_back(l.get<std::string>());
    }
    if (s.labels.size() != s.num_qubits) throw FormatError("labels must have num_qubits entries");
  }
  const bool has_amp = j.contains("amplitudes");
  const bool has_rho = j.contains("density_matrix");
  if (has_amp == has_rho) throw FormatError("exactly one of amplitudes / density_matrix is required");
  const std::size_t dim = std::size_t{1} << s.num_qubits;
  if (has_amp) s.amplitudes = detail::complex_list(j["amplitudes"], dim, "amplitudes");
  else s.density_matrix = detail::complex_list(j["density_matrix"], dim * dim, "density_matrix");
  try {
    (void)s.reg();
    if (s.is_pure()) (void)s.pure_state();
    else (void)s.density();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return s;
}

inline StateFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open state file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("state file '" + path + "': " + e.what());
  }
  return parse_state_file(j);
}

inline json to_json(const StateFile& s) {
  json j;
  j["format_version"] = s.format_version;
  j["num_qubits"] = s.num_qubits;
  if (!s.labels.empty()) j["labels"] = s.labels;
  const auto* list = s.amplitudes ? &*s.amplitudes : &*s.density_matrix;
  json arr = json::array();
  for (const auto& z : *list) arr.push_back(detail::complex_json(z));
  j[s.amplitudes ? "amplitudes" : "density_matrix"] = std::move(arr);
  return j;
}

inline StateFile state_file_of(const PureState& psi) {
  StateFile s;
  s.num_qubits = psi.num_qubits();
  s.labels = psi.reg().labels();
  std::vector<cplx> amps(psi.amplitudes().data(), psi.amplitudes().data() + psi.amplitudes().size());
  s.amplitudes = std::move(amps);
  return s;
}

// --- CSV --------------------------------------------------------------------

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// alpha,y1,y2 with 17 significant digits per value.
inline void write_sweep_csv(std::ostream& out, const AlphaSweep& sweep) {
  out << "alpha,y1,y2\n";
  for (const auto& p : sweep.points)
    out << format_double(p.alpha) << ',' << format_double(p.y1) << ',' << format_double(p.y2) << '\n';
}

inline std::string sweep_csv(const AlphaSweep& sweep) {
  std::ostringstream os;
  write_sweep_csv(os, sweep);
  return os.str();
}

// --- JSON views -------------------------------------------------------------

inline json to_json(const Estimate& e) {
  return json{{"lower", e.lower}, {"upper", e.upper}, {"exact", e.is_exact()}};
}

inline json to_json(const PairwiseProfile& p) {
  json tails = json::array();
  bool indeterminate = false;
  for (const auto& t : p.c_tail) {
    tails.push_back(to_json(t));
    indeterminate = indeterminate || !t.is_exact();
  }
  return json{{"format_version", kFormatVersion},
              {"parties", p.parties},
              {"c_focus_rest", p.c_focus_rest},
              {"c_pair", p.c_pair},
              {"c_tail", std::move(tails)},
              {"e_focus_rest", p.e_focus_rest},
              {"e_pair", p.e_pair},
              {"indeterminate_tails", indeterminate}};
}

inline json to_json(const BoundReport& r) {
  json conds = json::array();
  for (const auto& c : r.conditions) {
    conds.push_back(json{{"i", c.index},
                         {"required", c.required == Relation::ge ? ">=" : "<="},
                         {"c_pair", c.pair},
                         {"c_tail", to_json(c.tail)},
                         {"holds", c.outcome == Tri::yes ? "yes" : c.outcome == Tri::no ? "no" : "unknown"}});
  }
  json j{{"bound", std::string(bound_name(r.kind.id))},
         {"alpha", r.kind.alpha},
         {"upper_bound", r.upper_bound()},
         {"lhs", r.lhs},
         {"rhs", r.rhs},
         {"slack", r.slack},
         {"applicability", std::string(applicability_name(r.applicability))},
         {"coefficients", r.coefficients},
         {"conditions", std::move(conds)}};
  if (r.kind.m) j["m"] = *r.kind.m;
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (!r.dropped_terms.empty()) j["dropped_terms"] = r.dropped_terms;
  if (r.kind.id == BoundId::negative_power_upper) {
    j["strict_checked"] = r.strict_checked;
    j["strictly_satisfied"] = r.strictly_satisfied;
  }
  return j;
}

}  // namespace monogamy::harness
