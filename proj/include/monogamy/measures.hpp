#pragma once

// Concurrence and entanglement of formation.
//
// All logarithms are base 2, so entanglement of formation is in ebits.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "monogamy/linalg.hpp"
#include "monogamy/states.hpp"

namespace monogamy {

inline constexpr double kProbabilityTol = 1e-10;

// Eigenvalues of rho at or below this are treated as outside its support.
inline constexpr double kSupportCutoff = 1e-14;

struct Bipartition {
  std::vector<std::string> side_a;
  std::vector<std::string> side_b;

  // side_a versus every other qubit of the register.
  static Bipartition of(const QubitRegister& reg, std::vector<std::string> side_a) {
    Bipartition cut{std::move(side_a), {}};
    for (const auto& l : reg.labels())
      if (std::find(cut.side_a.begin(), cut.side_a.end(), l) == cut.side_a.end()) cut.side_b.push_back(l);
    cut.validate(reg);
    return cut;
  }

  void validate(const QubitRegister& reg) const {
    if (side_a.empty() || side_b.empty()) throw std::invalid_argument("bipartition: both sides must be nonempty");
    if (side_a.size() + side_b.size() != reg.num_qubits())
      throw std::invalid_argument("bipartition: sides must cover the register");
    std::vector<bool> seen(reg.num_qubits(), false);
    for (const auto* side : {&side_a, &side_b}) {
      for (const auto& l : *side) {
        const auto p = reg.position(l);
        if (seen[p]) throw std::invalid_argument("bipartition: label '" + l + "' appears twice");
        seen[p] = true;
      }
    }
  }

  // The side with fewer qubits; its reduced state has the same spectrum as the other.
  const std::vector<std::string>& smaller_side() const {
    return side_a.size() <= side_b.size() ? side_a : side_b;
  }
};

// --- scalar functions -------------------------------------------------------

/// H(p) = -p log2 p - (1-p) log2 (1-p), with H(0) = H(1) = 0.
inline double binary_entropy(double p) {
  if (!(p >= -kProbabilityTol && p <= 1.0 + kProbabilityTol))
    throw std::domain_error("binary_entropy: p outside [0, 1]");
  p = clamp_probability(p);
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

/// f(x) = H((1 + sqrt(1 - x)) / 2); maps squared concurrence to entanglement of formation.
inline double eof_from_squared_concurrence(double x) {
  if (!(x >= -kProbabilityTol && x <= 1.0 + kProbabilityTol))
    throw std::domain_error("eof_from_squared_concurrence: x outside [0, 1]");
  x = clamp_probability(x);
  return binary_entropy((1.0 + std::sqrt(1.0 - x)) / 2.0);
}

inline double f_of(double x) { return eof_from_squared_concurrence(x); }

/// Von Neumann entropy in bits of a spectrum; entries are clamped to [0, 1].
inline double von_neumann_entropy(const std::vector<double>& eigenvalues) {
  double s = 0.0;
  for (double v : eigenvalues) {
    const double p = clamp_probability(v);
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

// --- pure states ------------------------------------------------------------

namespace detail {

inline void require_normalized(const ComplexVector& v) {
  if (std::abs(v.squaredNorm() - 1.0) > kNormTol) throw std::invalid_argument("state is not normalized");
}

inline double concurrence_from_purity(double purity) { return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity))); }

}  // namespace detail

/// C = sqrt(2 (1 - Tr rho_A^2)) across `cut`.
inline double concurrence_pure(const ComplexVector& psi, const QubitRegister& reg, const Bipartition& cut) {
  detail::require_normalized(psi);
  cut.validate(reg);
  const auto r = partial_trace_pure(psi, reg, cut.smaller_side());
  return detail::concurrence_from_purity(r.matrix.squaredNorm());
}

inline double concurrence_pure(const PureState& psi, const Bipartition& cut) {
  return concurrence_pure(psi.amplitudes(), psi.reg(), cut);
}

/// Entanglement entropy S(rho_A) in bits across `cut`.
inline double eof_pure(const ComplexVector& psi, const QubitRegister& reg, const Bipartition& cut) {
  detail::require_normalized(psi);
  cut.validate(reg);
  const auto r = partial_trace_pure(psi, reg, cut.smaller_side());
  return von_neumann_entropy(hermitian_eigenvalues(r.matrix));
}

inline double eof_pure(const PureState& psi, const Bipartition& cut) {
  return eof_pure(psi.amplitudes(), psi.reg(), cut);
}

// --- two-qubit mixed states -------------------------------------------------

/// Descending spin-flip singular values mu_1 >= ... >= mu_4 of a two-qubit state.
///
/// With rho = sum_k lambda_k |e_k><e_k| over its support and
/// v_k = sqrt(lambda_k) e_k, the mu_i are the singular values of the complex
/// symmetric matrix tau_jk = v_j^T (sy x sy) v_k, which coincide with the
/// square roots of the eigenvalues of rho (sy x sy) rho^* (sy x sy).
inline std::array<double, 4> spin_flip_values(const DensityMatrix& rho) {
  if (rho.num_qubits() != 2) throw std::invalid_argument("two-qubit measure needs a 4x4 density matrix");
  const auto es = hermitian_eigensystem(rho.matrix());
  std::vector<ComplexVector> support;
  for (std::size_t k = 0; k < es.values.size(); ++k)
    if (es.values[k] > kSupportCutoff)
      support.push_back(std::sqrt(es.values[k]) * es.vectors.col(static_cast<Eigen::Index>(k)));

  // sy x sy = antidiag(-1, 1, 1, -1)
  const auto flip = [](const ComplexVector& v) {
    ComplexVector out(4);
    out << -v(3), v(2), v(1), -v(0);
    return out;
  };
  const auto r = static_cast<Eigen::Index>(support.size());
  ComplexMatrix tau(r, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    const ComplexVector fj = flip(support[static_cast<std::size_t>(j)]);
    for (Eigen::Index k = 0; k < r; ++k) tau(j, k) = fj.transpose() * support[static_cast<std::size_t>(k)];
  }
  std::array<double, 4> mu{0.0, 0.0, 0.0, 0.0};
  if (r == 0) return mu;
  Eigen::JacobiSVD<ComplexMatrix> svd(tau);
  const auto& sv = svd.singularValues();  // descending
  for (Eigen::Index i = 0; i < sv.size() && i < 4; ++i) mu[static_cast<std::size_t>(i)] = std::max(0.0, sv(i));
  return mu;
}

/// Wootters concurrence max(0, mu1 - mu2 - mu3 - mu4).
inline double concurrence_two_qubit_mixed(const DensityMatrix& rho) {
  const auto mu = spin_flip_values(rho);
  return std::clamp(mu[0] - mu[1] - mu[2] - mu[3], 0.0, 1.0);
}

inline double eof_two_qubit_mixed(const DensityMatrix& rho) {
  const double c = concurrence_two_qubit_mixed(rho);
  return eof_from_squared_concurrence(c * c);
}

// --- convex roof by decomposition search -------------------------------------

enum class Measure { concurrence, entanglement_of_formation };

inline double pure_measure(const ComplexVector& psi, const QubitRegister& reg, const Bipartition& cut,
                           Measure measure) {
  return measure == Measure::concurrence ? concurrence_pure(psi, reg, cut) : eof_pure(psi, reg, cut);
}

struct ConvexRoofOptions {
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  std::size_t extra_columns = 2;  // decompositions of up to rank + extra_columns states
};

/// Upper bound on the convex roof of `measure` for rho across `cut`.
///
/// Every pure-state decomposition of rho with K members is
/// w_j = sum_k U_jk sqrt(lambda_k) e_k for a K x K unitary U restricted to its
/// first rank(rho) columns. The search evaluates the spectral decomposition
/// and then unitaries drawn at random: half Haar-random, half local
/// perturbations of the best one found so far. The result is the smallest
/// decomposition average seen, so it can only overestimate the true minimum.
inline double convex_roof_upper_bound(const DensityMatrix& rho, const Bipartition& cut, Measure measure,
                                      const ConvexRoofOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("convex_roof_upper_bound: trials must be >= 1");
  cut.validate(rho.reg());
  const auto es = hermitian_eigensystem(rho.matrix());
  std::vector<ComplexVector> support;
  for (std::size_t k = 0; k < es.values.size(); ++k)
    if (es.values[k] > kSupportCutoff)
      support.push_back(std::sqrt(es.values[k]) * es.vectors.col(static_cast<Eigen::Index>(k)));
  const std::size_t rank = support.size();
  if (rank == 0) throw std::invalid_argument("convex_roof_upper_bound: zero matrix");

  const auto average = [&](const ComplexMatrix& u) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < u.rows(); ++j) {
      ComplexVector w = ComplexVector::Zero(static_cast<Eigen::Index>(rho.reg().dim()));
      for (std::size_t k = 0; k < rank; ++k) w += u(j, static_cast<Eigen::Index>(k)) * support[k];
      const double p = w.squaredNorm();
      if (p <= 1e-300) continue;
      total += p * pure_measure(w / std::sqrt(p), rho.reg(), cut, measure);
    }
    return total;
  };

  double best = average(ComplexMatrix::Identity(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(rank)));
  if (rank == 1) return best;

  SeededSampler sampler(opts.seed);
  ComplexMatrix best_u = ComplexMatrix::Identity(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(rank));
  const std::size_t global = opts.trials / 2;
  for (std::size_t t = 1; t < opts.trials; ++t) {
    ComplexMatrix u;
    if (t <= global) {
      const std::size_t cols = rank + static_cast<std::size_t>(sampler.uniform() * double(opts.extra_columns + 1));
      u = haar_unitary(cols, sampler);
    } else {
      // Near-identity rotation of the incumbent, shrinking as the search proceeds.
      const double step = 0.3 * (1.0 - double(t - global) / double(opts.trials - global + 1));
      const auto n = best_u.rows();
      ComplexMatrix g(n, n);
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) g(i, j) = sampler.complex_normal();
      const ComplexMatrix h = step * 0.5 * (g + g.adjoint());
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
      const ComplexVector phases = (eig.eigenvalues().cast<cplx>() * cplx{0.0, 1.0}).array().exp();
      const ComplexMatrix rot = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
      u = rot * best_u;
    }
    const double value = average(u);
    if (value < best) {
      best = value;
      best_u = u;
    }
  }
  return best;
}

inline double convex_roof_upper_bound(const DensityMatrix& rho, Measure measure, std::size_t trials,
                                      std::uint64_t seed) {
  if (rho.num_qubits() != 2) throw std::invalid_argument("convex_roof_upper_bound: expected two qubits");
  return convex_roof_upper_bound(rho, Bipartition::of(rho.reg(), {rho.reg().labels()[0]}), measure,
                                 ConvexRoofOptions{trials, seed, 2});
}

}  // namespace monogamy
