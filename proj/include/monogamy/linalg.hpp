#pragma once

// Dense complex linear algebra over small qubit registers.
//
// Ordering convention: the leftmost ket symbol is the most significant bit of
// the computational-basis index, so for a register (A, B, C) the amplitude of
// |100> sits at index 4 and qubit A is bit (n - 1).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <Eigen/Dense>

namespace monogamy {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxQubits = 12;
inline constexpr double kHermitianTol = 1e-10;

class QubitRegister {
 public:
  QubitRegister() = default;

  explicit QubitRegister(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw std::invalid_argument("register needs at least one qubit");
    if (labels_.size() > kMaxQubits)
      throw std::invalid_argument("register exceeds " + std::to_string(kMaxQubits) + " qubits");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
      if (l.empty()) throw std::invalid_argument("empty party label");
      if (!seen.insert(l).second) throw std::invalid_argument("duplicate party label '" + l + "'");
    }
  }

  // Labels A, B, C, ... for n qubits.
  static QubitRegister with_default_labels(std::size_t n) {
    if (n == 0 || n > kMaxQubits) throw std::invalid_argument("qubit count out of range");
    std::vector<std::string> labels;
    for (std::size_t q = 0; q < n; ++q) labels.emplace_back(1, static_cast<char>('A' + q));
    return QubitRegister(std::move(labels));
  }

  std::size_t num_qubits() const { return labels_.size(); }
  std::size_t dim() const { return std::size_t{1} << labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool contains(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
  }

  std::size_t position(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw std::invalid_argument("unknown party label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  // Bit of the basis index carrying this qubit.
  std::size_t bit(std::size_t position) const { return labels_.size() - 1 - position; }

  friend bool operator==(const QubitRegister&, const QubitRegister&) = default;

 private:
  std::vector<std::string> labels_;
};

namespace detail {

// Basis-index offsets contributed by every assignment of a qubit subset,
// enumerated with the subset's first qubit as most significant bit.
inline std::vector<std::size_t> subset_offsets(const QubitRegister& reg,
                                               const std::vector<std::size_t>& positions) {
  const std::size_t k = positions.size();
  std::vector<std::size_t> offsets(std::size_t{1} << k, 0);
  for (std::size_t a = 0; a < offsets.size(); ++a) {
    std::size_t full = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((a >> (k - 1 - j)) & 1u) full |= std::size_t{1} << reg.bit(positions[j]);
    }
    offsets[a] = full;
  }
  return offsets;
}

struct SplitPositions {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
};

inline SplitPositions split_positions(const QubitRegister& reg, std::span<const std::string> keep) {
  if (keep.empty()) throw std::invalid_argument("partial trace: keep set is empty");
  std::vector<bool> is_kept(reg.num_qubits(), false);
  for (const auto& label : keep) {
    const std::size_t p = reg.position(label);
    if (is_kept[p]) throw std::invalid_argument("partial trace: label '" + label + "' repeated");
    is_kept[p] = true;
  }
  if (keep.size() == reg.num_qubits())
    throw std::invalid_argument("partial trace: keep set must be a proper subset");
  SplitPositions s;
  for (std::size_t p = 0; p < reg.num_qubits(); ++p) (is_kept[p] ? s.kept : s.traced).push_back(p);
  return s;
}

inline QubitRegister subregister(const QubitRegister& reg, const std::vector<std::size_t>& positions) {
  std::vector<std::string> labels;
  labels.reserve(positions.size());
  for (auto p : positions) labels.push_back(reg.labels()[p]);
  return QubitRegister(std::move(labels));
}

}  // namespace detail

struct ReducedMatrix {
  ComplexMatrix matrix;
  QubitRegister reg;  // kept qubits in their original register order
};

inline double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs_entry(m));
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

/// Reduced density matrix on the labels in `keep`.
///
/// The kept qubits stay in register order regardless of the order of `keep`.
/// Throws std::invalid_argument on a dimension mismatch, an unknown label, or
/// an empty or full keep set.
inline ReducedMatrix partial_trace(const ComplexMatrix& rho, const QubitRegister& reg,
                                   std::span<const std::string> keep) {
  if (rho.rows() != static_cast<Eigen::Index>(reg.dim()) || rho.cols() != rho.rows())
    throw std::invalid_argument("partial trace: matrix dimension does not match register");
  const auto split = detail::split_positions(reg, keep);
  const auto kept = detail::subset_offsets(reg, split.kept);
  const auto traced = detail::subset_offsets(reg, split.traced);

  const auto dk = static_cast<Eigen::Index>(kept.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      cplx acc{0.0, 0.0};
      for (auto t : traced) acc += rho(kept[i] | t, kept[j] | t);
      out(i, j) = acc;
    }
  }
  return {std::move(out), detail::subregister(reg, split.kept)};
}

/// Reduced density matrix of a state vector, computed as M M^dagger with M the
/// amplitude array reshaped to (kept x traced).
inline ReducedMatrix partial_trace_pure(const ComplexVector& psi, const QubitRegister& reg,
                                        std::span<const std::string> keep) {
  if (psi.size() != static_cast<Eigen::Index>(reg.dim()))
    throw std::invalid_argument("partial trace: vector length does not match register");
  const auto split = detail::split_positions(reg, keep);
  const auto kept = detail::subset_offsets(reg, split.kept);
  const auto traced = detail::subset_offsets(reg, split.traced);

  ComplexMatrix m(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(traced.size()));
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t t = 0; t < traced.size(); ++t)
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) = psi(kept[a] | traced[t]);
  return {m * m.adjoint(), detail::subregister(reg, split.kept)};
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol = kHermitianTol) {
  if (!is_hermitian(m, tol)) throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: solver failed");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

inline EigenSystem hermitian_eigensystem(const ComplexMatrix& m, double tol = kHermitianTol) {
  if (!is_hermitian(m, tol)) throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigensystem: solver failed");
  const auto n = solver.eigenvalues().size();
  EigenSystem es;
  es.values.resize(static_cast<std::size_t>(n));
  es.vectors.resize(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    es.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
    es.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return es;
}

inline double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace monogamy
