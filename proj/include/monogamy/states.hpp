#pragma once

// Pure and mixed multi-qubit states, the constructors used by the worked
// examples, and seeded samplers for fuzzing.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "monogamy/linalg.hpp"

namespace monogamy {

inline constexpr double kNormTol = 1e-10;

class PureState {
 public:
  PureState(QubitRegister reg, ComplexVector amplitudes)
      : reg_(std::move(reg)), amps_(std::move(amplitudes)) {
    if (amps_.size() != static_cast<Eigen::Index>(reg_.dim()))
      throw std::invalid_argument("pure state: expected " + std::to_string(reg_.dim()) + " amplitudes");
    if (std::abs(amps_.squaredNorm() - 1.0) > kNormTol)
      throw std::invalid_argument("pure state: amplitudes are not normalized");
  }

  // Rescales the amplitudes before validating; rejects the zero vector.
  static PureState normalized(QubitRegister reg, ComplexVector amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("pure state: cannot normalize zero vector");
    return PureState(std::move(reg), amplitudes / n);
  }

  const QubitRegister& reg() const { return reg_; }
  const ComplexVector& amplitudes() const { return amps_; }
  std::size_t num_qubits() const { return reg_.num_qubits(); }

  ComplexMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  QubitRegister reg_;
  ComplexVector amps_;
};

class DensityMatrix {
 public:
  DensityMatrix(QubitRegister reg, ComplexMatrix m) : reg_(std::move(reg)), m_(std::move(m)) {
    if (m_.rows() != static_cast<Eigen::Index>(reg_.dim()) || m_.cols() != m_.rows())
      throw std::invalid_argument("density matrix: dimension does not match register");
    if (!is_hermitian(m_)) throw std::invalid_argument("density matrix: not Hermitian");
    if (std::abs(m_.trace() - cplx{1.0, 0.0}) > kNormTol)
      throw std::invalid_argument("density matrix: trace is not 1");
    m_ = 0.5 * (m_ + m_.adjoint());
    if (hermitian_eigenvalues(m_).back() < -kNormTol)
      throw std::invalid_argument("density matrix: not positive semidefinite");
  }

  explicit DensityMatrix(const PureState& psi) : DensityMatrix(psi.reg(), psi.projector()) {}

  const QubitRegister& reg() const { return reg_; }
  const ComplexMatrix& matrix() const { return m_; }
  std::size_t num_qubits() const { return reg_.num_qubits(); }

  double purity() const { return (m_ * m_).trace().real(); }

  DensityMatrix reduce(std::span<const std::string> keep) const {
    auto r = partial_trace(m_, reg_, keep);
    return DensityMatrix(std::move(r.reg), std::move(r.matrix));
  }

 private:
  QubitRegister reg_;
  ComplexMatrix m_;
};

inline DensityMatrix reduce(const PureState& psi, std::span<const std::string> keep) {
  auto r = partial_trace_pure(psi.amplitudes(), psi.reg(), keep);
  return DensityMatrix(std::move(r.reg), std::move(r.matrix));
}

inline PureState tensor(const PureState& a, const PureState& b) {
  auto labels = a.reg().labels();
  labels.insert(labels.end(), b.reg().labels().begin(), b.reg().labels().end());
  return PureState(QubitRegister(std::move(labels)), kron(a.amplitudes(), b.amplitudes()));
}

// --- sampling ---------------------------------------------------------------

/// splitmix64 finalizer; derives independent per-sample seeds from a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded stream of uniform and Gaussian variates.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Gaussians come from a local Box-Muller transform because the
/// standard library's distributions are implementation-defined.
class SeededSampler {
 public:
  static constexpr std::string_view algorithm_id = "mt19937_64/box-muller/v1";

  explicit SeededSampler(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do u1 = uniform(); while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Circular complex Gaussian with E|z|^2 = 1.
  cplx complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Haar-distributed unitary via QR of a complex Ginibre matrix, with the
/// phases of R's diagonal absorbed into Q.
inline ComplexMatrix haar_unitary(std::size_t dim, SeededSampler& sampler) {
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = sampler.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

// --- named states -----------------------------------------------------------

struct SchmidtParams {
  std::array<double, 5> lambda{};
  double phi = 0.0;
};

/// lambda0|000> + lambda1 e^{i phi}|100> + lambda2|101> + lambda3|110> + lambda4|111>
///
/// With A the leftmost qubit, the pairwise concurrences come out as
/// C_AB = 2 lambda0 lambda3 and C_AC = 2 lambda0 lambda2, and
/// C_A|BC = 2 lambda0 sqrt(lambda2^2 + lambda3^2 + lambda4^2).
inline PureState generalized_schmidt(const SchmidtParams& p,
                                     QubitRegister reg = QubitRegister::with_default_labels(3)) {
  double sq = 0.0;
  for (double l : p.lambda) {
    if (l < 0.0) throw std::invalid_argument("generalized_schmidt: lambda must be nonnegative");
    sq += l * l;
  }
  if (std::abs(sq - 1.0) > kNormTol)
    throw std::invalid_argument("generalized_schmidt: sum of lambda^2 must be 1");
  if (reg.num_qubits() != 3) throw std::invalid_argument("generalized_schmidt: register must have 3 qubits");
  ComplexVector v = ComplexVector::Zero(8);
  v(0b000) = p.lambda[0];
  v(0b100) = p.lambda[1] * std::polar(1.0, p.phi);
  v(0b101) = p.lambda[2];
  v(0b110) = p.lambda[3];
  v(0b111) = p.lambda[4];
  return PureState(std::move(reg), v);
}

/// Uniform superposition of the weight-one basis states.
inline PureState w_state(std::size_t n) {
  if (n < 2 || n > kMaxQubits) throw std::invalid_argument("w_state: need 2 <= n <= 12");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t q = 0; q < n; ++q) v(static_cast<Eigen::Index>(std::size_t{1} << q)) = a;
  return PureState(QubitRegister::with_default_labels(n), v);
}

inline PureState ghz_state(std::size_t n) {
  if (n < 2 || n > kMaxQubits) throw std::invalid_argument("ghz_state: need 2 <= n <= 12");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  v(0) = v(v.size() - 1) = 1.0 / std::numbers::sqrt2;
  return PureState(QubitRegister::with_default_labels(n), v);
}

inline PureState basis_state_on(std::string_view bits, QubitRegister reg) {
  if (bits.size() != reg.num_qubits()) throw std::invalid_argument("basis_state: length mismatch");
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("basis_state: bits must be 0 or 1");
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(reg.dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(reg), v);
}

/// Computational basis state from a bit string such as "010".
inline PureState basis_state(std::string_view bits) {
  if (bits.empty() || bits.size() > kMaxQubits) throw std::invalid_argument("basis_state: bad length");
  return basis_state_on(bits, QubitRegister::with_default_labels(bits.size()));
}

// (|00> + |11>) / sqrt2
inline PureState bell_phi_plus(QubitRegister reg = QubitRegister::with_default_labels(2)) {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::numbers::sqrt2;
  return PureState(std::move(reg), v);
}

inline PureState haar_random_pure(std::size_t n, SeededSampler& sampler) {
  if (n < 2 || n > kMaxQubits) throw std::invalid_argument("haar_random_pure: need 2 <= n <= 12");
  ComplexVector v(static_cast<Eigen::Index>(std::size_t{1} << n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = sampler.complex_normal();
  return PureState::normalized(QubitRegister::with_default_labels(n), v);
}

/// Reduction onto the first n qubits of a Haar-random state on n + ancilla qubits.
inline DensityMatrix random_mixed(std::size_t n, std::size_t ancilla, SeededSampler& sampler) {
  if (n < 1 || n + ancilla > kMaxQubits || n + ancilla < 2)
    throw std::invalid_argument("random_mixed: need n >= 1 and 2 <= n + ancilla <= 12");
  const auto purified = haar_random_pure(n + ancilla, sampler);
  if (ancilla == 0) return DensityMatrix(purified);
  std::vector<std::string> keep(purified.reg().labels().begin(),
                                purified.reg().labels().begin() + static_cast<std::ptrdiff_t>(n));
  return reduce(purified, keep);
}

}  // namespace monogamy
