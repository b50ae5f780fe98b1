#include <gtest/gtest.h>

#include <cmath>

#include "monogamy/monogamy.hpp"
#include "test_support.hpp"

using namespace monogamy;
using monogamy::testing::random_pure;

namespace {

double c_focus(const PureState& psi) { return concurrence_pure(psi, Bipartition::of(psi.reg(), {"A"})); }

double c_pair(const PureState& psi, const char* other) {
  return concurrence_two_qubit_mixed(reduce(psi, std::vector<std::string>{"A", other}));
}

}  // namespace

TEST(SeededSampler, SameSeedSameStream) {
  SeededSampler a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    (void)c;
  }
  SeededSampler d(42), e(43);
  EXPECT_NE(d.uniform(), e.uniform());
  EXPECT_EQ(SeededSampler::algorithm_id, "mt19937_64/box-muller/v1");
}

TEST(SeededSampler, FirstDrawsArePinned) {
  // mt19937_64 is fully specified, so these hold on any conforming library.
  SeededSampler s(5489);
  EXPECT_EQ(s.uniform(), static_cast<double>(14514284786278117030ULL >> 11) * 0x1.0p-53);
}

TEST(SeededSampler, GaussianMoments) {
  SeededSampler s(7);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.01);
}

TEST(HaarUnitary, IsUnitary) {
  SeededSampler s(3);
  for (std::size_t d : {1u, 2u, 5u, 8u}) {
    const auto u = haar_unitary(d, s);
    const auto id = ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    EXPECT_LT((u.adjoint() * u - id).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(GeneralizedSchmidt, ProductCorner) {
  const auto psi = generalized_schmidt(SchmidtParams{{1, 0, 0, 0, 0}, 0.0});
  EXPECT_EQ(psi.amplitudes()(0), cplx(1.0, 0.0));
  EXPECT_NEAR(c_focus(psi), 0.0, 1e-15);
}

TEST(GeneralizedSchmidt, EqualAmplitudes) {
  const auto psi = monogamy::testing::equal_schmidt();
  EXPECT_NEAR(c_focus(psi), 2.0 * std::sqrt(3.0) / 5.0, 1e-12);
}

TEST(GeneralizedSchmidt, GhzCorner) {
  const double h = 1.0 / std::sqrt(2.0);
  const auto psi = generalized_schmidt(SchmidtParams{{h, 0, 0, 0, h}, 0.0});
  EXPECT_NEAR(c_focus(psi), 1.0, 1e-12);
  EXPECT_NEAR(c_pair(psi, "B"), 0.0, 1e-12);
  EXPECT_NEAR(c_pair(psi, "C"), 0.0, 1e-12);
}

TEST(GeneralizedSchmidt, RejectsBadAmplitudes) {
  EXPECT_THROW(generalized_schmidt(SchmidtParams{{1, 1, 0, 0, 0}, 0.0}), std::invalid_argument);
  EXPECT_THROW(generalized_schmidt(SchmidtParams{{-1, 0, 0, 0, 0}, 0.0}), std::invalid_argument);
}

// The pairwise identities pair lambda3 with B and lambda2 with C under the
// leftmost-qubit-most-significant ordering (checked independently in numpy).
TEST(GeneralizedSchmidt, AnalyticConcurrencesOnRandomParameters) {
  SeededSampler s(2024);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<double, 5> l{};
    double norm = 0.0;
    for (auto& x : l) {
      x = s.uniform();
      norm += x * x;
    }
    for (auto& x : l) x /= std::sqrt(norm);
    const auto psi = generalized_schmidt(SchmidtParams{l, 2.0 * std::numbers::pi * s.uniform()});
    EXPECT_NEAR(c_focus(psi), 2 * l[0] * std::sqrt(l[2] * l[2] + l[3] * l[3] + l[4] * l[4]), 1e-10);
    EXPECT_NEAR(c_pair(psi, "B"), 2 * l[0] * l[3], 1e-10);
    EXPECT_NEAR(c_pair(psi, "C"), 2 * l[0] * l[2], 1e-10);
  }
}

TEST(WState, Amplitudes) {
  const auto w = w_state(3);
  const double a = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(w.amplitudes()(0b100).real(), a, 1e-15);
  EXPECT_NEAR(w.amplitudes()(0b010).real(), a, 1e-15);
  EXPECT_NEAR(w.amplitudes()(0b001).real(), a, 1e-15);
  EXPECT_NEAR(w.amplitudes().squaredNorm(), 1.0, 1e-15);
  EXPECT_THROW(w_state(1), std::invalid_argument);
}

TEST(WState, TwoQubitsIsMaximallyEntangled) {
  const auto w = w_state(2);
  EXPECT_NEAR(concurrence_pure(w, Bipartition::of(w.reg(), {"A"})), 1.0, 1e-12);
}

TEST(WState, FourQubitPairwiseConcurrence) {
  // numpy reference 0.49999999999999994
  const auto w = w_state(4);
  for (const char* other : {"B", "C", "D"}) EXPECT_NEAR(c_pair(w, other), 0.5, 1e-12);
}

TEST(HaarRandomPure, DeterministicAndNormalized) {
  const auto a = random_pure(2, 1);
  const auto b = random_pure(2, 1);
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
  EXPECT_NEAR(random_pure(3, 9).amplitudes().norm(), 1.0, 1e-12);
  SeededSampler s(1);
  EXPECT_THROW(haar_random_pure(1, s), std::invalid_argument);
  EXPECT_THROW(haar_random_pure(13, s), std::invalid_argument);
}

TEST(HaarRandomPure, MeanReducedPurityMatchesHaarAverage) {
  // Haar average of Tr rho_A^2 for a 2 x 4 split: (2 + 4) / (2 * 4 + 1) = 2/3.
  // Sample standard deviation ~0.100 (numpy), so 3 sigma over 1e4 draws is 0.003.
  SeededSampler s(77);
  const int n = 10000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto psi = haar_random_pure(3, s);
    sum += reduce(psi, std::vector<std::string>{"A"}).purity();
  }
  EXPECT_NEAR(sum / n, 2.0 / 3.0, 0.003);
}

TEST(RandomMixed, AncillaZeroIsPure) {
  SeededSampler s(5);
  const auto rho = random_mixed(2, 0, s);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
  const auto ev = hermitian_eigenvalues(rho.matrix());
  EXPECT_NEAR(ev[1], 0.0, 1e-12);
}

TEST(RandomMixed, TracePreserved) {
  SeededSampler s(3);
  const auto rho = random_mixed(2, 2, s);
  const auto ev = hermitian_eigenvalues(rho.matrix());
  EXPECT_NEAR(std::accumulate(ev.begin(), ev.end(), 0.0), 1.0, 1e-10);
  EXPECT_THROW(random_mixed(8, 5, s), std::invalid_argument);
}

TEST(DensityMatrix, Validation) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  EXPECT_THROW(DensityMatrix(QubitRegister::with_default_labels(2), m), std::invalid_argument);  // trace 4
  m = 0.25 * m;
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix(QubitRegister::with_default_labels(2), m), std::invalid_argument);  // not Hermitian
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(QubitRegister::with_default_labels(1), neg), std::invalid_argument);
}

TEST(PureState, Validation) {
  ComplexVector v = ComplexVector::Ones(4);
  EXPECT_THROW(PureState(QubitRegister::with_default_labels(2), v), std::invalid_argument);
  EXPECT_NO_THROW(PureState::normalized(QubitRegister::with_default_labels(2), v));
  EXPECT_THROW(PureState::normalized(QubitRegister::with_default_labels(2), ComplexVector::Zero(4)),
               std::invalid_argument);
  EXPECT_THROW(PureState(QubitRegister::with_default_labels(3), v / 2.0), std::invalid_argument);
}
