#include "qhash/entropy.hpp"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

using namespace qhash;

namespace {

StateVector random_state(std::uint32_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Amplitude> a(std::size_t{1} << n);
  double norm = 0;
  for (auto& x : a) {
    x = {g(rng), g(rng)};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return StateVector::from_amplitudes(std::move(a));
}

}  // namespace

TEST(Bipartition, Validation) {
  EXPECT_THROW(Bipartition({}, 3), std::invalid_argument);
  EXPECT_THROW(Bipartition({0, 1, 2}, 3), std::invalid_argument);
  EXPECT_THROW(Bipartition({0, 0}, 3), std::invalid_argument);
  EXPECT_THROW(Bipartition({3}, 3), std::out_of_range);
  EXPECT_EQ(Bipartition({1}, 3).subsystem_b(), (std::vector<Qubit>{0, 2}));
}

TEST(Entropy, ProductStateIsZero) {
  EXPECT_NEAR(entanglement_entropy(StateVector(2), Bipartition({0}, 2)), 0.0,
              1e-12);
}

TEST(Entropy, BellPairIsOneBit) {
  StateVector s(2);
  apply_gate(s, Gate::h(0));
  apply_gate(s, Gate::cx(0, 1));
  EXPECT_NEAR(entanglement_entropy(s, Bipartition({0}, 2)), 1.0, 1e-12);
}

TEST(Entropy, BasisStatesAreZero) {
  for (std::uint64_t b = 0; b < 32; ++b) {
    EXPECT_NEAR(entanglement_entropy(StateVector::basis(5, b),
                                     Bipartition({0, 3}, 5)),
                0.0, 1e-12);
  }
}

TEST(Entropy, GhzOnManyQubits) {
  StateVector s(10);
  apply_gate(s, Gate::h(0));
  for (Qubit q = 1; q < 10; ++q) apply_gate(s, Gate::cx(0, q));
  EXPECT_NEAR(entanglement_entropy(s, Bipartition({2, 5, 7}, 10)), 1.0, 1e-12);
}

TEST(Entropy, MaximallyEntangledRegisters) {
  StateVector s(8);
  for (Qubit q = 0; q < 4; ++q) {
    apply_gate(s, Gate::h(q));
    apply_gate(s, Gate::cx(q, q + 4));
  }
  EXPECT_NEAR(entanglement_entropy(s, Bipartition({0, 1, 2, 3}, 8)), 4.0, 1e-10);
  EXPECT_NEAR(entanglement_entropy(s, Bipartition({0, 5}, 8)), 2.0, 1e-10);
}

TEST(Entropy, ComplementSymmetryAndBound) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto s = random_state(7, seed);
    const Bipartition p({0, 2, 5}, 7);
    const double sa = entanglement_entropy(s, p);
    EXPECT_NEAR(sa, entanglement_entropy(s, p.complement()), 1e-9);
    EXPECT_LE(sa, 3.0 + 1e-9);
    EXPECT_GT(sa, 2.0);
  }
}

TEST(Entropy, SpectrumSumsToOne) {
  const auto s = random_state(6, 42);
  double sum = 0;
  for (double l : entanglement_spectrum(s, Bipartition({1, 4}, 6))) sum += l;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Entropy, WidthMismatchThrows) {
  EXPECT_THROW(entanglement_entropy(StateVector(3), Bipartition({0}, 2)),
               std::invalid_argument);
}
