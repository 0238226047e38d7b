#include "qhash/arithmetic.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <stdexcept>
#include <vector>

#include "qhash/entropy.hpp"
#include "qhash/executor.hpp"
#include "qhash/resources.hpp"
#include "qhash/reversible.hpp"
#include "qhash/state_vector.hpp"

using namespace qhash;

namespace {

std::vector<Qubit> range(Qubit first, Qubit count) {
  std::vector<Qubit> v(count);
  std::iota(v.begin(), v.end(), first);
  return v;
}

std::uint64_t read(BasisState s, const std::vector<Qubit>& qs) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) v |= std::uint64_t{s[qs[i]]} << i;
  return v;
}

std::uint64_t place(std::uint64_t value, const std::vector<Qubit>& qs) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    bits |= ((value >> i) & 1U) << qs[i];
  }
  return bits;
}

}  // namespace

TEST(XorInto, TruthTable) {
  Circuit c(8);
  const auto a = range(0, 4), b = range(4, 4);
  xor_into(c, a, b);
  EXPECT_EQ(c.size(), 4u);
  const auto out = reversible_run(c, {place(0b1010, a) | place(0b0110, b)});
  EXPECT_EQ(read(out, b), 0b1100u);
  EXPECT_EQ(read(out, a), 0b1010u);
}

TEST(XorInto, ZeroSourceAndInvolution) {
  Circuit c(8);
  const auto a = range(0, 4), b = range(4, 4);
  xor_into(c, a, b);
  EXPECT_EQ(read(reversible_run(c, {place(0b0111, b)}), b), 0b0111u);
  xor_into(c, a, b);
  const std::uint64_t in = place(9, a) | place(5, b);
  EXPECT_EQ(reversible_run(c, {in}).bits, in);
}

TEST(XorInto, RejectsOverlap) {
  Circuit c(6);
  const std::vector<Qubit> a{0, 1, 2}, b{2, 3, 4};
  EXPECT_THROW(xor_into(c, a, b), std::invalid_argument);
  const std::vector<Qubit> d{3, 4};
  EXPECT_THROW(xor_into(c, a, d), std::invalid_argument);
}

TEST(AddMod2n, Examples) {
  Circuit c(9);
  const auto a = range(0, 4), b = range(4, 4);
  add_mod2n(c, a, b, 8);
  auto out = reversible_run(c, {place(3, a) | place(5, b)});
  EXPECT_EQ(read(out, a), 8u);
  EXPECT_EQ(read(out, b), 5u);
  EXPECT_FALSE(out[8]);
  out = reversible_run(c, {place(15, a) | place(1, b)});
  EXPECT_EQ(read(out, a), 0u);
}

class AdderWidth : public ::testing::TestWithParam<Qubit> {};

TEST_P(AdderWidth, ExhaustiveAgainstIntegerSum) {
  const Qubit n = GetParam();
  Circuit c(2 * n + 1);
  const auto a = range(0, n), b = range(n, n);
  add_mod2n(c, a, b, 2 * n);
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t x = 0; x <= mask; ++x) {
    for (std::uint64_t y = 0; y <= mask; ++y) {
      const auto out = reversible_run(c, {place(x, a) | place(y, b)});
      ASSERT_EQ(read(out, a), (x + y) & mask) << x << "+" << y;
      ASSERT_EQ(read(out, b), y);
      ASSERT_FALSE(out[2 * n]);
    }
  }
}

TEST_P(AdderWidth, GateCounts) {
  const Qubit n = GetParam();
  Circuit c(2 * n + 1);
  add_mod2n(c, range(0, n), range(n, n), 2 * n);
  const auto rc = count_resources(c);
  if (n == 1) {
    EXPECT_EQ(rc.cnot, 1);
    EXPECT_EQ(rc.toffoli, 0);
    return;
  }
  EXPECT_EQ(rc.toffoli, 2 * n - 2);
  EXPECT_EQ(rc.cnot, 5 * n - 4);
  EXPECT_EQ(rc.single, std::max<std::int64_t>(0, 2 * n - 4));
}

INSTANTIATE_TEST_SUITE_P(Widths, AdderWidth, ::testing::Values(1, 2, 3, 4, 5, 6));

TEST(AddMod2n, AncillaDecouplesInSuperposition) {
  Circuit c(9);
  const auto a = range(0, 4), b = range(4, 4);
  add_mod2n(c, a, b, 8);
  StateVector s(9);
  for (Qubit q = 0; q < 8; ++q) apply_gate(s, Gate::h(q));
  run_circuit(c, s);
  EXPECT_NEAR(entanglement_entropy(s, Bipartition({8}, 9)), 0.0, 1e-9);
  EXPECT_NEAR(probabilities(s, std::vector<Qubit>{8})[0], 1.0, 1e-12);
}

TEST(AddMod2n, RejectsBadOperands) {
  Circuit c(9);
  EXPECT_THROW(add_mod2n(c, range(0, 4), range(4, 3), 8), std::invalid_argument);
  EXPECT_THROW(add_mod2n(c, range(0, 4), range(4, 4), 3), std::invalid_argument);
}

class DecomposeK : public ::testing::TestWithParam<Qubit> {};

TEST_P(DecomposeK, MatchesNativeOnAllBasisStates) {
  const Qubit k = GetParam();
  // controls 0..k-1, target k, work k+1, one idle bystander k+2.
  const Qubit width = k + 3;
  for (int polarity = 0; polarity < 2; ++polarity) {
    std::vector<Control> controls;
    for (Qubit q = 0; q < k; ++q) {
      controls.push_back({q, polarity == 0 || q % 2 == 0});
    }
    const Gate native = Gate::controlled_x(controls, k);
    Circuit ref(width), dec(width);
    ref.append(native);
    for (auto& g : decompose_multi_cx(native, k + 1)) {
      ASSERT_TRUE(g.kind == GateKind::TOFFOLI || g.kind == GateKind::CNOT ||
                  g.kind == GateKind::X);
      dec.append(g);
    }
    for (std::uint64_t in = 0; in < (std::uint64_t{1} << width); ++in) {
      ASSERT_EQ(reversible_run(dec, {in}), reversible_run(ref, {in}))
          << "k=" << k << " in=" << in;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Controls, DecomposeK,
                         ::testing::Values(3, 4, 5, 6, 7, 8));

TEST(Decompose, ToffoliCountsOfVChainSplit) {
  auto toffolis = [](Qubit k) {
    std::vector<Control> cs;
    for (Qubit q = 0; q < k; ++q) cs.push_back({q, true});
    std::int64_t n = 0;
    for (const auto& g : decompose_multi_cx(Gate::controlled_x(cs, k), k + 1)) {
      n += g.kind == GateKind::TOFFOLI;
    }
    return n;
  };
  EXPECT_EQ(toffolis(3), 4);
  EXPECT_EQ(toffolis(7), 32);
  EXPECT_EQ(toffolis(8), 40);
  EXPECT_EQ(toffolis(15), 96);
}

TEST(Decompose, SmallGatesPassThrough) {
  const auto g = Gate::ccx(0, 1, 2);
  const auto out = decompose_multi_cx(g, 3);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], g);
}

TEST(Decompose, WorkQubitInOneIsRestored) {
  const Gate g = Gate::controlled_x({{0, true}, {1, true}, {2, true}}, 3);
  Circuit dec(5);
  for (auto& e : decompose_multi_cx(g, 4)) dec.append(e);
  const auto out = reversible_run(dec, {0b10111});
  EXPECT_EQ(out.bits, 0b11111u);
}

TEST(Decompose, WorkCollisionThrows) {
  const Gate g = Gate::controlled_x({{0, true}, {1, true}, {2, true}}, 3);
  EXPECT_THROW(decompose_multi_cx(g, 2), std::invalid_argument);
  EXPECT_THROW(decompose_multi_cx(g, 3), std::invalid_argument);
}

TEST(Instantiate, ResolvesConditionsAndPolarity) {
  Circuit c(6);
  c.set_classical("iv", {1, 0});
  c.append(Gate::x(0).if_bit("iv", 0));
  c.append(Gate::x(1).if_bit("iv", 1));
  c.append(Gate::controlled_x({{0, false}, {1, true}, {2, true}}, 3));
  c.set_work_qubit(5);
  const auto inst = instantiate(c);
  for (const auto& g : inst.gates()) {
    EXPECT_FALSE(g.condition.has_value());
    EXPECT_FALSE(g.has_negative_controls());
    EXPECT_NE(g.kind, GateKind::MULTI_CX);
  }
  for (std::uint64_t in = 0; in < 64; ++in) {
    EXPECT_EQ(reversible_run(inst, {in}), reversible_run(c, {in}));
  }
}

TEST(Instantiate, MultiCxWithoutWorkQubitThrows) {
  Circuit c(4);
  c.append(Gate::controlled_x({{0, true}, {1, true}, {2, true}}, 3));
  EXPECT_THROW(instantiate(c), std::invalid_argument);
}
