#include "qhash/executor.hpp"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

using namespace qhash;

namespace {

Circuit random_circuit(std::uint32_t width, int gates, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Circuit c(width);
  c.set_classical("k", {1, 0, 1, 1});
  for (int i = 0; i < gates; ++i) {
    const Qubit t = rng() % width;
    const auto roll = rng() % 20;
    if (roll == 0) {
      c.append(Gate::h(t));
    } else if (roll == 1) {
      c.append(Gate::z(t));
    } else if (roll == 2) {
      c.append(Gate::x(t).if_bit("k", static_cast<std::uint32_t>(rng() % 4)));
    } else {
      std::vector<Control> cs;
      const int k = static_cast<int>(rng() % 4);
      for (int j = 0; j < k; ++j) {
        const Qubit q = rng() % width;
        bool dup = q == t;
        for (auto& x : cs) dup |= x.qubit == q;
        if (!dup) cs.push_back({q, (rng() & 1U) != 0});
      }
      c.append(Gate::controlled_x(cs, t));
    }
    if (i == gates / 3) c.set_marker("mid");
  }
  return c;
}

StateVector naive(const Circuit& c, StateVector s) {
  for (const auto& g : c.gates()) {
    if (c.condition_holds(g)) {
      Gate u = g;
      u.condition.reset();
      apply_gate(s, u);
    }
  }
  return s;
}

StateVector spread(std::uint32_t width) {
  StateVector s(width);
  for (Qubit q = 0; q < width; ++q) apply_gate(s, Gate::h(q));
  apply_gate(s, Gate::z(0));
  apply_gate(s, Gate::y(width - 1));
  return s;
}

}  // namespace

TEST(CompiledCircuit, MatchesGateByGateExecution) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto c = random_circuit(9, 300, seed);
    auto fused = spread(9);
    CompiledCircuit(c, {.fuse_threshold = 8}).run(fused);
    const auto ref = naive(c, spread(9));
    EXPECT_GT(fidelity(fused, ref), 1.0 - 1e-12);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      ASSERT_NEAR(std::abs(fused[i] - ref[i]), 0.0, 1e-12);
    }
  }
}

TEST(CompiledCircuit, RangesComposeAcrossFusedBlocks) {
  const auto c = random_circuit(8, 250, 7);
  const CompiledCircuit compiled(c, {.fuse_threshold = 6});
  auto whole = spread(8);
  compiled.run(whole);
  for (std::size_t cut : {std::size_t{1}, std::size_t{37}, std::size_t{120},
                          compiled.size() - 1}) {
    auto split = spread(8);
    compiled.run_range(split, 0, cut);
    compiled.run_range(split, cut, compiled.size());
    EXPECT_GT(fidelity(split, whole), 1.0 - 1e-12) << cut;
  }
}

TEST(CompiledCircuit, MarkerRangesMatchWholeRun) {
  const auto c = random_circuit(7, 200, 3);
  const CompiledCircuit compiled(c);
  const auto mid = compiled.marker("mid");
  ASSERT_TRUE(mid.has_value());
  auto a = spread(7), b = spread(7);
  compiled.run(a);
  compiled.run_range(b, 0, *mid);
  compiled.run_range(b, *mid, compiled.size());
  EXPECT_GT(fidelity(a, b), 1.0 - 1e-12);
}

TEST(CompiledCircuit, InverseRestoresState) {
  const auto c = random_circuit(9, 400, 12);
  auto s = spread(9);
  const auto start = s;
  run_circuit(c, s);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-9);
  run_circuit(c.inverse(), s);
  EXPECT_GE(fidelity(s, start), 1.0 - 1e-9);
}

TEST(CompiledCircuit, Errors) {
  Circuit c(3);
  c.append(Gate::x(0));
  const CompiledCircuit compiled(c);
  StateVector wrong(2);
  EXPECT_THROW(compiled.run(wrong), std::invalid_argument);
  StateVector s(3);
  EXPECT_THROW(compiled.run_range(s, 0, 2), std::out_of_range);
  EXPECT_THROW(CompiledCircuit(Circuit(31)), std::invalid_argument);
}

TEST(CompiledCircuit, BlockedLowQubitRunsMatchGateByGate) {
  std::mt19937_64 rng(21);
  Circuit c(13);
  for (int i = 0; i < 400; ++i) {
    const bool high = rng() % 9 == 0;
    const Qubit t = high ? 6 + rng() % 7 : rng() % 6;
    const Qubit u = (t + 1 + rng() % 5) % 6;
    switch (rng() % 4) {
      case 0: c.append(Gate::h(t)); break;
      case 1: c.append(Gate::y(t)); break;
      case 2: c.append(Gate::cx(u, t)); break;
      default: c.append(Gate::controlled_x({{u, false}}, t)); break;
    }
  }
  const auto ref = naive(c, spread(13));
  for (std::uint32_t bound : {0U, 6U, 12U}) {
    auto s = spread(13);
    CompiledCircuit(c, {.fuse_threshold = 8, .block_qubits = bound}).run(s);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      ASSERT_NEAR(std::abs(s[i] - ref[i]), 0.0, 1e-12) << bound;
    }
  }
}

TEST(CompiledCircuit, PartialFusedRangesWithCheckpoints) {
  Circuit c(10);
  std::mt19937_64 rng(5);
  c.append(Gate::h(0));
  c.append(Gate::h(4));
  for (int i = 0; i < 300; ++i) {
    const Qubit t = rng() % 10, u = (t + 1 + rng() % 9) % 10;
    c.append(rng() % 3 == 0 ? Gate::x(t) : Gate::cx(u, t));
  }
  const auto ref_whole = naive(c, spread(10));
  for (std::size_t interval : {std::size_t{0}, std::size_t{7}, std::size_t{64}}) {
    const CompiledCircuit compiled(c, {.fuse_threshold = 8, .checkpoint_interval = interval});
    for (std::size_t cut : {std::size_t{3}, std::size_t{20}, std::size_t{71}, std::size_t{150},
                            std::size_t{290}}) {
      auto s = spread(10);
      compiled.run_range(s, 0, cut);
      apply_gate(s, Gate::y(cut % 10));
      compiled.run_range(s, cut, cut + 40 > compiled.size() ? compiled.size() : cut + 40);
      if (cut + 40 < compiled.size()) compiled.run_range(s, cut + 40, compiled.size());

      Circuit with(10);
      for (std::size_t g = 0; g < c.size(); ++g) {
        with.append(c.gates()[g]);
        if (g + 1 == cut) with.append(Gate::y(cut % 10));
      }
      const auto ref = naive(with, spread(10));
      for (std::size_t i = 0; i < ref.size(); ++i) {
        ASSERT_NEAR(std::abs(s[i] - ref[i]), 0.0, 1e-12) << interval << " " << cut;
      }
    }
    auto whole = spread(10);
    compiled.run(whole);
    EXPECT_GT(fidelity(whole, ref_whole), 1.0 - 1e-12);
  }
}
