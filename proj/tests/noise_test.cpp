#include "qhash/noise.hpp"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

using namespace qhash;

namespace {

Circuit sample_circuit() {
  Circuit c(4);
  c.append(Gate::h(0));
  for (int i = 0; i < 40; ++i) {
    c.append(Gate::cx(i % 4, (i + 1) % 4));
    c.append(Gate::ccx((i + 2) % 4, (i + 3) % 4, i % 4));
  }
  c.append(Gate::h(2));
  return c;
}

}  // namespace

TEST(NoiseModel, ProbabilityRange) {
  EXPECT_THROW((NoiseModel{-0.1}).site_probability(), std::invalid_argument);
  EXPECT_THROW((NoiseModel{1.5}).site_probability(), std::invalid_argument);
  NoiseModel per{0.2};
  per.convention = PauliConvention::PerPauli;
  EXPECT_NEAR(per.site_probability(), 0.6, 1e-15);
  per.pauli_probability = 0.5;
  EXPECT_THROW(per.site_probability(), std::invalid_argument);
}

TEST(Noise, ZeroProbabilityIsBitExact) {
  const auto c = sample_circuit();
  StateVector init(4);
  apply_gate(init, Gate::h(1));
  auto ref = init;
  CompiledCircuit(c).run(ref);
  const auto noisy = run_noisy_trajectory(c, {0.0, 5}, init);
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(noisy[i], ref[i]);
}

TEST(Noise, SingleXWithCertainErrorSplitsThreeWays) {
  Circuit c(1);
  c.append(Gate::x(0));
  int counts[3] = {0, 0, 0};  // X.X|0>, Y.X|0>, Z.X|0>
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    const auto s = run_noisy_trajectory(c, {1.0, static_cast<std::uint64_t>(t)},
                                        StateVector(1));
    if (s[0] == Amplitude(1.0, 0.0)) {
      ++counts[0];
    } else if (s[0] == Amplitude(0.0, -1.0)) {
      ++counts[1];
    } else {
      ASSERT_EQ(s[1], Amplitude(-1.0, 0.0));
      ++counts[2];
    }
  }
  for (int k : counts) EXPECT_NEAR(static_cast<double>(k) / n, 1.0 / 3, 0.05);
}

TEST(Noise, SiteTableCounts) {
  const auto c = sample_circuit();
  EXPECT_EQ(NoiseSiteTable(c, NoiseSites::TouchedQubits).sites_per_pass(),
            2u + 40u * 5u);
  EXPECT_EQ(NoiseSiteTable(c, NoiseSites::AllQubits).sites_per_pass(),
            c.size() * 4u);
}

TEST(Noise, EventRateMatchesSiteProbability) {
  const auto c = sample_circuit();
  const NoiseSiteTable table(c, NoiseSites::TouchedQubits);
  std::mt19937_64 rng(3);
  const NoiseModel m{0.01, 0};
  const std::size_t passes = 500;
  const auto events = table.sample(m, passes, rng);
  const double expect = 0.01 * table.sites_per_pass() * passes;
  EXPECT_NEAR(static_cast<double>(events.size()), expect, 4 * std::sqrt(expect));
  for (std::size_t i = 1; i < events.size(); ++i) {
    ASSERT_LE(events[i - 1].after_gate, events[i].after_gate);
  }
  for (const auto& e : events) {
    const auto& g = c.gates()[e.after_gate % c.size()];
    const auto qs = g.qubits();
    EXPECT_NE(std::find(qs.begin(), qs.end(), e.qubit), qs.end());
  }
}

TEST(Noise, SeededReproducibility) {
  const auto c = sample_circuit();
  StateVector init(4);
  const NoiseModel m{0.05, 77};
  const auto a = run_noisy_trajectory(c, m, init);
  const auto b = run_noisy_trajectory(c, m, init);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Noise, EventsAcrossPassesMatchManualInsertion) {
  Circuit c(3);
  c.append(Gate::h(0));
  c.append(Gate::cx(0, 1));
  c.append(Gate::cx(1, 2));
  const std::vector<PauliEvent> events{{1, 1, GateKind::Z}, {5, 2, GateKind::Y}};
  StateVector s(3);
  run_with_events(CompiledCircuit(c), s, events, 0, 2);

  StateVector ref(3);
  apply_gate(ref, Gate::h(0));
  apply_gate(ref, Gate::cx(0, 1));
  apply_gate(ref, Gate::z(1));
  apply_gate(ref, Gate::cx(1, 2));
  apply_gate(ref, Gate::h(0));
  apply_gate(ref, Gate::cx(0, 1));
  apply_gate(ref, Gate::cx(1, 2));
  apply_gate(ref, Gate::y(2));
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i], ref[i]);
}
