#include "qhash/noise.hpp"

#include <algorithm>
#include <stdexcept>

namespace qhash {

double NoiseModel::site_probability() const {
  const double p = pauli_probability;
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("pauli_probability must lie in [0, 1]");
  }
  const double q = convention == PauliConvention::PerPauli ? 3.0 * p : p;
  if (q > 1.0) {
    throw std::invalid_argument(
        "per-Pauli convention needs pauli_probability <= 1/3");
  }
  return q;
}

NoiseSiteTable::NoiseSiteTable(const Circuit& circuit, NoiseSites sites)
    : sites_(sites), width_(circuit.width()) {
  offsets_.reserve(circuit.size() + 1);
  offsets_.push_back(0);
  for (const auto& g : circuit.gates()) {
    if (sites_ == NoiseSites::AllQubits) {
      offsets_.push_back(offsets_.back() + width_);
    } else {
      const auto qs = g.qubits();
      touched_.insert(touched_.end(), qs.begin(), qs.end());
      offsets_.push_back(offsets_.back() + qs.size());
    }
  }
}

std::vector<PauliEvent> NoiseSiteTable::sample(const NoiseModel& noise,
                                               std::size_t passes,
                                               std::mt19937_64& rng) const {
  const double q = noise.site_probability();
  std::vector<PauliEvent> events;
  const std::uint64_t per_pass = sites_per_pass();
  const std::uint64_t total = per_pass * passes;
  if (q == 0.0 || total == 0) return events;

  const std::uint64_t gates = offsets_.size() - 1;
  std::geometric_distribution<std::uint64_t> gap(q);
  std::uniform_int_distribution<int> which(0, 2);
  constexpr GateKind kPaulis[3] = {GateKind::X, GateKind::Y, GateKind::Z};
  for (std::uint64_t site = gap(rng); site < total; site += 1 + gap(rng)) {
    const std::uint64_t pass = site / per_pass;
    const std::uint64_t local = site % per_pass;
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), local);
    const auto gate = static_cast<std::uint64_t>(it - offsets_.begin()) - 1;
    const Qubit qubit = sites_ == NoiseSites::AllQubits
                            ? static_cast<Qubit>(local - offsets_[gate])
                            : touched_[local];
    events.push_back({pass * gates + gate, qubit, kPaulis[which(rng)]});
  }
  return events;
}

namespace {

template <typename State>
void run_with_events_impl(const CompiledCircuit& compiled, State& state,
                          std::span<const PauliEvent> events,
                          std::size_t first_pass, std::size_t passes) {
  const std::uint64_t n = compiled.size();
  auto it = std::lower_bound(
      events.begin(), events.end(), first_pass * n,
      [](const PauliEvent& e, std::uint64_t pos) { return e.after_gate < pos; });
  for (std::size_t pass = first_pass; pass < first_pass + passes; ++pass) {
    const std::uint64_t base = pass * n;
    std::size_t cursor = 0;
    for (; it != events.end() && it->after_gate < base + n; ++it) {
      const auto local = static_cast<std::size_t>(it->after_gate - base);
      compiled.run_range(state, cursor, local + 1);
      apply_gate(state, Gate{it->pauli, {}, it->qubit, {}});
      cursor = local + 1;
    }
    compiled.run_range(state, cursor, n);
  }
}

}  // namespace

void run_with_events(const CompiledCircuit& compiled, StateVector& state,
                     std::span<const PauliEvent> events, std::size_t first_pass,
                     std::size_t passes) {
  run_with_events_impl(compiled, state, events, first_pass, passes);
}

void run_with_events(const CompiledCircuit& compiled, SparseState& state,
                     std::span<const PauliEvent> events, std::size_t first_pass,
                     std::size_t passes) {
  run_with_events_impl(compiled, state, events, first_pass, passes);
}

StateVector run_noisy_trajectory(const Circuit& circuit, const NoiseModel& noise,
                                 const StateVector& initial) {
  const CompiledCircuit compiled(circuit);
  if (initial.num_qubits() != compiled.width()) {
    throw std::invalid_argument("state width does not match the circuit");
  }
  const NoiseSiteTable table(compiled.circuit(), noise.sites);
  std::mt19937_64 rng(noise.rng_seed);
  const auto events = table.sample(noise, 1, rng);
  StateVector state = initial;
  run_with_events(compiled, state, events);
  return state;
}

}  // namespace qhash
