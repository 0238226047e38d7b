#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qhash/circuit.hpp"
#include "qhash/executor.hpp"
#include "qhash/state_vector.hpp"

namespace qhash {

// Where a Pauli error may strike after a gate.
enum class NoiseSites {
  TouchedQubits,  // every qubit the gate acted on
  AllQubits,      // every qubit of the register, idle ones included
};

// How pauli_probability is read at one site.
enum class PauliConvention {
  Total,     // one of X, Y, Z with total probability p
  PerPauli,  // X, Y and Z each with probability p (3p in total)
};

struct NoiseModel {
  double pauli_probability = 0.0;
  std::uint64_t rng_seed = 0;
  NoiseSites sites = NoiseSites::TouchedQubits;
  PauliConvention convention = PauliConvention::Total;

  // Chance that a site receives some Pauli. Throws std::invalid_argument
  // when it leaves [0, 1].
  double site_probability() const;
};

// A Pauli inserted after gate `after_gate` of a circuit repeated some
// number of times; the index counts across repetitions.
struct PauliEvent {
  std::uint64_t after_gate = 0;
  Qubit qubit = 0;
  GateKind pauli = GateKind::X;

  friend bool operator==(const PauliEvent&, const PauliEvent&) = default;
};

// Noise sites of one pass through a circuit, in execution order.
class NoiseSiteTable {
 public:
  NoiseSiteTable(const Circuit& circuit, NoiseSites sites);

  std::uint64_t sites_per_pass() const { return offsets_.back(); }
  // Draws the events of `passes` back-to-back executions, sorted by
  // position. Gap lengths are geometric, so the cost follows the number of
  // events rather than the number of sites.
  std::vector<PauliEvent> sample(const NoiseModel& noise, std::size_t passes,
                                 std::mt19937_64& rng) const;

 private:
  NoiseSites sites_;
  std::uint32_t width_;
  std::vector<std::uint64_t> offsets_;  // prefix sums of sites per gate
  std::vector<Qubit> touched_;          // flattened, TouchedQubits only
};

// Runs passes [first_pass, first_pass + passes) of `compiled` with the
// events that fall into them applied right after their gate.
void run_with_events(const CompiledCircuit& compiled, StateVector& state,
                     std::span<const PauliEvent> events,
                     std::size_t first_pass = 0, std::size_t passes = 1);
void run_with_events(const CompiledCircuit& compiled, SparseState& state,
                     std::span<const PauliEvent> events,
                     std::size_t first_pass = 0, std::size_t passes = 1);

// One stochastic trajectory of a single pass, seeded by noise.rng_seed.
// With p = 0 the result is bit-identical to CompiledCircuit::run.
StateVector run_noisy_trajectory(const Circuit& circuit, const NoiseModel& noise,
                                 const StateVector& initial);

}  // namespace qhash
