#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhash/circuit.hpp"
#include "qhash/sparse_state.hpp"
#include "qhash/state_vector.hpp"

namespace qhash {

struct ExecutorOptions {
  // Runs of at least this many consecutive classical gates are fused into
  // a single basis-state permutation.
  std::size_t fuse_threshold = 24;
  // Native runs of at least two gates confined to qubits below this bound
  // are applied cache block by cache block. 0 disables.
  std::uint32_t block_qubits = 12;
  // Every this many gates into a fused run, the prefix permutation is kept
  // so that runs cut short by an inserted gate start from it. 0 keeps none.
  std::size_t checkpoint_interval = 0;
};

// A circuit prepared for repeated statevector execution. Classical
// conditions are resolved once; gate indices below refer to the resolved
// gate list, which circuit() exposes. Fused runs never straddle a marker.
class CompiledCircuit {
 public:
  explicit CompiledCircuit(const Circuit& circuit, ExecutorOptions options = {});

  std::uint32_t width() const { return circuit_.width(); }
  std::size_t size() const { return circuit_.size(); }
  const Circuit& circuit() const { return circuit_; }
  std::optional<std::size_t> marker(const std::string& name) const {
    return circuit_.marker(name);
  }

  void run(StateVector& state) const { run_range(state, 0, size()); }
  // Gates [begin, end). Throws std::out_of_range on a bad range and
  // std::invalid_argument on a width mismatch.
  void run_range(StateVector& state, std::size_t begin, std::size_t end) const;
  void run(SparseState& state) const { run_range(state, 0, size()); }
  void run_range(SparseState& state, std::size_t begin, std::size_t end) const;

 private:
  struct Segment {
    std::size_t begin;
    std::size_t end;
    std::vector<std::uint32_t> permutation;  // empty: run gates natively
    // Nonzero: every gate acts below this qubit, so dense runs go block by
    // block of 2^block_bits amplitudes.
    std::uint32_t block_bits = 0;
    // Prefix permutations after checkpoint_interval, 2 * interval, ... gates.
    std::vector<std::vector<std::uint32_t>> checkpoints;
  };

  // Permutation of the gates [seg.begin, stop) of a fused segment.
  std::vector<std::uint32_t> prefix_permutation(const Segment& seg, std::size_t stop) const;

  void split_blocked();

  void run_gates(StateVector& state, std::size_t begin, std::size_t end) const;
  template <typename State>
  void run_range_impl(State& state, std::size_t begin, std::size_t end) const;

  Circuit circuit_;
  ExecutorOptions options_;
  std::vector<Segment> segments_;
};

// One-shot convenience: compiles and runs.
void run_circuit(const Circuit& circuit, StateVector& state);

}  // namespace qhash
