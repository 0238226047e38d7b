#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qhash/gate.hpp"
#include "qhash/state_vector.hpp"

namespace qhash {

// Amplitudes with |a|^2 at or below this are dropped by the sparse engine.
inline constexpr double kSparseZeroWeight = 1e-26;

// Register stored as a list of populated basis states. Classical gates and
// Paulis only relabel entries, so states that stay close to a permutation of
// a few branches are far cheaper here than as dense vectors. Entry order is
// unspecified.
class SparseState {
 public:
  // |0...0>. Throws std::invalid_argument for widths beyond 63.
  explicit SparseState(std::uint32_t num_qubits);
  static SparseState from_dense(const StateVector& state);
  StateVector to_dense() const;

  std::uint32_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return indices_.size(); }
  std::span<const std::uint64_t> indices() const { return indices_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<std::uint64_t> indices() { return indices_; }
  std::span<Amplitude> amplitudes() { return amps_; }

  double norm_squared() const;
  // Same contract as StateVector::permute.
  void permute(std::span<const std::uint32_t> dest);
  // Entries sorted by index.
  void canonicalize();
  // Replaces the entries; indices must be distinct and in range.
  void assign(std::vector<std::uint64_t> indices, std::vector<Amplitude> amplitudes);

 private:
  std::uint32_t num_qubits_;
  std::vector<std::uint64_t> indices_;
  std::vector<Amplitude> amps_;
};

// Throws like the dense apply_gate. Classically conditioned gates are
// rejected.
void apply_gate(SparseState& state, const Gate& gate);

// Marginal over `qubits`, as for the dense overload.
std::vector<double> probabilities(const SparseState& state,
                                  std::span<const Qubit> qubits);

}  // namespace qhash
