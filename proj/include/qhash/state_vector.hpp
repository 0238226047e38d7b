#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qhash/gate.hpp"

namespace qhash {

using Amplitude = std::complex<double>;

// Dense register of 2^w double-precision amplitudes. Qubit q is bit q of
// the basis index.
class StateVector {
 public:
  // |0...0>
  explicit StateVector(std::uint32_t num_qubits);
  static StateVector basis(std::uint32_t num_qubits, std::uint64_t bits);
  // Throws std::invalid_argument unless the length is a power of two.
  static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

  // Copies carry the amplitudes only, not the permutation scratch buffer.
  StateVector(const StateVector& other)
      : num_qubits_(other.num_qubits_), amps_(other.amps_) {}
  StateVector& operator=(const StateVector& other) {
    num_qubits_ = other.num_qubits_;
    amps_ = other.amps_;
    return *this;
  }
  StateVector(StateVector&&) noexcept = default;
  StateVector& operator=(StateVector&&) noexcept = default;

  std::uint32_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const;

  // Moves amplitude i to index dest[i]. `dest` must be a permutation.
  void permute(std::span<const std::uint32_t> dest);
  // Undoes permute(dest).
  void permute_inverse(std::span<const std::uint32_t> dest);

 private:
  std::uint32_t num_qubits_;
  std::vector<Amplitude> amps_;
  std::vector<Amplitude> scratch_;
};

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// Native application of any gate in the IR, including MULTI_CX and
// control-on-0, without decomposition. Classical conditions are ignored
// here; callers resolve them first. Throws std::out_of_range /
// std::invalid_argument on bad indices.
void apply_gate(StateVector& state, const Gate& gate);
// Same kernel on a raw block of 2^width amplitudes.
void apply_gate(std::span<Amplitude> amps, std::uint32_t width, const Gate& gate);

// Marginal distribution over `qubits`: entry k is the probability that
// qubits[i] reads bit i of k. Throws on empty, repeated or invalid indices.
std::vector<double> probabilities(const StateVector& state,
                                  std::span<const Qubit> qubits);

// Draws from a fixed discrete distribution.
class OutcomeSampler {
 public:
  explicit OutcomeSampler(std::span<const double> probabilities);
  std::uint64_t draw(std::mt19937_64& rng) const;

 private:
  std::vector<double> cumulative_;
};

std::uint64_t sample(const StateVector& state, std::span<const Qubit> qubits,
                     std::uint64_t rng_seed);

}  // namespace qhash
