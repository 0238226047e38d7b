#pragma once

#include <cstdint>
#include <vector>

#include "qhash/gate.hpp"
#include "qhash/sparse_state.hpp"
#include "qhash/state_vector.hpp"

namespace qhash {

// A/B split of a register. Only A is stored; B is everything else.
class Bipartition {
 public:
  // Throws std::invalid_argument when A is empty, covers the whole
  // register or repeats a qubit, std::out_of_range on a bad index.
  Bipartition(std::vector<Qubit> subsystem_a, std::uint32_t num_qubits);

  const std::vector<Qubit>& subsystem_a() const { return a_; }
  std::vector<Qubit> subsystem_b() const;
  std::uint32_t num_qubits() const { return num_qubits_; }
  Bipartition complement() const;

 private:
  std::vector<Qubit> a_;
  std::uint32_t num_qubits_;
};

// Eigenvalues of rho_A (ascending, clipped at zero). Only the nonzero
// amplitudes are visited and rho_A is diagonalised block by block, so
// permutation-like states with few populated branches stay cheap.
std::vector<double> entanglement_spectrum(const StateVector& state,
                                          const Bipartition& partition);
std::vector<double> entanglement_spectrum(const SparseState& state,
                                          const Bipartition& partition);

// Von Neumann entropy of rho_A in bits. Eigenvalues below 1e-12 count as 0.
double entanglement_entropy(const StateVector& state,
                            const Bipartition& partition);
double entanglement_entropy(const SparseState& state,
                            const Bipartition& partition);

// True when `gate` acts inside A or inside B only; such gates leave the
// entropy of the cut unchanged.
bool is_local(const Gate& gate, const Bipartition& partition);

}  // namespace qhash
