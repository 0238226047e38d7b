#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qhash/circuit.hpp"

namespace qhash {

// A computational basis state: bit q of `bits` is qubit q.
struct BasisState {
  std::uint64_t bits = 0;

  bool operator[](Qubit q) const { return (bits >> q) & 1U; }
  friend bool operator==(const BasisState&, const BasisState&) = default;
};

// Pushes a basis state through a circuit of classical reversible gates
// (X, CNOT, TOFFOLI, MULTI_CX of any polarity, classically conditioned or
// not). Cost is linear in the gate count. Throws std::invalid_argument on
// H, Y or Z, and when the width exceeds 64.
BasisState reversible_run(const Circuit& circuit, BasisState input);

// Same, over a sub-range of the gate list.
BasisState reversible_run(const Circuit& circuit, BasisState input,
                          std::size_t begin, std::size_t end);

// Bit-sliced evaluation of a classical gate sequence on every basis state at
// once. Returns the destination index of each source index. Gates must
// already be classical and unconditioned; width <= 30.
std::vector<std::uint32_t> permutation_of(std::span<const Gate> gates,
                                          std::uint32_t width);

}  // namespace qhash
