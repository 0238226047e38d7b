#pragma once

#include <span>
#include <vector>

#include "qhash/circuit.hpp"
#include "qhash/gate.hpp"

namespace qhash {

// dest ^= source, one CNOT per bit. Throws std::invalid_argument on a width
// mismatch or overlapping registers.
void xor_into(Circuit& circuit, std::span<const Qubit> source,
              std::span<const Qubit> dest);

// a = (a + b) mod 2^n with b unchanged, using one ancilla that must enter
// and leaves in |0>. Ripple-carry (MAJ / UMA) construction with the
// carry-out dropped: 2n-2 Toffoli, 5n-4 CNOT and 2n-4 X for n >= 2.
void add_mod2n(Circuit& circuit, std::span<const Qubit> a,
               std::span<const Qubit> b, Qubit ancilla);

// Lowers a controlled X with k >= 3 controls to Toffoli gates using one
// borrowed work qubit in any state, which is restored. The controls are
// split in two halves, each half becoming a V-chain of Toffolis that
// borrows the idle qubits of the other half. Negative controls are wrapped
// in X gates. Gates with fewer than three controls pass through unchanged.
std::vector<Gate> decompose_multi_cx(const Gate& gate, Qubit work_qubit);

// Toffoli V-chain for C^k X with k-2 borrowed qubits (k >= 3).
std::vector<Gate> multi_cx_with_borrowed(std::span<const Qubit> controls,
                                         Qubit target,
                                         std::span<const Qubit> borrowed);

// Produces the elementary circuit: classically conditioned gates are kept
// or dropped according to the classical registers, control-on-0 is lowered
// to X conjugation, and MULTI_CX gates are decomposed with the circuit's
// work qubit. Markers follow the gates they precede.
Circuit instantiate(const Circuit& circuit);

// Only drops/keeps classically conditioned gates; polarity and MULTI_CX are
// left for native execution.
Circuit resolve_classical(const Circuit& circuit);

}  // namespace qhash
