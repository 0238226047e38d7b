#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qhash/circuit.hpp"
#include "qhash/hashes.hpp"

namespace qhash {

// Name of the marker placed right after the digest check in an oracle and
// in a Grover step.
inline constexpr const char* kMidMarker = "mid";

struct OracleSpec {
  std::uint8_t target_digest = 0;
  HashConfig hash;
  // Adder ancillas: 1 runs the two quarter rounds of a half round one after
  // the other, 2 lets them run side by side.
  unsigned ancilla_budget = 2;

  // Classically known initial contents of the working register, bit k for
  // qubit k of that register (sponge: the initial state, blake: v).
  std::vector<std::uint8_t> classical_bits() const;
  // "iv" for the sponge, "c" for blake.
  std::string classical_register() const;
};

struct GroverLayout {
  HashKind kind = HashKind::Sponge;
  std::uint32_t width = 0;
  std::vector<Qubit> message;         // searched register
  std::array<std::vector<Qubit>, 4> words;  // working 2x2 matrix v
  std::vector<Qubit> adder_ancillas;  // first one doubles as MCX work qubit
  Qubit grover_ancilla = 0;

  // Sponge: words 0..15 with the message on the rate (0..7), then the
  // adder ancillas and the Grover ancilla (19 qubits with budget 2).
  static GroverLayout sponge(unsigned ancilla_budget = 2);
  // Blake: message block d on 0..15, v on 16..31, then the adder ancillas
  // and the Grover ancilla (34 qubits serial, 35 with budget 2).
  static GroverLayout blake(unsigned ancilla_budget = 1);
  static GroverLayout for_spec(const OracleSpec& spec);

  Qubit work_qubit() const { return adder_ancillas.front(); }
  // Message words for blake (d[k] on bits 4k..4k+3).
  std::vector<Qubit> message_word(int k) const;
};

enum class RotationMode {
  Relabel,      // rotations move labels only
  SwapNetwork,  // rotations emitted as explicit 3-CNOT swaps
};

// A permutation or compression circuit plus the physical qubits that hold
// each logical word when it ends.
struct WordCircuit {
  Circuit circuit;
  std::array<std::vector<Qubit>, 4> words;
};

// Quarter round on two words; labels in `a` and `b` are updated in place.
void append_quarter_round(Circuit& circuit, std::vector<Qubit>& a,
                          std::vector<Qubit>& b, Qubit ancilla,
                          RotationMode mode = RotationMode::Relabel);

// Mixing function G with message words x and y.
void append_g(Circuit& circuit, std::vector<Qubit>& a, std::vector<Qubit>& b,
              std::span<const Qubit> x, std::span<const Qubit> y,
              Qubit ancilla, RotationMode mode = RotationMode::Relabel);

WordCircuit build_chacha_pi(const GroverLayout& layout, int rounds = 10,
                            RotationMode mode = RotationMode::Relabel);
WordCircuit build_blake_rounds(const GroverLayout& layout, int rho = 12,
                               RotationMode mode = RotationMode::Relabel);

// Oracle circuits: load the classical contents, compute, flip the Grover
// ancilla when the digest words match (control-on-0 for zero bits), mark
// kMidMarker, uncompute, unload. The MCX work qubit is the first adder
// ancilla. Throw std::invalid_argument when the spec and layout disagree.
Circuit build_sponge_oracle(const OracleSpec& spec, const GroverLayout& layout);
Circuit build_blake_oracle(const OracleSpec& spec, const GroverLayout& layout);
Circuit build_oracle(const OracleSpec& spec, const GroverLayout& layout);

// Inversion about the mean on `message`, realised as H, X, H-MCX-H on the
// last qubit, X, H. Throws std::invalid_argument when fewer than two qubits.
Circuit build_diffusion(std::uint32_t width, std::span<const Qubit> message,
                        Qubit work_qubit);

// Oracle followed by diffusion, with kMidMarker after the digest check.
Circuit build_grover_step(const OracleSpec& spec, const GroverLayout& layout);

// H on the message, X then H on the Grover ancilla.
Circuit build_preparation(const GroverLayout& layout);

// Basis-state check of an oracle without a statevector: each message is
// pushed through the reversible simulator, which must flip the Grover
// ancilla exactly for preimages and return every other qubit unchanged.
struct OracleCheck {
  std::uint64_t messages = 0;
  std::uint64_t preimages = 0;       // messages that flipped the ancilla
  std::uint64_t wrong_flips = 0;     // flip pattern disagrees with the hash
  std::uint64_t dirty = 0;           // some other qubit left changed
  bool pass() const { return messages > 0 && wrong_flips == 0 && dirty == 0; }
};
OracleCheck reversible_oracle_check(const OracleSpec& spec,
                                    std::span<const std::uint32_t> messages);

}  // namespace qhash
