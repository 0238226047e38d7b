#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qhash {

using Qubit = std::uint32_t;

enum class GateKind { X, Y, Z, H, CNOT, TOFFOLI, MULTI_CX };

std::string_view to_string(GateKind kind);
std::optional<GateKind> gate_kind_from_string(std::string_view name);

// A control line. `on_one == false` is a hollow (control-on-0) control.
struct Control {
  Qubit qubit = 0;
  bool on_one = true;

  friend bool operator==(const Control&, const Control&) = default;
};

// Reference to one bit of a named classical register. A gate carrying a
// condition only exists in the instantiated circuit when that bit is 1.
struct ClassicalBitRef {
  std::string reg;
  std::uint32_t bit = 0;

  friend bool operator==(const ClassicalBitRef&, const ClassicalBitRef&) = default;
};

struct Gate {
  GateKind kind = GateKind::X;
  std::vector<Control> controls;
  Qubit target = 0;
  std::optional<ClassicalBitRef> condition;

  static Gate x(Qubit target) { return {GateKind::X, {}, target, {}}; }
  static Gate y(Qubit target) { return {GateKind::Y, {}, target, {}}; }
  static Gate z(Qubit target) { return {GateKind::Z, {}, target, {}}; }
  static Gate h(Qubit target) { return {GateKind::H, {}, target, {}}; }
  static Gate cx(Qubit control, Qubit target) {
    return {GateKind::CNOT, {{control, true}}, target, {}};
  }
  static Gate ccx(Qubit c0, Qubit c1, Qubit target) {
    return {GateKind::TOFFOLI, {{c0, true}, {c1, true}}, target, {}};
  }
  // X with any number of controls; the kind follows the control count
  // (0 -> X, 1 -> CNOT, 2 -> TOFFOLI, 3+ -> MULTI_CX).
  static Gate controlled_x(std::vector<Control> controls, Qubit target);

  Gate& if_bit(std::string reg, std::uint32_t bit) {
    condition = ClassicalBitRef{std::move(reg), bit};
    return *this;
  }

  // Classical reversible gates permute basis states without phases.
  bool is_classical() const {
    return kind == GateKind::X || kind == GateKind::CNOT ||
           kind == GateKind::TOFFOLI || kind == GateKind::MULTI_CX;
  }
  bool has_negative_controls() const;

  // Controls followed by the target.
  std::vector<Qubit> qubits() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

// Throws std::invalid_argument when the control count does not match the
// kind or when a qubit appears twice.
void validate(const Gate& gate);

// Throws std::out_of_range when any qubit index is >= width.
void validate(const Gate& gate, std::uint32_t width);

}  // namespace qhash
