#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhash/gate.hpp"

namespace qhash {

enum class RotateDirection { Left, Right };

// Logical wire labels -> physical qubits. Entry `i` of a register is the
// physical qubit holding bit `i` (least significant first). Rotations are
// relabelings of this map and cost no gates.
class RegisterMap {
 public:
  // Throws std::invalid_argument on a duplicate name or when a physical
  // qubit is already claimed by another register.
  void add(const std::string& name, std::vector<Qubit> qubits);

  bool contains(const std::string& name) const;
  const std::vector<Qubit>& at(const std::string& name) const;
  Qubit qubit(const std::string& name, std::size_t bit) const;
  const std::map<std::string, std::vector<Qubit>>& registers() const {
    return regs_;
  }

  // Replaces the qubit list of an existing register. The new list must be a
  // permutation of the old one.
  void relabel(const std::string& name, std::vector<Qubit> qubits);

  friend bool operator==(const RegisterMap&, const RegisterMap&) = default;

 private:
  std::map<std::string, std::vector<Qubit>> regs_;
};

// Cyclic rotation of a register's contents by `amount` positions. Only the
// labels move. Throws std::out_of_range for an unknown register.
RegisterMap rotate_register(const RegisterMap& map, const std::string& reg,
                            int amount, RotateDirection direction);

// In-place variant used by the circuit builders.
void rotate_in_place(std::vector<Qubit>& word, int amount,
                     RotateDirection direction);

using ClassicalRegisters = std::map<std::string, std::vector<std::uint8_t>>;

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::uint32_t width) : width_(width) {}

  std::uint32_t width() const { return width_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  // Validates indices against the width and the classical register
  // reference, if any.
  void append(Gate gate);
  // Appends another circuit of the same width. Its markers are shifted.
  void append(const Circuit& other);

  RegisterMap& registers() { return registers_; }
  const RegisterMap& registers() const { return registers_; }

  ClassicalRegisters& classical() { return classical_; }
  const ClassicalRegisters& classical() const { return classical_; }
  void set_classical(const std::string& name, std::vector<std::uint8_t> bits);
  // Value of a conditioned gate's classical bit; true for unconditioned
  // gates. Throws std::out_of_range on a dangling reference.
  bool condition_holds(const Gate& gate) const;

  // Named positions in the gate list: marker `p` sits after gate p-1.
  void set_marker(const std::string& name) { markers_[name] = gates_.size(); }
  std::optional<std::size_t> marker(const std::string& name) const;
  const std::map<std::string, std::size_t>& markers() const { return markers_; }

  // Qubit used as borrowed work space when lowering MULTI_CX gates.
  std::optional<Qubit> work_qubit() const { return work_qubit_; }
  void set_work_qubit(Qubit q);

  // Every gate in the IR is self-inverse, so the inverse is the reversed
  // gate list.
  Circuit inverse() const;

 private:
  std::uint32_t width_ = 0;
  std::vector<Gate> gates_;
  RegisterMap registers_;
  ClassicalRegisters classical_;
  std::map<std::string, std::size_t> markers_;
  std::optional<Qubit> work_qubit_;
};

}  // namespace qhash
