#include "qhash/circuit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qhash {

void RegisterMap::add(const std::string& name, std::vector<Qubit> qubits) {
  if (regs_.contains(name)) {
    throw std::invalid_argument("register '" + name + "' already defined");
  }
  std::set<Qubit> used;
  for (const auto& [_, qs] : regs_) used.insert(qs.begin(), qs.end());
  std::set<Qubit> mine;
  for (Qubit q : qubits) {
    if (used.contains(q) || !mine.insert(q).second) {
      throw std::invalid_argument("qubit " + std::to_string(q) +
                                  " labelled twice (register '" + name + "')");
    }
  }
  regs_.emplace(name, std::move(qubits));
}

bool RegisterMap::contains(const std::string& name) const {
  return regs_.contains(name);
}

const std::vector<Qubit>& RegisterMap::at(const std::string& name) const {
  auto it = regs_.find(name);
  if (it == regs_.end()) {
    throw std::out_of_range("unknown register '" + name + "'");
  }
  return it->second;
}

Qubit RegisterMap::qubit(const std::string& name, std::size_t bit) const {
  const auto& qs = at(name);
  if (bit >= qs.size()) {
    throw std::out_of_range("bit " + std::to_string(bit) +
                            " out of range for register '" + name + "'");
  }
  return qs[bit];
}

void RegisterMap::relabel(const std::string& name, std::vector<Qubit> qubits) {
  auto it = regs_.find(name);
  if (it == regs_.end()) {
    throw std::out_of_range("unknown register '" + name + "'");
  }
  auto a = it->second;
  auto b = qubits;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) {
    throw std::invalid_argument("relabel of '" + name +
                                "' is not a permutation of its qubits");
  }
  it->second = std::move(qubits);
}

void rotate_in_place(std::vector<Qubit>& word, int amount,
                     RotateDirection direction) {
  const auto n = static_cast<int>(word.size());
  if (n == 0) return;
  int k = ((amount % n) + n) % n;
  // Left rotation by k: new bit i holds old bit (i - k) mod n.
  if (direction == RotateDirection::Left) {
    std::rotate(word.begin(), word.begin() + (n - k) % n, word.end());
  } else {
    std::rotate(word.begin(), word.begin() + k, word.end());
  }
}

RegisterMap rotate_register(const RegisterMap& map, const std::string& reg,
                            int amount, RotateDirection direction) {
  auto word = map.at(reg);
  rotate_in_place(word, amount, direction);
  RegisterMap out = map;
  out.relabel(reg, std::move(word));
  return out;
}

void Circuit::append(Gate gate) {
  validate(gate, width_);
  if (gate.condition) {
    auto it = classical_.find(gate.condition->reg);
    if (it == classical_.end() || gate.condition->bit >= it->second.size()) {
      throw std::out_of_range("gate conditioned on unknown classical bit " +
                              gate.condition->reg + "[" +
                              std::to_string(gate.condition->bit) + "]");
    }
  }
  gates_.push_back(std::move(gate));
}

void Circuit::append(const Circuit& other) {
  if (other.width_ != width_) {
    throw std::invalid_argument("cannot append circuit of width " +
                                std::to_string(other.width_) + " to width " +
                                std::to_string(width_));
  }
  for (const auto& [name, bits] : other.classical_) {
    auto it = classical_.find(name);
    if (it == classical_.end()) {
      classical_.emplace(name, bits);
    } else if (it->second != bits) {
      throw std::invalid_argument("conflicting classical register '" + name +
                                  "'");
    }
  }
  const auto offset = gates_.size();
  for (const auto& [name, pos] : other.markers_) markers_[name] = pos + offset;
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  if (!work_qubit_) work_qubit_ = other.work_qubit_;
}

void Circuit::set_classical(const std::string& name,
                            std::vector<std::uint8_t> bits) {
  classical_[name] = std::move(bits);
}

bool Circuit::condition_holds(const Gate& gate) const {
  if (!gate.condition) return true;
  auto it = classical_.find(gate.condition->reg);
  if (it == classical_.end() || gate.condition->bit >= it->second.size()) {
    throw std::out_of_range("dangling classical condition on register '" +
                            gate.condition->reg + "'");
  }
  return it->second[gate.condition->bit] != 0;
}

std::optional<std::size_t> Circuit::marker(const std::string& name) const {
  auto it = markers_.find(name);
  if (it == markers_.end()) return std::nullopt;
  return it->second;
}

void Circuit::set_work_qubit(Qubit q) {
  if (q >= width_) throw std::out_of_range("work qubit out of range");
  work_qubit_ = q;
}

Circuit Circuit::inverse() const {
  Circuit inv = *this;
  std::reverse(inv.gates_.begin(), inv.gates_.end());
  for (auto& [_, pos] : inv.markers_) pos = gates_.size() - pos;
  return inv;
}

}  // namespace qhash
