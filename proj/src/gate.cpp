#include "qhash/gate.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace qhash {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 7> kNames{{
    {GateKind::X, "X"},
    {GateKind::Y, "Y"},
    {GateKind::Z, "Z"},
    {GateKind::H, "H"},
    {GateKind::CNOT, "CNOT"},
    {GateKind::TOFFOLI, "TOFFOLI"},
    {GateKind::MULTI_CX, "MULTI_CX"},
}};

}  // namespace

std::string_view to_string(GateKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

Gate Gate::controlled_x(std::vector<Control> controls, Qubit target) {
  GateKind kind = GateKind::MULTI_CX;
  switch (controls.size()) {
    case 0: kind = GateKind::X; break;
    case 1: kind = GateKind::CNOT; break;
    case 2: kind = GateKind::TOFFOLI; break;
    default: break;
  }
  return {kind, std::move(controls), target, {}};
}

bool Gate::has_negative_controls() const {
  return std::any_of(controls.begin(), controls.end(),
                     [](const Control& c) { return !c.on_one; });
}

std::vector<Qubit> Gate::qubits() const {
  std::vector<Qubit> out;
  out.reserve(controls.size() + 1);
  for (const auto& c : controls) out.push_back(c.qubit);
  out.push_back(target);
  return out;
}

void validate(const Gate& gate) {
  const auto n = gate.controls.size();
  bool ok = false;
  switch (gate.kind) {
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::H: ok = n == 0; break;
    case GateKind::CNOT: ok = n == 1; break;
    case GateKind::TOFFOLI: ok = n == 2; break;
    case GateKind::MULTI_CX: ok = n >= 3; break;
  }
  if (!ok) {
    throw std::invalid_argument(std::string(to_string(gate.kind)) +
                                " gate with " + std::to_string(n) +
                                " controls");
  }
  auto qs = gate.qubits();
  std::sort(qs.begin(), qs.end());
  if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) {
    throw std::invalid_argument("duplicate qubit index in " +
                                std::string(to_string(gate.kind)) + " gate");
  }
}

void validate(const Gate& gate, std::uint32_t width) {
  validate(gate);
  for (Qubit q : gate.qubits()) {
    if (q >= width) {
      throw std::out_of_range("qubit index " + std::to_string(q) +
                              " out of range for width " +
                              std::to_string(width));
    }
  }
}

}  // namespace qhash
