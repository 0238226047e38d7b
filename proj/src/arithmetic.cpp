#include "qhash/arithmetic.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qhash {

namespace {

void require_disjoint(std::span<const Qubit> a, std::span<const Qubit> b,
                      const char* what) {
  std::set<Qubit> seen(a.begin(), a.end());
  if (seen.size() != a.size()) {
    throw std::invalid_argument(std::string(what) + ": repeated qubit");
  }
  for (Qubit q : b) {
    if (!seen.insert(q).second) {
      throw std::invalid_argument(std::string(what) + ": overlapping registers");
    }
  }
}

Gate toffoli_or_cx(std::vector<Control> controls, Qubit target) {
  return Gate::controlled_x(std::move(controls), target);
}

std::vector<Control> positive(std::span<const Qubit> qs) {
  std::vector<Control> out;
  out.reserve(qs.size());
  for (Qubit q : qs) out.push_back({q, true});
  return out;
}

// C^k X for any k >= 1 given enough borrowed qubits for k >= 3.
void append_cx(std::vector<Gate>& out, std::span<const Qubit> controls,
               Qubit target, std::span<const Qubit> borrowed) {
  if (controls.size() <= 2) {
    out.push_back(toffoli_or_cx(positive(controls), target));
    return;
  }
  auto chain = multi_cx_with_borrowed(controls, target, borrowed);
  out.insert(out.end(), chain.begin(), chain.end());
}

}  // namespace

void xor_into(Circuit& circuit, std::span<const Qubit> source,
              std::span<const Qubit> dest) {
  if (source.size() != dest.size()) {
    throw std::invalid_argument("xor_into: width mismatch");
  }
  require_disjoint(source, dest, "xor_into");
  for (std::size_t i = 0; i < source.size(); ++i) {
    circuit.append(Gate::cx(source[i], dest[i]));
  }
}

void add_mod2n(Circuit& circuit, std::span<const Qubit> a,
               std::span<const Qubit> b, Qubit ancilla) {
  const std::size_t n = a.size();
  if (n == 0 || b.size() != n) {
    throw std::invalid_argument("add_mod2n: width mismatch");
  }
  require_disjoint(a, b, "add_mod2n");
  if (std::find(a.begin(), a.end(), ancilla) != a.end() ||
      std::find(b.begin(), b.end(), ancilla) != b.end()) {
    throw std::invalid_argument("add_mod2n: ancilla overlaps a register");
  }
  if (n == 1) {
    circuit.append(Gate::cx(b[0], a[0]));
    return;
  }
  // The carry into bit i lives on the ancilla (i = 0) or on b[i-1] while
  // the MAJ chain is unwound.
  auto carry = [&](std::size_t i) { return i == 0 ? ancilla : b[i - 1]; };

  for (std::size_t i = 0; i + 1 < n; ++i) {  // MAJ
    circuit.append(Gate::cx(b[i], a[i]));
    circuit.append(Gate::cx(b[i], carry(i)));
    circuit.append(Gate::ccx(carry(i), a[i], b[i]));
  }
  // Top bit: sum only, no carry out.
  circuit.append(Gate::cx(b[n - 1], a[n - 1]));
  circuit.append(Gate::cx(b[n - 2], a[n - 1]));

  for (std::size_t k = n - 1; k-- > 0;) {  // UMA, top down
    const Qubit c = carry(k);
    if (k == n - 2) {
      circuit.append(Gate::ccx(c, a[k], b[k]));
      circuit.append(Gate::cx(b[k], c));
      circuit.append(Gate::cx(c, a[k]));
    } else {
      circuit.append(Gate::x(a[k]));
      circuit.append(Gate::cx(c, a[k]));
      circuit.append(Gate::ccx(c, a[k], b[k]));
      circuit.append(Gate::x(a[k]));
      circuit.append(Gate::cx(b[k], c));
      circuit.append(Gate::cx(b[k], a[k]));
    }
  }
}

std::vector<Gate> multi_cx_with_borrowed(std::span<const Qubit> controls,
                                         Qubit target,
                                         std::span<const Qubit> borrowed) {
  const std::size_t k = controls.size();
  if (k < 3) throw std::invalid_argument("V-chain needs at least 3 controls");
  if (borrowed.size() < k - 2) {
    throw std::invalid_argument("V-chain needs k-2 borrowed qubits");
  }
  // stage(j), j in [2, k]: Toffoli onto the j-th rung. Rung k is the target.
  auto stage = [&](std::size_t j) {
    if (j == 2) return Gate::ccx(controls[0], controls[1], borrowed[0]);
    const Qubit out = j == k ? target : borrowed[j - 2];
    return Gate::ccx(controls[j - 1], borrowed[j - 3], out);
  };
  std::vector<Gate> out;
  out.reserve(4 * (k - 2));
  for (std::size_t j = k; j >= 3; --j) out.push_back(stage(j));
  out.push_back(stage(2));
  for (std::size_t j = 3; j <= k; ++j) out.push_back(stage(j));
  for (std::size_t j = k - 1; j >= 3; --j) out.push_back(stage(j));
  out.push_back(stage(2));
  for (std::size_t j = 3; j + 1 <= k; ++j) out.push_back(stage(j));
  return out;
}

std::vector<Gate> decompose_multi_cx(const Gate& gate, Qubit work_qubit) {
  validate(gate);
  if (gate.kind != GateKind::MULTI_CX) return {gate};
  for (Qubit q : gate.qubits()) {
    if (q == work_qubit) {
      throw std::invalid_argument("work qubit collides with gate qubits");
    }
  }

  std::vector<Gate> out;
  std::vector<Qubit> flipped;
  for (const auto& c : gate.controls) {
    if (!c.on_one) flipped.push_back(c.qubit);
  }
  for (Qubit q : flipped) out.push_back(Gate::x(q));

  std::vector<Qubit> ctrl;
  for (const auto& c : gate.controls) ctrl.push_back(c.qubit);
  const std::size_t k = ctrl.size();
  const std::size_t m1 = (k + 1) / 2;
  std::span<const Qubit> first(ctrl.data(), m1);
  std::span<const Qubit> second(ctrl.data() + m1, k - m1);

  // First half computes into the work qubit, borrowing the second half and
  // the target; second half plus work qubit hits the target, borrowing the
  // first half.
  std::vector<Qubit> borrow_a(second.begin(), second.end());
  borrow_a.push_back(gate.target);
  std::vector<Qubit> ctrl_b(second.begin(), second.end());
  ctrl_b.push_back(work_qubit);

  for (int rep = 0; rep < 2; ++rep) {
    append_cx(out, first, work_qubit, borrow_a);
    append_cx(out, ctrl_b, gate.target, first);
  }

  for (Qubit q : flipped) out.push_back(Gate::x(q));
  return out;
}

Circuit resolve_classical(const Circuit& circuit) {
  Circuit out(circuit.width());
  out.registers() = circuit.registers();
  out.classical() = circuit.classical();
  if (circuit.work_qubit()) out.set_work_qubit(*circuit.work_qubit());

  std::vector<std::pair<std::string, std::size_t>> markers(
      circuit.markers().begin(), circuit.markers().end());
  const auto& gates = circuit.gates();
  for (std::size_t i = 0; i <= gates.size(); ++i) {
    for (const auto& [name, pos] : markers) {
      if (pos == i) out.set_marker(name);
    }
    if (i == gates.size()) break;
    if (!circuit.condition_holds(gates[i])) continue;
    Gate g = gates[i];
    g.condition.reset();
    out.append(std::move(g));
  }
  return out;
}

Circuit instantiate(const Circuit& circuit) {
  Circuit resolved = resolve_classical(circuit);
  Circuit out(resolved.width());
  out.registers() = resolved.registers();
  out.classical() = resolved.classical();
  if (resolved.work_qubit()) out.set_work_qubit(*resolved.work_qubit());

  const auto& gates = resolved.gates();
  for (std::size_t i = 0; i <= gates.size(); ++i) {
    for (const auto& [name, pos] : resolved.markers()) {
      if (pos == i) out.set_marker(name);
    }
    if (i == gates.size()) break;
    const Gate& g = gates[i];
    if (g.kind == GateKind::MULTI_CX) {
      if (!resolved.work_qubit()) {
        throw std::invalid_argument(
            "circuit has MULTI_CX gates but no work qubit");
      }
      for (auto& e : decompose_multi_cx(g, *resolved.work_qubit())) {
        out.append(std::move(e));
      }
      continue;
    }
    if (g.has_negative_controls()) {
      Gate pos = g;
      for (auto& c : pos.controls) {
        if (!c.on_one) out.append(Gate::x(c.qubit));
      }
      for (auto& c : pos.controls) c.on_one = true;
      out.append(pos);
      for (const auto& c : g.controls) {
        if (!c.on_one) out.append(Gate::x(c.qubit));
      }
      continue;
    }
    out.append(g);
  }
  return out;
}

}  // namespace qhash
