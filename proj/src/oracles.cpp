#include "qhash/oracles.hpp"

#include <numeric>
#include <stdexcept>

#include "qhash/arithmetic.hpp"
#include "qhash/reversible.hpp"

namespace qhash {

namespace {

std::vector<Qubit> iota_qubits(Qubit first, Qubit count) {
  std::vector<Qubit> v(count);
  std::iota(v.begin(), v.end(), first);
  return v;
}

void check_budget(unsigned budget) {
  if (budget < 1 || budget > 2) {
    throw std::invalid_argument("ancilla budget must be 1 or 2");
  }
}

void swap_qubits(Circuit& c, Qubit x, Qubit y) {
  c.append(Gate::cx(x, y));
  c.append(Gate::cx(y, x));
  c.append(Gate::cx(x, y));
}

void rotate(Circuit& c, std::vector<Qubit>& word, int amount,
            RotateDirection dir, RotationMode mode) {
  if (mode == RotationMode::Relabel) {
    rotate_in_place(word, amount, dir);
    return;
  }
  const int n = static_cast<int>(word.size());
  int left = ((dir == RotateDirection::Left ? amount : -amount) % n + n) % n;
  for (; left > 0; --left) {
    for (int i = n - 1; i > 0; --i) swap_qubits(c, word[i], word[i - 1]);
  }
}

void check_spec(const OracleSpec& spec, const GroverLayout& layout,
                HashKind kind) {
  if (spec.hash.kind != kind || layout.kind != kind) {
    throw std::invalid_argument("oracle spec, layout and builder disagree on "
                                "the hash kind");
  }
  if (layout.adder_ancillas.size() < spec.ancilla_budget) {
    throw std::invalid_argument("layout has fewer adder ancillas than the "
                                "spec's budget");
  }
}

Circuit oracle_around(const OracleSpec& spec, const GroverLayout& layout,
                      const WordCircuit& inner) {
  Circuit c(layout.width);
  for (int k = 0; k < 4; ++k) {
    c.registers().add("v" + std::to_string(k), layout.words[k]);
  }
  if (layout.kind == HashKind::Blake) {
    for (int k = 0; k < 4; ++k) {
      c.registers().add("d" + std::to_string(k), layout.message_word(k));
    }
  }
  c.registers().add("adder", layout.adder_ancillas);
  c.registers().add("grover", {layout.grover_ancilla});
  c.set_work_qubit(layout.work_qubit());

  const auto reg = spec.classical_register();
  const auto bits = spec.classical_bits();
  c.set_classical(reg, bits);
  auto load = [&] {
    for (std::uint32_t k = 0; k < bits.size(); ++k) {
      c.append(Gate::x(layout.words[k / 4][k % 4]).if_bit(reg, k));
    }
  };

  load();
  c.append(inner.circuit);
  std::vector<Control> controls;
  for (int j = 0; j < 8; ++j) {
    controls.push_back(
        {inner.words[j / 4][j % 4], ((spec.target_digest >> j) & 1U) != 0});
  }
  c.append(Gate::controlled_x(controls, layout.grover_ancilla));
  c.set_marker(kMidMarker);
  c.append(inner.circuit.inverse());
  load();
  return c;
}

}  // namespace

std::vector<std::uint8_t> OracleSpec::classical_bits() const {
  std::uint16_t value = 0;
  if (hash.kind == HashKind::Sponge) {
    value = hash.iv;
  } else {
    const auto v = blake_initial_vector(hash.blake);
    for (int k = 0; k < 4; ++k) value |= static_cast<std::uint16_t>(v[k] << (4 * k));
  }
  std::vector<std::uint8_t> bits(16);
  for (int k = 0; k < 16; ++k) bits[k] = (value >> k) & 1U;
  return bits;
}

std::string OracleSpec::classical_register() const {
  return hash.kind == HashKind::Sponge ? "iv" : "c";
}

GroverLayout GroverLayout::sponge(unsigned ancilla_budget) {
  check_budget(ancilla_budget);
  GroverLayout l;
  l.kind = HashKind::Sponge;
  l.message = iota_qubits(0, 8);
  for (Qubit k = 0; k < 4; ++k) l.words[k] = iota_qubits(4 * k, 4);
  l.adder_ancillas = iota_qubits(16, ancilla_budget);
  l.grover_ancilla = 16 + ancilla_budget;
  l.width = l.grover_ancilla + 1;
  return l;
}

GroverLayout GroverLayout::blake(unsigned ancilla_budget) {
  check_budget(ancilla_budget);
  GroverLayout l;
  l.kind = HashKind::Blake;
  l.message = iota_qubits(0, 16);
  for (Qubit k = 0; k < 4; ++k) l.words[k] = iota_qubits(16 + 4 * k, 4);
  l.adder_ancillas = iota_qubits(32, ancilla_budget);
  l.grover_ancilla = 32 + ancilla_budget;
  l.width = l.grover_ancilla + 1;
  return l;
}

GroverLayout GroverLayout::for_spec(const OracleSpec& spec) {
  return spec.hash.kind == HashKind::Sponge ? sponge(spec.ancilla_budget)
                                            : blake(spec.ancilla_budget);
}

std::vector<Qubit> GroverLayout::message_word(int k) const {
  return {message.begin() + 4 * k, message.begin() + 4 * k + 4};
}

void append_quarter_round(Circuit& circuit, std::vector<Qubit>& a,
                          std::vector<Qubit>& b, Qubit ancilla,
                          RotationMode mode) {
  add_mod2n(circuit, a, b, ancilla);
  xor_into(circuit, a, b);
  rotate(circuit, b, 2, RotateDirection::Left, mode);
  add_mod2n(circuit, a, b, ancilla);
  xor_into(circuit, a, b);
  rotate(circuit, b, 1, RotateDirection::Left, mode);
}

void append_g(Circuit& circuit, std::vector<Qubit>& a, std::vector<Qubit>& b,
              std::span<const Qubit> x, std::span<const Qubit> y,
              Qubit ancilla, RotationMode mode) {
  add_mod2n(circuit, a, b, ancilla);
  add_mod2n(circuit, a, x, ancilla);
  xor_into(circuit, a, b);
  rotate(circuit, b, 2, RotateDirection::Right, mode);
  add_mod2n(circuit, a, b, ancilla);
  add_mod2n(circuit, a, y, ancilla);
  xor_into(circuit, a, b);
  rotate(circuit, b, 1, RotateDirection::Right, mode);
}

WordCircuit build_chacha_pi(const GroverLayout& layout, int rounds,
                            RotationMode mode) {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  WordCircuit out{Circuit(layout.width), layout.words};
  auto& v = out.words;
  const Qubit anc0 = layout.adder_ancillas.front();
  const Qubit anc1 = layout.adder_ancillas.back();
  for (int r = 0; r < rounds; ++r) {
    append_quarter_round(out.circuit, v[0], v[2], anc0, mode);
    append_quarter_round(out.circuit, v[1], v[3], anc1, mode);
    append_quarter_round(out.circuit, v[0], v[3], anc0, mode);
    append_quarter_round(out.circuit, v[1], v[2], anc1, mode);
  }
  return out;
}

WordCircuit build_blake_rounds(const GroverLayout& layout, int rho,
                               RotationMode mode) {
  if (rho < 1) throw std::invalid_argument("rho must be >= 1");
  if (layout.kind != HashKind::Blake) {
    throw std::invalid_argument("blake rounds need a blake layout");
  }
  WordCircuit out{Circuit(layout.width), layout.words};
  auto& v = out.words;
  std::array<std::vector<Qubit>, 4> d;
  for (int k = 0; k < 4; ++k) d[k] = layout.message_word(k);
  const Qubit anc0 = layout.adder_ancillas.front();
  const Qubit anc1 = layout.adder_ancillas.back();
  for (int r = 0; r < rho; ++r) {
    const auto s = blake_schedule(r);
    append_g(out.circuit, v[0], v[2], d[s[0]], d[s[1]], anc0, mode);
    append_g(out.circuit, v[1], v[3], d[s[2]], d[s[3]], anc1, mode);
    append_g(out.circuit, v[0], v[3], d[s[0]], d[s[1]], anc0, mode);
    append_g(out.circuit, v[1], v[2], d[s[2]], d[s[3]], anc1, mode);
  }
  return out;
}

Circuit build_sponge_oracle(const OracleSpec& spec, const GroverLayout& layout) {
  check_spec(spec, layout, HashKind::Sponge);
  return oracle_around(spec, layout, build_chacha_pi(layout, spec.hash.rounds));
}

Circuit build_blake_oracle(const OracleSpec& spec, const GroverLayout& layout) {
  check_spec(spec, layout, HashKind::Blake);
  return oracle_around(spec, layout,
                       build_blake_rounds(layout, spec.hash.blake.rho));
}

Circuit build_oracle(const OracleSpec& spec, const GroverLayout& layout) {
  return spec.hash.kind == HashKind::Sponge ? build_sponge_oracle(spec, layout)
                                            : build_blake_oracle(spec, layout);
}

Circuit build_diffusion(std::uint32_t width, std::span<const Qubit> message,
                        Qubit work_qubit) {
  if (message.size() < 2) {
    throw std::invalid_argument("diffusion needs at least two qubits");
  }
  Circuit c(width);
  c.set_work_qubit(work_qubit);
  for (Qubit q : message) c.append(Gate::h(q));
  for (Qubit q : message) c.append(Gate::x(q));
  const Qubit last = message.back();
  c.append(Gate::h(last));
  std::vector<Control> controls;
  for (std::size_t i = 0; i + 1 < message.size(); ++i) {
    controls.push_back({message[i], true});
  }
  c.append(Gate::controlled_x(controls, last));
  c.append(Gate::h(last));
  for (Qubit q : message) c.append(Gate::x(q));
  for (Qubit q : message) c.append(Gate::h(q));
  return c;
}

Circuit build_grover_step(const OracleSpec& spec, const GroverLayout& layout) {
  Circuit step = build_oracle(spec, layout);
  step.append(build_diffusion(layout.width, layout.message, layout.work_qubit()));
  return step;
}

Circuit build_preparation(const GroverLayout& layout) {
  Circuit c(layout.width);
  for (Qubit q : layout.message) c.append(Gate::h(q));
  c.append(Gate::x(layout.grover_ancilla));
  c.append(Gate::h(layout.grover_ancilla));
  return c;
}

OracleCheck reversible_oracle_check(const OracleSpec& spec,
                                    std::span<const std::uint32_t> messages) {
  const auto layout = GroverLayout::for_spec(spec);
  const auto oracle = build_oracle(spec, layout);
  const std::uint64_t ancilla = std::uint64_t{1} << layout.grover_ancilla;
  OracleCheck out;
  for (const auto m : messages) {
    if (m >> spec.hash.message_bits()) throw std::invalid_argument("message out of range");
    std::uint64_t in = 0;
    for (std::size_t b = 0; b < layout.message.size(); ++b) {
      in |= std::uint64_t{(m >> b) & 1U} << layout.message[b];
    }
    const auto res = reversible_run(oracle, BasisState{in});
    const bool flipped = (res.bits & ancilla) != 0;
    ++out.messages;
    out.preimages += flipped;
    out.wrong_flips += flipped != (spec.hash(m) == spec.target_digest);
    out.dirty += (res.bits & ~ancilla) != in;
  }
  return out;
}

}  // namespace qhash
