#include "qhash/circuit_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qhash {

void write_circuit(std::ostream& os, const Circuit& circuit) {
  os << "qhash-circuit 1\n";
  os << "width " << circuit.width() << '\n';
  for (const auto& [name, bits] : circuit.classical()) {
    os << "classical " << name << ' ';
    for (auto b : bits) os << (b ? '1' : '0');
    os << '\n';
  }
  for (const auto& [name, qubits] : circuit.registers().registers()) {
    os << "register " << name;
    for (Qubit q : qubits) os << ' ' << q;
    os << '\n';
  }
  if (circuit.work_qubit()) os << "work " << *circuit.work_qubit() << '\n';
  for (const auto& [name, pos] : circuit.markers()) {
    os << "marker " << name << ' ' << pos << '\n';
  }
  for (const auto& g : circuit.gates()) {
    os << to_string(g.kind);
    for (const auto& c : g.controls) {
      os << ' ' << (c.on_one ? '+' : '-') << c.qubit;
    }
    os << ' ' << g.target;
    if (g.condition) {
      os << " if " << g.condition->reg << '[' << g.condition->bit << ']';
    }
    os << '\n';
  }
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream os;
  write_circuit(os, circuit);
  return os.str();
}

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw std::runtime_error("circuit text line " + std::to_string(line_no) +
                           ": " + msg);
}

Qubit parse_qubit(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(tok, &used);
    if (used != tok.size()) fail(line_no, "bad qubit '" + tok + "'");
    return static_cast<Qubit>(v);
  } catch (const std::logic_error&) {
    fail(line_no, "bad qubit '" + tok + "'");
  }
}

}  // namespace

Circuit read_circuit(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  Circuit circuit;
  bool have_width = false;
  std::map<std::string, std::size_t> markers;

  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_line() || line != "qhash-circuit 1") {
    fail(line_no, "missing 'qhash-circuit 1' header");
  }
  while (next_line()) {
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "width") {
      std::uint32_t w = 0;
      if (!(ls >> w)) fail(line_no, "bad width");
      circuit = Circuit(w);
      have_width = true;
      continue;
    }
    if (!have_width) fail(line_no, "width must come first");
    if (head == "classical") {
      std::string name, bits;
      if (!(ls >> name >> bits)) fail(line_no, "bad classical register");
      std::vector<std::uint8_t> v;
      for (char ch : bits) {
        if (ch != '0' && ch != '1') fail(line_no, "classical bits must be 0/1");
        v.push_back(ch == '1');
      }
      circuit.set_classical(name, std::move(v));
    } else if (head == "register") {
      std::string name, tok;
      if (!(ls >> name)) fail(line_no, "bad register");
      std::vector<Qubit> qs;
      while (ls >> tok) qs.push_back(parse_qubit(tok, line_no));
      try {
        circuit.registers().add(name, std::move(qs));
      } catch (const std::exception& e) {
        fail(line_no, e.what());
      }
    } else if (head == "work") {
      std::string tok;
      if (!(ls >> tok)) fail(line_no, "bad work qubit");
      circuit.set_work_qubit(parse_qubit(tok, line_no));
    } else if (head == "marker") {
      std::string name;
      std::size_t pos = 0;
      if (!(ls >> name >> pos)) fail(line_no, "bad marker");
      markers[name] = pos;
    } else {
      auto kind = gate_kind_from_string(head);
      if (!kind) fail(line_no, "unknown gate kind '" + head + "'");
      std::vector<std::string> toks;
      std::string tok;
      while (ls >> tok) toks.push_back(tok);
      Gate g;
      g.kind = *kind;
      std::size_t end = toks.size();
      if (end >= 2 && toks[end - 2] == "if") {
        const auto& ref = toks[end - 1];
        const auto lb = ref.find('[');
        if (lb == std::string::npos || ref.back() != ']') {
          fail(line_no, "bad condition '" + ref + "'");
        }
        g.condition = ClassicalBitRef{
            ref.substr(0, lb),
            parse_qubit(ref.substr(lb + 1, ref.size() - lb - 2), line_no)};
        end -= 2;
      }
      if (end == 0) fail(line_no, "missing target");
      for (std::size_t i = 0; i + 1 < end; ++i) {
        const auto& t = toks[i];
        if (t.empty() || (t[0] != '+' && t[0] != '-')) {
          fail(line_no, "control '" + t + "' lacks a polarity tag");
        }
        g.controls.push_back({parse_qubit(t.substr(1), line_no), t[0] == '+'});
      }
      g.target = parse_qubit(toks[end - 1], line_no);
      try {
        circuit.append(std::move(g));
      } catch (const std::exception& e) {
        fail(line_no, e.what());
      }
    }
  }
  if (!have_width) fail(line_no, "empty circuit text");
  // Markers are positions in the gate list, so they are replayed last.
  Circuit out(circuit.width());
  out.registers() = circuit.registers();
  out.classical() = circuit.classical();
  if (circuit.work_qubit()) out.set_work_qubit(*circuit.work_qubit());
  for (std::size_t i = 0; i <= circuit.size(); ++i) {
    for (const auto& [name, pos] : markers) {
      if (pos == i) out.set_marker(name);
    }
    if (i < circuit.size()) out.append(circuit.gates()[i]);
  }
  for (const auto& [name, pos] : markers) {
    if (pos > circuit.size()) fail(line_no, "marker '" + name + "' past end");
  }
  return out;
}

Circuit circuit_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_circuit(is);
}

}  // namespace qhash
