#pragma once

#include <iosfwd>
#include <string>

#include "qhash/circuit.hpp"

namespace qhash {

// Line-oriented text form, one gate per line:
//
//   qhash-circuit 1
//   width 19
//   classical iv 0000000000000000      (bit 0 first)
//   register m 0 1 2 3 4 5 6 7
//   work 16
//   marker mid 2243
//   CNOT +3 7
//   MULTI_CX +0 -1 +2 +3 18
//   X 5 if iv[3]
//
// Controls carry a polarity tag: '+' fires on 1, '-' fires on 0. Header
// lines come before the first gate.
void write_circuit(std::ostream& os, const Circuit& circuit);
std::string to_text(const Circuit& circuit);

// Throws std::runtime_error with the offending line number on bad input.
Circuit read_circuit(std::istream& is);
Circuit circuit_from_text(const std::string& text);

}  // namespace qhash
