#pragma once

#include <cstdint>

#include "qhash/circuit.hpp"

namespace qhash {

struct ResourceCount {
  std::int64_t toffoli = 0;
  std::int64_t cnot = 0;
  std::int64_t single = 0;
  std::int64_t depth = 0;
  std::int64_t width = 0;

  std::int64_t total() const { return toffoli + cnot + single; }
  friend bool operator==(const ResourceCount&, const ResourceCount&) = default;
};

// Tallies an instantiated circuit. Depth is the ASAP layer count where a gate
// occupies every qubit it touches. Throws std::invalid_argument when the
// circuit still holds MULTI_CX gates, negative controls or classical
// conditions (run instantiate() first).
ResourceCount count_resources(const Circuit& circuit);

}  // namespace qhash
