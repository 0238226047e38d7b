#include "qhash/resources.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qhash {

ResourceCount count_resources(const Circuit& circuit) {
  ResourceCount rc;
  rc.width = circuit.width();
  std::vector<std::int64_t> level(circuit.width(), 0);
  for (const auto& g : circuit.gates()) {
    if (g.kind == GateKind::MULTI_CX) {
      throw std::invalid_argument(
          "count_resources: undecomposed MULTI_CX gate (instantiate first)");
    }
    if (g.condition) {
      throw std::invalid_argument(
          "count_resources: unresolved classical condition");
    }
    if (g.has_negative_controls()) {
      throw std::invalid_argument(
          "count_resources: control-on-0 not lowered to X conjugation");
    }
    switch (g.kind) {
      case GateKind::TOFFOLI: ++rc.toffoli; break;
      case GateKind::CNOT: ++rc.cnot; break;
      default: ++rc.single; break;
    }
    std::int64_t layer = 0;
    for (const auto& c : g.controls) layer = std::max(layer, level[c.qubit]);
    layer = std::max(layer, level[g.target]) + 1;
    for (const auto& c : g.controls) level[c.qubit] = layer;
    level[g.target] = layer;
    rc.depth = std::max(rc.depth, layer);
  }
  return rc;
}

}  // namespace qhash
