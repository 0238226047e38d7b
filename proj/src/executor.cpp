#include "qhash/executor.hpp"

#include <algorithm>
#include <type_traits>
#include <set>
#include <stdexcept>

#include "qhash/arithmetic.hpp"
#include "qhash/reversible.hpp"

namespace qhash {

namespace {

// Partial runs of a fused segment up to this length go gate by gate.
constexpr std::size_t kShortRun = 16;

}  // namespace

CompiledCircuit::CompiledCircuit(const Circuit& circuit, ExecutorOptions options)
    : circuit_(resolve_classical(circuit)), options_(options) {
  if (circuit_.width() > 30) {
    throw std::invalid_argument("circuit of " +
                                std::to_string(circuit_.width()) +
                                " qubits is beyond dense simulation");
  }
  std::set<std::size_t> cuts;
  for (const auto& [name, pos] : circuit_.markers()) cuts.insert(pos);

  const auto& gates = circuit_.gates();
  std::size_t i = 0;
  while (i < gates.size()) {
    std::size_t j = i;
    while (j < gates.size() && gates[j].is_classical() &&
           (j == i || !cuts.contains(j))) {
      ++j;
    }
    if (j - i >= options_.fuse_threshold && options_.fuse_threshold > 0) {
      segments_.push_back(
          {i, j,
           permutation_of(std::span(gates).subspan(i, j - i), circuit_.width())});
      i = j;
    } else {
      const std::size_t stop = std::max(j, i + 1);
      if (!segments_.empty() && segments_.back().permutation.empty() &&
          segments_.back().end == i && !cuts.contains(i)) {
        segments_.back().end = stop;
      } else {
        segments_.push_back({i, stop, {}});
      }
      i = stop;
    }
  }
  split_blocked();
  if (options_.checkpoint_interval > 0) {
    const std::size_t k = options_.checkpoint_interval;
    for (auto& seg : segments_) {
      if (seg.permutation.empty()) continue;
      for (std::size_t stop = seg.begin + k; stop < seg.end; stop += k) {
        seg.checkpoints.push_back(prefix_permutation(seg, stop));
      }
    }
  }
}

std::vector<std::uint32_t> CompiledCircuit::prefix_permutation(const Segment& seg,
                                                               std::size_t stop) const {
  const auto gates = std::span(circuit_.gates());
  std::size_t from = seg.begin;
  const std::vector<std::uint32_t>* base = nullptr;
  if (!seg.checkpoints.empty()) {
    const std::size_t k =
        std::min((stop - seg.begin) / options_.checkpoint_interval, seg.checkpoints.size());
    if (k > 0) {
      base = &seg.checkpoints[k - 1];
      from = seg.begin + k * options_.checkpoint_interval;
    }
  }
  auto frag = permutation_of(gates.subspan(from, stop - from), circuit_.width());
  if (base == nullptr) return frag;
  std::vector<std::uint32_t> out(frag.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = frag[(*base)[i]];
  return out;
}

void CompiledCircuit::split_blocked() {
  if (options_.block_qubits == 0) return;
  const auto& gates = circuit_.gates();
  auto top = [](const Gate& g) {
    Qubit q = g.target;
    for (const auto& c : g.controls) q = std::max(q, c.qubit);
    return q;
  };
  std::vector<Segment> out;
  for (auto& seg : segments_) {
    if (!seg.permutation.empty()) {
      out.push_back(std::move(seg));
      continue;
    }
    std::size_t i = seg.begin;
    while (i < seg.end) {
      std::size_t j = i;
      Qubit high = 0;
      while (j < seg.end && top(gates[j]) < options_.block_qubits) {
        high = std::max(high, top(gates[j]));
        ++j;
      }
      if (j - i >= 2) {
        const std::uint32_t bits = std::min(circuit_.width(), std::max<std::uint32_t>(high + 1, 10));
        out.push_back({i, j, {}, bits});
        i = j;
        continue;
      }
      j = std::max(j, i + 1);
      while (j < seg.end && top(gates[j]) >= options_.block_qubits) ++j;
      if (!out.empty() && out.back().permutation.empty() && out.back().block_bits == 0 &&
          out.back().end == i && seg.begin != i) {
        out.back().end = j;
      } else {
        out.push_back({i, j, {}, 0});
      }
      i = j;
    }
  }
  segments_ = std::move(out);
}

void CompiledCircuit::run_gates(StateVector& state, std::size_t begin,
                                std::size_t end) const {
  const auto& gates = circuit_.gates();
  // Long partial runs through a fused block are cheaper as a fresh
  // permutation than gate by gate.
  if (end - begin >= options_.fuse_threshold && options_.fuse_threshold > 0 &&
      std::all_of(gates.begin() + static_cast<std::ptrdiff_t>(begin),
                  gates.begin() + static_cast<std::ptrdiff_t>(end),
                  [](const Gate& g) { return g.is_classical(); })) {
    state.permute(permutation_of(std::span(gates).subspan(begin, end - begin),
                                 circuit_.width()));
    return;
  }
  for (std::size_t k = begin; k < end; ++k) apply_gate(state, gates[k]);
}

template <typename State>
void CompiledCircuit::run_range_impl(State& state, std::size_t begin,
                                     std::size_t end) const {
  if (state.num_qubits() != circuit_.width()) {
    throw std::invalid_argument("state width does not match the circuit");
  }
  if (begin > end || end > size()) {
    throw std::out_of_range("run_range: bad gate range");
  }
  if (begin == end) return;
  const auto& gates = circuit_.gates();
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), begin,
      [](std::size_t pos, const Segment& s) { return pos < s.end; });
  for (; it != segments_.end() && it->begin < end; ++it) {
    const std::size_t lo = std::max(begin, it->begin);
    const std::size_t hi = std::min(end, it->end);
    if (!it->permutation.empty() && lo == it->begin && hi == it->end) {
      state.permute(it->permutation);
    } else if (std::is_same_v<State, StateVector> && it->block_bits > 0 &&
               lo == it->begin && hi == it->end) {
      if constexpr (std::is_same_v<State, StateVector>) {
        auto amps = state.amplitudes();
        const std::size_t chunk = std::size_t{1} << it->block_bits;
        for (std::size_t base = 0; base < amps.size(); base += chunk) {
          const auto block = amps.subspan(base, chunk);
          for (std::size_t k = lo; k < hi; ++k) apply_gate(block, it->block_bits, gates[k]);
        }
      }
    } else if constexpr (std::is_same_v<State, StateVector>) {
      if (!it->permutation.empty() && hi - lo > kShortRun) {
        // [lo, hi) is prefix(hi) after the inverse of prefix(lo).
        if (lo > it->begin) state.permute_inverse(prefix_permutation(*it, lo));
        if (hi == it->end) {
          state.permute(it->permutation);
        } else {
          state.permute(prefix_permutation(*it, hi));
        }
      } else {
        run_gates(state, lo, hi);
      }
    } else {
      for (std::size_t k = lo; k < hi; ++k) apply_gate(state, gates[k]);
    }
  }
}

void CompiledCircuit::run_range(StateVector& state, std::size_t begin,
                                std::size_t end) const {
  run_range_impl(state, begin, end);
}

void CompiledCircuit::run_range(SparseState& state, std::size_t begin,
                                std::size_t end) const {
  run_range_impl(state, begin, end);
}

void run_circuit(const Circuit& circuit, StateVector& state) {
  CompiledCircuit(circuit).run(state);
}

}  // namespace qhash
