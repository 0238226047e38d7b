#include "qhash/sparse_state.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qhash {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_gate(const SparseState& state, const Gate& gate) {
  validate(gate, state.num_qubits());
  if (gate.condition) {
    throw std::invalid_argument("classically conditioned gate: resolve it first");
  }
}

}  // namespace

SparseState::SparseState(std::uint32_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits == 0 || num_qubits > 63) {
    throw std::invalid_argument("sparse state width must be in [1, 63]");
  }
  indices_.push_back(0);
  amps_.push_back(1.0);
}

SparseState SparseState::from_dense(const StateVector& state) {
  SparseState out(state.num_qubits());
  out.indices_.clear();
  out.amps_.clear();
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (std::norm(amps[i]) > kSparseZeroWeight) {
      out.indices_.push_back(i);
      out.amps_.push_back(amps[i]);
    }
  }
  return out;
}

StateVector SparseState::to_dense() const {
  if (num_qubits_ > 30) throw std::invalid_argument("too wide for a dense state");
  std::vector<Amplitude> amps(std::size_t{1} << num_qubits_);
  for (std::size_t e = 0; e < indices_.size(); ++e) amps[indices_[e]] += amps_[e];
  return StateVector::from_amplitudes(std::move(amps));
}

double SparseState::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return sum;
}

void SparseState::permute(std::span<const std::uint32_t> dest) {
  if (dest.size() != (std::size_t{1} << num_qubits_)) {
    throw std::invalid_argument("permutation size mismatch");
  }
  for (auto& i : indices_) i = dest[i];
}

void SparseState::assign(std::vector<std::uint64_t> indices,
                         std::vector<Amplitude> amplitudes) {
  if (indices.size() != amplitudes.size()) {
    throw std::invalid_argument("index and amplitude counts differ");
  }
  indices_ = std::move(indices);
  amps_ = std::move(amplitudes);
}

void SparseState::canonicalize() {
  std::vector<std::size_t> order(indices_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return indices_[x] < indices_[y]; });
  std::vector<std::uint64_t> idx(order.size());
  std::vector<Amplitude> amps(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    idx[k] = indices_[order[k]];
    amps[k] = amps_[order[k]];
  }
  indices_.swap(idx);
  amps_.swap(amps);
}

void apply_gate(SparseState& state, const Gate& gate) {
  check_gate(state, gate);
  auto idx = state.indices();
  auto amps = state.amplitudes();
  const std::uint64_t tbit = std::uint64_t{1} << gate.target;

  switch (gate.kind) {
    case GateKind::X:
      for (auto& i : idx) i ^= tbit;
      return;
    case GateKind::Y:
      for (std::size_t e = 0; e < idx.size(); ++e) {
        const Amplitude a = amps[e];
        amps[e] = (idx[e] & tbit) ? Amplitude{a.imag(), -a.real()}   // -i a
                                  : Amplitude{-a.imag(), a.real()};  //  i a
        idx[e] ^= tbit;
      }
      return;
    case GateKind::Z:
      for (std::size_t e = 0; e < idx.size(); ++e) {
        if (idx[e] & tbit) amps[e] = -amps[e];
      }
      return;
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
    case GateKind::MULTI_CX: {
      std::uint64_t mask = 0, want = 0;
      for (const auto& c : gate.controls) {
        mask |= std::uint64_t{1} << c.qubit;
        if (c.on_one) want |= std::uint64_t{1} << c.qubit;
      }
      for (auto& i : idx) {
        if ((i & mask) == want) i ^= tbit;
      }
      return;
    }
    case GateKind::H: {
      // Partners differ in the target bit only; pair them through the index
      // with that bit cleared.
      std::vector<std::size_t> order(idx.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const auto kx = idx[x] & ~tbit, ky = idx[y] & ~tbit;
        return kx != ky ? kx < ky : idx[x] < idx[y];
      });
      std::vector<std::uint64_t> out_idx;
      std::vector<Amplitude> out_amp;
      out_idx.reserve(2 * idx.size());
      out_amp.reserve(2 * idx.size());
      auto emit = [&](std::uint64_t i, Amplitude a) {
        if (std::norm(a) > kSparseZeroWeight) {
          out_idx.push_back(i);
          out_amp.push_back(a);
        }
      };
      for (std::size_t k = 0; k < order.size();) {
        const std::uint64_t key = idx[order[k]] & ~tbit;
        Amplitude a0{0.0, 0.0}, a1{0.0, 0.0};
        std::size_t next = k;
        while (next < order.size() && (idx[order[next]] & ~tbit) == key) {
          (idx[order[next]] & tbit ? a1 : a0) = amps[order[next]];
          ++next;
        }
        emit(key, (a0 + a1) * kInvSqrt2);
        emit(key | tbit, (a0 - a1) * kInvSqrt2);
        k = next;
      }
      state.assign(std::move(out_idx), std::move(out_amp));
      return;
    }
  }
}

std::vector<double> probabilities(const SparseState& state,
                                  std::span<const Qubit> qubits) {
  if (qubits.empty()) throw std::invalid_argument("empty qubit list");
  if (qubits.size() > 30) throw std::invalid_argument("too many qubits");
  std::set<Qubit> seen;
  for (Qubit q : qubits) {
    if (q >= state.num_qubits()) throw std::out_of_range("qubit out of range");
    if (!seen.insert(q).second) throw std::invalid_argument("repeated qubit in marginal");
  }
  std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
  const auto idx = state.indices();
  const auto amps = state.amplitudes();
  for (std::size_t e = 0; e < idx.size(); ++e) {
    std::size_t k = 0;
    for (std::size_t b = 0; b < qubits.size(); ++b) k |= ((idx[e] >> qubits[b]) & 1U) << b;
    out[k] += std::norm(amps[e]);
  }
  return out;
}

}  // namespace qhash
