#include "qhash/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qhash {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Spreads the bits of `j` over the positions not listed in `fixed`
// (ascending), leaving zeros at the fixed positions.
inline std::uint64_t insert_zeros(std::uint64_t j,
                                  std::span<const std::uint32_t> fixed) {
  for (std::uint32_t p : fixed) {
    const std::uint64_t low = j & ((std::uint64_t{1} << p) - 1);
    j = ((j >> p) << (p + 1)) | low;
  }
  return j;
}

void apply_controlled_x(std::span<Amplitude> amps, std::uint32_t width,
                        const Gate& g) {
  std::vector<std::uint32_t> fixed;
  std::uint64_t on_bits = 0;
  for (const auto& c : g.controls) {
    fixed.push_back(c.qubit);
    if (c.on_one) on_bits |= std::uint64_t{1} << c.qubit;
  }
  fixed.push_back(g.target);
  std::sort(fixed.begin(), fixed.end());
  const std::uint64_t tbit = std::uint64_t{1} << g.target;
  const std::uint64_t count = std::uint64_t{1} << (width - fixed.size());
  for (std::uint64_t j = 0; j < count; ++j) {
    const std::uint64_t i = insert_zeros(j, fixed) | on_bits;
    std::swap(amps[i], amps[i | tbit]);
  }
}

}  // namespace

StateVector::StateVector(std::uint32_t num_qubits)
    : num_qubits_(num_qubits) {
  if (num_qubits > 30) {
    throw std::invalid_argument("statevector of " +
                                std::to_string(num_qubits) +
                                " qubits is beyond dense simulation");
  }
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(std::uint32_t num_qubits, std::uint64_t bits) {
  StateVector s(num_qubits);
  if (bits >= s.size()) throw std::out_of_range("basis state out of range");
  s.amps_[0] = 0.0;
  s.amps_[bits] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const auto n = amplitudes.size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw std::invalid_argument("amplitude count must be a power of two");
  }
  StateVector s(static_cast<std::uint32_t>(std::countr_zero(n)));
  s.amps_ = std::move(amplitudes);
  return s;
}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return sum;
}

void StateVector::permute(std::span<const std::uint32_t> dest) {
  if (dest.size() != amps_.size()) {
    throw std::invalid_argument("permutation size mismatch");
  }
  scratch_.assign(amps_.size(), Amplitude{0.0, 0.0});
  const Amplitude zero{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (amps_[i] != zero) scratch_[dest[i]] = amps_[i];
  }
  amps_.swap(scratch_);
}

void StateVector::permute_inverse(std::span<const std::uint32_t> dest) {
  if (dest.size() != amps_.size()) {
    throw std::invalid_argument("permutation size mismatch");
  }
  scratch_.resize(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) scratch_[i] = amps_[dest[i]];
  amps_.swap(scratch_);
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  Amplitude overlap{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    overlap += std::conj(a[i]) * b[i];
  }
  return std::norm(overlap);
}

void apply_gate(StateVector& state, const Gate& gate) {
  apply_gate(state.amplitudes(), state.num_qubits(), gate);
}

void apply_gate(std::span<Amplitude> amps, std::uint32_t width, const Gate& gate) {
  validate(gate, width);
  if (amps.size() != (std::size_t{1} << width)) {
    throw std::invalid_argument("amplitude span does not match the width");
  }
  const std::size_t dim = amps.size();
  const std::size_t tb = std::size_t{1} << gate.target;

  switch (gate.kind) {
    case GateKind::X:
      for (std::size_t base = 0; base < dim; base += 2 * tb) {
        for (std::size_t k = base; k < base + tb; ++k) {
          std::swap(amps[k], amps[k + tb]);
        }
      }
      return;
    case GateKind::Y:
      for (std::size_t base = 0; base < dim; base += 2 * tb) {
        for (std::size_t k = base; k < base + tb; ++k) {
          const Amplitude a0 = amps[k];
          const Amplitude a1 = amps[k + tb];
          amps[k] = Amplitude{a1.imag(), -a1.real()};       // -i * a1
          amps[k + tb] = Amplitude{-a0.imag(), a0.real()};  //  i * a0
        }
      }
      return;
    case GateKind::Z:
      for (std::size_t base = 0; base < dim; base += 2 * tb) {
        for (std::size_t k = base + tb; k < base + 2 * tb; ++k) {
          amps[k] = -amps[k];
        }
      }
      return;
    case GateKind::H:
      for (std::size_t base = 0; base < dim; base += 2 * tb) {
        for (std::size_t k = base; k < base + tb; ++k) {
          const Amplitude a0 = amps[k];
          const Amplitude a1 = amps[k + tb];
          amps[k] = (a0 + a1) * kInvSqrt2;
          amps[k + tb] = (a0 - a1) * kInvSqrt2;
        }
      }
      return;
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
    case GateKind::MULTI_CX:
      apply_controlled_x(amps, width, gate);
      return;
  }
}

std::vector<double> probabilities(const StateVector& state,
                                  std::span<const Qubit> qubits) {
  if (qubits.empty()) throw std::invalid_argument("empty qubit list");
  if (qubits.size() > 30) throw std::invalid_argument("too many qubits");
  std::set<Qubit> seen;
  for (Qubit q : qubits) {
    if (q >= state.num_qubits()) throw std::out_of_range("qubit out of range");
    if (!seen.insert(q).second) {
      throw std::invalid_argument("repeated qubit in marginal");
    }
  }
  std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    std::size_t k = 0;
    for (std::size_t b = 0; b < qubits.size(); ++b) {
      k |= ((i >> qubits[b]) & 1U) << b;
    }
    out[k] += p;
  }
  return out;
}

OutcomeSampler::OutcomeSampler(std::span<const double> probabilities) {
  if (probabilities.empty()) throw std::invalid_argument("empty distribution");
  cumulative_.reserve(probabilities.size());
  double acc = 0.0;
  for (double p : probabilities) {
    acc += p;
    cumulative_.push_back(acc);
  }
}

std::uint64_t OutcomeSampler::draw(std::mt19937_64& rng) const {
  // Scale by the actual total so rounding in the sum cannot strand a draw.
  std::uniform_real_distribution<double> u(0.0, cumulative_.back());
  const double r = u(rng);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
  if (it == cumulative_.end()) --it;
  return static_cast<std::uint64_t>(it - cumulative_.begin());
}

std::uint64_t sample(const StateVector& state, std::span<const Qubit> qubits,
                     std::uint64_t rng_seed) {
  const auto probs = probabilities(state, qubits);
  std::mt19937_64 rng(rng_seed);
  return OutcomeSampler(probs).draw(rng);
}

}  // namespace qhash
