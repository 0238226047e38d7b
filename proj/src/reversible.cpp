#include "qhash/reversible.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace qhash {

namespace {

void require_classical(const Gate& g) {
  if (!g.is_classical()) {
    throw std::invalid_argument(
        "reversible simulation requires classical gates, found " +
        std::string(to_string(g.kind)));
  }
}

bool controls_fire(const Gate& g, std::uint64_t bits) {
  for (const auto& c : g.controls) {
    if ((((bits >> c.qubit) & 1U) != 0) != c.on_one) return false;
  }
  return true;
}

}  // namespace

BasisState reversible_run(const Circuit& circuit, BasisState input) {
  return reversible_run(circuit, input, 0, circuit.size());
}

BasisState reversible_run(const Circuit& circuit, BasisState input,
                          std::size_t begin, std::size_t end) {
  if (circuit.width() > 64) {
    throw std::invalid_argument("reversible_run supports at most 64 qubits");
  }
  if (begin > end || end > circuit.size()) {
    throw std::out_of_range("reversible_run: bad gate range");
  }
  std::uint64_t bits = input.bits;
  const auto& gates = circuit.gates();
  for (std::size_t i = begin; i < end; ++i) {
    const Gate& g = gates[i];
    require_classical(g);
    if (!circuit.condition_holds(g)) continue;
    if (controls_fire(g, bits)) bits ^= std::uint64_t{1} << g.target;
  }
  return {bits};
}

std::vector<std::uint32_t> permutation_of(std::span<const Gate> gates,
                                          std::uint32_t width) {
  if (width > 30) throw std::invalid_argument("permutation_of: width > 30");
  const std::size_t dim = std::size_t{1} << width;
  const std::size_t words = std::max<std::size_t>(1, dim / 64);
  const std::uint64_t tail_mask =
      dim >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << dim) - 1);

  auto identity_word = [&](Qubit q, std::size_t j) -> std::uint64_t {
    static constexpr std::uint64_t kLow[6] = {
        0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
        0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
    if (q < 6) return kLow[q] & tail_mask;
    return ((j >> (q - 6)) & 1U) ? ~std::uint64_t{0} : 0;
  };

  std::unordered_map<Qubit, std::vector<std::uint64_t>> slices;
  auto slice = [&](Qubit q) -> std::vector<std::uint64_t>& {
    auto it = slices.find(q);
    if (it != slices.end()) return it->second;
    std::vector<std::uint64_t> s(words);
    for (std::size_t j = 0; j < words; ++j) s[j] = identity_word(q, j);
    return slices.emplace(q, std::move(s)).first->second;
  };

  std::vector<std::uint64_t> cond(words);
  for (const Gate& g : gates) {
    require_classical(g);
    if (g.condition) {
      throw std::invalid_argument("permutation_of: unresolved condition");
    }
    if (g.target >= width) throw std::out_of_range("qubit out of range");
    auto& t = slice(g.target);
    if (g.controls.empty()) {
      for (std::size_t j = 0; j < words; ++j) t[j] = ~t[j] & tail_mask;
      continue;
    }
    std::fill(cond.begin(), cond.end(), tail_mask);
    for (const auto& c : g.controls) {
      if (c.qubit >= width) throw std::out_of_range("qubit out of range");
      const auto& s = slice(c.qubit);
      if (c.on_one) {
        for (std::size_t j = 0; j < words; ++j) cond[j] &= s[j];
      } else {
        for (std::size_t j = 0; j < words; ++j) cond[j] &= ~s[j];
      }
    }
    for (std::size_t j = 0; j < words; ++j) t[j] ^= cond[j];
  }

  std::vector<std::uint32_t> perm(dim);
  for (std::size_t i = 0; i < dim; ++i) perm[i] = static_cast<std::uint32_t>(i);
  for (const auto& [q, s] : slices) {
    const std::uint32_t flip = std::uint32_t{1} << q;
    for (std::size_t j = 0; j < words; ++j) {
      std::uint64_t diff = s[j] ^ identity_word(q, j);
      while (diff != 0) {
        const int b = std::countr_zero(diff);
        perm[j * 64 + static_cast<std::size_t>(b)] ^= flip;
        diff &= diff - 1;
      }
    }
  }
  return perm;
}

}  // namespace qhash
