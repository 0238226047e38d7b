#include "qhash/entropy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace qhash {

namespace {

constexpr double kZeroWeight = 1e-28;
constexpr double kEigenFloor = 1e-12;

struct Entry {
  std::uint64_t b;
  std::uint64_t a;
  Amplitude amp;
};

std::uint64_t gather(std::uint64_t index, const std::vector<Qubit>& qubits) {
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    out |= ((index >> qubits[k]) & 1U) << k;
  }
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent_[std::max(x, y)] = std::min(x, y);
  }

 private:
  std::vector<std::size_t> parent_;
};

template <typename Matrix>
void append_eigenvalues(const Matrix& rho, std::vector<double>& out) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigen decomposition of rho_A failed");
  }
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    out.push_back(std::max(0.0, static_cast<double>(solver.eigenvalues()[i])));
  }
}

}  // namespace

Bipartition::Bipartition(std::vector<Qubit> subsystem_a,
                         std::uint32_t num_qubits)
    : a_(std::move(subsystem_a)), num_qubits_(num_qubits) {
  if (a_.empty()) throw std::invalid_argument("subsystem A is empty");
  std::vector<bool> seen(num_qubits, false);
  for (Qubit q : a_) {
    if (q >= num_qubits) throw std::out_of_range("subsystem A qubit out of range");
    if (seen[q]) throw std::invalid_argument("subsystem A repeats a qubit");
    seen[q] = true;
  }
  if (a_.size() == num_qubits) {
    throw std::invalid_argument("subsystem A covers the whole register");
  }
}

std::vector<Qubit> Bipartition::subsystem_b() const {
  std::vector<bool> in_a(num_qubits_, false);
  for (Qubit q : a_) in_a[q] = true;
  std::vector<Qubit> b;
  for (Qubit q = 0; q < num_qubits_; ++q) {
    if (!in_a[q]) b.push_back(q);
  }
  return b;
}

bool is_local(const Gate& gate, const Bipartition& partition) {
  const auto& a = partition.subsystem_a();
  int in_a = 0, total = 0;
  for (Qubit q : gate.qubits()) {
    ++total;
    if (std::find(a.begin(), a.end(), q) != a.end()) ++in_a;
  }
  return in_a == 0 || in_a == total;
}

Bipartition Bipartition::complement() const {
  return Bipartition(subsystem_b(), num_qubits_);
}

namespace {

std::vector<double> spectrum_of(std::vector<Entry> entries, bool real) {
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return x.b != y.b ? x.b < y.b : x.a < y.a;
  });

  // Dense ids for the populated rows of rho_A.
  std::unordered_map<std::uint64_t, std::size_t> row_of;
  std::vector<std::size_t> row(entries.size());
  for (std::size_t e = 0; e < entries.size(); ++e) {
    row[e] = row_of.try_emplace(entries[e].a, row_of.size()).first->second;
  }

  // Rows sharing a B index couple; everything else is block diagonal.
  DisjointSets sets(row_of.size());
  for (std::size_t e = 1; e < entries.size(); ++e) {
    if (entries[e].b == entries[e - 1].b) sets.unite(row[e], row[e - 1]);
  }
  std::vector<std::size_t> block_of(row_of.size());
  std::vector<std::size_t> local(row_of.size());
  std::vector<std::size_t> block_size;
  std::unordered_map<std::size_t, std::size_t> block_id;
  for (std::size_t r = 0; r < row_of.size(); ++r) {
    const auto [it, fresh] = block_id.try_emplace(sets.find(r), block_size.size());
    if (fresh) block_size.push_back(0);
    block_of[r] = it->second;
    local[r] = block_size[it->second]++;
  }

  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(block_size.size());
  for (std::size_t n : block_size) {
    blocks.emplace_back(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                               static_cast<Eigen::Index>(n)));
  }
  for (std::size_t begin = 0; begin < entries.size();) {
    std::size_t end = begin + 1;
    while (end < entries.size() && entries[end].b == entries[begin].b) ++end;
    auto& m = blocks[block_of[row[begin]]];
    for (std::size_t x = begin; x < end; ++x) {
      const auto ix = static_cast<Eigen::Index>(local[row[x]]);
      for (std::size_t y = begin; y < end; ++y) {
        const auto iy = static_cast<Eigen::Index>(local[row[y]]);
        m(ix, iy) += entries[x].amp * std::conj(entries[y].amp);
      }
    }
    begin = end;
  }

  std::vector<double> spectrum;
  spectrum.reserve(row_of.size());
  for (const auto& m : blocks) {
    if (m.rows() == 1) {
      spectrum.push_back(std::max(0.0, m(0, 0).real()));
    } else if (real) {
      append_eigenvalues(Eigen::MatrixXd(m.real()), spectrum);
    } else {
      append_eigenvalues(m, spectrum);
    }
  }
  std::sort(spectrum.begin(), spectrum.end());
  return spectrum;
}

template <typename Visit>
std::vector<double> spectrum_from(const Bipartition& partition,
                                  std::uint32_t width, Visit visit) {
  if (partition.num_qubits() != width) {
    throw std::invalid_argument("partition width does not match the state");
  }
  const auto& qa = partition.subsystem_a();
  const auto qb = partition.subsystem_b();
  std::vector<Entry> entries;
  bool real = true;
  visit([&](std::uint64_t i, Amplitude amp) {
    if (std::norm(amp) <= kZeroWeight) return;
    entries.push_back({gather(i, qb), gather(i, qa), amp});
    if (amp.imag() != 0.0) real = false;
  });
  return spectrum_of(std::move(entries), real);
}

double entropy_of(const std::vector<double>& spectrum, const Bipartition& partition) {
  double s = 0.0;
  for (double lambda : spectrum) {
    if (lambda > kEigenFloor) s -= lambda * std::log2(lambda);
  }
  const double bound = static_cast<double>(
      std::min(partition.subsystem_a().size(),
               partition.num_qubits() - partition.subsystem_a().size()));
  return std::clamp(s, 0.0, bound);
}

}  // namespace

std::vector<double> entanglement_spectrum(const StateVector& state,
                                          const Bipartition& partition) {
  return spectrum_from(partition, state.num_qubits(), [&](auto&& take) {
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) take(i, amps[i]);
  });
}

std::vector<double> entanglement_spectrum(const SparseState& state,
                                          const Bipartition& partition) {
  return spectrum_from(partition, state.num_qubits(), [&](auto&& take) {
    const auto idx = state.indices();
    const auto amps = state.amplitudes();
    for (std::size_t e = 0; e < idx.size(); ++e) take(idx[e], amps[e]);
  });
}

double entanglement_entropy(const StateVector& state,
                            const Bipartition& partition) {
  return entropy_of(entanglement_spectrum(state, partition), partition);
}

double entanglement_entropy(const SparseState& state,
                            const Bipartition& partition) {
  return entropy_of(entanglement_spectrum(state, partition), partition);
}

}  // namespace qhash
