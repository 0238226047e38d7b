#include "qhash/experiments.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qhash/arithmetic.hpp"
#include "qhash/entropy.hpp"
#include "qhash/oracles.hpp"
#include "qhash/sparse_state.hpp"

#ifndef QHASH_VERSION
#define QHASH_VERSION "0.0.0"
#endif

namespace qhash {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

template <typename T>
std::string str(T v) {
  return std::to_string(v);
}

std::string hex_iv(std::uint16_t iv) {
  std::ostringstream os;
  os << "0x" << std::hex << std::setw(4) << std::setfill('0') << iv;
  return os.str();
}

std::string join_qubits(const std::vector<Qubit>& qs) {
  std::string out;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(qs[i]);
  }
  return out;
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr summarize(const std::vector<double>& xs) {
  MeanStderr out;
  if (xs.empty()) return out;
  const double n = static_cast<double>(xs.size());
  out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

void add_config(ExperimentResult& r, const HashConfig& config) {
  r.parameters.emplace_back("hash", to_string(config.kind));
  r.parameters.emplace_back("iv", hex_iv(config.iv));
  r.parameters.emplace_back("rounds", str(config.rounds));
}

double preimage_mass(const std::vector<double>& dist, const HashInstance& instance) {
  double p = 0.0;
  for (auto m : instance.preimages) p += dist[m];
  return p;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(trial), hi(trial)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[1]} << 32) | out[0];
}

std::string library_version() { return QHASH_VERSION; }

// --- result files ------------------------------------------------------

std::string ExperimentResult::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    os << (i ? "," : "") << columns[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

std::string ExperimentResult::manifest_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["version"] = library_version();
  j["seed"] = seed;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  j["parameters"] = params;
  j["columns"] = columns;
  j["rows"] = rows.size();
  j["csv"] = name + ".csv";
  j["wall_time_seconds"] = wall_time_seconds;
  return j.dump(2) + "\n";
}

void ExperimentResult::write(const std::filesystem::path& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  auto put = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + path.string());
  };
  put(dir / (name + ".csv"), to_csv());
  put(dir / (name + ".json"), manifest_json());
}

// --- instances ---------------------------------------------------------

const HashInstance& InstanceSuite::at(std::size_t m) const {
  const auto it = by_m.find(m);
  if (it == by_m.end()) throw std::out_of_range("suite has no instance with M=" + str(m));
  return it->second;
}

InstanceSuite suite_for(const HashConfig& config, const std::vector<std::size_t>& ms) {
  InstanceSuite suite{config, {}};
  for (auto m : ms) {
    auto inst = find_instance(config, m);
    if (!inst) throw std::runtime_error("no digest with M=" + str(m) + " preimages");
    suite.by_m.emplace(m, *inst);
  }
  return suite;
}

InstanceSuite default_suite() {
  const std::vector<std::size_t> ms{1, 2, 3, 4, 5, 6};
  const auto iv = find_sponge_iv(ms);
  if (!iv) throw std::runtime_error("no sponge initial state realises M=1..6");
  HashConfig config;
  config.iv = *iv;
  return suite_for(config, ms);
}

std::optional<std::uint32_t> factorizing_half(const HashInstance& instance) {
  const unsigned bits = instance.config.message_bits();
  if (instance.preimages.empty() || bits % 2 != 0) return std::nullopt;
  const std::uint32_t full = (std::uint32_t{1} << bits) - 1;
  const std::set<std::uint32_t> members(instance.preimages.begin(), instance.preimages.end());
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    if (static_cast<unsigned>(std::popcount(mask)) != bits / 2) continue;
    std::set<std::uint32_t> a, b;
    for (auto p : instance.preimages) {
      a.insert(p & mask);
      b.insert(p & ~mask & full);
    }
    if (a.size() * b.size() == members.size()) return mask;
  }
  return std::nullopt;
}

InstanceSuite entropy_suite(const std::vector<std::size_t>& ms) {
  for (unsigned k = 0; k < 256; ++k) {
    HashConfig config;
    config.iv = static_cast<std::uint16_t>(k << 8);
    std::map<std::size_t, HashInstance> found;
    for (unsigned d = 0; d < 256 && found.size() < ms.size(); ++d) {
      auto inst = enumerate_preimages(static_cast<std::uint8_t>(d), config);
      if (std::find(ms.begin(), ms.end(), inst.m()) == ms.end() || found.contains(inst.m())) {
        continue;
      }
      if (factorizing_half(inst)) found.emplace(inst.m(), std::move(inst));
    }
    if (found.size() == ms.size()) return {config, std::move(found)};
  }
  throw std::runtime_error("no sponge initial state has factorizing instances for every M");
}

// --- probability evolution --------------------------------------------

Evolution probability_evolution(const HashInstance& instance, std::uint64_t max_steps) {
  if (instance.m() == 0) throw std::invalid_argument("instance has no preimage");
  GroverSimulator sim(instance);
  Evolution out{instance, {}, 0};
  double best = -1.0;
  for (std::uint64_t k = 0; k <= max_steps; ++k) {
    EvolutionPoint pt;
    pt.step = k;
    pt.message_probabilities = sim.message_distribution(k);
    pt.success_probability = preimage_mass(pt.message_probabilities, instance);
    pt.analytic_probability =
        analytic_success_probability(instance.search_space(), instance.m(), k);
    if (pt.success_probability > best) {
      best = pt.success_probability;
      out.peak_step = k;
    }
    out.points.push_back(std::move(pt));
  }
  return out;
}

ExperimentResult to_result(const std::vector<Evolution>& runs) {
  ExperimentResult r;
  r.name = "probability-evolution";
  r.columns = {"m", "digest", "step", "message", "probability", "is_preimage",
               "success_probability", "analytic_probability", "is_peak"};
  if (!runs.empty()) add_config(r, runs.front().instance.config);
  std::uint64_t max_steps = 0;
  for (const auto& run : runs) {
    for (const auto& pt : run.points) {
      max_steps = std::max(max_steps, pt.step);
      for (std::size_t msg = 0; msg < pt.message_probabilities.size(); ++msg) {
        r.rows.push_back({str(run.instance.m()), str(int{run.instance.digest}), str(pt.step),
                          str(msg), fmt(pt.message_probabilities[msg]),
                          run.instance.is_preimage(static_cast<std::uint32_t>(msg)) ? "1" : "0",
                          fmt(pt.success_probability), fmt(pt.analytic_probability),
                          pt.step == run.peak_step ? "1" : "0"});
      }
    }
  }
  r.parameters.emplace_back("max_steps", str(max_steps));
  return r;
}

// --- early stop --------------------------------------------------------

std::vector<EarlyStopCell> early_stop_table(const std::vector<HashInstance>& instances,
                                            std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  std::vector<EarlyStopCell> out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    GroverSimulator sim(instances[i]);
    const auto best = optimal_steps(sim.search_space(), instances[i].m());
    for (std::uint64_t steps = 1; steps <= best; ++steps) {
      EarlyStopCell cell;
      cell.m = instances[i].m();
      cell.digest = instances[i].digest;
      cell.steps = steps;
      cell.probability = sim.success_probability(steps);
      cell.expected_samples = 1.0 / cell.probability;
      cell.trials = trials;
      std::vector<double> samples, calls;
      samples.reserve(trials);
      calls.reserve(trials);
      for (std::uint64_t t = 0; t < trials; ++t) {
        GroverRunConfig config;
        config.rng_seed = derive_seed(seed, (cell.m << 8) | steps, t);
        const auto run = run_early_stop(sim, config, steps);
        if (!run.is_preimage) ++cell.failures;
        samples.push_back(static_cast<double>(run.samples_used));
        calls.push_back(static_cast<double>(run.oracle_calls));
      }
      const auto s = summarize(samples);
      cell.mean_samples = s.mean;
      cell.mean_samples_stderr = s.stderr_;
      cell.mean_calls = summarize(calls).mean;
      out.push_back(cell);
    }
  }
  return out;
}

ExperimentResult to_result(const std::vector<EarlyStopCell>& cells, std::uint64_t seed) {
  ExperimentResult r;
  r.name = "early-stop";
  r.seed = seed;
  r.columns = {"m", "digest", "steps", "probability", "mean_samples", "mean_samples_stderr",
               "expected_samples", "mean_calls", "trials", "failures"};
  if (!cells.empty()) r.parameters.emplace_back("trials", str(cells.front().trials));
  for (const auto& c : cells) {
    r.rows.push_back({str(c.m), str(int{c.digest}), str(c.steps), fmt(c.probability),
                      fmt(c.mean_samples), fmt(c.mean_samples_stderr), fmt(c.expected_samples),
                      fmt(c.mean_calls), str(c.trials), str(c.failures)});
  }
  return r;
}

// --- unknown M ---------------------------------------------------------

std::vector<UnknownMRow> unknown_m_statistics(const std::vector<HashInstance>& instances,
                                              std::uint64_t trials, std::uint64_t seed,
                                              double lambda) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  std::vector<UnknownMRow> out;
  for (const auto& inst : instances) {
    GroverSimulator sim(inst);
    UnknownMRow row;
    row.m = inst.m();
    row.digest = inst.digest;
    row.optimal_steps = optimal_steps(inst.search_space(), inst.m());
    row.bound = bbht_call_bound(inst.search_space(), inst.m());
    row.trials = trials;
    std::vector<double> calls;
    calls.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
      GroverRunConfig config;
      config.lambda = lambda;
      config.rng_seed = derive_seed(seed, row.m, t);
      const auto run = run_unknown_m(sim, config);
      if (!run.is_preimage) ++row.failures;
      row.max_calls = std::max(row.max_calls, run.oracle_calls);
      calls.push_back(static_cast<double>(run.oracle_calls));
    }
    const auto s = summarize(calls);
    row.mean_calls = s.mean;
    row.mean_calls_stderr = s.stderr_;
    out.push_back(row);
  }
  return out;
}

ExperimentResult to_result(const std::vector<UnknownMRow>& rows, std::uint64_t seed) {
  ExperimentResult r;
  r.name = "unknown-m";
  r.seed = seed;
  r.columns = {"m", "digest", "optimal_steps", "mean_calls", "mean_calls_stderr",
               "bound", "max_calls", "trials", "failures"};
  if (!rows.empty()) r.parameters.emplace_back("trials", str(rows.front().trials));
  for (const auto& row : rows) {
    r.rows.push_back({str(row.m), str(int{row.digest}), str(row.optimal_steps),
                      fmt(row.mean_calls), fmt(row.mean_calls_stderr), fmt(row.bound),
                      str(row.max_calls), str(row.trials), str(row.failures)});
  }
  return r;
}

// --- entropy -----------------------------------------------------------

EntropyProfile entropy_profile(const HashInstance& instance, std::uint64_t steps,
                               std::uint64_t scan_steps) {
  const auto half = factorizing_half(instance);
  if (!half) throw std::invalid_argument("instance has no factorizing message half");
  GroverSimulator sim(instance);
  const auto& layout = sim.layout();
  const auto& compiled = sim.compiled_step();
  const auto mid = compiled.marker(kMidMarker);
  if (!mid) throw std::logic_error("step circuit lacks the mid marker");
  const std::size_t diffusion_start =
      compiled.size() -
      build_diffusion(layout.width, layout.message, layout.work_qubit()).size();

  EntropyProfile out;
  out.instance = instance;
  out.mid_partition = layout.words[0];
  out.mid_partition.insert(out.mid_partition.end(), layout.words[1].begin(),
                           layout.words[1].end());
  for (unsigned b = 0; b < layout.message.size(); ++b) {
    if ((*half >> b) & 1U) out.post_partition.push_back(layout.message[b]);
  }
  std::vector<Qubit> low_nibble(layout.message.begin(), layout.message.begin() + 4);
  const Bipartition mid_cut(out.mid_partition, layout.width);
  const Bipartition post_cut(out.post_partition, layout.width);
  const Bipartition low_cut(low_nibble, layout.width);

  for (std::uint64_t k = 1; k <= steps; ++k) {
    EntropyStep e;
    e.step = k;
    StateVector at_mid = sim.state_after(k - 1);
    compiled.run_range(at_mid, 0, *mid);
    e.mid = entanglement_entropy(at_mid, mid_cut);
    const auto& after = sim.state_after(k);
    e.post = entanglement_entropy(after, post_cut);
    e.post_low_nibble = entanglement_entropy(after, low_cut);
    out.steps.push_back(e);
  }

  const auto& gates = compiled.circuit().gates();
  out.scan_peak.entropy = -1.0;
  for (std::uint64_t k = 1; k <= scan_steps; ++k) {
    auto state = SparseState::from_dense(sim.state_after(k - 1));
    double step_max = entanglement_entropy(state, mid_cut);
    std::size_t step_gate = 0;
    for (std::size_t g = 0; g < gates.size(); ++g) {
      compiled.run_range(state, g, g + 1);
      if (is_local(gates[g], mid_cut)) continue;
      const double s = entanglement_entropy(state, mid_cut);
      if (s > step_max) {
        step_max = s;
        step_gate = g;
      }
    }
    out.scan_step_max.push_back(step_max);
    if (step_max > out.scan_peak.entropy) {
      out.scan_peak = {k, step_gate, step_gate < diffusion_start, step_gate < *mid, step_max};
    }
  }
  return out;
}

ExperimentResult to_result(const std::vector<EntropyProfile>& profiles) {
  ExperimentResult r;
  r.name = "entropy";
  r.columns = {"m", "digest", "kind", "step", "entropy", "gate", "partition"};
  if (!profiles.empty()) {
    add_config(r, profiles.front().instance.config);
    r.parameters.emplace_back("steps", str(profiles.front().steps.size()));
    r.parameters.emplace_back("scan_steps", str(profiles.front().scan_step_max.size()));
  }
  for (const auto& p : profiles) {
    const auto m = str(p.instance.m());
    const auto d = str(int{p.instance.digest});
    const auto mid = join_qubits(p.mid_partition);
    const auto post = join_qubits(p.post_partition);
    const auto low = join_qubits({0, 1, 2, 3});
    for (const auto& s : p.steps) {
      r.rows.push_back({m, d, "mid", str(s.step), fmt(s.mid), "", mid});
      r.rows.push_back({m, d, "post", str(s.step), fmt(s.post), "", post});
      r.rows.push_back({m, d, "post_low_nibble", str(s.step), fmt(s.post_low_nibble), "", low});
    }
    for (std::size_t k = 0; k < p.scan_step_max.size(); ++k) {
      r.rows.push_back({m, d, "scan_max", str(k + 1), fmt(p.scan_step_max[k]), "", mid});
    }
    r.rows.push_back({m, d, "peak", str(p.scan_peak.step), fmt(p.scan_peak.entropy),
                      str(p.scan_peak.gate), mid});
  }
  return r;
}

// --- noise -------------------------------------------------------------

namespace {

// Success probability of one noisy trajectory of `passes` steps.
double noisy_trajectory(GroverSimulator& sim, const CompiledCircuit& step,
                        const NoiseSiteTable& table, const NoiseModel& noise,
                        std::size_t passes, std::size_t sparse_limit, std::mt19937_64& rng) {
  const auto events = table.sample(noise, passes, rng);
  if (events.empty()) return sim.success_probability(passes);
  std::size_t pass = events.front().after_gate / step.size();
  const auto& message = sim.layout().message;
  const auto& instance = sim.instance();
  const auto& start = sim.state_after(pass);

  if (sparse_limit > 0) {
    auto sparse = SparseState::from_dense(start);
    for (; pass < passes && sparse.size() <= sparse_limit; ++pass) {
      run_with_events(step, sparse, events, pass, 1);
    }
    if (pass == passes) return preimage_mass(probabilities(sparse, message), instance);
    StateVector dense = sparse.to_dense();
    run_with_events(step, dense, events, pass, passes - pass);
    return preimage_mass(probabilities(dense, message), instance);
  }
  StateVector dense = start;
  run_with_events(step, dense, events, pass, passes - pass);
  return preimage_mass(probabilities(dense, message), instance);
}

}  // namespace

std::vector<NoisePoint> noise_sweep(const HashInstance& instance,
                                    const std::vector<double>& probabilities,
                                    const NoiseSweepOptions& options) {
  if (options.trajectories == 0) throw std::invalid_argument("trajectories must be positive");
  GroverSimulator sim(instance);
  const CompiledCircuit step(instantiate(sim.step_circuit()), {.checkpoint_interval = 128});
  const NoiseSiteTable table(step.circuit(), options.sites);
  const std::uint64_t full = optimal_steps(instance.search_space(), instance.m());
  const std::uint64_t half = std::max<std::uint64_t>(1, full / 2);
  const double uniform = static_cast<double>(instance.m()) /
                         static_cast<double>(instance.search_space());

  std::vector<NoisePoint> out;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    NoiseModel noise;
    noise.pauli_probability = probabilities[i];
    noise.sites = options.sites;
    noise.convention = options.convention;
    noise.site_probability();

    std::vector<double> a, b;
    for (std::uint64_t t = 0; t < options.trajectories; ++t) {
      std::mt19937_64 rng_a(derive_seed(options.seed, 3 * i, t));
      std::mt19937_64 rng_b1(derive_seed(options.seed, 3 * i + 1, t));
      std::mt19937_64 rng_b2(derive_seed(options.seed, 3 * i + 2, t));
      a.push_back(noisy_trajectory(sim, step, table, noise, full, options.sparse_limit, rng_a));
      const double p1 =
          noisy_trajectory(sim, step, table, noise, half, options.sparse_limit, rng_b1);
      const double p2 =
          noisy_trajectory(sim, step, table, noise, half, options.sparse_limit, rng_b2);
      b.push_back(1.0 - (1.0 - p1) * (1.0 - p2));
    }
    NoisePoint pt;
    pt.pauli_probability = probabilities[i];
    pt.full_steps = full;
    pt.half_steps = half;
    const auto sa = summarize(a), sb = summarize(b);
    pt.strategy_a = sa.mean;
    pt.strategy_a_stderr = sa.stderr_;
    pt.strategy_b = sb.mean;
    pt.strategy_b_stderr = sb.stderr_;
    pt.baseline_a = uniform;
    pt.baseline_b = 1.0 - (1.0 - uniform) * (1.0 - uniform);
    pt.trajectories = options.trajectories;
    out.push_back(pt);
  }
  return out;
}

ExperimentResult to_result(const HashInstance& instance, const std::vector<NoisePoint>& points,
                           const NoiseSweepOptions& options) {
  ExperimentResult r;
  r.name = "noise";
  r.seed = options.seed;
  r.columns = {"m", "digest", "pauli_probability", "full_steps", "half_steps",
               "strategy_a", "strategy_a_stderr", "strategy_b", "strategy_b_stderr",
               "baseline_a", "baseline_b", "trajectories"};
  add_config(r, instance.config);
  r.parameters.emplace_back("trajectories", str(options.trajectories));
  r.parameters.emplace_back("sites", options.sites == NoiseSites::TouchedQubits
                                         ? "touched" : "all");
  r.parameters.emplace_back("convention", options.convention == PauliConvention::PerPauli
                                              ? "per-pauli" : "total");
  for (const auto& p : points) {
    r.rows.push_back({str(instance.m()), str(int{instance.digest}), fmt(p.pauli_probability),
                      str(p.full_steps), str(p.half_steps), fmt(p.strategy_a),
                      fmt(p.strategy_a_stderr), fmt(p.strategy_b), fmt(p.strategy_b_stderr),
                      fmt(p.baseline_a), fmt(p.baseline_b), str(p.trajectories)});
  }
  return r;
}

}  // namespace qhash
