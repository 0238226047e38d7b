#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhash/grover.hpp"
#include "qhash/hashes.hpp"
#include "qhash/noise.hpp"

namespace qhash {

// A finished experiment as written to disk: one CSV plus a JSON manifest.
struct ExperimentResult {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::uint64_t seed = 0;
  double wall_time_seconds = 0.0;

  std::string to_csv() const;
  std::string manifest_json() const;
  // Writes <dir>/<name>.csv and <dir>/<name>.json, creating dir. Throws
  // std::runtime_error on I/O failure.
  void write(const std::filesystem::path& dir) const;
};

// Seed of one trial in one stream, derived from the master seed. Results do
// not depend on the order trials run in.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

// Version string written into manifests.
std::string library_version();

// --- instances ---------------------------------------------------------

// Sponge suite: the first capacity-scan initial state that realises every
// preimage count 1..6, with the smallest digest for each count.
struct InstanceSuite {
  HashConfig config;
  std::map<std::size_t, HashInstance> by_m;

  const HashInstance& at(std::size_t m) const;
};
InstanceSuite default_suite();
// Smallest digest with M preimages under `config`, for each requested M.
// Throws std::runtime_error when some M is not realised.
InstanceSuite suite_for(const HashConfig& config, const std::vector<std::size_t>& ms);

// Message-register half (4 of 8 qubits, as a bit mask over message bits)
// across which the preimage set is a product set, lowest mask first.
std::optional<std::uint32_t> factorizing_half(const HashInstance& instance);

// Entropy suite: first capacity-scan initial state where each M in `ms`
// has an instance with a factorizing half; smallest such digest per M.
InstanceSuite entropy_suite(const std::vector<std::size_t>& ms = {1, 2, 3, 4});

// --- probability evolution --------------------------------------------

struct EvolutionPoint {
  std::uint64_t step = 0;
  double success_probability = 0.0;
  double analytic_probability = 0.0;
  std::vector<double> message_probabilities;
};
struct Evolution {
  HashInstance instance;
  std::vector<EvolutionPoint> points;
  std::uint64_t peak_step = 0;
};
// Exact statevector probabilities for k = 0..max_steps. Throws
// std::invalid_argument for an instance without preimages.
Evolution probability_evolution(const HashInstance& instance, std::uint64_t max_steps);
// Columns: m,digest,step,message,probability,is_preimage,success_probability,
// analytic_probability,is_peak
ExperimentResult to_result(const std::vector<Evolution>& runs);

// --- early stop --------------------------------------------------------

struct EarlyStopCell {
  std::size_t m = 0;
  std::uint8_t digest = 0;
  std::uint64_t steps = 0;
  double probability = 0.0;         // exact
  double mean_samples = 0.0;        // empirical, samples to first preimage
  double mean_samples_stderr = 0.0;
  double expected_samples = 0.0;    // 1 / probability
  double mean_calls = 0.0;          // empirical, steps * samples
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;       // trials that exhausted max_samples
};
// Every steps = 1..optimal_steps for each instance, `trials` seeded runs.
std::vector<EarlyStopCell> early_stop_table(const std::vector<HashInstance>& instances,
                                            std::uint64_t trials, std::uint64_t seed);
// Columns: m,digest,steps,probability,mean_samples,mean_samples_stderr,
// expected_samples,mean_calls,trials,failures
ExperimentResult to_result(const std::vector<EarlyStopCell>& cells, std::uint64_t seed);

// --- unknown M ---------------------------------------------------------

struct UnknownMRow {
  std::size_t m = 0;
  std::uint8_t digest = 0;
  std::uint64_t optimal_steps = 0;
  double mean_calls = 0.0;
  double mean_calls_stderr = 0.0;
  double bound = 0.0;  // (9/4) sqrt(N/M)
  std::uint64_t max_calls = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
};
std::vector<UnknownMRow> unknown_m_statistics(const std::vector<HashInstance>& instances,
                                              std::uint64_t trials, std::uint64_t seed,
                                              double lambda = 6.0 / 5.0);
// Columns: m,digest,optimal_steps,mean_calls,mean_calls_stderr,bound,
// max_calls,trials,failures
ExperimentResult to_result(const std::vector<UnknownMRow>& rows, std::uint64_t seed);

// --- entropy -----------------------------------------------------------

struct EntropyStep {
  std::uint64_t step = 0;       // 1-based Grover step
  double mid = 0.0;             // right after the digest check
  double post = 0.0;            // after the step, factorizing half
  double post_low_nibble = 0.0; // after the step, message bits 0..3
};
struct EntropyScanPeak {
  std::uint64_t step = 0;       // 1-based step holding the maximum
  std::size_t gate = 0;         // index in the resolved step circuit
  bool in_oracle = false;       // before the diffusion starts
  bool before_mid = false;      // before the digest check
  double entropy = 0.0;
};
struct EntropyProfile {
  HashInstance instance;
  std::vector<Qubit> mid_partition;   // 8 of the 16 matrix qubits
  std::vector<Qubit> post_partition;  // 4 of the 8 message qubits
  std::vector<EntropyStep> steps;
  EntropyScanPeak scan_peak;
  std::vector<double> scan_step_max;  // gate-scan maximum per scanned step
};
// Mid and post entropies for steps 1..steps; a gate-by-gate scan with the
// mid partition over the first `scan_steps` steps. Throws
// std::invalid_argument when the instance has no factorizing half.
EntropyProfile entropy_profile(const HashInstance& instance, std::uint64_t steps,
                               std::uint64_t scan_steps = 2);
// Columns: m,digest,kind,step,entropy,gate,partition
// kind is mid, post, post_low_nibble, scan_max or peak.
ExperimentResult to_result(const std::vector<EntropyProfile>& profiles);

// --- noise -------------------------------------------------------------

struct NoiseSweepOptions {
  std::uint64_t trajectories = 250;
  std::uint64_t seed = 0;
  NoiseSites sites = NoiseSites::TouchedQubits;
  PauliConvention convention = PauliConvention::PerPauli;
  // Above this many populated amplitudes a trajectory switches from the
  // sparse to the dense engine.
  std::size_t sparse_limit = std::size_t{1} << 14;
};
struct NoisePoint {
  double pauli_probability = 0.0;
  std::uint64_t full_steps = 0;  // strategy A: one run of this many steps
  std::uint64_t half_steps = 0;  // strategy B: two runs of this many steps
  double strategy_a = 0.0;       // mean per-trajectory success probability
  double strategy_b = 0.0;       // mean of 1 - (1 - p1)(1 - p2)
  double strategy_a_stderr = 0.0;
  double strategy_b_stderr = 0.0;
  double baseline_a = 0.0;       // uniform guess, M/N
  double baseline_b = 0.0;       // two uniform guesses
  std::uint64_t trajectories = 0;
};
// Gate-level Pauli noise on the elementary Grover step. Each trajectory
// starts from the cached noiseless state before its first event.
std::vector<NoisePoint> noise_sweep(const HashInstance& instance,
                                    const std::vector<double>& probabilities,
                                    const NoiseSweepOptions& options);
// Columns: m,digest,pauli_probability,full_steps,half_steps,strategy_a,
// strategy_a_stderr,strategy_b,strategy_b_stderr,baseline_a,baseline_b,
// trajectories
ExperimentResult to_result(const HashInstance& instance, const std::vector<NoisePoint>& points,
                           const NoiseSweepOptions& options);

}  // namespace qhash
