#pragma once

#include <cstdint>
#include <map>
#include <deque>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qhash/executor.hpp"
#include "qhash/hashes.hpp"
#include "qhash/oracles.hpp"
#include "qhash/state_vector.hpp"

namespace qhash {

// Thrown when a request would need a dense statevector that does not fit.
class InfeasibleSimulation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Step count k maximising sin^2((2k+1) theta), sin^2 theta = M/N; ties go to
// the smaller k. Throws std::invalid_argument unless 1 <= M <= N.
std::uint64_t optimal_steps(std::uint64_t n, std::uint64_t m);

// sin^2((2k+1) asin(sqrt(M/N))).
double analytic_success_probability(std::uint64_t n, std::uint64_t m,
                                    std::uint64_t steps);

// (9/4) sqrt(N/M).
double bbht_call_bound(std::uint64_t n, std::uint64_t m);

struct GroverRunConfig {
  std::optional<std::uint64_t> steps;  // known-M runs; default optimal
  double lambda = 6.0 / 5.0;
  std::uint64_t max_samples = 1000;    // early stop
  std::uint64_t max_attempts = 100;    // BBHT
  std::uint64_t rng_seed = 0;

  // Throws std::invalid_argument when lambda is outside (1, 4/3].
  void validate() const;
};

struct RunOutcome {
  std::uint32_t measured_message = 0;
  bool is_preimage = false;
  std::uint64_t oracle_calls = 0;  // one per Grover step
  std::uint64_t samples_used = 0;
};

// Noiseless Grover search on one hash instance. States after k steps are
// computed once and cached, as are the message distributions drawn from.
class GroverSimulator {
 public:
  // Throws std::invalid_argument when the instance has no preimage and
  // InfeasibleSimulation when the register is too wide for a statevector.
  explicit GroverSimulator(HashInstance instance, unsigned ancilla_budget = 2);

  const HashInstance& instance() const { return instance_; }
  const OracleSpec& spec() const { return spec_; }
  const GroverLayout& layout() const { return layout_; }
  const Circuit& step_circuit() const { return step_; }
  const CompiledCircuit& compiled_step() const { return *compiled_; }
  const Circuit& preparation() const { return preparation_; }
  std::uint64_t search_space() const { return instance_.search_space(); }

  const StateVector& state_after(std::uint64_t steps);
  // Exact distribution over the message register.
  const std::vector<double>& message_distribution(std::uint64_t steps);
  double success_probability(std::uint64_t steps);
  // One measurement of the message register after `steps` steps.
  std::uint32_t measure(std::uint64_t steps, std::mt19937_64& rng);

 private:
  HashInstance instance_;
  OracleSpec spec_;
  GroverLayout layout_;
  Circuit step_;
  Circuit preparation_;
  std::unique_ptr<CompiledCircuit> compiled_;
  std::deque<StateVector> states_;
  std::map<std::uint64_t, std::vector<double>> distributions_;
  std::map<std::uint64_t, OutcomeSampler> samplers_;
};

// Known number of preimages: prepare, run the steps, measure once.
RunOutcome run_known_m(GroverSimulator& sim, const GroverRunConfig& config);

// Iterative search for an unknown number of preimages: m = 1; pick j
// uniformly below ceil(m), run j steps, measure and check classically;
// on failure m = min(lambda m, sqrt(N)). The attempt cap ends the loop with
// is_preimage = false.
RunOutcome run_unknown_m(GroverSimulator& sim, const GroverRunConfig& config);

// `steps` steps per sample, resampled until a preimage shows up or
// max_samples is spent. Throws std::invalid_argument when steps is 0 or
// beyond optimal_steps.
RunOutcome run_early_stop(GroverSimulator& sim, const GroverRunConfig& config,
                          std::uint64_t steps);

}  // namespace qhash
