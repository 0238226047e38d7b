#include "qhash/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qhash {

namespace {

constexpr std::uint32_t kMaxSimulatedWidth = 30;

}  // namespace

std::uint64_t optimal_steps(std::uint64_t n, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("no preimage: Grover search needs M >= 1");
  if (m > n) throw std::invalid_argument("M exceeds the search space");
  const double theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(n)));
  const double x = std::numbers::pi / (4.0 * theta) - 0.5;
  const auto lo = static_cast<std::uint64_t>(std::max(0.0, std::floor(x)));
  const std::uint64_t hi = lo + 1;
  const double p_lo = analytic_success_probability(n, m, lo);
  const double p_hi = analytic_success_probability(n, m, hi);
  return p_hi > p_lo + 1e-15 ? hi : lo;
}

double analytic_success_probability(std::uint64_t n, std::uint64_t m,
                                    std::uint64_t steps) {
  const double theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(n)));
  const double s = std::sin(static_cast<double>(2 * steps + 1) * theta);
  return s * s;
}

double bbht_call_bound(std::uint64_t n, std::uint64_t m) {
  return 2.25 * std::sqrt(static_cast<double>(n) / static_cast<double>(m));
}

void GroverRunConfig::validate() const {
  if (!(lambda > 1.0 && lambda <= 4.0 / 3.0)) {
    throw std::invalid_argument("lambda must lie in (1, 4/3]");
  }
}

GroverSimulator::GroverSimulator(HashInstance instance, unsigned ancilla_budget)
    : instance_(std::move(instance)) {
  if (instance_.preimages.empty()) {
    throw std::invalid_argument("digest has no preimage: nothing to search for");
  }
  spec_.target_digest = instance_.digest;
  spec_.hash = instance_.config;
  spec_.ancilla_budget = ancilla_budget;
  layout_ = GroverLayout::for_spec(spec_);
  if (layout_.width > kMaxSimulatedWidth) {
    throw InfeasibleSimulation(
        "a " + std::to_string(layout_.width) +
        "-qubit Grover register is beyond dense statevector simulation; "
        "verify the circuit with the reversible basis-state checker instead");
  }
  step_ = build_grover_step(spec_, layout_);
  preparation_ = build_preparation(layout_);
  compiled_ = std::make_unique<CompiledCircuit>(step_);
}

const StateVector& GroverSimulator::state_after(std::uint64_t steps) {
  if (states_.empty()) {
    StateVector s(layout_.width);
    CompiledCircuit(preparation_).run(s);
    states_.push_back(std::move(s));
  }
  while (states_.size() <= steps) {
    StateVector s = states_.back();
    compiled_->run(s);
    states_.push_back(std::move(s));
  }
  return states_[steps];
}

const std::vector<double>& GroverSimulator::message_distribution(std::uint64_t steps) {
  auto it = distributions_.find(steps);
  if (it == distributions_.end()) {
    it = distributions_
             .emplace(steps, probabilities(state_after(steps), layout_.message))
             .first;
  }
  return it->second;
}

double GroverSimulator::success_probability(std::uint64_t steps) {
  const auto& dist = message_distribution(steps);
  double p = 0.0;
  for (auto m : instance_.preimages) p += dist[m];
  return p;
}

std::uint32_t GroverSimulator::measure(std::uint64_t steps, std::mt19937_64& rng) {
  auto it = samplers_.find(steps);
  if (it == samplers_.end()) {
    it = samplers_.emplace(steps, OutcomeSampler(message_distribution(steps))).first;
  }
  return static_cast<std::uint32_t>(it->second.draw(rng));
}

RunOutcome run_known_m(GroverSimulator& sim, const GroverRunConfig& config) {
  config.validate();
  const auto steps =
      config.steps.value_or(optimal_steps(sim.search_space(), sim.instance().m()));
  std::mt19937_64 rng(config.rng_seed);
  RunOutcome out;
  out.measured_message = sim.measure(steps, rng);
  out.is_preimage = sim.instance().is_preimage(out.measured_message);
  out.oracle_calls = steps;
  out.samples_used = 1;
  return out;
}

RunOutcome run_unknown_m(GroverSimulator& sim, const GroverRunConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.rng_seed);
  const double cap = std::sqrt(static_cast<double>(sim.search_space()));
  double m = 1.0;
  RunOutcome out;
  for (std::uint64_t attempt = 0; attempt < config.max_attempts; ++attempt) {
    const auto top = static_cast<std::uint64_t>(std::ceil(m)) - 1;
    std::uniform_int_distribution<std::uint64_t> pick(0, top);
    const std::uint64_t j = pick(rng);
    out.oracle_calls += j;
    out.measured_message = sim.measure(j, rng);
    ++out.samples_used;
    if (sim.instance().is_preimage(out.measured_message)) {
      out.is_preimage = true;
      return out;
    }
    m = std::min(config.lambda * m, cap);
  }
  return out;
}

RunOutcome run_early_stop(GroverSimulator& sim, const GroverRunConfig& config,
                          std::uint64_t steps) {
  config.validate();
  const auto best = optimal_steps(sim.search_space(), sim.instance().m());
  if (steps == 0 || steps > best) {
    throw std::invalid_argument("early stop needs 1 <= steps <= " + std::to_string(best));
  }
  std::mt19937_64 rng(config.rng_seed);
  RunOutcome out;
  for (std::uint64_t s = 0; s < config.max_samples; ++s) {
    out.measured_message = sim.measure(steps, rng);
    ++out.samples_used;
    out.oracle_calls += steps;
    if (sim.instance().is_preimage(out.measured_message)) {
      out.is_preimage = true;
      break;
    }
  }
  return out;
}

}  // namespace qhash
