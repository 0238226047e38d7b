#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qhash/arithmetic.hpp"
#include "qhash/circuit_io.hpp"
#include "qhash/estimator.hpp"
#include "qhash/experiments.hpp"
#include "qhash/grover.hpp"
#include "qhash/hashes.hpp"
#include "qhash/oracles.hpp"
#include "qhash/resources.hpp"

namespace qhash::cli {

namespace {

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

using Rows = std::vector<std::vector<std::string>>;

std::string hex(std::uint64_t v, int width) {
  std::ostringstream os;
  os << "0x" << std::hex << std::setw(width) << std::setfill('0') << v;
  return os.str();
}

nlohmann::ordered_json json_value(const std::string& s) {
  if (!s.empty()) {
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (end == s.c_str() + s.size() && s.rfind("0x", 0) != 0) {
      if (s.find_first_of(".eE") == std::string::npos) return std::stoll(s);
      return d;
    }
  }
  return s;
}

std::string table_json(const std::vector<std::string>& columns, const Rows& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i) {
      obj[columns[i]] = json_value(row[i]);
    }
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

std::string table_csv(const std::vector<std::string>& columns, const Rows& rows) {
  ExperimentResult r;
  r.columns = columns;
  r.rows = rows;
  return r.to_csv();
}

void emit(std::ostream& out, const std::string& format, const std::vector<std::string>& columns,
          const Rows& rows) {
  out << (format == "json" ? table_json(columns, rows) : table_csv(columns, rows));
}

// Splits a CSV document produced by this library into header and rows.
std::pair<std::vector<std::string>, Rows> split_csv(const std::string& text) {
  std::vector<std::string> header;
  Rows rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (header.empty()) {
      header = std::move(cells);
    } else {
      rows.push_back(std::move(cells));
    }
  }
  return {header, rows};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  os.close();
  if (!os) throw CliError(kIoError, "cannot write " + path.string());
}

// --- shared hash options ----------------------------------------------

struct HashOptions {
  std::string kind = "sponge";
  std::uint32_t iv = 0;
  int rounds = 10;
  int rho = 12;
  std::uint32_t counter = 0;

  HashConfig config() const {
    HashConfig c;
    c.kind = hash_kind_from_string(kind);
    c.iv = static_cast<std::uint16_t>(iv);
    c.rounds = rounds;
    c.blake.rho = rho;
    c.blake.t = counter;
    return c;
  }
};

void add_hash_options(CLI::App* app, HashOptions& o) {
  app->add_option("--kind,--hash", o.kind, "Hash family")
      ->check(CLI::IsMember({"sponge", "blake"}))
      ->capture_default_str();
  app->add_option("--iv", o.iv, "Sponge initial state (16 bits)")
      ->check(CLI::Range(0U, 0xFFFFU))
      ->capture_default_str();
  app->add_option("--rounds", o.rounds, "Sponge double rounds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--rho", o.rho, "Blake rounds")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--counter", o.counter, "Blake block counter")->capture_default_str();
}

void add_format_option(CLI::App* app, std::string& format) {
  app->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

// --- hash / preimages -------------------------------------------------

struct HashCmd {
  HashOptions hash;
  std::optional<std::uint32_t> message;
  bool table = false;
  std::string format = "csv";
};

int run_hash(const HashCmd& cmd, std::ostream& out) {
  const auto config = cmd.hash.config();
  const std::uint32_t space = std::uint32_t{1} << config.message_bits();
  if (cmd.message.has_value() == cmd.table) {
    throw CliError(kUsageError, "give exactly one of --message and --table");
  }
  const int width = config.message_bits() / 4;
  Rows rows;
  if (cmd.table) {
    for (std::uint32_t m = 0; m < space; ++m) rows.push_back({hex(m, width), hex(config(m), 2)});
    emit(out, cmd.format, {"message", "digest"}, rows);
    return kOk;
  }
  if (*cmd.message >= space) {
    throw CliError(kInvalidCombination, "message does not fit in " +
                                            std::to_string(config.message_bits()) + " bits");
  }
  if (cmd.format == "json") {
    emit(out, "json", {"message", "digest"}, {{hex(*cmd.message, width), hex(config(*cmd.message), 2)}});
  } else {
    out << hex(config(*cmd.message), 2) << '\n';
  }
  return kOk;
}

struct PreimagesCmd {
  HashOptions hash;
  std::optional<std::uint32_t> digest;
  bool histogram = false;
  std::string format = "csv";
};

int run_preimages(const PreimagesCmd& cmd, std::ostream& out) {
  const auto config = cmd.hash.config();
  if (cmd.digest.has_value() == cmd.histogram) {
    throw CliError(kUsageError, "give exactly one of --digest and --histogram");
  }
  Rows rows;
  if (cmd.histogram) {
    const auto hist = digest_histogram(config);
    for (std::size_t d = 0; d < hist.size(); ++d) rows.push_back({hex(d, 2), std::to_string(hist[d])});
    emit(out, cmd.format, {"digest", "count"}, rows);
    return kOk;
  }
  const auto inst = enumerate_preimages(static_cast<std::uint8_t>(*cmd.digest), config);
  for (auto m : inst.preimages) rows.push_back({hex(*cmd.digest, 2), hex(m, config.message_bits() / 4)});
  emit(out, cmd.format, {"digest", "message"}, rows);
  return kOk;
}

// --- build-circuit ----------------------------------------------------

struct BuildCmd {
  HashOptions hash;
  std::uint32_t digest = 0;
  unsigned budget = 2;
  std::string part = "step";
  bool elementary = false;
  bool counts = false;
  std::string out;
};

int run_build(const BuildCmd& cmd, std::ostream& out) {
  OracleSpec spec;
  spec.target_digest = static_cast<std::uint8_t>(cmd.digest);
  spec.hash = cmd.hash.config();
  spec.ancilla_budget = cmd.budget;
  const auto layout = GroverLayout::for_spec(spec);
  Circuit c(layout.width);
  if (cmd.part == "oracle") {
    c = build_oracle(spec, layout);
  } else if (cmd.part == "diffusion") {
    c = build_diffusion(layout.width, layout.message, layout.work_qubit());
  } else if (cmd.part == "preparation") {
    c = build_preparation(layout);
  } else {
    c = build_grover_step(spec, layout);
  }
  if (cmd.elementary || cmd.counts) c = instantiate(c);
  std::string text;
  if (cmd.counts) {
    const auto r = count_resources(c);
    text = table_csv({"part", "toffoli", "cnot", "single", "total", "depth", "width"},
                     {{cmd.part, std::to_string(r.toffoli), std::to_string(r.cnot),
                       std::to_string(r.single), std::to_string(r.total()),
                       std::to_string(r.depth), std::to_string(r.width)}});
  } else {
    text = to_text(c);
  }
  if (cmd.out.empty()) {
    out << text;
  } else {
    write_file(cmd.out, text);
  }
  return kOk;
}

// --- estimate ---------------------------------------------------------

struct EstimateCmd {
  std::string kind = "sponge";
  std::int64_t n = 16;
  std::int64_t s = 4;
  std::int64_t rho = 12;
  bool serial = false;
  bool tables = false;
  bool measured = false;
  bool reconcile = false;
  std::string format = "csv";
};

int run_estimate(const EstimateCmd& cmd, std::ostream& out) {
  if (cmd.tables + cmd.reconcile > 1) {
    throw CliError(kInvalidCombination, "--tables and --reconcile are exclusive");
  }
  if (cmd.tables) {
    const auto [header, rows] = split_csv(estimates_csv(cmd.measured));
    emit(out, cmd.format, header, rows);
    return kOk;
  }
  const auto kind = hash_kind_from_string(cmd.kind);
  const ScalingParams params{cmd.n, cmd.s, cmd.rho};
  params.validate();
  if (cmd.reconcile) {
    const ScalingParams toy;
    if (params.n != toy.n || params.s != toy.s || params.rho != toy.rho) {
      throw CliError(kInvalidCombination, "--reconcile needs the toy parameters n=16 s=4 rho=12");
    }
    OracleSpec spec;
    spec.hash.kind = kind;
    spec.ancilla_budget = cmd.serial ? 1 : 2;
    const auto report = reconcile(measure_grover_step(spec), gate_formulas(kind, params, !cmd.serial));
    const auto [header, rows] = split_csv(report.to_csv());
    emit(out, cmd.format, header, rows);
    return report.pass() ? kOk : kRuntimeError;
  }
  const auto formula = gate_formulas(kind, params, !cmd.serial);
  std::string label = "custom";
  std::optional<Estimate> published;
  for (const auto& row : paper_rows()) {
    const auto& p = row.values.params;
    if (row.values.kind == kind && p.n == params.n && p.s == params.s &&
        (kind == HashKind::Sponge || p.rho == params.rho)) {
      label = row.label;
      published = row.values;
    }
  }
  std::string csv = estimate_csv_header() + "\n" + estimate_csv_row(label, formula) + "\n";
  if (published) csv += estimate_csv_row(label, *published) + "\n";
  const auto [header, rows] = split_csv(csv);
  emit(out, cmd.format, header, rows);
  return kOk;
}

// --- grover -----------------------------------------------------------

struct GroverCmd {
  HashOptions hash;
  std::optional<std::uint32_t> digest;
  std::optional<std::size_t> m;
  std::string mode = "known";
  std::optional<std::uint64_t> steps;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned budget = 2;
  double lambda = 6.0 / 5.0;
  std::uint64_t max_samples = 1000;
  bool reversible_check = false;
  std::uint64_t samples = 1000;
  std::string format = "csv";
};

int run_grover(const GroverCmd& cmd, std::ostream& out) {
  const auto config = cmd.hash.config();
  if (cmd.digest && cmd.m) throw CliError(kInvalidCombination, "--digest and --m are exclusive");
  if (cmd.steps && cmd.mode == "unknown") {
    throw CliError(kInvalidCombination, "--steps makes no sense with --mode unknown");
  }
  if (config.kind == HashKind::Blake && !cmd.reversible_check) {
    const auto width = GroverLayout::blake(cmd.budget).width;
    throw CliError(kInfeasible,
                   "blake Grover search needs a " + std::to_string(width) +
                       "-qubit statevector (2^" + std::to_string(width) +
                       " amplitudes), beyond dense simulation; use --reversible-check to "
                       "verify the oracle on basis states instead");
  }
  HashInstance instance;
  if (cmd.digest || (!cmd.m && config.kind == HashKind::Blake)) {
    const std::uint32_t digest = cmd.digest.value_or(0);
    instance = enumerate_preimages(static_cast<std::uint8_t>(digest), config);
    if (instance.m() == 0) {
      throw CliError(kNoPreimages, "digest " + hex(digest, 2) + " has no preimage");
    }
  } else {
    const std::size_t m = cmd.m.value_or(2);
    auto found = find_instance(config, m);
    if (!found) {
      throw CliError(kNoPreimages, "no digest has exactly " + std::to_string(m) + " preimages");
    }
    instance = *found;
  }

  if (cmd.reversible_check) {
    OracleSpec spec;
    spec.target_digest = instance.digest;
    spec.hash = config;
    spec.ancilla_budget = cmd.budget;
    std::vector<std::uint32_t> messages;
    const std::uint64_t space = instance.search_space();
    if (space <= cmd.samples) {
      for (std::uint32_t m = 0; m < space; ++m) messages.push_back(m);
    } else {
      messages = instance.preimages;
      std::mt19937_64 rng(cmd.seed);
      std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(space - 1));
      for (std::uint64_t i = 0; i < cmd.samples; ++i) messages.push_back(pick(rng));
    }
    const auto check = reversible_oracle_check(spec, messages);
    emit(out, cmd.format, {"kind", "digest", "messages", "preimages", "wrong_flips", "dirty", "pass"},
         {{to_string(config.kind), hex(instance.digest, 2), std::to_string(check.messages),
           std::to_string(check.preimages), std::to_string(check.wrong_flips),
           std::to_string(check.dirty), check.pass() ? "1" : "0"}});
    return check.pass() ? kOk : kRuntimeError;
  }

  GroverSimulator sim(instance, cmd.budget);
  Rows rows;
  for (std::uint64_t t = 0; t < cmd.trials; ++t) {
    GroverRunConfig rc;
    rc.steps = cmd.steps;
    rc.lambda = cmd.lambda;
    rc.max_samples = cmd.max_samples;
    rc.rng_seed = derive_seed(cmd.seed, 0, t);
    RunOutcome r;
    if (cmd.mode == "unknown") {
      r = run_unknown_m(sim, rc);
    } else if (cmd.mode == "early-stop") {
      r = run_early_stop(sim, rc, cmd.steps.value_or(optimal_steps(sim.search_space(), instance.m())));
    } else {
      r = run_known_m(sim, rc);
    }
    rows.push_back({std::to_string(t), hex(instance.digest, 2), std::to_string(instance.m()),
                    hex(r.measured_message, 2), r.is_preimage ? "1" : "0",
                    std::to_string(r.oracle_calls), std::to_string(r.samples_used)});
  }
  emit(out, cmd.format,
       {"trial", "digest", "m", "message", "is_preimage", "oracle_calls", "samples"}, rows);
  return kOk;
}

// --- experiments ------------------------------------------------------

const std::vector<std::string> kExperiments{"probability-evolution", "early-stop", "unknown-m",
                                             "entropy", "noise"};

struct ExperimentsCmd {
  std::string name;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::optional<std::uint64_t> trials;
  std::uint64_t trajectories = 250;
  std::vector<double> probabilities{0.0, 5e-6, 1e-5, 2e-5, 3e-5, 5e-5};
  std::string sites = "touched";
  std::string convention = "per-pauli";
  std::uint64_t max_steps = 12;
  std::uint64_t entropy_steps = 10;
  std::uint64_t scan_steps = 2;
};

ExperimentResult run_experiment(const ExperimentsCmd& cmd) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult r;
  if (cmd.name == "probability-evolution") {
    const auto suite = default_suite();
    std::vector<Evolution> runs;
    for (const auto& [m, inst] : suite.by_m) runs.push_back(probability_evolution(inst, cmd.max_steps));
    r = to_result(runs);
  } else if (cmd.name == "early-stop") {
    const auto suite = default_suite();
    const auto trials = cmd.trials.value_or(10000);
    r = to_result(early_stop_table({suite.at(2), suite.at(4), suite.at(6)}, trials, cmd.seed), cmd.seed);
    r.parameters.emplace_back("iv", hex(suite.config.iv, 4));
  } else if (cmd.name == "unknown-m") {
    const auto suite = default_suite();
    const auto trials = cmd.trials.value_or(1000);
    r = to_result(unknown_m_statistics({suite.at(2), suite.at(4), suite.at(6)}, trials, cmd.seed),
                  cmd.seed);
    r.parameters.emplace_back("iv", hex(suite.config.iv, 4));
  } else if (cmd.name == "entropy") {
    const auto suite = entropy_suite();
    std::vector<EntropyProfile> profiles;
    for (const auto& [m, inst] : suite.by_m) {
      profiles.push_back(entropy_profile(inst, cmd.entropy_steps, cmd.scan_steps));
    }
    r = to_result(profiles);
  } else if (cmd.name == "noise") {
    NoiseSweepOptions opts;
    opts.trajectories = cmd.trajectories;
    opts.seed = cmd.seed;
    opts.sites = cmd.sites == "all" ? NoiseSites::AllQubits : NoiseSites::TouchedQubits;
    opts.convention = cmd.convention == "total" ? PauliConvention::Total : PauliConvention::PerPauli;
    const auto inst = default_suite().at(2);
    r = to_result(inst, noise_sweep(inst, cmd.probabilities, opts), opts);
  } else {
    throw CliError(kUsageError, "unknown experiment '" + cmd.name + "'");
  }
  r.seed = cmd.seed;
  r.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::filesystem::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("QHASH_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "results";
}

int run_experiments(const ExperimentsCmd& cmd, std::ostream& out) {
  std::vector<std::string> names;
  if (cmd.name == "all") {
    names = kExperiments;
  } else {
    names = {cmd.name};
  }
  const auto dir = output_dir(cmd.out);
  for (const auto& name : names) {
    ExperimentsCmd one = cmd;
    one.name = name;
    const auto result = run_experiment(one);
    try {
      result.write(dir);
      if (cmd.format == "json") write_file(dir / (name + ".rows.json"), table_json(result.columns, result.rows));
    } catch (const CliError&) {
      throw;
    } catch (const std::exception& e) {
      throw CliError(kIoError, e.what());
    }
    out << (dir / (name + ".csv")).string() << '\n';
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grover preimage search on toy hash functions"};
  app.name("qhash");
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());

  HashCmd hash_cmd;
  auto* hash = app.add_subcommand("hash", "Digest of one message, or the full digest table");
  add_hash_options(hash, hash_cmd.hash);
  hash->add_option("--message", hash_cmd.message, "Message (0x.. accepted)");
  hash->add_flag("--table", hash_cmd.table, "Every message and its digest");
  add_format_option(hash, hash_cmd.format);

  PreimagesCmd pre_cmd;
  auto* pre = app.add_subcommand("preimages", "Brute-force preimages or the digest histogram");
  add_hash_options(pre, pre_cmd.hash);
  pre->add_option("--digest", pre_cmd.digest, "Target digest")->check(CLI::Range(0U, 255U));
  pre->add_flag("--histogram", pre_cmd.histogram, "Preimage count of every digest");
  add_format_option(pre, pre_cmd.format);

  BuildCmd build_cmd;
  auto* build = app.add_subcommand("build-circuit", "Emit a circuit in the text format");
  add_hash_options(build, build_cmd.hash);
  build->add_option("--digest", build_cmd.digest, "Target digest")
      ->check(CLI::Range(0U, 255U))
      ->capture_default_str();
  build->add_option("--budget", build_cmd.budget, "Adder ancillas (1 or 2)")
      ->check(CLI::Range(1U, 2U))
      ->capture_default_str();
  build->add_option("--part", build_cmd.part, "Circuit to build")
      ->check(CLI::IsMember({"step", "oracle", "diffusion", "preparation"}))
      ->capture_default_str();
  build->add_flag("--elementary", build_cmd.elementary, "Decompose to X, CNOT, Toffoli, H");
  build->add_flag("--counts", build_cmd.counts, "Print resource counts instead of the circuit");
  build->add_option("--out", build_cmd.out, "Output file (default stdout)");

  EstimateCmd est_cmd;
  auto* est = app.add_subcommand("estimate", "Closed-form resource estimates per Grover step");
  est->add_option("--kind,--hash", est_cmd.kind, "Hash family")
      ->check(CLI::IsMember({"sponge", "blake"}))
      ->capture_default_str();
  est->add_option("--n", est_cmd.n, "State or block bits")->capture_default_str();
  est->add_option("--s", est_cmd.s, "Permutation matrix sites")->capture_default_str();
  est->add_option("--rho", est_cmd.rho, "Blake rounds")->capture_default_str();
  est->add_flag("--serial", est_cmd.serial, "One adder ancilla instead of sqrt(s)");
  est->add_flag("--tables", est_cmd.tables, "All published rows with formula values");
  est->add_flag("--measured", est_cmd.measured, "With --tables: add measured toy rows");
  est->add_flag("--reconcile", est_cmd.reconcile, "Measured toy step against the formulas");
  add_format_option(est, est_cmd.format);

  GroverCmd gr_cmd;
  auto* gr = app.add_subcommand("grover", "Simulate Grover search on a sponge instance");
  add_hash_options(gr, gr_cmd.hash);
  gr->add_option("--digest", gr_cmd.digest, "Target digest (blake default 0x00)")->check(CLI::Range(0U, 255U));
  gr->add_option("--m", gr_cmd.m, "Pick the smallest digest with this many preimages (sponge default 2)");
  gr->add_option("--mode", gr_cmd.mode, "Search strategy")
      ->check(CLI::IsMember({"known", "unknown", "early-stop"}))
      ->capture_default_str();
  gr->add_option("--steps", gr_cmd.steps, "Grover steps (default optimal)");
  gr->add_option("--trials", gr_cmd.trials, "Independent runs")->capture_default_str();
  gr->add_option("--seed", gr_cmd.seed, "Master seed")->capture_default_str();
  gr->add_option("--budget", gr_cmd.budget, "Adder ancillas (1 or 2)")
      ->check(CLI::Range(1U, 2U))
      ->capture_default_str();
  gr->add_option("--lambda", gr_cmd.lambda, "Growth factor for --mode unknown")->capture_default_str();
  gr->add_option("--max-samples", gr_cmd.max_samples, "Sample cap for --mode early-stop")
      ->capture_default_str();
  gr->add_flag("--reversible-check", gr_cmd.reversible_check,
               "Check the oracle on basis states without a statevector");
  gr->add_option("--samples", gr_cmd.samples, "Random messages for --reversible-check")
      ->capture_default_str();
  add_format_option(gr, gr_cmd.format);

  ExperimentsCmd ex_cmd;
  auto* ex = app.add_subcommand("experiments", "Seeded experiment suite writing CSV + JSON");
  ex->require_subcommand(1);
  auto* ex_list = ex->add_subcommand("list", "Experiment names");
  auto* ex_run = ex->add_subcommand("run", "Run one experiment (or all)");
  std::vector<std::string> names = kExperiments;
  names.push_back("all");
  ex_run->add_option("name", ex_cmd.name, "Experiment")->required()->check(CLI::IsMember(names));
  ex_run->add_option("--seed", ex_cmd.seed, "Master seed")->capture_default_str();
  ex_run->add_option("--out", ex_cmd.out, "Output directory (default $QHASH_OUT_DIR, else results)");
  add_format_option(ex_run, ex_cmd.format);
  ex_run->add_option("--trials", ex_cmd.trials, "Trials (early-stop 10000, unknown-m 1000)");
  ex_run->add_option("--trajectories", ex_cmd.trajectories, "Noise trajectories per point")
      ->capture_default_str();
  ex_run->add_option("--p", ex_cmd.probabilities, "Noise Pauli probabilities")
      ->delimiter(',')
      ->capture_default_str();
  ex_run->add_option("--sites", ex_cmd.sites, "Noise sites")
      ->check(CLI::IsMember({"touched", "all"}))
      ->capture_default_str();
  ex_run->add_option("--convention", ex_cmd.convention, "Reading of the Pauli probability")
      ->check(CLI::IsMember({"per-pauli", "total"}))
      ->capture_default_str();
  ex_run->add_option("--max-steps", ex_cmd.max_steps, "Probability evolution steps")
      ->capture_default_str();
  ex_run->add_option("--steps", ex_cmd.entropy_steps, "Entropy steps")->capture_default_str();
  ex_run->add_option("--scan-steps", ex_cmd.scan_steps, "Entropy gate-scan steps")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*hash) return run_hash(hash_cmd, out);
    if (*pre) return run_preimages(pre_cmd, out);
    if (*build) return run_build(build_cmd, out);
    if (*est) return run_estimate(est_cmd, out);
    if (*gr) return run_grover(gr_cmd, out);
    if (*ex_list) {
      for (const auto& n : kExperiments) out << n << '\n';
      return kOk;
    }
    if (*ex_run) return run_experiments(ex_cmd, out);
  } catch (const CliError& e) {
    err << "qhash: " << e.what() << '\n';
    return e.code();
  } catch (const InfeasibleSimulation& e) {
    err << "qhash: " << e.what() << " (try --reversible-check)\n";
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    err << "qhash: invalid parameters: " << e.what() << '\n';
    return kInvalidCombination;
  } catch (const std::out_of_range& e) {
    err << "qhash: invalid parameters: " << e.what() << '\n';
    return kInvalidCombination;
  } catch (const std::exception& e) {
    err << "qhash: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace qhash::cli
