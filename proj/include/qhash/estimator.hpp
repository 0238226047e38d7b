#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qhash/hashes.hpp"
#include "qhash/oracles.hpp"
#include "qhash/resources.hpp"

namespace qhash {

struct ScalingParams {
  std::int64_t n = 16;    // state (sponge) or digest-block (blake) bits
  std::int64_t s = 4;     // sites of the permutation matrix
  std::int64_t rho = 12;  // blake rounds

  // Throws std::invalid_argument unless n > 0, s is a perfect square and
  // s divides n, and rho >= 1.
  void validate() const;
  std::int64_t sqrt_s() const;
};

enum class EstimateSource { Formula, Measured, PaperTable };
std::string to_string(EstimateSource source);

struct Estimate {
  HashKind kind = HashKind::Sponge;
  ScalingParams params;
  ResourceCount counts;  // counts.width mirrors qubits
  std::int64_t qubits = 0;
  EstimateSource source = EstimateSource::Formula;
};

// Closed-form per-step counts, evaluated in exact integer arithmetic (the
// fractional terms are integral once s divides n). Qubits assume parallel
// adders unless told otherwise.
Estimate sponge_gate_formulas(const ScalingParams& p, bool parallel_adders = true);
Estimate blake_gate_formulas(const ScalingParams& p, bool parallel_adders = true);
Estimate gate_formulas(HashKind kind, const ScalingParams& p,
                       bool parallel_adders = true);

// Sponge: n + ancillas + Grover ancilla. Blake: 2n (message and vector)
// + ancillas + Grover ancilla. Parallel adders take sqrt(s) ancillas.
std::int64_t qubit_width(const ScalingParams& p, HashKind kind, bool parallel_adders);

// Counts of an instantiated Grover step built for `spec`.
Estimate measure_grover_step(const OracleSpec& spec);

struct ReconcileEntry {
  std::string category;  // toffoli, cnot, single, total, depth, qubits
  std::int64_t measured = 0;
  std::int64_t formula = 0;
  double relative_delta = 0.0;  // (measured - formula) / formula
  bool informational = false;   // never fails the report
  bool pass = true;
};

struct ReconcileReport {
  double tolerance = 0.10;
  std::vector<ReconcileEntry> entries;

  bool pass() const;
  // Header: category,measured,formula,relative_delta,informational,pass
  std::string to_csv() const;
};

// Per gate class |measured - formula| / formula <= tolerance. Depth and
// width are informational. Throws std::invalid_argument when the two
// estimates describe different hashes or parameters.
ReconcileReport reconcile(const Estimate& measured, const Estimate& formula,
                          double tolerance = 0.10);

// Published table rows (gate counts per Grover step).
struct PaperRow {
  std::string label;  // TOY or REAL
  Estimate values;    // source PaperTable, qubits 0 (not tabulated)
  std::int64_t total = 0;  // published TOTAL column
};
const std::vector<PaperRow>& paper_rows();

enum class CellAgreement {
  Match,
  // Cell differs from the formula but the row TOTAL equals the formula
  // class sum: a typo in the cell.
  CellTypo,
  // Cell differs from the formula and nothing in the row repairs it.
  FormulaMismatch,
};
std::string to_string(CellAgreement agreement);

struct CellCheck {
  HashKind kind = HashKind::Sponge;
  std::string label;
  std::string column;  // toffoli, cnot, single, total, depth
  std::int64_t paper = 0;
  std::int64_t formula = 0;
  CellAgreement agreement = CellAgreement::Match;
};

// Every numeric cell of the published rows against the formulas.
std::vector<CellCheck> check_paper_cells();

// Rows for the estimate table: paper, formula and (toy rows only, when
// `with_measured`) measured estimates. Header:
// label,kind,n,s,rho,source,toffoli,cnot,single,total,depth,qubits
std::string estimates_csv(bool with_measured);
std::string estimate_csv_header();
std::string estimate_csv_row(const std::string& label, const Estimate& e);

}  // namespace qhash
