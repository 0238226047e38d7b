#include "qhash/estimator.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "qhash/arithmetic.hpp"

namespace qhash {

namespace {

std::int64_t exact_sqrt(std::int64_t s) {
  if (s <= 0) return -1;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(s))));
  while (r * r > s) --r;
  while ((r + 1) * (r + 1) <= s) ++r;
  return r * r == s ? r : -1;
}

Estimate make_estimate(HashKind kind, const ScalingParams& p, std::int64_t t,
                       std::int64_t c, std::int64_t single, std::int64_t depth,
                       bool parallel) {
  Estimate e;
  e.kind = kind;
  e.params = p;
  e.counts.toffoli = t;
  e.counts.cnot = c;
  e.counts.single = single;
  e.counts.depth = depth;
  e.qubits = qubit_width(p, kind, parallel);
  e.counts.width = e.qubits;
  e.source = EstimateSource::Formula;
  return e;
}

ReconcileEntry entry(const std::string& name, std::int64_t measured,
                     std::int64_t formula, double tolerance, bool informational) {
  ReconcileEntry e;
  e.category = name;
  e.measured = measured;
  e.formula = formula;
  if (formula != 0) {
    e.relative_delta = static_cast<double>(measured - formula) / static_cast<double>(formula);
  } else {
    e.relative_delta = measured == 0 ? 0.0 : INFINITY;
  }
  e.informational = informational;
  e.pass = informational || std::abs(e.relative_delta) <= tolerance;
  return e;
}

PaperRow paper_row(std::string label, HashKind kind,
                   ScalingParams p, std::int64_t t, std::int64_t c,
                   std::int64_t single, std::int64_t total, std::int64_t depth) {
  PaperRow row;
  row.total = total;
  row.label = std::move(label);
  row.values.kind = kind;
  row.values.params = p;
  row.values.counts = {t, c, single, depth, 0};
  row.values.source = EstimateSource::PaperTable;
  return row;
}

std::string kind_name(HashKind k) { return to_string(k); }

}  // namespace

void ScalingParams::validate() const {
  if (n <= 0) throw std::invalid_argument("n must be positive");
  if (exact_sqrt(s) < 1) throw std::invalid_argument("s must be a perfect square");
  if (n % s != 0) throw std::invalid_argument("s must divide n");
  if (rho < 1) throw std::invalid_argument("rho must be >= 1");
}

std::int64_t ScalingParams::sqrt_s() const {
  const auto r = exact_sqrt(s);
  if (r < 1) throw std::invalid_argument("s must be a perfect square");
  return r;
}

std::string to_string(EstimateSource source) {
  switch (source) {
    case EstimateSource::Formula: return "formula";
    case EstimateSource::Measured: return "measured";
    case EstimateSource::PaperTable: return "paper-table";
  }
  return "?";
}

std::string to_string(CellAgreement agreement) {
  switch (agreement) {
    case CellAgreement::Match: return "match";
    case CellAgreement::CellTypo: return "cell-typo";
    case CellAgreement::FormulaMismatch: return "formula-mismatch";
  }
  return "?";
}

std::int64_t qubit_width(const ScalingParams& p, HashKind kind, bool parallel_adders) {
  p.validate();
  const std::int64_t ancillas = parallel_adders ? p.sqrt_s() : 1;
  const std::int64_t data = kind == HashKind::Sponge ? p.n : 2 * p.n;
  return data + ancillas + 1;
}

Estimate sponge_gate_formulas(const ScalingParams& p, bool parallel_adders) {
  p.validate();
  const auto n = p.n, s = p.s, r = p.sqrt_s();
  return make_estimate(HashKind::Sponge, p, 88 * n - 80 * s - 88,
                       240 * n - 160 * s, 84 * n - 160 * s + 2,
                       120 * n / r + 8 * n - 120 * r - 80, parallel_adders);
}

Estimate blake_gate_formulas(const ScalingParams& p, bool parallel_adders) {
  p.validate();
  const auto n = p.n, s = p.s, r = p.sqrt_s(), rho = p.rho;
  const auto t = 8 * rho * n + 16 * rho * n / r + 12 * n - (8 * s + 16 * r) * rho - 56;
  const auto c = 24 * rho * n + 40 * rho * n / r + n - (16 * s + 32 * r) * rho;
  const auto single = 8 * rho * n + 16 * rho * n / r + 7 * n - (16 * s + 32 * r) * rho + 2;
  const auto depth = 12 * rho * n / r + 16 * rho * n / s + 16 * n - (12 * r + 24) * rho - 50;
  return make_estimate(HashKind::Blake, p, t, c, single, depth, parallel_adders);
}

Estimate gate_formulas(HashKind kind, const ScalingParams& p, bool parallel_adders) {
  return kind == HashKind::Sponge ? sponge_gate_formulas(p, parallel_adders)
                                  : blake_gate_formulas(p, parallel_adders);
}

Estimate measure_grover_step(const OracleSpec& spec) {
  const auto layout = GroverLayout::for_spec(spec);
  const auto step = build_grover_step(spec, layout);
  Estimate e;
  e.kind = spec.hash.kind;
  e.params.n = 16;
  e.params.s = 4;
  e.params.rho = spec.hash.kind == HashKind::Blake ? spec.hash.blake.rho : 12;
  e.counts = count_resources(instantiate(step));
  e.qubits = layout.width;
  e.counts.width = e.qubits;
  e.source = EstimateSource::Measured;
  return e;
}

bool ReconcileReport::pass() const {
  for (const auto& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

std::string ReconcileReport::to_csv() const {
  std::ostringstream out;
  out << "category,measured,formula,relative_delta,informational,pass\n";
  out.setf(std::ios::fixed);
  out.precision(6);
  for (const auto& e : entries) {
    out << e.category << ',' << e.measured << ',' << e.formula << ','
        << e.relative_delta << ',' << (e.informational ? 1 : 0) << ','
        << (e.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

ReconcileReport reconcile(const Estimate& measured, const Estimate& formula,
                          double tolerance) {
  if (measured.kind != formula.kind) {
    throw std::invalid_argument("reconcile: estimates are for different hashes");
  }
  const auto& a = measured.params;
  const auto& b = formula.params;
  const bool rho_matters = measured.kind == HashKind::Blake;
  if (a.n != b.n || a.s != b.s || (rho_matters && a.rho != b.rho)) {
    throw std::invalid_argument("reconcile: estimates use different parameters");
  }
  ReconcileReport r;
  r.tolerance = tolerance;
  const auto& m = measured.counts;
  const auto& f = formula.counts;
  r.entries.push_back(entry("toffoli", m.toffoli, f.toffoli, tolerance, false));
  r.entries.push_back(entry("cnot", m.cnot, f.cnot, tolerance, false));
  r.entries.push_back(entry("single", m.single, f.single, tolerance, false));
  r.entries.push_back(entry("total", m.total(), f.total(), tolerance, false));
  r.entries.push_back(entry("depth", m.depth, f.depth, tolerance, true));
  r.entries.push_back(entry("qubits", measured.qubits, formula.qubits, tolerance, true));
  return r;
}

const std::vector<PaperRow>& paper_rows() {
  static const std::vector<PaperRow> rows = {
      paper_row("TOY", HashKind::Sponge, {16, 4, 12}, 1000, 3200, 706, 4906, 1248),
      paper_row("REAL", HashKind::Sponge, {512, 16, 12}, 43688, 120320, 40450, 204458, 19856),
      paper_row("TOY", HashKind::Blake, {16, 4, 12}, 2240, 6928, 1650, 11018, 1550),
      paper_row("REAL", HashKind::Blake, {1024, 16, 12}, 157384, 414208, 150018, 721610, 64622),
  };
  return rows;
}

std::vector<CellCheck> check_paper_cells() {
  std::vector<CellCheck> out;
  for (const auto& row : paper_rows()) {
    const auto f = gate_formulas(row.values.kind, row.values.params);
    const auto& p = row.values.counts;
    const std::int64_t total = row.total;
    const bool total_matches_formula = total == f.counts.total();
    auto add = [&](const char* column, std::int64_t paper, std::int64_t formula,
                   bool repairable) {
      CellCheck c;
      c.kind = row.values.kind;
      c.label = row.label;
      c.column = column;
      c.paper = paper;
      c.formula = formula;
      if (paper == formula) {
        c.agreement = CellAgreement::Match;
      } else if (repairable && total_matches_formula) {
        c.agreement = CellAgreement::CellTypo;
      } else {
        c.agreement = CellAgreement::FormulaMismatch;
      }
      out.push_back(c);
    };
    add("toffoli", p.toffoli, f.counts.toffoli, true);
    add("cnot", p.cnot, f.counts.cnot, true);
    add("single", p.single, f.counts.single, true);
    add("total", total, f.counts.total(), false);
    add("depth", p.depth, f.counts.depth, false);
  }
  return out;
}

std::string estimate_csv_header() {
  return "label,kind,n,s,rho,source,toffoli,cnot,single,total,depth,qubits";
}

std::string estimate_csv_row(const std::string& label, const Estimate& e) {
  std::ostringstream out;
  const auto& c = e.counts;
  std::int64_t total = c.total();
  if (e.source == EstimateSource::PaperTable) {
    for (const auto& row : paper_rows()) {
      if (row.values.kind == e.kind && row.label == label) total = row.total;
    }
  }
  out << label << ',' << kind_name(e.kind) << ',' << e.params.n
      << ',' << e.params.s << ',' << e.params.rho << ',' << to_string(e.source)
      << ',' << c.toffoli << ',' << c.cnot << ',' << c.single << ',' << total
      << ',' << c.depth << ',' << e.qubits;
  return out.str();
}

std::string estimates_csv(bool with_measured) {
  std::ostringstream out;
  out << estimate_csv_header() << '\n';
  for (const auto& row : paper_rows()) {
    out << estimate_csv_row(row.label, row.values) << '\n';
    out << estimate_csv_row(row.label,
                            gate_formulas(row.values.kind, row.values.params))
        << '\n';
    if (with_measured && row.label == "TOY") {
      OracleSpec spec;
      spec.hash.kind = row.values.kind;
      spec.target_digest = 0x9A;
      spec.ancilla_budget = 2;
      out << estimate_csv_row(row.label, measure_grover_step(spec)) << '\n';
    }
  }
  return out.str();
}

}  // namespace qhash
