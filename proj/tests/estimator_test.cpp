#include "qhash/estimator.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace qhash {
namespace {

// Direct floating-point evaluation of the formulas, kept separate from the
// integer implementation.
struct Reference {
  double t, c, single, depth;
};

Reference sponge_reference(double n, double s) {
  const double r = std::sqrt(s);
  return {88 * n - 80 * s - 88, 240 * n - 160 * s, 84 * n - 160 * s + 2,
          (120 / r + 8) * n - 120 * r - 80};
}

Reference blake_reference(double n, double s, double rho) {
  const double r = std::sqrt(s);
  return {(8 * rho + 16 * rho / r + 12) * n - (8 * s + 16 * r) * rho - 56,
          (24 * rho + 40 * rho / r + 1) * n - (16 * s + 32 * r) * rho,
          (8 * rho + 16 * rho / r + 7) * n - (16 * s + 32 * r) * rho + 2,
          (12 * rho / r + 16 * rho / s + 16) * n - (12 * r + 24) * rho - 50};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ScalingParams, Validation) {
  EXPECT_NO_THROW((ScalingParams{16, 4, 12}.validate()));
  EXPECT_THROW((ScalingParams{16, 8, 12}.validate()), std::invalid_argument);
  EXPECT_THROW((ScalingParams{18, 4, 12}.validate()), std::invalid_argument);
  EXPECT_THROW((ScalingParams{0, 4, 12}.validate()), std::invalid_argument);
  EXPECT_THROW((ScalingParams{16, 4, 0}.validate()), std::invalid_argument);
  EXPECT_EQ((ScalingParams{512, 16, 12}.sqrt_s()), 4);
}

TEST(SpongeFormulas, ToyRow) {
  const auto e = sponge_gate_formulas({16, 4, 12});
  EXPECT_EQ(e.counts.toffoli, 1000);
  EXPECT_EQ(e.counts.cnot, 3200);
  EXPECT_EQ(e.counts.single, 706);
  EXPECT_EQ(e.counts.total(), 4906);
  EXPECT_EQ(e.counts.depth, 768);
  EXPECT_EQ(e.qubits, 19);
  EXPECT_EQ(e.source, EstimateSource::Formula);
}

TEST(SpongeFormulas, RealRow) {
  const auto e = sponge_gate_formulas({512, 16, 12});
  EXPECT_EQ(e.counts.toffoli, 43688);
  EXPECT_EQ(e.counts.cnot, 120320);
  EXPECT_EQ(e.counts.single, 40450);
  EXPECT_EQ(e.counts.total(), 204458);
  EXPECT_EQ(e.counts.depth, 18896);
  EXPECT_EQ(e.qubits, 517);
}

TEST(BlakeFormulas, ToyRow) {
  const auto e = blake_gate_formulas({16, 4, 12});
  EXPECT_EQ(e.counts.toffoli, 2440);
  EXPECT_EQ(e.counts.cnot, 6928);
  EXPECT_EQ(e.counts.single, 1650);
  EXPECT_EQ(e.counts.total(), 11018);
  EXPECT_EQ(e.counts.depth, 1550);
  EXPECT_EQ(e.qubits, 35);
}

TEST(BlakeFormulas, RealRow) {
  const auto e = blake_gate_formulas({1024, 16, 12});
  EXPECT_EQ(e.counts.toffoli, 157384);
  EXPECT_EQ(e.counts.cnot, 414208);
  EXPECT_EQ(e.counts.single, 150018);
  EXPECT_EQ(e.counts.total(), 721610);
  EXPECT_EQ(e.counts.depth, 64622);
  EXPECT_EQ(e.qubits, 2053);
}

TEST(QubitWidth, PublishedCounts) {
  EXPECT_EQ(qubit_width({16, 4, 12}, HashKind::Sponge, true), 19);
  EXPECT_EQ(qubit_width({512, 16, 12}, HashKind::Sponge, true), 517);
  EXPECT_EQ(qubit_width({16, 4, 12}, HashKind::Blake, false), 34);
  EXPECT_EQ(qubit_width({16, 4, 12}, HashKind::Blake, true), 35);
  EXPECT_EQ(qubit_width({1024, 16, 12}, HashKind::Blake, true), 2053);
}

TEST(QubitWidth, MatchesBuiltLayouts) {
  EXPECT_EQ(qubit_width({16, 4, 12}, HashKind::Sponge, true),
            GroverLayout::sponge(2).width);
  EXPECT_EQ(qubit_width({16, 4, 12}, HashKind::Blake, false),
            GroverLayout::blake(1).width);
  EXPECT_EQ(qubit_width({16, 4, 12}, HashKind::Blake, true),
            GroverLayout::blake(2).width);
}

class FormulaGrid : public ::testing::TestWithParam<std::tuple<int, int, int>> {};

TEST_P(FormulaGrid, AgreesWithFloatingReference) {
  const auto [n_mult, r, rho] = GetParam();
  const std::int64_t s = r * r;
  const ScalingParams p{s * n_mult, s, rho};
  const auto sponge = sponge_gate_formulas(p);
  const auto sr = sponge_reference(static_cast<double>(p.n), static_cast<double>(s));
  EXPECT_DOUBLE_EQ(static_cast<double>(sponge.counts.toffoli), sr.t);
  EXPECT_DOUBLE_EQ(static_cast<double>(sponge.counts.cnot), sr.c);
  EXPECT_DOUBLE_EQ(static_cast<double>(sponge.counts.single), sr.single);
  EXPECT_NEAR(static_cast<double>(sponge.counts.depth), sr.depth, 1e-6);
  const auto blake = blake_gate_formulas(p);
  const auto br = blake_reference(static_cast<double>(p.n), static_cast<double>(s), rho);
  EXPECT_NEAR(static_cast<double>(blake.counts.toffoli), br.t, 1e-6);
  EXPECT_NEAR(static_cast<double>(blake.counts.cnot), br.c, 1e-6);
  EXPECT_NEAR(static_cast<double>(blake.counts.single), br.single, 1e-6);
  EXPECT_NEAR(static_cast<double>(blake.counts.depth), br.depth, 1e-6);
}

TEST_P(FormulaGrid, AffineAndNondecreasingInN) {
  const auto [n_mult, r, rho] = GetParam();
  const std::int64_t s = r * r;
  for (HashKind kind : {HashKind::Sponge, HashKind::Blake}) {
    const auto a = gate_formulas(kind, {s * n_mult, s, rho});
    const auto b = gate_formulas(kind, {s * (n_mult + 1), s, rho});
    const auto c = gate_formulas(kind, {s * (n_mult + 2), s, rho});
    auto fields = [](const Estimate& e) {
      return std::array<std::int64_t, 4>{e.counts.toffoli, e.counts.cnot,
                                         e.counts.single, e.counts.depth};
    };
    const auto fa = fields(a), fb = fields(b), fc = fields(c);
    for (int i = 0; i < 4; ++i) {
      EXPECT_EQ(fb[i] - fa[i], fc[i] - fb[i]);
      EXPECT_GE(fb[i], fa[i]);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Grid, FormulaGrid,
                         ::testing::Combine(::testing::Values(1, 2, 5, 32),
                                            ::testing::Values(1, 2, 4, 8),
                                            ::testing::Values(1, 10, 12)));

TEST(PaperCells, OnlyKnownCellsDisagree) {
  int mismatches = 0;
  for (const auto& c : check_paper_cells()) {
    const bool flagged = (c.kind == HashKind::Blake && c.label == "TOY" && c.column == "toffoli") ||
                         (c.kind == HashKind::Sponge && c.column == "depth");
    if (!flagged) {
      EXPECT_EQ(c.agreement, CellAgreement::Match)
          << to_string(c.kind) << ' ' << c.label << ' ' << c.column;
      EXPECT_EQ(c.paper, c.formula);
    } else {
      ++mismatches;
    }
  }
  EXPECT_EQ(mismatches, 3);
}

TEST(PaperCells, BlakeToyToffoliIsACellTypo) {
  for (const auto& c : check_paper_cells()) {
    if (c.kind == HashKind::Blake && c.label == "TOY" && c.column == "toffoli") {
      EXPECT_EQ(c.paper, 2240);
      EXPECT_EQ(c.formula, 2440);
      EXPECT_EQ(c.agreement, CellAgreement::CellTypo);
      EXPECT_EQ(2440 + 6928 + 1650, 11018);
    }
  }
}

TEST(PaperCells, SpongeDepthsDisagreeWithTheDepthFormula) {
  for (const auto& c : check_paper_cells()) {
    if (c.kind != HashKind::Sponge || c.column != "depth") continue;
    EXPECT_EQ(c.agreement, CellAgreement::FormulaMismatch);
    if (c.label == "TOY") {
      EXPECT_EQ(c.paper, 1248);
      EXPECT_EQ(c.formula, 768);
    } else {
      EXPECT_EQ(c.paper, 19856);
      EXPECT_EQ(c.formula, 18896);
    }
  }
}

TEST(Reconcile, IdenticalEstimatesHaveZeroDelta) {
  const auto f = sponge_gate_formulas({16, 4, 12});
  const auto r = reconcile(f, f);
  EXPECT_TRUE(r.pass());
  for (const auto& e : r.entries) EXPECT_EQ(e.relative_delta, 0.0);
}

TEST(Reconcile, FlagsDeltasBeyondTolerance) {
  const auto f = sponge_gate_formulas({16, 4, 12});
  auto m = f;
  m.counts.cnot = f.counts.cnot * 12 / 10;
  const auto r = reconcile(m, f, 0.10);
  EXPECT_FALSE(r.pass());
  m.counts.cnot = f.counts.cnot;
  m.counts.depth = f.counts.depth * 3;
  EXPECT_TRUE(reconcile(m, f, 0.10).pass());
}

TEST(Reconcile, RejectsMismatchedEstimates) {
  EXPECT_THROW(reconcile(sponge_gate_formulas({16, 4, 12}),
                         blake_gate_formulas({16, 4, 12})),
               std::invalid_argument);
  EXPECT_THROW(reconcile(sponge_gate_formulas({16, 4, 12}),
                         sponge_gate_formulas({32, 4, 12})),
               std::invalid_argument);
}

OracleSpec golden_spec(HashKind kind) {
  OracleSpec spec;
  spec.hash.kind = kind;
  spec.target_digest = 0x9A;
  spec.ancilla_budget = 2;
  return spec;
}

TEST(MeasuredStep, SpongeWithinTenPercent) {
  const auto m = measure_grover_step(golden_spec(HashKind::Sponge));
  EXPECT_EQ(m.source, EstimateSource::Measured);
  EXPECT_EQ(m.qubits, 19);
  EXPECT_EQ(m.counts.toffoli, 1032);
  EXPECT_EQ(m.counts.cnot, 3200);
  const auto r = reconcile(m, sponge_gate_formulas({16, 4, 12}));
  EXPECT_TRUE(r.pass()) << r.to_csv();
}

TEST(MeasuredStep, BlakeWithinTenPercent) {
  const auto m = measure_grover_step(golden_spec(HashKind::Blake));
  EXPECT_EQ(m.qubits, 35);
  EXPECT_EQ(m.counts.toffoli, 2440);
  const auto r = reconcile(m, blake_gate_formulas({16, 4, 12}));
  EXPECT_TRUE(r.pass()) << r.to_csv();
}

TEST(MeasuredStep, MatchesGoldenDeltaReports) {
  for (HashKind kind : {HashKind::Sponge, HashKind::Blake}) {
    const auto m = measure_grover_step(golden_spec(kind));
    const auto r = reconcile(m, gate_formulas(kind, {16, 4, 12}));
    const std::string path = std::string(QHASH_GOLDEN_DIR) + "/reconcile_" +
                             to_string(kind) + ".csv";
    EXPECT_EQ(read_file(path), r.to_csv()) << path;
  }
}

TEST(EstimatesCsv, CarriesAllSources) {
  const auto csv = estimates_csv(true);
  EXPECT_EQ(csv.substr(0, estimate_csv_header().size()), estimate_csv_header());
  EXPECT_NE(csv.find("TOY,blake,16,4,12,paper-table,2240,6928,1650,11018,1550,0"),
            std::string::npos);
  EXPECT_NE(csv.find("TOY,blake,16,4,12,formula,2440,6928,1650,11018,1550,35"),
            std::string::npos);
  EXPECT_NE(csv.find("TOY,sponge,16,4,12,measured,1032,3200"), std::string::npos);
  EXPECT_NE(csv.find("REAL,blake,1024,16,12,formula,157384,414208,150018,721610,64622,2053"),
            std::string::npos);
}

}  // namespace
}  // namespace qhash
