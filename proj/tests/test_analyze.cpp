#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "metastab/analyze.hpp"
#include "metastab/error.hpp"
#include "metastab/families.hpp"

using namespace metastab;

namespace {

// Every reported witness and candidate set must re-validate.
void expect_revalidates(const AnalysisReport& r, std::span<const Net> family, std::span<const Sampling> suite) {
  ASSERT_EQ(r.cells.size(), r.eps_grid.size() * suite.size());
  for (std::size_t c = 0; c < r.cells.size(); ++c) {
    const AnalysisCell& cell = r.cells[c];
    const Sampling& eta = suite[c % suite.size()];
    for (std::size_t k = 0; k < family.size(); ++k) {
      ASSERT_EQ(cell.first_witness[k], find_witness(family[k], cell.eps, eta));
      if (!cell.refuted()) ASSERT_TRUE(find_witness_among(family[k], cell.eps, eta, cell.candidates).has_value());
    }
  }
}

}  // namespace

TEST(Suites, Builtins) {
  const auto w = DirectedWindow::omega(5);
  EXPECT_EQ(successor_sampling(w)[4], IndexSet{4});
  EXPECT_EQ(successor_sampling(w)[1], (IndexSet{1, 2}));
  EXPECT_EQ(doubling_sampling(w)[3], (IndexSet{3, 4}));
  EXPECT_EQ(doubling_sampling(w)[1], (IndexSet{1, 2}));
  EXPECT_EQ(make_suite("builtin", w).size(), 3u);
  EXPECT_THROW(make_suite("random-2", w), precondition_error);
  EXPECT_THROW(make_suite("random-x", w, 1), precondition_error);
  EXPECT_THROW(make_suite("nope", w), precondition_error);
  EXPECT_THROW(doubling_sampling(DirectedWindow::product(w, w)), precondition_error);
}

TEST(Suites, RandomIsSeededAndValid) {
  gen::Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    const auto w = gen::window(rng, 20);
    const auto a = make_suite("random-3", w, 42, 5);
    const auto b = make_suite("random-3", w, 42, 5);
    ASSERT_EQ(a.size(), 5u);
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k], b[k]);
      EXPECT_EQ(a[k].id(), b[k].id());
      EXPECT_TRUE(validate_sampling(a[k]).ok());
    }
  }
  const auto w = DirectedWindow::omega(30);
  EXPECT_FALSE(make_suite("random-2", w, 1)[0] == make_suite("random-2", w, 2)[0]);
}

TEST(Cesaro, QuarterTurnExamples) {
  const double quarter = std::numbers::pi / 2;
  EXPECT_EQ(cesaro_average(quarter, 4), (Coordinates{0.0, 0.0}));
  EXPECT_EQ(cesaro_average(0.0, 7), (Coordinates{1.0, 0.0}));
  EXPECT_EQ(cesaro_average(std::numbers::pi, 2), (Coordinates{0.0, 0.0}));
  EXPECT_THROW(cesaro_average(quarter, 0), precondition_error);
}

TEST(Cesaro, NetsMatchAverages) {
  const std::vector<double> angles{0.0, std::numbers::pi / 3, 1.0};
  const auto nets = cesaro_rotation_nets(angles, 40);
  ASSERT_EQ(nets.size(), 3u);
  for (std::size_t a = 0; a < 3; ++a)
    for (Index i = 0; i < 40; ++i) {
      const auto want = cesaro_average(angles[a], i + 1);
      const auto& got = std::get<Coordinates>(nets[a][i]);
      EXPECT_NEAR(got[0], want[0], 1e-12);
      EXPECT_NEAR(got[1], want[1], 1e-12);
    }
  for (Index i = 0; i < 40; ++i) EXPECT_EQ(std::get<Coordinates>(nets[0][i]), (Coordinates{1.0, 0.0}));
}

TEST(Cesaro, EnvelopeBound) {
  const std::vector<double> angles{std::numbers::pi / 2, std::numbers::pi / 3, 0.1, 2.5, std::numbers::pi};
  const auto nets = cesaro_rotation_nets(angles, 2000);
  for (std::size_t a = 0; a < angles.size(); ++a)
    for (Index i = 0; i < 2000; ++i) {
      const auto& p = std::get<Coordinates>(nets[a][i]);
      EXPECT_LE(std::hypot(p[0], p[1]), cesaro_envelope(angles[a], i + 1) * (1 + 0x1p-40)) << a << " " << i;
    }
  EXPECT_TRUE(std::isinf(cesaro_envelope(0.0, 5)));
}

TEST(GreedyCover, PicksMostCovering) {
  const auto r = greedy_cover({{1, 2}, {2, 3}, {3}, {}});
  EXPECT_EQ(r.candidates, (IndexSet{2, 3}));
  EXPECT_EQ(r.uncovered, std::vector<std::size_t>{3});
}

TEST(EmpiricalRate, ConstantFamily) {
  const auto w = DirectedWindow::omega(6);
  const std::vector<Net> family{binary_net(w, {0, 0, 0, 0, 0, 0}), binary_net(w, {1, 1, 1, 1, 1, 1})};
  const auto suite = make_suite("builtin", w);
  const std::vector<double> grid{0.5, 0.125};
  const auto r = empirical_rate(family, grid, suite);
  for (const auto& cell : r.cells) EXPECT_EQ(cell.candidates, IndexSet{0});
  EXPECT_FALSE(r.refutation_found());
  expect_revalidates(r, family, suite);
}

TEST(EmpiricalRate, FamilyBRandomSuite) {
  const auto w = DirectedWindow::omega(32);
  const auto family = enumerate_family({FamilyTag::B, w}).members();
  const auto suite = make_suite("random-2", w, 5, 20);
  const std::vector<double> grid{0.5};
  const auto r = empirical_rate(family, grid, suite);
  expect_revalidates(r, family, suite);
  for (std::size_t s = 0; s < suite.size(); ++s) {
    Rate rate(w, {0.5});
    rate.set(0.5, suite[s], r.cells[s].candidates);
    EXPECT_TRUE(verify_rate(family, rate, 0.5, suite[s]).overall);
  }
}

TEST(EmpiricalRate, CesaroAllWitnessed) {
  const std::vector<double> angles{std::numbers::pi / 2, std::numbers::pi / 3};
  const auto family = cesaro_rotation_nets(angles, 256);
  const std::vector<Sampling> suite{doubling_sampling(family[0].window())};
  const std::vector<double> grid{0.05};
  const auto r = empirical_rate(family, grid, suite);
  EXPECT_FALSE(r.refutation_found());
  for (const auto& w : r.cells[0].first_witness) EXPECT_TRUE(w.has_value());
  expect_revalidates(r, family, suite);
}

TEST(EmpiricalRate, Preconditions) {
  const auto w = DirectedWindow::omega(3);
  const std::vector<Net> family{binary_net(w, {0, 0, 0})};
  const std::vector<Sampling> suite{identity_sampling(w)};
  const std::vector<double> grid{0.5};
  EXPECT_THROW(empirical_rate({}, grid, suite), precondition_error);
  EXPECT_THROW(empirical_rate(family, grid, {}), precondition_error);
  const std::vector<Sampling> other{identity_sampling(DirectedWindow::omega(4))};
  EXPECT_THROW(empirical_rate(family, grid, other), precondition_error);
}

TEST(EmpiricalRate, RandomFamiliesRevalidate) {
  gen::Rng rng(62);
  for (int t = 0; t < 40; ++t) {
    const auto w = gen::window(rng, 16);
    std::vector<Net> family;
    for (std::size_t k = gen::uniform(rng, 1, 6); k > 0; --k) family.push_back(unit_net(w, gen::values(rng, w.size())));
    const auto suite = make_suite("random-2", w, t, 3);
    const std::vector<double> grid{0.5, 0.25, 0.125};
    expect_revalidates(empirical_rate(family, grid, suite), family, suite);
  }
}

TEST(EmpiricalRate, Deterministic) {
  const auto w = DirectedWindow::omega(20);
  const auto family = enumerate_family({FamilyTag::B, w}).members();
  const auto suite = make_suite("random-3", w, 9, 4);
  const std::vector<double> grid{0.5, 0.25};
  const auto a = empirical_rate(family, grid, suite);
  const auto b = empirical_rate(family, grid, suite);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    EXPECT_EQ(a.cells[c].candidates, b.cells[c].candidates);
    EXPECT_EQ(a.cells[c].first_witness, b.cells[c].first_witness);
  }
}

TEST(Ump, SinglePoint) {
  const auto w = DirectedWindow::omega(4);
  const std::vector<Net> nets{binary_net(w, {1, 0, 0, 0})};
  const std::vector<Sampling> suite{successor_sampling(w)};
  const std::vector<double> grid{0.5};
  const auto v = finite_space_ump_check(nets, grid, suite);
  EXPECT_TRUE(v.uniform);
  EXPECT_EQ(v.cells[0].candidates, IndexSet{1});
}

TEST(Ump, ParacompactPlainUniformButPointedRefuted) {
  const std::size_t m = 5;
  const auto gen = paracompact_nets(m, 16);
  const auto nets = gen.members();
  const auto suite = make_suite("builtin", gen.window());
  const std::vector<double> grid{0.5};
  const auto v = finite_space_ump_check(nets, grid, suite);
  EXPECT_TRUE(v.uniform);
  for (std::size_t size = 1; size < m; ++size) {
    IndexSet s;
    for (Index i = 0; i < size; ++i) s.push_back(i);
    const std::vector<IndexSet> sets{s};
    const auto cert = refute_uniform(gen, sets, 0.5, {.budget = 100, .seed = 1, .pointed = true});
    ASSERT_TRUE(cert.has_value());
    EXPECT_TRUE(replay(*cert));
  }
}

TEST(Ump, FamilyBMatchesRateB) {
  const auto w = DirectedWindow::omega(8);
  const auto nets = enumerate_family({FamilyTag::B, w}).members();
  const auto suite = make_suite("random-2", w, 3, 6);
  const std::vector<double> grid{0.5};
  const auto v = finite_space_ump_check(nets, grid, suite);
  ASSERT_TRUE(v.uniform);
  for (std::size_t s = 0; s < suite.size(); ++s) {
    const IndexSet b = rate_B(suite[s], w);
    for (const Net& a : nets) EXPECT_TRUE(find_witness_among(a, 0.5, suite[s], b).has_value());
    EXPECT_LE(v.cells[s].candidates.size(), b.size());
  }
}

TEST(Ump, AlternatingNetIsCauchyAtTheTop) {
  const auto w = DirectedWindow::omega(4);
  const std::vector<Net> nets{binary_net(w, {1, 0, 1, 0}), binary_net(w, {0, 0, 0, 0})};
  const std::vector<Sampling> suite{successor_sampling(w)};
  const std::vector<double> grid{0.25};
  const auto v = finite_space_ump_check(nets, grid, suite);
  EXPECT_TRUE(v.uniform);
  EXPECT_TRUE(v.non_cauchy_points.empty());
  EXPECT_EQ(v.cells[0].candidates, IndexSet{3});
}

TEST(Csv, SingleColumn) {
  const auto nets = ingest_csv_text("1\n0\n0\n", MetricSpace::unit_interval());
  ASSERT_EQ(nets.size(), 1u);
  EXPECT_EQ(nets[0], unit_net(DirectedWindow::omega(3), {1, 0, 0}));
}

TEST(Csv, PlanarColumns) {
  const auto nets = ingest_csv_text("1,0\n0.5,0.5\n0,1\n0.25,0\n", MetricSpace::euclidean(2));
  ASSERT_EQ(nets.size(), 1u);
  EXPECT_EQ(nets[0].size(), 4u);
  EXPECT_EQ(std::get<Coordinates>(nets[0][1]), (Coordinates{0.5, 0.5}));
}

TEST(Csv, Errors) {
  try {
    ingest_csv_text("1,2\na,b\n", MetricSpace::real_line());
    FAIL();
  } catch (const schema_error& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
  }
  EXPECT_THROW(ingest_csv_text("1,2\n3\n", MetricSpace::real_line()), schema_error);
  EXPECT_THROW(ingest_csv_text("1,2,3\n", MetricSpace::euclidean(2)), schema_error);
  EXPECT_THROW(ingest_csv_text("2\n", MetricSpace::unit_interval()), schema_error);
  EXPECT_THROW(ingest_csv_text("", MetricSpace::unit_interval()), schema_error);
}

TEST(Csv, RoundingGrid) {
  const auto nets = ingest_csv_text("0.26\n0.74\n", MetricSpace::unit_interval(), {.rounding_grid = 0.5});
  EXPECT_EQ(nets[0], unit_net(DirectedWindow::omega(2), {0.5, 0.5}));
}
