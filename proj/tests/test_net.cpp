#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "metastab/analyze.hpp"
#include "metastab/error.hpp"
#include "metastab/meta.hpp"
#include "metastab/net.hpp"

using namespace metastab;

TEST(Space, BinaryDistance) {
  const auto s = MetricSpace::binary();
  EXPECT_EQ(s.distance(Bit{0}, Bit{1}), 1.0);
  EXPECT_EQ(s.distance(Bit{1}, Bit{1}), 0.0);
  EXPECT_FALSE(s.contains(Bit{2}));
  EXPECT_FALSE(s.contains(0.5));
}

TEST(Space, UnitIntervalRejectsOutside) {
  const auto s = MetricSpace::unit_interval();
  EXPECT_TRUE(s.contains(1.0));
  EXPECT_FALSE(s.contains(1.5));
  EXPECT_FALSE(s.contains(std::nan("")));
}

TEST(Space, Euclidean) {
  const auto s = MetricSpace::euclidean(2);
  EXPECT_EQ(s.distance(Coordinates{0, 0}, Coordinates{3, 4}), 5.0);
  EXPECT_FALSE(s.contains(Coordinates{1, 2, 3}));
  EXPECT_FALSE(s.diameter_bound().has_value());
}

TEST(Space, TableChecksMetricAxioms) {
  EXPECT_NO_THROW(MetricSpace::table({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
  EXPECT_THROW(MetricSpace::table({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}), precondition_error);  // triangle
  EXPECT_THROW(MetricSpace::table({{0, 1}, {2, 0}}), precondition_error);                   // symmetry
  EXPECT_THROW(MetricSpace::table({{1, 1}, {1, 0}}), precondition_error);                   // diagonal
  const auto t = MetricSpace::table({{0, 0.5}, {0.5, 0}});
  EXPECT_EQ(t.distance(Symbol{0}, Symbol{1}), 0.5);
  EXPECT_FALSE(t.contains(Symbol{2}));
}

TEST(NetTest, RejectsMissingValues) {
  EXPECT_THROW(Net(DirectedWindow::omega(3), MetricSpace::binary(), {Bit{0}, Bit{1}}), precondition_error);
  EXPECT_THROW(Net(DirectedWindow::omega(2), MetricSpace::binary(), {Bit{0}, 0.5}), precondition_error);
}

TEST(SelfDistance, ConstantNetIsZero) {
  const auto a = unit_net(DirectedWindow::omega(4), {0.3, 0.3, 0.3, 0.3});
  const Net s = self_distance(a);
  EXPECT_EQ(s.space().kind(), SpaceKind::unit_interval);
  for (const Point& p : s.values()) EXPECT_EQ(std::get<double>(p), 0.0);
}

TEST(SelfDistance, BinaryPair) {
  const auto a = binary_net(DirectedWindow::omega(2), {1, 0});
  const Net s = self_distance(a);
  const auto& p = s.window();
  EXPECT_EQ(std::get<double>(s[p.encode_pair(0, 0)]), 0.0);
  EXPECT_EQ(std::get<double>(s[p.encode_pair(0, 1)]), 1.0);
  EXPECT_EQ(std::get<double>(s[p.encode_pair(1, 0)]), 1.0);
  EXPECT_EQ(std::get<double>(s[p.encode_pair(1, 1)]), 0.0);
}

TEST(SelfDistance, UnboundedSpaceGoesToRealLine) {
  const auto a = Net(DirectedWindow::omega(2), MetricSpace::real_line(), {0.0, 5.0});
  EXPECT_EQ(self_distance(a).space().kind(), SpaceKind::real_line);
}

TEST(SelfDistance, SymmetricWithZeroDiagonal) {
  gen::Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const auto w = gen::window(rng, 12);
    const auto a = unit_net(w, gen::values(rng, w.size()));
    const Net s = self_distance(a);
    const auto& p = s.window();
    for (Index i = 0; i < w.size(); ++i) {
      EXPECT_EQ(std::get<double>(s[p.encode_pair(i, i)]), 0.0);
      for (Index j = 0; j < w.size(); ++j)
        EXPECT_EQ(std::get<double>(s[p.encode_pair(i, j)]), std::get<double>(s[p.encode_pair(j, i)]));
    }
  }
}

TEST(DistanceToPoint, ConstantAtTarget) {
  const auto a = binary_net(DirectedWindow::omega(3), {1, 1, 1});
  const Net d = distance_to_point(a, Bit{1});
  for (const Point& p : d.values()) EXPECT_EQ(std::get<double>(p), 0.0);
}

TEST(DistanceToPoint, BinaryValues) {
  const Net d = distance_to_point(binary_net(DirectedWindow::omega(4), {1, 1, 0, 0}), Bit{0});
  EXPECT_EQ(d.values(), (std::vector<Point>{1.0, 1.0, 0.0, 0.0}));
}

TEST(DistanceToPoint, QuarterTurnAveragesVanishAtFour) {
  const std::vector<double> angles{std::acos(0.0)};
  const Net a = cesaro_rotation_nets(angles, 8).front();
  const Net d = distance_to_point(a, Coordinates{0.0, 0.0});
  EXPECT_EQ(std::get<double>(d[3]), 0.0);  // a_4, averaging four terms
}

TEST(DistanceToPoint, RejectsForeignPoint) {
  EXPECT_THROW(distance_to_point(binary_net(DirectedWindow::omega(2), {0, 1}), 0.5), precondition_error);
}

TEST(DistanceToPoint, OneLipschitzInTarget) {
  gen::Rng rng(22);
  for (int t = 0; t < 200; ++t) {
    const auto w = DirectedWindow::omega(gen::uniform(rng, 1, 16));
    const Net a = unit_net(w, gen::values(rng, w.size(), 97));
    const double b = gen::values(rng, 1, 97)[0];
    const double c = gen::values(rng, 1, 97)[0];
    const Net db = distance_to_point(a, b);
    const Net dc = distance_to_point(a, c);
    for (Index i = 0; i < w.size(); ++i)
      EXPECT_LE(std::fabs(std::get<double>(db[i]) - std::get<double>(dc[i])), std::fabs(b - c) + 0x1p-50);
  }
}

TEST(CauchyIndex, Examples) {
  const auto w = DirectedWindow::omega(4);
  EXPECT_EQ(window_cauchy_index(binary_net(w, {1, 1, 1, 1}), 0.1), Index{0});
  EXPECT_EQ(window_cauchy_index(binary_net(w, {1, 0, 0, 0}), 0.5), Index{1});
  // The top of a finite window always has a singleton tail.
  EXPECT_EQ(window_cauchy_index(binary_net(w, {1, 0, 1, 0}), 0.5), Index{3});
  EXPECT_EQ(window_cauchy_index(binary_net(w, {1, 0, 1, 0}), 0.5), w.top());
}

TEST(CauchyIndex, AgreesWithOracle) {
  gen::Rng rng(23);
  for (int t = 0; t < 300; ++t) {
    const auto w = gen::window(rng, 20);
    const auto v = gen::values(rng, w.size());
    const double eps = gen::eps(rng);
    const auto got = window_cauchy_index(unit_net(w, v), eps);
    const auto want = oracle::cauchy_index(v, gen::matrix(w), eps);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (got) EXPECT_EQ(*got, *want);
  }
}

TEST(CauchyIndex, ImpliesWitnessForEverySmallSampling) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto w = DirectedWindow::omega(n);
    const auto samplings = oracle::small_chain_samplings(n);
    gen::Rng rng(n);
    for (int t = 0; t < 20; ++t) {
      const Net a = unit_net(w, gen::values(rng, n, 4));
      const double eps = gen::eps(rng, 4);
      const auto i0 = window_cauchy_index(a, eps);
      ASSERT_TRUE(i0.has_value());
      for (const auto& s : samplings) ASSERT_TRUE(is_witness(a, eps, gen::from_sets(w, s), *i0));
    }
  }
}

TEST(CauchyIndex, ImpliesWitnessForRandomSamplings) {
  gen::Rng rng(24);
  for (int t = 0; t < 300; ++t) {
    const auto w = gen::window(rng, 64);
    const Net a = unit_net(w, gen::values(rng, w.size()));
    const double eps = gen::eps(rng);
    const auto i0 = window_cauchy_index(a, eps);
    if (!i0) continue;
    for (int k = 0; k < 5; ++k) ASSERT_TRUE(is_witness(a, eps, gen::sampling(rng, w, 4), *i0));
  }
}

TEST(TailDiameter, MatchesCauchyIndex) {
  const auto a = unit_net(DirectedWindow::omega(4), {0.0, 1.0, 0.25, 0.5});
  EXPECT_EQ(tail_diameter(a, 0), 1.0);
  EXPECT_EQ(tail_diameter(a, 2), 0.25);
  EXPECT_EQ(tail_diameter(a, 3), 0.0);
}
