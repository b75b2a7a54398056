#include <gtest/gtest.h>

#include "gen.hpp"
#include "metastab/error.hpp"
#include "metastab/json_io.hpp"

using namespace metastab;
namespace io = metastab::io;

namespace {

template <typename T, typename Read>
void round_trip(const T& value, Read read) {
  const auto doc = io::to_document(value);
  const std::string text = io::dump(doc);
  const T back = read(io::parse(text));
  EXPECT_TRUE(back == value);
  EXPECT_EQ(io::dump(io::to_document(back)), text);
}

}  // namespace

TEST(Json, Windows) {
  std::vector<std::vector<bool>> leq{
      {true, true, true, true}, {false, true, false, true}, {false, false, true, true}, {false, false, false, true}};
  for (const auto& w : {DirectedWindow::omega(5), DirectedWindow::ordinal(3), DirectedWindow::custom(leq),
                        DirectedWindow::product(DirectedWindow::omega(2), DirectedWindow::omega(3))})
    round_trip(w, io::window_document);
}

TEST(Json, RandomSamplings) {
  gen::Rng rng(81);
  for (int t = 0; t < 50; ++t) {
    const auto w = gen::window(rng, 12);
    const auto s = gen::sampling(rng, w);
    round_trip(s, io::sampling_document);
    EXPECT_EQ(io::sampling_document(io::to_document(s)).id(), s.id());
  }
}

TEST(Json, NetsInEverySpace) {
  const auto w = DirectedWindow::omega(3);
  round_trip(binary_net(w, {1, 0, 1}), io::net_document);
  round_trip(unit_net(w, {0.1, 1.0 / 3.0, 0.0}), io::net_document);
  round_trip(Net(w, MetricSpace::real_line(), {-1e300, 5e-324, 2.5}), io::net_document);
  round_trip(Net(w, MetricSpace::euclidean(2), {Coordinates{0.1, 0.2}, Coordinates{0, 0}, Coordinates{-1, 3}}),
             io::net_document);
  round_trip(Net(w, MetricSpace::table({{0, 1}, {1, 0}}), {Symbol{1}, Symbol{0}, Symbol{1}}), io::net_document);
}

TEST(Json, NetTarget) {
  const auto a = binary_net(DirectedWindow::omega(2), {1, 0});
  const auto doc = io::to_document(a, Point(Bit{0}));
  EXPECT_EQ(io::net_target_from_json(doc), Point(Bit{0}));
}

TEST(Json, Rates) {
  const auto w = DirectedWindow::omega(4);
  Rate r(w, Rate::default_grid(), true);
  r.set(0.5, successor_sampling(w), {1, 2});
  r.set_uniform(0.25, {3});
  round_trip(r, io::rate_document);
}

TEST(Json, Certificates) {
  const auto c = refute_C({0, 1, 2}, DirectedWindow::omega(6));
  const auto back = io::certificate_document(io::parse(io::dump(io::to_document(c))));
  EXPECT_TRUE(replay(back));
  EXPECT_EQ(back.member, c.member);
  EXPECT_EQ(back.sampling, c.sampling);
  EXPECT_EQ(back.member_index, c.member_index);
  const auto d = refute_D_pointed({0, 1}, DirectedWindow::omega(6));
  EXPECT_EQ(io::certificate_document(io::to_document(d)).pointed_target, d.pointed_target);
}

TEST(Json, FamilySpecs) {
  round_trip(FamilySpec{FamilyTag::D, DirectedWindow::omega(7), std::pair<Index, Index>{1, 3}},
             io::family_spec_document);
  round_trip(FamilySpec{FamilyTag::paracompact, DirectedWindow::omega(7), std::nullopt, 4}, io::family_spec_document);
}

TEST(Json, Families) {
  const auto gen = enumerate_family({FamilyTag::B, DirectedWindow::omega(4)});
  const io::FamilyData f{"B", gen.members(), gen.targets()};
  const auto back = io::family_document(io::parse(io::dump(io::to_document(f))));
  EXPECT_EQ(back.tag, "B");
  EXPECT_EQ(back.members, f.members);
  EXPECT_EQ(back.targets, f.targets);
}

TEST(Json, WitnessReports) {
  WitnessReport r{0.5, "identity", 4, false, {0, 2}, {0, std::nullopt, 2}, false};
  const auto back = io::witness_report_document(io::to_document(r));
  EXPECT_EQ(back.outcomes, r.outcomes);
  EXPECT_EQ(back.candidates, r.candidates);
  EXPECT_EQ(io::dump(io::to_document(back)), io::dump(io::to_document(r)));
}

TEST(Json, SchemaErrors) {
  auto doc = io::to_document(DirectedWindow::omega(3));
  EXPECT_THROW(io::sampling_document(doc), schema_error);
  doc["schema_version"] = 2;
  EXPECT_THROW(io::window_document(doc), schema_error);
  doc.erase("schema_version");
  EXPECT_THROW(io::window_document(doc), schema_error);
  EXPECT_THROW(io::parse("{not json"), schema_error);
  EXPECT_THROW(io::window_document(io::parse(R"({"schema_version":1,"type":"window","kind":"omega","size":0})")),
               schema_error);
  EXPECT_THROW(io::window_document(io::parse(R"({"schema_version":1,"type":"window","kind":"tree"})")),
               schema_error);
  EXPECT_THROW(io::net_document(io::parse(
                   R"({"schema_version":1,"type":"net","window":{"kind":"omega","size":2},"space":{"kind":"binary"},"values":[0,2]})")),
               schema_error);
  EXPECT_THROW(io::read_file("/nonexistent/file.json"), schema_error);
}
