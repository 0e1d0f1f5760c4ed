#include "generators.hpp"

#include <gtest/gtest.h>

using namespace lamina;
using lamina::testing::Gen;

TEST(Json, SValueEncoding) {
  EXPECT_EQ(json(SValue()).dump(), "null");
  EXPECT_EQ(json(SValue(2, XRat(3, 6))).dump(), R"({"level":2,"real":"1/2"})");
  EXPECT_EQ(json(SValue::infinity(0)).dump(), R"({"level":0,"real":"inf"})");
  EXPECT_EQ(json::parse(R"({"level":1,"real":"4/2"})").get<SValue>(), SValue(1, XRat(2)));
  EXPECT_EQ(json::parse(R"({"level":1,"real":3})").get<SValue>(), SValue(1, XRat(3)));
  EXPECT_THROW(json::parse(R"({"level":-1,"real":"1"})").get<SValue>(), std::invalid_argument);
  EXPECT_THROW(json::parse(R"({"level":0,"real":"0"})").get<SValue>(), std::invalid_argument);
  EXPECT_THROW(json::parse(R"("x")").get<SValue>(), std::invalid_argument);
}

TEST(Json, RoundTrips) {
  Gen g(61);
  for (int i = 0; i < 50; ++i) {
    SVector v;
    for (int k = g.uniform(0, 4); k > 0; --k) v.push_back(g.svalue(5));
    EXPECT_EQ(json(v).get<SVector>(), v);

    auto mu = lamina::testing::random_measure(g);
    EXPECT_EQ(measure_from_json(measure_json(mu)), mu);

    auto t = lamina::testing::random_tree(g);
    auto back = tree_from_json(tree_json(t));
    EXPECT_EQ(back.nodes(), t.nodes());
    EXPECT_EQ(canonical_form(back), canonical_form(t));

    auto f = lamina::testing::random_chord_family(g);
    EXPECT_EQ(chords_json(chords_from_json(chords_json(f))), chords_json(f));

    auto tf = lamina::testing::random_track_with_family(g);
    EXPECT_EQ(track_json(track_from_json(track_json(tf.track))), track_json(tf.track));
    EXPECT_EQ(family_from_json(family_json(tf.family)), tf.family);
  }
}

TEST(Json, PolynomialFamilies) {
  auto j = json::parse(R"([{"coeff":"1","degree":0},[{"coeff":"1","degree":1},{"coeff":"2","degree":1}],null])");
  auto f = polynomial_family_from_json(j);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[1], (Polynomial{Term{Rational(3), 1}}));
  EXPECT_TRUE(f[2].empty());
  EXPECT_THROW(polynomial_family_from_json(json::parse(R"([{"level":1,"coeff":"1","degree":0}])")),
               std::invalid_argument);
}

TEST(Json, TrackFormat) {
  auto t = track_from_json(json::parse(R"({"segments":["x","y"],"switches":[{"a":["x","y"],"b":["y"]}],"free_ends":{"x":1}})"));
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.switches()[0].side_a, (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(track_from_json(json::parse(R"({"segments":["x"],"switches":[{"a":["x"],"b":["z"]}]})")),
               std::invalid_argument);
}

TEST(Json, MeasureSets) {
  auto mu = measure_from_json(json::parse(R"({"domain":{"intervals":[{"id":"I","length":"1"}]},
    "components":[{"kind":"atom","interval":"I","position":"1/2","level":1,"mass":"1"},
                  {"kind":"density","interval":"I","from":"0","to":"1","level":0,"density":"1"}]})"));
  auto e = set_from_json(json::parse(R"({"pieces":[{"interval":"I","lo":"0","hi":"1/4"}]})"), mu.domain());
  EXPECT_EQ(evaluate(mu, e), SValue(0, XRat(1, 4)));
  auto p = set_from_json(json::parse(R"({"pieces":[{"interval":"I","at":"1/2"}]})"), mu.domain());
  EXPECT_EQ(evaluate(mu, p), SValue(1, XRat(1)));
  EXPECT_THROW(component_from_json(json::parse(R"({"kind":"blob","interval":"I","level":0})"), mu.domain()),
               std::invalid_argument);
}
