#include "generators.hpp"

#include <gtest/gtest.h>

using namespace lamina;
using lamina::testing::Gen;

namespace {

SValue S(Level l, const char* real) { return SValue(l, XRat::parse(real)); }
const SValue Z;

STree path3(SValue ab, SValue bc) { return STree({"a", "b", "c"}, {{"a", "b", ab}, {"b", "c", bc}}); }

STree star() {
  return STree({"c", "p", "q", "r"}, {{"c", "p", S(0, "1")}, {"c", "q", S(0, "2")}, {"c", "r", S(1, "1")}});
}

}  // namespace

TEST(STree, RejectsNonTrees) {
  EXPECT_THROW(STree({"a", "b"}, {}), std::invalid_argument);
  EXPECT_THROW(STree({"a", "b", "c"}, {{"a", "b", S(0, "1")}, {"a", "b", S(0, "1")}}), std::invalid_argument);
  EXPECT_THROW(STree({"a", "b"}, {{"a", "b", Z}}), std::invalid_argument);
  EXPECT_THROW(STree({"a", "a"}, {{"a", "a", S(0, "1")}}), std::invalid_argument);
  EXPECT_NO_THROW(STree({"a"}, {}));
}

TEST(STree, PathExamples) {
  auto t = path3(S(0, "1"), S(0, "1"));
  EXPECT_TRUE(path(t, "b", "b").empty());
  EXPECT_EQ(path(t, "a", "c"), (std::vector<std::size_t>{0, 1}));
  auto s = star();
  EXPECT_EQ(path(s, "p", "q"), (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(path(t, "a", "zz"), std::invalid_argument);
}

TEST(STree, DistanceExamples) {
  EXPECT_EQ(distance(path3(S(0, "1"), S(1, "2")), "a", "c"), S(1, "2"));
  EXPECT_EQ(distance(path3(S(0, "1"), S(1, "2")), "b", "b"), Z);
  EXPECT_EQ(distance(path3(S(1, "2"), S(1, "3")), "a", "c"), S(1, "5"));
}

TEST(STree, VerifyMetricExamples) {
  EXPECT_TRUE(verify_metric(star()));
  EXPECT_TRUE(verify_metric(STree({"solo"}, {})));
  auto table = distance_table(path3(S(0, "1"), S(0, "1")));
  table[0][2] = S(0, "5");
  table[2][0] = S(0, "5");
  EXPECT_FALSE(verify_metric(table));
  auto asym = distance_table(star());
  asym[1][2] = S(0, "4");
  EXPECT_FALSE(verify_metric(asym));
}

TEST(STree, BoundaryAndInfinitePoints) {
  STree ray({"a", "b"}, {{"a", "b", S(0, "inf")}});
  EXPECT_EQ(infinite_points(ray), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(is_locally_finite(ray));
  auto finite = path3(S(0, "1"), S(0, "1"));
  EXPECT_TRUE(infinite_points(finite).empty());
  EXPECT_EQ(boundary_points(finite), (std::vector<std::string>{"a", "c"}));
  EXPECT_FALSE(is_locally_finite(finite));
  EXPECT_THROW(infinite_points(star()), std::invalid_argument);
}

TEST(STree, InsertExamples) {
  // single node at a leaf
  auto t = path3(S(0, "1"), S(0, "2"));
  STree point({"x"}, {});
  auto t1 = insert(t, "c", point, {{"x", "b"}});
  EXPECT_TRUE(isomorphic(t1, t));
  EXPECT_TRUE(isomorphic(collapse(t1, {"x"}, "c"), t));

  // an edge at a degree-2 node lengthens the path
  STree edge({"p", "q"}, {{"p", "q", S(0, "5")}});
  auto t2 = insert(t, "b", edge, {{"p", "a"}, {"q", "c"}});
  EXPECT_EQ(t2.size(), 4u);
  EXPECT_EQ(distance(t2, "a", "c"), S(0, "8"));
  EXPECT_TRUE(isomorphic(collapse(t2, {"p", "q"}, "b"), t));
}

TEST(STree, InsertRejectsBadAttachments) {
  auto s = star();
  STree edge({"p1", "q1"}, {{"p1", "q1", S(0, "1")}});
  EXPECT_THROW(insert(s, "c", edge, {{"p1", "p"}, {"q1", "q"}}), std::invalid_argument);  // arity
  STree line({"u", "m", "w"}, {{"u", "m", S(0, "1")}, {"m", "w", S(0, "1")}});
  EXPECT_THROW(insert(s, "p", line, {{"u", "q"}}), std::invalid_argument);  // q is not a direction at p
  STree spoke({"h", "i", "j", "k"}, {{"h", "i", S(0, "1")}, {"h", "j", S(0, "1")}, {"h", "k", S(0, "1")}});
  EXPECT_THROW(insert(s, "p", spoke, {{"h", "c"}}), std::invalid_argument);  // h has degree 3
}

TEST(STree, StarCentreReplacedByTripod) {
  auto s = star();
  STree r({"h", "u", "v", "w"}, {{"h", "u", S(0, "1")}, {"h", "v", S(0, "1")}, {"h", "w", S(0, "1")}});
  auto t = insert(s, "c", r, {{"u", "p"}, {"v", "q"}, {"w", "r"}});
  EXPECT_EQ(t.size(), s.size() - 1 + r.size());
  EXPECT_EQ(t.edges().size(), s.edges().size() + r.size() - 1);
  EXPECT_EQ(t.degree(t.index_of("u")), 2u);
  EXPECT_EQ(t.degree(t.index_of("h")), 3u);
  EXPECT_TRUE(isomorphic(collapse(t, {"h", "u", "v", "w"}, "c"), s));
}

TEST(STree, CollapseExamples) {
  auto s = star();
  EXPECT_TRUE(isomorphic(collapse(s, {"p"}, "p"), s));
  auto whole = collapse(s, {"c", "p", "q", "r"}, "all");
  EXPECT_EQ(whole.size(), 1u);
  EXPECT_THROW(collapse(s, {"p", "q"}, "pq"), std::invalid_argument);
}

TEST(STree, IsomorphismSeesLengths) {
  EXPECT_TRUE(isomorphic(path3(S(0, "1"), S(0, "2")), path3(S(0, "2"), S(0, "1"))));
  EXPECT_FALSE(isomorphic(path3(S(0, "1"), S(0, "2")), path3(S(0, "1"), S(0, "3"))));
  EXPECT_FALSE(isomorphic(path3(S(0, "1"), S(0, "1")), star()));
}

TEST(ChordFamily, RejectsCrossingsAndBadEnds) {
  EXPECT_THROW(ChordFamily(4, {{1, 3, S(0, "1")}, {2, 4, S(0, "1")}}), std::invalid_argument);
  EXPECT_THROW(ChordFamily(4, {{1, 5, S(0, "1")}}), std::invalid_argument);
  EXPECT_THROW(ChordFamily(4, {{1, 2, S(0, "1")}, {2, 3, S(0, "1")}}), std::invalid_argument);
  EXPECT_THROW(ChordFamily(4, {{1, 2, Z}}), std::invalid_argument);
  EXPECT_NO_THROW(ChordFamily(4, {{1, 4, S(0, "1")}, {2, 3, S(0, "1")}}));
}

TEST(ChordFamily, DualTreeExamples) {
  auto one = dual_tree(ChordFamily(2, {{1, 2, S(0, "1")}}));
  EXPECT_EQ(one.tree.size(), 2u);
  EXPECT_EQ(distance(one.tree, 0, 1), S(0, "1"));

  auto nested = dual_tree(ChordFamily(4, {{1, 4, S(0, "1")}, {2, 3, S(1, "1")}}));
  ASSERT_EQ(nested.tree.size(), 3u);
  // arc 4 lies outside both chords, arc 2 inside both
  auto outer = std::find_if(nested.regions.begin(), nested.regions.end(),
                            [](const Region& r) { return std::count(r.arcs.begin(), r.arcs.end(), 4); });
  auto inner = std::find_if(nested.regions.begin(), nested.regions.end(),
                            [](const Region& r) { return std::count(r.arcs.begin(), r.arcs.end(), 2); });
  EXPECT_EQ(distance(nested.tree, outer->id, inner->id), S(1, "1"));
  EXPECT_EQ(boundary_points(nested.tree).size(), 2u);

  // m parallel chords (i, 2m+1-i) give a path of m+1 regions
  std::vector<Chord> stacked;
  const int m = 4;
  for (int i = 1; i <= m; ++i) stacked.push_back({i, 2 * m + 1 - i, SValue(0, XRat(i))});
  auto path_tree = dual_tree(ChordFamily(2 * m, stacked));
  EXPECT_EQ(boundary_points(path_tree.tree).size(), 2u);
  auto ends = boundary_points(path_tree.tree);
  EXPECT_EQ(distance(path_tree.tree, ends[0], ends[1]), S(0, "10"));
}

// --- properties ---------------------------------------------------------------

TEST(STreeProperties, MetricAndUniquePaths) {
  Gen g(51);
  for (int i = 0; i < 60; ++i) {
    auto t = lamina::testing::random_tree(g, 8);
    EXPECT_TRUE(verify_metric(t));
    for (std::size_t x = 0; x < t.size(); ++x)
      for (std::size_t y = 0; y < t.size(); ++y) EXPECT_EQ(lamina::testing::count_simple_paths(t, x, y), 1);
  }
}

TEST(STreeProperties, DualTreesMatchSeparatingSums) {
  Gen g(52);
  for (int i = 0; i < 60; ++i) {
    auto f = lamina::testing::random_chord_family(g);
    auto d = dual_tree(f);
    EXPECT_EQ(d.tree.size(), f.chords().size() + 1);
    for (std::size_t a = 0; a < d.regions.size(); ++a)
      for (std::size_t b = 0; b < d.regions.size(); ++b)
        EXPECT_EQ(distance(d.tree, a, b),
                  lamina::testing::separating_weight(f, d.regions[a].arcs.front(), d.regions[b].arcs.front()));
    for (std::size_t x = 0; x < d.tree.size(); ++x)
      for (std::size_t y = 0; y < d.tree.size(); ++y)
        for (std::size_t z = 0; z < d.tree.size(); ++z) {
          EXPECT_TRUE(lamina::testing::prefix_axiom(d.tree, x, y, z));
          EXPECT_TRUE(lamina::testing::concatenation_axiom(d.tree, x, y, z));
        }
  }
}

TEST(STreeProperties, InsertCollapseRoundTrip) {
  Gen g(53);
  for (int i = 0; i < 60; ++i) {
    auto ins = lamina::testing::random_insertion(g);
    auto t = insert(ins.base, ins.at, ins.inserted, ins.attach);
    EXPECT_EQ(t.size(), ins.base.size() - 1 + ins.inserted.size());
    auto back = collapse(t, ins.inserted.nodes(), ins.at);
    EXPECT_TRUE(isomorphic(back, ins.base));
  }
}
