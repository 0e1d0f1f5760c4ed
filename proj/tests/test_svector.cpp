#include "generators.hpp"

#include <gtest/gtest.h>

using namespace lamina;
using lamina::testing::Gen;

namespace {

SValue S(Level l, const char* real) { return SValue(l, XRat::parse(real)); }
const SValue Z;

Monomial M(Level l, const char* coeff, int degree) { return {l, parse_rational(coeff), degree}; }

}  // namespace

TEST(SVector, ScaleByS) {
  EXPECT_EQ(scale(S(1, "1"), SVector{S(0, "1"), S(0, "2")}), (SVector{S(1, "1"), S(1, "2")}));
  EXPECT_EQ(scale(S(0, "3"), SVector{S(2, "1"), Z}), (SVector{S(2, "3"), Z}));
  EXPECT_TRUE(is_origin(scale(Z, SVector{S(2, "1"), S(0, "4")})));
}

TEST(SVector, LatticePoints) {
  EXPECT_TRUE(is_lattice_point({S(1, "inf"), S(0, "inf")}));
  EXPECT_FALSE(is_lattice_point({S(1, "inf"), S(0, "5")}));
  EXPECT_FALSE(is_lattice_point({Z, Z}));
}

TEST(SVector, ConeClosure) {
  std::vector<SVector> sample{{S(0, "1"), S(0, "2")}, {S(0, "2"), S(0, "4")}};
  std::vector<SValue> halve{S(0, "1/2")};
  std::vector<SValue> triple{S(0, "3")};
  EXPECT_FALSE(is_cone_closed(sample, halve));  // (0,1/2)[(0,1),(0,2)] is missing
  EXPECT_FALSE(is_cone_closed(sample, triple));
  std::vector<SVector> lattice{{S(1, "inf"), S(0, "inf")}};
  std::vector<SValue> reals{S(0, "2"), S(0, "1/7")};
  EXPECT_TRUE(is_cone_closed(lattice, reals));
}

TEST(SVector, CanonicalForms) {
  EXPECT_EQ(proj_canonical({S(0, "1"), S(0, "4"), S(0, "1")}), (SVector{S(0, "1/4"), S(0, "1"), S(0, "1/4")}));
  EXPECT_EQ(proj_canonical({S(1, "inf"), S(0, "inf")}), (SVector{S(1, "inf"), S(0, "inf")}));
  EXPECT_EQ(proj_canonical({S(2, "6"), S(1, "inf"), S(2, "2")}), (SVector{S(2, "1"), S(1, "inf"), S(2, "1/3")}));
  EXPECT_THROW(proj_canonical({Z, Z}), std::invalid_argument);
}

TEST(SVector, CanonicalScalarIsUnique) {
  // brute force over scalars p/q: only 1/6 sends the largest finite real part to 1
  SVector v{S(2, "6"), S(1, "inf"), S(2, "2")};
  int hits = 0;
  for (int p = 1; p <= 12; ++p)
    for (int q = 1; q <= 12; ++q) {
      auto w = scale(XRat(p, q), v);
      if (w[0].real_part() == XRat(1) && w[2].real_part() <= XRat(1)) {
        ++hits;
        EXPECT_EQ(XRat(p, q), XRat(1, 6));
      }
    }
  EXPECT_GT(hits, 0);
}

TEST(SVector, LevelPatterns) {
  EXPECT_EQ(level_pattern({S(1, "3"), S(1, "1")}), (LevelPattern{1u, 1u}));
  EXPECT_EQ(level_pattern({Z, S(0, "5")}), (LevelPattern{std::nullopt, 0u}));
  EXPECT_EQ(level_pattern({S(0, "inf"), S(1, "2")}), (LevelPattern{0u, 1u}));
}

TEST(SVector, NormalizedLimits) {
  MonomialFamily spiral{M(0, "1", 0), M(0, "1", 1), M(0, "1", 0)};
  EXPECT_EQ(normalized_limit(spiral, 1), (SVector{Z, S(0, "1"), Z}));
  EXPECT_EQ(normalized_limit(spiral, 0), (SVector{S(0, "1"), S(0, "inf"), S(0, "1")}));
  MonomialFamily ray{M(1, "1", 1), M(1, "1", 0)};
  EXPECT_EQ(normalized_limit(ray, 0), (SVector{S(1, "1"), S(0, "inf")}));
  EXPECT_THROW(normalized_limit(MonomialFamily{std::nullopt, M(0, "1", 0)}, 0), std::invalid_argument);
}

TEST(SVector, LimitPoints) {
  auto two = limit_points({M(1, "1", 1), M(1, "1", 0)});
  ASSERT_EQ(two.size(), 2u);
  std::set<SVector> found{two[0].canon(), two[1].canon()};
  EXPECT_TRUE(found.contains(SVector{S(1, "1"), S(0, "inf")}));
  EXPECT_TRUE(found.contains(SVector{S(1, "inf"), S(1, "1")}));

  auto one = limit_points({M(0, "2", 3), M(0, "4", 3)});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].canon(), (SVector{S(0, "1/2"), S(0, "1")}));

  auto constant = limit_points({M(0, "1", 0)});
  ASSERT_EQ(constant.size(), 1u);
  EXPECT_EQ(constant[0].canon(), SVector{S(0, "1")});

  EXPECT_THROW(limit_points({std::nullopt, std::nullopt}), std::invalid_argument);
}

TEST(SVector, EvaluateFamily) {
  MonomialFamily f{M(0, "3", 2), std::nullopt, M(1, "1", -1)};
  EXPECT_EQ(evaluate(f, Rational(2)), (SVector{S(0, "12"), Z, S(1, "1/2")}));
  EXPECT_THROW(evaluate(f, Rational(0)), std::invalid_argument);
}

// --- properties ---------------------------------------------------------------

TEST(SVectorProperties, CanonicalIsIdempotentAndScaleInvariant) {
  Gen g(11);
  for (int i = 0; i < 300; ++i) {
    SVector v;
    for (int k = g.uniform(1, 4); k > 0; --k) v.push_back(g.svalue(3));
    if (is_origin(v)) continue;
    auto c = proj_canonical(v);
    EXPECT_EQ(proj_canonical(c), c);
    auto w = scale(XRat(g.positive_rational()), v);
    EXPECT_EQ(proj_canonical(w), c);
    EXPECT_TRUE(projectively_equivalent(v, w));
    EXPECT_EQ(level_pattern(w), level_pattern(v));
    if (std::none_of(v.begin(), v.end(), [](const SValue& x) { return !x.is_zero() && !x.is_infinite(); })) {
      EXPECT_EQ(c, v);
    }
  }
}

TEST(SVectorProperties, PivotEntryNormalizesToOne) {
  Gen g(12);
  for (int i = 0; i < 200; ++i) {
    MonomialFamily f;
    for (int k = g.uniform(1, 4); k > 0; --k) {
      if (g.chance(1, 5)) f.emplace_back();
      else f.push_back(Monomial{static_cast<Level>(g.uniform(0, 2)), g.positive_rational(), g.uniform(-2, 3)});
    }
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (!f[j]) continue;
      auto lim = normalized_limit(f, j);
      EXPECT_EQ(lim[j], SValue(f[j]->level, XRat(1)));
    }
  }
}

TEST(SVectorProperties, LimitsOfInvariantFamiliesAreInvariant) {
  Gen g(13);
  for (int i = 0; i < 100; ++i) {
    auto [track, family] = lamina::testing::random_track_with_family(g);
    for (std::size_t j = 0; j < family.size(); ++j)
      EXPECT_TRUE(is_invariant(track, normalized_limit(family, j)));
  }
}
