#pragma once

/**
 * @file svector.hpp
 * @brief Vectors over S, projective classes, and limits of one-parameter
 * monomial families.
 *
 * Two nonzero vectors are projectively equivalent when they have the same
 * levels entrywise and their real parts differ by one scalar in (0,inf).
 * Because inf absorbs scaling, a vector whose nonzero entries are all
 * infinite is alone in its class.
 */

#include "lamina/svalue.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace lamina {

using SVector = std::vector<SValue>;

inline std::string to_string(const SVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].to_string();
  return out + "]";
}

/// Entrywise product by an element of S; shifts every level by level(lambda).
inline SVector scale(const SValue& lambda, const SVector& v) {
  SVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(lambda * x);
  return out;
}

/// Entrywise real scaling; levels are unchanged.
inline SVector scale(const XRat& lambda, const SVector& v) {
  SVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(scale(lambda, x));
  return out;
}

inline bool is_origin(const SVector& v) {
  return std::all_of(v.begin(), v.end(), [](const SValue& x) { return x.is_zero(); });
}

inline bool is_lattice_point(const SVector& v) {
  return !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const SValue& x) { return x.is_infinite(); });
}

/// Finite closure check: every lambda*v lands back in `sample`.
inline bool is_cone_closed(std::span<const SVector> sample, std::span<const SValue> scalars) {
  std::set<SVector> members(sample.begin(), sample.end());
  for (const auto& v : sample)
    for (const auto& lambda : scalars)
      if (!members.contains(scale(lambda, v))) return false;
  return true;
}

/**
 * Canonical representative of the projective class of `v`: levels kept, and
 * the largest finite nonzero real part rescaled to 1. Vectors without finite
 * nonzero entries are returned unchanged.
 */
inline SVector proj_canonical(const SVector& v) {
  if (is_origin(v)) throw std::invalid_argument("the origin has no projective class");
  std::optional<Rational> largest;
  for (const auto& x : v) {
    if (x.is_zero() || x.is_infinite()) continue;
    const Rational& r = x.real_part().value();
    if (!largest || *largest < r) largest = r;
  }
  if (!largest) return v;
  SVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (x.is_zero()) out.push_back(x);
    else out.emplace_back(x.level(), x.real_part() / *largest);
  }
  return out;
}

inline bool projectively_equivalent(const SVector& a, const SVector& b) {
  return a.size() == b.size() && proj_canonical(a) == proj_canonical(b);
}

/// A projective class, stored through its canonical representative.
class ProjClass {
 public:
  explicit ProjClass(const SVector& v) : canon_(proj_canonical(v)) {}
  const SVector& canon() const { return canon_; }
  friend bool operator==(const ProjClass&, const ProjClass&) = default;
  friend auto operator<=>(const ProjClass& a, const ProjClass& b) { return a.canon_ <=> b.canon_; }

 private:
  SVector canon_;
};

/// Level of each entry, nullopt for Zero. Equal patterns = same level cone.
using LevelPattern = std::vector<std::optional<Level>>;

inline LevelPattern level_pattern(const SVector& v) {
  LevelPattern out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.is_zero() ? std::nullopt : std::optional<Level>(x.level()));
  return out;
}

// ---------------------------------------------------------------------------
// Monomial families t -> [(l_i, a_i t^{d_i})], limits taken as t -> inf.

struct Monomial {
  Level level = 0;
  Rational coeff{1};
  int degree = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

using MonomialFamily = std::vector<std::optional<Monomial>>;

inline void check_family(const MonomialFamily& f) {
  for (const auto& m : f)
    if (m && m->coeff <= 0) throw std::invalid_argument("monomial coefficients must be positive");
}

/// The member of the family at parameter t > 0.
inline SVector evaluate(const MonomialFamily& f, const Rational& t) {
  check_family(f);
  if (t <= 0) throw std::invalid_argument("family parameter must be positive");
  SVector out;
  out.reserve(f.size());
  for (const auto& m : f) {
    if (!m) {
      out.emplace_back();
      continue;
    }
    Rational value = m->coeff;
    for (int k = 0; k < std::abs(m->degree); ++k) value = m->degree > 0 ? value * t : value / t;
    out.emplace_back(m->level, XRat(value));
  }
  return out;
}

/**
 * Limit as t -> inf of the family rescaled so entry j is (l_j, 1).
 *
 * An entry that grows relative to j becomes (l_i, inf); one of the same
 * degree becomes (l_i, a_i/a_j); one that shrinks tends to (l_i - 1, inf),
 * or to 0 on level 0, since (l, eps) -> (l-1, inf) in the order topology.
 */
inline SVector normalized_limit(const MonomialFamily& f, std::size_t j) {
  check_family(f);
  if (j >= f.size()) throw std::out_of_range("normalizing entry out of range");
  if (!f[j]) throw std::invalid_argument("normalizing entry must be nonzero");
  const Monomial& pivot = *f[j];
  SVector out;
  out.reserve(f.size());
  for (const auto& m : f) {
    if (!m) out.emplace_back();
    else if (m->degree > pivot.degree) out.push_back(SValue::infinity(m->level));
    else if (m->degree == pivot.degree) out.emplace_back(m->level, XRat(m->coeff / pivot.coeff));
    else if (m->level == 0) out.emplace_back();
    else out.push_back(SValue::infinity(m->level - 1));
  }
  return out;
}

/**
 * All projective limits reachable by normalizing on one nonzero entry,
 * sorted and deduplicated. Two or more classes witness that the family's
 * rays converge to points that cannot be separated.
 */
inline std::vector<ProjClass> limit_points(const MonomialFamily& f) {
  std::set<ProjClass> found;
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f[j]) found.emplace(normalized_limit(f, j));
  if (found.empty()) throw std::invalid_argument("family is identically zero");
  return {found.begin(), found.end()};
}

}  // namespace lamina
