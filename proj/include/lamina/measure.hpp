#pragma once

/**
 * @file measure.hpp
 * @brief Finite height S-measures on finite unions of closed intervals.
 *
 * A measure is a list of atoms and constant-density pieces, each living on
 * one level. Measuring a set E picks the highest level carrying positive
 * mass in E and reports the total mass at that level, so lower levels are
 * only visible where nothing higher is.
 *
 * Per level k we derive
 *   Q_k        closed support of everything at level >= k,
 *   nu_k(E)    real part of nu(E) at level k, inf above, 0 below,
 *   nuhat_k(E) level-k mass of E n (Q_k \ Q_{k+1}),
 * and nu is recovered from the nuhat_k as (j, nuhat_j(E \ Q_{j+1})) with j
 * the largest level where that is positive.
 */

#include "lamina/svalue.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lamina {

struct TransversalInterval {
  std::string id;
  Rational length;
};

class TransversalDomain {
 public:
  TransversalDomain() = default;
  explicit TransversalDomain(std::vector<TransversalInterval> intervals) : intervals_(std::move(intervals)) {
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
      if (intervals_[i].length <= 0)
        throw std::invalid_argument("interval '" + intervals_[i].id + "' must have positive length");
      if (!index_.emplace(intervals_[i].id, i).second)
        throw std::invalid_argument("duplicate interval id '" + intervals_[i].id + "'");
    }
  }

  std::size_t size() const { return intervals_.size(); }
  const std::vector<TransversalInterval>& intervals() const { return intervals_; }
  const Rational& length(std::size_t i) const { return intervals_.at(i).length; }
  const std::string& id(std::size_t i) const { return intervals_.at(i).id; }

  std::size_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown interval '" + id + "'");
    return it->second;
  }

 private:
  std::vector<TransversalInterval> intervals_;
  std::map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Sets: finite unions of sub-intervals (open, closed or half-open) and points

struct Piece {
  std::size_t interval = 0;
  Rational lo{0}, hi{0};
  bool lo_closed = true;
  bool hi_closed = true;

  bool is_empty() const { return hi < lo || (lo == hi && !(lo_closed && hi_closed)); }
  Rational length() const { return hi > lo ? hi - lo : Rational(0); }
  bool contains(std::size_t iv, const Rational& p) const {
    if (iv != interval) return false;
    bool above = lo_closed ? p >= lo : p > lo;
    bool below = hi_closed ? p <= hi : p < hi;
    return above && below;
  }
  friend bool operator==(const Piece&, const Piece&) = default;
};

/// A finite union of pieces kept sorted, disjoint and maximally merged.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Rejects reversed endpoints and pieces outside the domain.
  static IntervalSet from_pieces(std::vector<Piece> pieces, const TransversalDomain& domain) {
    for (const auto& p : pieces) {
      if (p.interval >= domain.size()) throw std::invalid_argument("piece on unknown interval");
      if (p.hi < p.lo) throw std::invalid_argument("piece has reversed endpoints");
      if (p.lo < 0 || p.hi > domain.length(p.interval))
        throw std::invalid_argument("piece leaves its interval");
    }
    return IntervalSet(std::move(pieces));
  }

  static IntervalSet whole(const TransversalDomain& domain) {
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < domain.size(); ++i) pieces.push_back({i, 0, domain.length(i), true, true});
    return IntervalSet(std::move(pieces));
  }

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  bool contains(std::size_t interval, const Rational& p) const {
    return std::any_of(pieces_.begin(), pieces_.end(), [&](const Piece& q) { return q.contains(interval, p); });
  }

  /// Lebesgue length of this set intersected with [lo,hi] on `interval`.
  Rational length_within(std::size_t interval, const Rational& lo, const Rational& hi) const {
    Rational total = 0;
    for (const auto& q : pieces_) {
      if (q.interval != interval) continue;
      Rational a = std::max(q.lo, lo), b = std::min(q.hi, hi);
      if (b > a) total += b - a;
    }
    return total;
  }

  IntervalSet intersect(const IntervalSet& other) const {
    std::vector<Piece> out;
    for (const auto& p : pieces_)
      for (const auto& q : other.pieces_) {
        if (p.interval != q.interval) continue;
        Piece r{p.interval, 0, 0, true, true};
        if (p.lo > q.lo) r = {p.interval, p.lo, 0, p.lo_closed, true};
        else if (q.lo > p.lo) r = {p.interval, q.lo, 0, q.lo_closed, true};
        else r = {p.interval, p.lo, 0, p.lo_closed && q.lo_closed, true};
        if (p.hi < q.hi) { r.hi = p.hi; r.hi_closed = p.hi_closed; }
        else if (q.hi < p.hi) { r.hi = q.hi; r.hi_closed = q.hi_closed; }
        else { r.hi = p.hi; r.hi_closed = p.hi_closed && q.hi_closed; }
        if (!r.is_empty()) out.push_back(r);
      }
    return IntervalSet(std::move(out));
  }

  IntervalSet unite(const IntervalSet& other) const {
    auto all = pieces_;
    all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
    return IntervalSet(std::move(all));
  }

  /// True when every piece is closed (points count as closed).
  bool is_closed() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.lo_closed && p.hi_closed; });
  }

  /// Subset test; meaningful for closed sets, which is how it is used.
  bool is_subset_of(const IntervalSet& other) const {
    return intersect(other) == *this;
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  explicit IntervalSet(std::vector<Piece> pieces) {
    std::erase_if(pieces, [](const Piece& p) { return p.is_empty(); });
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
      if (a.interval != b.interval) return a.interval < b.interval;
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.lo_closed && !b.lo_closed;
    });
    for (auto& p : pieces) {
      if (!pieces_.empty()) {
        Piece& c = pieces_.back();
        bool touches = c.interval == p.interval &&
                       (p.lo < c.hi || (p.lo == c.hi && (c.hi_closed || p.lo_closed)));
        if (touches) {
          if (p.hi > c.hi) {
            c.hi = p.hi;
            c.hi_closed = p.hi_closed;
          } else if (p.hi == c.hi) {
            c.hi_closed = c.hi_closed || p.hi_closed;
          }
          continue;
        }
      }
      pieces_.push_back(p);
    }
  }

  std::vector<Piece> pieces_;
};

// ---------------------------------------------------------------------------
// Measures

struct Atom {
  std::size_t interval = 0;
  Rational position{0};
  Level level = 0;
  XRat mass{1};
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Constant density on [from, to]; an infinite density gives every
/// positive-length subset infinite mass at its level.
struct Density {
  std::size_t interval = 0;
  Rational from{0}, to{1};
  Level level = 0;
  XRat density{1};
  friend bool operator==(const Density&, const Density&) = default;
};

using MeasureComponent = std::variant<Atom, Density>;

inline Level level_of(const MeasureComponent& c) {
  return std::visit([](const auto& x) { return x.level; }, c);
}

inline MeasureComponent with_level(MeasureComponent c, Level level) {
  std::visit([&](auto& x) { x.level = level; }, c);
  return c;
}

class FHMeasure {
 public:
  FHMeasure() = default;

  /// Every component level must lie below `height_bound`.
  FHMeasure(TransversalDomain domain, std::vector<MeasureComponent> components, Level height_bound = 16)
      : domain_(std::move(domain)), components_(std::move(components)), height_bound_(height_bound) {
    for (const auto& c : components_) {
      if (level_of(c) >= height_bound_)
        throw std::invalid_argument("component level " + std::to_string(level_of(c)) +
                                    " exceeds height bound " + std::to_string(height_bound_));
      if (const auto* a = std::get_if<Atom>(&c)) {
        if (a->interval >= domain_.size()) throw std::invalid_argument("atom on unknown interval");
        if (a->position < 0 || a->position > domain_.length(a->interval))
          throw std::invalid_argument("atom outside its interval");
        if (a->mass.is_zero()) throw std::invalid_argument("atom mass must be positive");
      } else {
        const auto& d = std::get<Density>(c);
        if (d.interval >= domain_.size()) throw std::invalid_argument("density on unknown interval");
        if (!(d.from < d.to)) throw std::invalid_argument("density support must have from < to");
        if (d.from < 0 || d.to > domain_.length(d.interval))
          throw std::invalid_argument("density outside its interval");
        if (d.density.is_zero()) throw std::invalid_argument("density must be positive");
      }
    }
  }

  const TransversalDomain& domain() const { return domain_; }
  const std::vector<MeasureComponent>& components() const { return components_; }
  Level height_bound() const { return height_bound_; }

  std::optional<Level> height() const {
    std::optional<Level> h;
    for (const auto& c : components_)
      if (!h || level_of(c) > *h) h = level_of(c);
    return h;
  }

 private:
  TransversalDomain domain_;
  std::vector<MeasureComponent> components_;
  Level height_bound_ = 16;
};

namespace detail {

inline XRat component_mass(const MeasureComponent& c, const IntervalSet& e) {
  if (const auto* a = std::get_if<Atom>(&c)) return e.contains(a->interval, a->position) ? a->mass : XRat();
  const auto& d = std::get<Density>(c);
  Rational len = e.length_within(d.interval, d.from, d.to);
  return len > 0 ? d.density * XRat(len) : XRat();
}

// level -> total mass of E at that level
inline std::map<Level, XRat> masses_by_level(const std::vector<MeasureComponent>& comps, const IntervalSet& e) {
  std::map<Level, XRat> out;
  for (const auto& c : comps) {
    XRat m = component_mass(c, e);
    if (!m.is_zero()) out[level_of(c)] += m;
  }
  return out;
}

inline SValue top_of(const std::map<Level, XRat>& masses) {
  if (masses.empty()) return SValue();
  const auto& [level, mass] = *masses.rbegin();
  return SValue(level, mass);
}

}  // namespace detail

inline SValue evaluate(const FHMeasure& mu, const IntervalSet& e) {
  return detail::top_of(detail::masses_by_level(mu.components(), e));
}

inline XRat nu_k(const FHMeasure& mu, const IntervalSet& e, Level k) {
  if (k > mu.height_bound()) throw std::out_of_range("level above height bound");
  SValue v = evaluate(mu, e);
  if (v.is_zero() || v.level() < k) return XRat();
  if (v.level() > k) return XRat::infinity();
  return v.real_part();
}

/// Q_k: closure of the supports of all components at level >= k.
inline IntervalSet support(const FHMeasure& mu, Level k) {
  std::vector<Piece> pieces;
  for (const auto& c : mu.components()) {
    if (level_of(c) < k) continue;
    if (const auto* a = std::get_if<Atom>(&c)) pieces.push_back({a->interval, a->position, a->position, true, true});
    else {
      const auto& d = std::get<Density>(c);
      pieces.push_back({d.interval, d.from, d.to, true, true});
    }
  }
  return IntervalSet::from_pieces(std::move(pieces), mu.domain());
}

namespace detail {

// Closures of the positive-length pieces of [from,to] \ q; isolated points of q do not split.
inline std::vector<std::pair<Rational, Rational>> clip_outside(const Density& d, const IntervalSet& q) {
  std::vector<std::pair<Rational, Rational>> out;
  Rational cursor = d.from;
  for (const auto& p : q.pieces()) {
    if (p.interval != d.interval || p.lo == p.hi || p.hi <= cursor || p.lo >= d.to) continue;
    if (p.lo > cursor) out.emplace_back(cursor, p.lo);
    cursor = std::max(cursor, p.hi);
  }
  if (cursor < d.to) out.emplace_back(cursor, d.to);
  return out;
}

// level-k mass of the given pieces on E \ q
inline XRat mass_outside(const std::vector<MeasureComponent>& comps, Level k, const IntervalSet& e,
                         const IntervalSet& q) {
  IntervalSet eq = e.intersect(q);
  XRat total;
  for (const auto& c : comps) {
    if (level_of(c) != k) continue;
    if (const auto* a = std::get_if<Atom>(&c)) {
      if (e.contains(a->interval, a->position) && !q.contains(a->interval, a->position)) total += a->mass;
    } else {
      const auto& d = std::get<Density>(c);
      Rational len = e.length_within(d.interval, d.from, d.to) - eq.length_within(d.interval, d.from, d.to);
      if (len > 0) total += d.density * XRat(len);
    }
  }
  return total;
}

}  // namespace detail

/// nuhat_k(E): level-k mass of E n (Q_k \ Q_{k+1}).
inline XRat nu_hat(const FHMeasure& mu, Level k, const IntervalSet& e) {
  return detail::mass_outside(mu.components(), k, e, support(mu, k + 1));
}

/**
 * The nuhat pieces of a measure: each component restricted to the
 * complement of Q_{level+1}. Densities are cut into closed pieces of positive
 * length; atoms inside Q_{level+1} disappear.
 */
struct LevelDecomposition {
  std::vector<MeasureComponent> pieces;

  std::set<Level> levels() const {
    std::set<Level> out;
    for (const auto& p : pieces) out.insert(level_of(p));
    return out;
  }
};

inline LevelDecomposition decompose(const FHMeasure& mu) {
  LevelDecomposition out;
  std::map<Level, IntervalSet> above;
  auto q_above = [&](Level k) -> const IntervalSet& {
    auto it = above.find(k);
    if (it == above.end()) it = above.emplace(k, support(mu, k + 1)).first;
    return it->second;
  };
  for (const auto& c : mu.components()) {
    const IntervalSet& q = q_above(level_of(c));
    if (const auto* a = std::get_if<Atom>(&c)) {
      if (!q.contains(a->interval, a->position)) out.pieces.push_back(c);
      continue;
    }
    const auto& d = std::get<Density>(c);
    auto kept = detail::clip_outside(d, q);
    if (kept.size() == 1 && kept.front().first == d.from && kept.front().second == d.to) {
      out.pieces.push_back(c);
      continue;
    }
    for (auto& [from, to] : kept) out.pieces.push_back(Density{d.interval, from, to, d.level, d.density});
  }
  return out;
}

inline FHMeasure recover(const FHMeasure& mu, const LevelDecomposition& dec) {
  return FHMeasure(mu.domain(), dec.pieces, mu.height_bound());
}

inline FHMeasure recover(const FHMeasure& mu) { return recover(mu, decompose(mu)); }

/// nu(E) rebuilt from a nuhat table, using the supports Q_k of `mu`.
inline SValue evaluate_from_decomposition(const FHMeasure& mu, const LevelDecomposition& dec, const IntervalSet& e) {
  auto levels = dec.levels();
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    XRat m = detail::mass_outside(dec.pieces, *it, e, support(mu, *it + 1));
    if (!m.is_zero()) return SValue(*it, m);
  }
  return SValue();
}

/// Interval ends, component endpoints and atom positions on `iv`, plus midpoints.
inline std::vector<Rational> refinement_grid(const FHMeasure& mu, std::size_t iv) {
  std::set<Rational> grid{Rational(0), mu.domain().length(iv)};
  for (const auto& c : mu.components()) {
    if (const auto* a = std::get_if<Atom>(&c)) {
      if (a->interval == iv) grid.insert(a->position);
    } else if (const auto& d = std::get<Density>(c); d.interval == iv) {
      grid.insert(d.from);
      grid.insert(d.to);
    }
  }
  std::vector<Rational> pts(grid.begin(), grid.end());
  std::vector<Rational> refined;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    refined.push_back(pts[i]);
    if (i + 1 < pts.size()) refined.push_back((pts[i] + pts[i + 1]) / 2);
  }
  return refined;
}

/**
 * Every grid point, every sub-interval between grid points with each choice
 * of open/closed ends, and the whole domain.
 */
inline std::vector<IntervalSet> test_sets(const FHMeasure& mu) {
  std::vector<IntervalSet> out;
  for (std::size_t iv = 0; iv < mu.domain().size(); ++iv) {
    auto g = refinement_grid(mu, iv);
    for (std::size_t i = 0; i < g.size(); ++i) {
      out.push_back(IntervalSet::from_pieces({{iv, g[i], g[i], true, true}}, mu.domain()));
      for (std::size_t j = i + 1; j < g.size(); ++j)
        for (int ends = 0; ends < 4; ++ends)
          out.push_back(IntervalSet::from_pieces({{iv, g[i], g[j], (ends & 1) == 0, (ends & 2) == 0}}, mu.domain()));
    }
  }
  out.push_back(IntervalSet::whole(mu.domain()));
  return out;
}

/// Checks nu(E) against the value rebuilt from `dec` on every test set.
inline bool recover_check(const FHMeasure& mu, const LevelDecomposition& dec) {
  for (const auto& e : test_sets(mu))
    if (evaluate(mu, e) != evaluate_from_decomposition(mu, dec, e)) return false;
  return true;
}

inline bool recover_check(const FHMeasure& mu) { return recover_check(mu, decompose(mu)); }

/**
 * Open-graded test for this representation. Single points have zero density
 * mass, so the only way a set of level <= k can reach into Q_{k+1} with
 * positive level-k mass is through a level-k atom sitting in Q_{k+1} with no
 * higher atom at the same point. Such an atom is exactly what breaks the
 * recovery of nu from the nuhat_k.
 */
inline bool is_open_graded(const FHMeasure& mu) {
  for (const auto& c : mu.components()) {
    const auto* a = std::get_if<Atom>(&c);
    if (!a || !support(mu, a->level + 1).contains(a->interval, a->position)) continue;
    bool masked = std::any_of(mu.components().begin(), mu.components().end(), [&](const MeasureComponent& o) {
      const auto* b = std::get_if<Atom>(&o);
      return b && b->interval == a->interval && b->position == a->position && b->level > a->level;
    });
    if (!masked) return false;
  }
  return true;
}

/**
 * Local finiteness of every nuhat_j: an infinite level-j atom outside
 * Q_{j+1} is never allowed, and each piece of an infinite level-j density
 * must have closure meeting Q_{j+1}.
 */
inline bool is_locally_finite(const FHMeasure& mu) {
  if (!is_open_graded(mu)) throw std::invalid_argument("local finiteness is defined for open-graded measures");
  for (const auto& c : decompose(mu).pieces) {
    Level j = level_of(c);
    IntervalSet q = support(mu, j + 1);
    if (const auto* a = std::get_if<Atom>(&c)) {
      if (a->mass.is_inf()) return false;
      continue;
    }
    const auto& d = std::get<Density>(c);
    if (!d.density.is_inf()) continue;
    auto closure = IntervalSet::from_pieces({{d.interval, d.from, d.to, true, true}}, mu.domain());
    if (closure.intersect(q).empty()) return false;
  }
  return true;
}

/**
 * Level alignment: drops levels whose nuhat is trivial and shifts the
 * levels above them down, so the result occupies exactly 0..h'. Works on
 * the nuhat pieces, so mass hidden under higher levels is discarded.
 */
inline FHMeasure align(const FHMeasure& mu) {
  auto dec = decompose(mu);
  auto levels = dec.levels();
  std::vector<Level> ranked(levels.begin(), levels.end());
  std::vector<MeasureComponent> comps;
  for (const auto& p : dec.pieces) {
    auto rank = std::lower_bound(ranked.begin(), ranked.end(), level_of(p)) - ranked.begin();
    comps.push_back(with_level(p, static_cast<Level>(rank)));
  }
  return FHMeasure(mu.domain(), std::move(comps), mu.height_bound());
}

inline bool operator==(const FHMeasure& a, const FHMeasure& b) {
  if (a.domain().size() != b.domain().size()) return false;
  for (std::size_t i = 0; i < a.domain().size(); ++i)
    if (a.domain().id(i) != b.domain().id(i) || a.domain().length(i) != b.domain().length(i)) return false;
  return a.components() == b.components() && a.height_bound() == b.height_bound();
}

}  // namespace lamina
