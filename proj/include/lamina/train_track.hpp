#pragma once

/**
 * @file train_track.hpp
 * @brief Combinatorial train tracks with S-valued weights.
 *
 * A switch is a pair of multisets of segments; a weight vector is invariant
 * when, at every switch, the S-sums of the two sides agree. Because S-addition
 * absorbs lower levels, a switch equation only constrains the top level on
 * each side, which is what the stratified solver exploits.
 */

#include "lamina/feasibility.hpp"
#include "lamina/svector.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamina {

using WeightVector = SVector;

struct Switch {
  std::vector<std::size_t> side_a;
  std::vector<std::size_t> side_b;
};

/// A switch given by segment names, as it appears in track files.
struct SwitchSpec {
  std::vector<std::string> a;
  std::vector<std::string> b;
};

class TrainTrack {
 public:
  TrainTrack() = default;

  /**
   * `free_ends[s]` counts the ends of segment s that are not attached to a
   * switch (0, 1 or 2; a closed curve without switches has 2). Every segment
   * must satisfy appearances + free ends == 2.
   */
  TrainTrack(std::vector<std::string> segments, const std::vector<SwitchSpec>& switches,
             std::map<std::string, int> free_ends = {})
      : segments_(std::move(segments)), free_ends_(std::move(free_ends)) {
    for (std::size_t i = 0; i < segments_.size(); ++i)
      if (!index_.emplace(segments_[i], i).second)
        throw std::invalid_argument("duplicate segment id '" + segments_[i] + "'");
    for (const auto& [name, count] : free_ends_) {
      index_of(name);
      if (count < 0 || count > 2) throw std::invalid_argument("free end count must be 0..2");
    }
    std::vector<int> ends(segments_.size(), 0);
    for (const auto& spec : switches) {
      Switch sw;
      for (const auto& s : spec.a) sw.side_a.push_back(index_of(s));
      for (const auto& s : spec.b) sw.side_b.push_back(index_of(s));
      if (sw.side_a.empty() || sw.side_b.empty())
        throw std::invalid_argument("switch sides must be nonempty");
      for (auto i : sw.side_a) ++ends[i];
      for (auto i : sw.side_b) ++ends[i];
      switches_.push_back(std::move(sw));
    }
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      auto it = free_ends_.find(segments_[i]);
      int free = it == free_ends_.end() ? 0 : it->second;
      if (ends[i] + free != 2)
        throw std::invalid_argument("segment '" + segments_[i] + "' has " +
                                    std::to_string(ends[i] + free) + " ends, expected 2");
    }
  }

  std::size_t size() const { return segments_.size(); }
  const std::vector<std::string>& segments() const { return segments_; }
  const std::vector<Switch>& switches() const { return switches_; }
  const std::map<std::string, int>& free_ends() const { return free_ends_; }

  std::size_t index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown segment '" + name + "'");
    return it->second;
  }

 private:
  std::vector<std::string> segments_;
  std::vector<Switch> switches_;
  std::map<std::string, int> free_ends_;
  std::map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::size_t switch_index;
  SValue side_a;
  SValue side_b;
};

inline SValue side_sum(const std::vector<std::size_t>& side, const WeightVector& w) {
  SValue total;
  for (auto i : side) total += w[i];
  return total;
}

inline std::vector<Violation> validate(const TrainTrack& track, const WeightVector& w) {
  if (w.size() != track.size())
    throw std::invalid_argument("weight vector has " + std::to_string(w.size()) +
                                " entries, track has " + std::to_string(track.size()) +
                                " segments");
  std::vector<Violation> out;
  for (std::size_t s = 0; s < track.switches().size(); ++s) {
    const auto& sw = track.switches()[s];
    SValue a = side_sum(sw.side_a, w), b = side_sum(sw.side_b, w);
    if (a != b) out.push_back({s, a, b});
  }
  return out;
}

inline bool is_invariant(const TrainTrack& track, const WeightVector& w) {
  return validate(track, w).empty();
}

// ---------------------------------------------------------------------------
// Alignment and adjustment

/// Distinct levels of the nonzero entries, ascending.
inline std::vector<Level> occupied_levels(const WeightVector& w) {
  std::set<Level> levels;
  for (const auto& x : w)
    if (!x.is_zero()) levels.insert(x.level());
  return {levels.begin(), levels.end()};
}

inline bool is_proximal(const WeightVector& w) {
  auto levels = occupied_levels(w);
  return levels.empty() || levels.back() + 1 == levels.size();
}

/// Largest occupied level, nullopt for the zero vector.
inline std::optional<Level> height(const WeightVector& w) {
  auto levels = occupied_levels(w);
  if (levels.empty()) return std::nullopt;
  return levels.back();
}

/// Closes every gap in the occupied levels by shifting higher levels down.
inline WeightVector align_weights(const WeightVector& w) {
  auto levels = occupied_levels(w);
  WeightVector out;
  out.reserve(w.size());
  for (const auto& x : w) {
    if (x.is_zero()) {
      out.push_back(x);
      continue;
    }
    auto rank = std::lower_bound(levels.begin(), levels.end(), x.level()) - levels.begin();
    out.emplace_back(static_cast<Level>(rank), x.real_part());
  }
  return out;
}

inline WeightVector raise_levels(const WeightVector& w, const std::vector<std::size_t>& segments) {
  WeightVector out = w;
  for (auto i : segments)
    if (!out.at(i).is_zero()) out[i] = SValue(out[i].level() + 1, out[i].real_part());
  return out;
}

struct Adjustment {
  std::vector<std::size_t> segments;
  WeightVector result;
};

inline constexpr std::size_t kMaxAdjustmentSupport = 20;

/**
 * Every nonempty set of segments carrying nonzero weight whose level-raise
 * by 1 keeps all switch equations. Raising a zero-weight segment changes
 * nothing, so subsets are drawn from the support of `w` only.
 */
inline std::vector<Adjustment> adjustments(const TrainTrack& track, const WeightVector& w) {
  if (!is_invariant(track, w)) throw std::invalid_argument("adjustments need an invariant vector");
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!w[i].is_zero()) support.push_back(i);
  if (support.size() > kMaxAdjustmentSupport)
    throw std::length_error("too many weighted segments to enumerate adjustments");
  std::vector<Adjustment> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << support.size()); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t b = 0; b < support.size(); ++b)
      if (mask & (std::uint64_t{1} << b)) subset.push_back(support[b]);
    auto raised = raise_levels(w, subset);
    if (is_invariant(track, raised)) out.push_back({std::move(subset), std::move(raised)});
  }
  return out;
}

/**
 * A weight vector is contiguous when it is proximal and no adjustment
 * followed by alignment lowers its height. Adjustments that only round-trip
 * back to `w`, or that push levels apart, are not modifications.
 */
inline bool is_contiguous(const TrainTrack& track, const WeightVector& w) {
  if (!is_invariant(track, w)) throw std::invalid_argument("contiguity needs an invariant vector");
  if (!is_proximal(w)) return false;
  auto h = height(w);
  if (!h) return true;
  for (const auto& adj : adjustments(track, w))
    if (*height(align_weights(adj.result)) < *h) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Strata of the solution cone

enum class Finiteness { Finite, Infinite };

struct PatternEntry {
  Level level = 0;
  Finiteness finiteness = Finiteness::Finite;
  friend bool operator==(const PatternEntry&, const PatternEntry&) = default;
  friend auto operator<=>(const PatternEntry&, const PatternEntry&) = default;
};

/// Per segment: nullopt (zero weight) or a level with a finiteness flag.
using StratumPattern = std::vector<std::optional<PatternEntry>>;

struct Stratum {
  StratumPattern pattern;
  bool feasible = false;
  std::optional<WeightVector> witness;
};

struct StrataOptions {
  Level height_bound = 16;
  std::size_t max_segments = 10;
  /// When false, only feasible strata are returned and the search prunes early.
  bool include_infeasible = true;
};

inline StratumPattern pattern_of(const WeightVector& w) {
  StratumPattern out;
  for (const auto& x : w) {
    if (x.is_zero()) out.emplace_back();
    else out.push_back(PatternEntry{x.level(), x.is_infinite() ? Finiteness::Infinite : Finiteness::Finite});
  }
  return out;
}

namespace detail {

struct SideTop {
  std::optional<Level> level;
  bool has_infinite = false;
};

inline SideTop side_top(const std::vector<std::size_t>& side, const StratumPattern& p) {
  SideTop top;
  for (auto i : side)
    if (p[i] && (!top.level || p[i]->level > *top.level)) top.level = p[i]->level;
  if (top.level)
    for (auto i : side)
      if (p[i] && p[i]->level == *top.level && p[i]->finiteness == Finiteness::Infinite)
        top.has_infinite = true;
  return top;
}

/// Level-and-infinity part of one switch equation; the real parts are left over.
inline bool switch_combinatorially_ok(const Switch& sw, const StratumPattern& p) {
  auto a = side_top(sw.side_a, p), b = side_top(sw.side_b, p);
  if (a.level != b.level) return false;
  return a.has_infinite == b.has_infinite;
}

}  // namespace detail

/**
 * Decides whether the stratum `pattern` contains an invariant vector. Each
 * switch must have equal top levels on both sides, with an infinite entry at
 * the top on one side exactly when there is one on the other; when neither
 * side has one, the finite top-level real parts must balance. Feasibility of
 * those balances with all real parts > 0 is decided exactly.
 */
inline Stratum solve_stratum(const TrainTrack& track, const StratumPattern& pattern) {
  if (pattern.size() != track.size()) throw std::invalid_argument("pattern arity mismatch");
  Stratum out{pattern, false, std::nullopt};
  std::vector<std::size_t> var_of(pattern.size(), SIZE_MAX);
  std::size_t nvars = 0;
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (pattern[i] && pattern[i]->finiteness == Finiteness::Finite) var_of[i] = nvars++;

  std::vector<LinearConstraint> constraints;
  for (const auto& sw : track.switches()) {
    if (!detail::switch_combinatorially_ok(sw, pattern)) return out;
    auto top = detail::side_top(sw.side_a, pattern);
    if (!top.level || top.has_infinite) continue;
    LinearConstraint eq{std::vector<Rational>(nvars, Rational(0)), Relation::Equal, Rational(0)};
    for (auto i : sw.side_a)
      if (pattern[i] && pattern[i]->level == *top.level) eq.coeffs[var_of[i]] += 1;
    for (auto i : sw.side_b)
      if (pattern[i] && pattern[i]->level == *top.level) eq.coeffs[var_of[i]] -= 1;
    constraints.push_back(std::move(eq));
  }
  for (std::size_t v = 0; v < nvars; ++v) {
    LinearConstraint pos{std::vector<Rational>(nvars, Rational(0)), Relation::Greater, Rational(0)};
    pos.coeffs[v] = 1;
    constraints.push_back(std::move(pos));
  }
  auto point = find_feasible_point(nvars, constraints);
  if (!point) return out;

  WeightVector witness;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (!pattern[i]) witness.emplace_back();
    else if (pattern[i]->finiteness == Finiteness::Infinite) witness.push_back(SValue::infinity(pattern[i]->level));
    else witness.emplace_back(pattern[i]->level, XRat((*point)[var_of[i]]));
  }
  if (!is_invariant(track, witness)) throw std::logic_error("stratum witness fails validation");
  out.feasible = true;
  out.witness = std::move(witness);
  return out;
}

/**
 * Enumerates proximal nonzero patterns in lexicographic order (segment 0
 * most significant; per segment: zero, (0,fin), (0,inf), (1,fin), ...) and
 * solves each one. The origin is left out.
 */
inline std::vector<Stratum> enumerate_strata(const TrainTrack& track, const StrataOptions& opts = {}) {
  const std::size_t n = track.size();
  if (n > opts.max_segments)
    throw std::length_error("track has " + std::to_string(n) + " segments, cap is " +
                            std::to_string(opts.max_segments));
  const Level level_cap = static_cast<Level>(std::min<std::size_t>(opts.height_bound, n));

  // switches that become fully assigned once segment i is fixed
  std::vector<std::vector<std::size_t>> closes_at(n);
  for (std::size_t s = 0; s < track.switches().size(); ++s) {
    const auto& sw = track.switches()[s];
    std::size_t last = 0;
    for (auto i : sw.side_a) last = std::max(last, i);
    for (auto i : sw.side_b) last = std::max(last, i);
    closes_at[last].push_back(s);
  }

  std::vector<Stratum> out;
  StratumPattern pattern(n);
  std::vector<std::size_t> level_count(level_cap, 0);

  auto distinct_levels = [&] {
    std::size_t d = 0;
    for (auto c : level_count) d += c > 0;
    return d;
  };
  auto top_level = [&]() -> std::optional<Level> {
    for (std::size_t l = level_cap; l-- > 0;)
      if (level_count[l]) return static_cast<Level>(l);
    return std::nullopt;
  };

  // proximal: occupied levels are exactly 0..top
  auto is_proximal_pattern = [&] {
    auto top = top_level();
    return !top || distinct_levels() == *top + 1;
  };

  auto recurse = [&](auto& self, std::size_t i) -> void {
    // gaps below the current top must still be fillable by the unassigned segments
    if (auto top = top_level(); top && (*top + 1 - distinct_levels()) > n - i) return;
    if (i == n) {
      if (!top_level() || !is_proximal_pattern()) return;
      Stratum st = solve_stratum(track, pattern);
      if (st.feasible || opts.include_infeasible) out.push_back(std::move(st));
      return;
    }
    auto try_entry = [&](std::optional<PatternEntry> e) {
      pattern[i] = e;
      if (e) ++level_count[e->level];
      bool ok = true;
      if (!opts.include_infeasible)
        for (auto s : closes_at[i])
          if (!detail::switch_combinatorially_ok(track.switches()[s], pattern)) ok = false;
      if (ok) self(self, i + 1);
      if (e) --level_count[e->level];
      pattern[i].reset();
    };
    try_entry(std::nullopt);
    for (Level l = 0; l < level_cap; ++l) {
      try_entry(PatternEntry{l, Finiteness::Finite});
      try_entry(PatternEntry{l, Finiteness::Infinite});
    }
  };
  recurse(recurse, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Height filtration of counting-measure families

/// A polynomial in t with positive coefficients: sum of coeff * t^degree.
struct Term {
  Rational coeff{1};
  int degree = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

using Polynomial = std::vector<Term>;
using PolynomialFamily = std::vector<Polynomial>;

/// Combines like terms, sorts by degree; rejects nonpositive coefficients.
inline Polynomial normalize(Polynomial p) {
  std::map<int, Rational> by_degree;
  for (const auto& term : p) {
    if (term.coeff <= 0) throw std::invalid_argument("family coefficients must be positive");
    by_degree[term.degree] += term.coeff;
  }
  Polynomial out;
  for (auto& [d, c] : by_degree) out.push_back({c, d});
  return out;
}

/// Level-0 monomial family as polynomial family; nonzero levels are rejected.
inline PolynomialFamily to_polynomial_family(const MonomialFamily& f) {
  PolynomialFamily out;
  for (const auto& m : f) {
    if (!m) {
      out.emplace_back();
      continue;
    }
    if (m->level != 0) throw std::invalid_argument("height filtration expects level-0 families");
    out.push_back({Term{m->coeff, m->degree}});
  }
  return out;
}

/**
 * Plante-style extraction of a finite height structure from a family of
 * counting weights that satisfies every switch equation identically in t.
 * Segment i gets (rank of its leading degree among all leading degrees,
 * leading coefficient): rescaling by the top degree and letting t -> inf
 * exposes the top level, and repeating on what is left exposes the next.
 */
inline WeightVector height_filtration(const TrainTrack& track, const PolynomialFamily& family) {
  if (family.size() != track.size()) throw std::invalid_argument("family arity mismatch");
  PolynomialFamily f;
  for (const auto& p : family) f.push_back(normalize(p));

  auto side_poly = [&](const std::vector<std::size_t>& side) {
    Polynomial acc;
    for (auto i : side) acc.insert(acc.end(), f[i].begin(), f[i].end());
    return normalize(acc);
  };
  for (std::size_t s = 0; s < track.switches().size(); ++s) {
    const auto& sw = track.switches()[s];
    if (side_poly(sw.side_a) != side_poly(sw.side_b))
      throw std::invalid_argument("family violates switch " + std::to_string(s) +
                                  " as a polynomial identity");
  }

  std::set<int> degrees;
  for (const auto& p : f)
    if (!p.empty()) degrees.insert(p.back().degree);
  std::vector<int> ranked(degrees.begin(), degrees.end());

  WeightVector out;
  for (const auto& p : f) {
    if (p.empty()) {
      out.emplace_back();
      continue;
    }
    auto rank = std::lower_bound(ranked.begin(), ranked.end(), p.back().degree) - ranked.begin();
    out.emplace_back(static_cast<Level>(rank), XRat(p.back().coeff));
  }
  return out;
}

inline WeightVector height_filtration(const TrainTrack& track, const MonomialFamily& family) {
  return height_filtration(track, to_polynomial_family(family));
}

}  // namespace lamina
