#pragma once

/**
 * @file feasibility.hpp
 * @brief Exact rational feasibility for small linear systems.
 *
 * Equalities are removed by Gaussian substitution, then the remaining
 * inequalities (strict or not) go through Fourier-Motzkin elimination.
 * A point is rebuilt by back-substitution, taking the midpoint of the
 * admissible interval for each variable.
 */

#include "lamina/xrat.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lamina {

enum class Relation { Equal, GreaterEqual, Greater };

/// coeffs . x  (rel)  rhs
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::GreaterEqual;
  Rational rhs{0};
};

inline bool satisfies(const LinearConstraint& c, const std::vector<Rational>& x) {
  Rational lhs = 0;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) lhs += c.coeffs[i] * x.at(i);
  switch (c.rel) {
    case Relation::Equal: return lhs == c.rhs;
    case Relation::GreaterEqual: return lhs >= c.rhs;
    case Relation::Greater: return lhs > c.rhs;
  }
  return false;
}

inline bool satisfies_all(const std::vector<LinearConstraint>& cs, const std::vector<Rational>& x) {
  return std::all_of(cs.begin(), cs.end(), [&](const auto& c) { return satisfies(c, x); });
}

namespace detail {

struct Inequality {
  std::vector<Rational> coeffs;
  Rational rhs;
  bool strict = false;

  bool trivial_in(std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i)
      if (coeffs[i] != 0) return false;
    return true;
  }
  // a constant inequality 0 (>|>=) rhs
  bool holds_as_constant() const { return strict ? rhs < 0 : rhs <= 0; }

  void normalize() {
    Rational scale = 0;
    for (const auto& c : coeffs)
      if (c != 0) {
        scale = c < 0 ? -c : c;
        break;
      }
    if (scale == 0) return;
    for (auto& c : coeffs) c /= scale;
    rhs /= scale;
  }
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

// x_var = constant + sum coeffs[k] x_k over the other variables
struct Substitution {
  std::size_t var;
  std::vector<Rational> coeffs;
  Rational constant;
};

inline void dedupe(std::vector<Inequality>& v) {
  std::vector<Inequality> out;
  for (auto& ineq : v) {
    ineq.normalize();
    bool seen = false;
    for (auto& o : out)
      if (o.coeffs == ineq.coeffs) {
        // keep the tighter of two parallel constraints
        if (ineq.rhs > o.rhs || (ineq.rhs == o.rhs && ineq.strict)) o = ineq;
        seen = true;
        break;
      }
    if (!seen) out.push_back(std::move(ineq));
  }
  v = std::move(out);
}

}  // namespace detail

/**
 * Finds some x in Q^n satisfying every constraint, or nullopt when none
 * exists. Deterministic for a given input.
 */
inline std::optional<std::vector<Rational>> find_feasible_point(
    std::size_t n, const std::vector<LinearConstraint>& constraints) {
  using detail::Inequality;
  std::vector<LinearConstraint> eqs;
  std::vector<Inequality> ineqs;
  for (const auto& c : constraints) {
    if (c.coeffs.size() != n) throw std::invalid_argument("constraint arity mismatch");
    if (c.rel == Relation::Equal) eqs.push_back(c);
    else ineqs.push_back({c.coeffs, c.rhs, c.rel == Relation::Greater});
  }

  // Gaussian substitution for the equalities.
  std::vector<detail::Substitution> subs;
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    auto& eq = eqs[e];
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n; ++i)
      if (eq.coeffs[i] != 0) {
        pivot = i;
        break;
      }
    if (pivot == n) {
      if (eq.rhs != 0) return std::nullopt;
      continue;
    }
    // x_p = rhs/a_p - sum_{k != p} (a_k/a_p) x_k
    Rational ap = eq.coeffs[pivot];
    detail::Substitution s{pivot, std::vector<Rational>(n, Rational(0)), eq.rhs / ap};
    for (std::size_t k = 0; k < n; ++k)
      if (k != pivot) s.coeffs[k] = -eq.coeffs[k] / ap;
    auto apply = [&](std::vector<Rational>& coeffs, Rational& rhs) {
      Rational a = coeffs[pivot];
      if (a == 0) return;
      coeffs[pivot] = 0;
      for (std::size_t k = 0; k < n; ++k) coeffs[k] += a * s.coeffs[k];
      rhs -= a * s.constant;
    };
    for (std::size_t f = e + 1; f < eqs.size(); ++f) apply(eqs[f].coeffs, eqs[f].rhs);
    for (auto& q : ineqs) apply(q.coeffs, q.rhs);
    for (auto& prior : subs) {
      Rational a = prior.coeffs[pivot];
      if (a == 0) continue;
      prior.coeffs[pivot] = 0;
      for (std::size_t k = 0; k < n; ++k) prior.coeffs[k] += a * s.coeffs[k];
      prior.constant += a * s.constant;
    }
    subs.push_back(std::move(s));
  }

  // Fourier-Motzkin over the remaining variables, keeping each stage.
  std::vector<bool> substituted(n, false);
  for (const auto& s : subs) substituted[s.var] = true;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (!substituted[i]) order.push_back(i);

  std::vector<std::vector<Inequality>> stages;
  std::vector<Inequality> current = std::move(ineqs);
  detail::dedupe(current);
  for (std::size_t var : order) {
    stages.push_back(current);
    std::vector<Inequality> lower, upper, rest;
    for (auto& q : current) {
      if (q.coeffs[var] > 0) lower.push_back(q);
      else if (q.coeffs[var] < 0) upper.push_back(q);
      else rest.push_back(q);
    }
    for (const auto& lo : lower)
      for (const auto& up : upper) {
        // lo: a x + L >= r1 (a>0); up: -b x + U >= r2 (b>0)  =>  b*lo + a*up
        Rational a = lo.coeffs[var], b = -up.coeffs[var];
        Inequality combo{std::vector<Rational>(n, Rational(0)), b * lo.rhs + a * up.rhs,
                         lo.strict || up.strict};
        for (std::size_t k = 0; k < n; ++k) combo.coeffs[k] = b * lo.coeffs[k] + a * up.coeffs[k];
        combo.coeffs[var] = 0;
        rest.push_back(std::move(combo));
      }
    std::vector<Inequality> kept;
    for (auto& q : rest) {
      if (q.trivial_in(n)) {
        if (!q.holds_as_constant()) return std::nullopt;
      } else {
        kept.push_back(std::move(q));
      }
    }
    detail::dedupe(kept);
    current = std::move(kept);
  }
  for (const auto& q : current)
    if (!q.holds_as_constant()) return std::nullopt;

  // Back-substitution, last eliminated variable first.
  std::vector<Rational> x(n, Rational(0));
  std::vector<bool> known(n, false);
  for (std::size_t s = order.size(); s-- > 0;) {
    std::size_t var = order[s];
    std::optional<Rational> lo, hi;
    for (const auto& q : stages[s]) {
      Rational a = q.coeffs[var];
      if (a == 0) continue;
      Rational rest = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (k != var && q.coeffs[k] != 0) rest += q.coeffs[k] * x[k];
      Rational bound = (q.rhs - rest) / a;
      if (a > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else if (!hi || bound < *hi) {
        hi = bound;
      }
    }
    if (lo && hi) x[var] = (*lo + *hi) / 2;
    else if (lo) x[var] = *lo + 1;
    else if (hi) x[var] = *hi - 1;
    else x[var] = 0;
    known[var] = true;
  }
  for (std::size_t s = subs.size(); s-- > 0;) {
    const auto& sub = subs[s];
    Rational v = sub.constant;
    for (std::size_t k = 0; k < n; ++k)
      if (sub.coeffs[k] != 0) v += sub.coeffs[k] * x[k];
    x[sub.var] = v;
  }
  if (!satisfies_all(constraints, x))
    throw std::logic_error("feasibility back-substitution produced an invalid point");
  return x;
}

}  // namespace lamina
