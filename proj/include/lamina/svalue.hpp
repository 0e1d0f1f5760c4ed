#pragma once

/**
 * @file svalue.hpp
 * @brief The ordered semi-ring S = {0} u (N0 x (0,inf]).
 *
 * A nonzero element is a pair (level, real part). Order is lexicographic with
 * 0 least. Addition keeps the higher level (adding real parts on a tie),
 * multiplication adds levels and multiplies real parts:
 *
 *   (i,t) + (j,u) = (i, t+u) if i == j,  (i,t) if i > j
 *   (i,t) * (j,u) = (i+j, t*u)
 *
 * The level-0 elements are a copy of the positive extended reals.
 */

#include "lamina/xrat.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamina {

using Level = std::uint32_t;

class SValue {
 public:
  /// Zero.
  SValue() = default;

  SValue(Level level, XRat real) : level_(level), real_(std::move(real)), nonzero_(true) {
    if (real_.is_zero()) throw std::invalid_argument("SValue pair with zero real part; use Zero");
  }

  static SValue zero() { return SValue(); }
  static SValue infinity(Level level) { return SValue(level, XRat::infinity()); }

  bool is_zero() const { return !nonzero_; }

  /// The level; undefined (throws) for Zero.
  Level level() const {
    if (!nonzero_) throw std::domain_error("level of 0 is undefined");
    return level_;
  }

  /// The real part; 0 for Zero.
  const XRat& real_part() const { return real_; }

  bool is_infinite() const { return nonzero_ && real_.is_inf(); }

  friend SValue operator+(const SValue& a, const SValue& b) {
    if (!a.nonzero_) return b;
    if (!b.nonzero_) return a;
    if (a.level_ > b.level_) return a;
    if (b.level_ > a.level_) return b;
    return SValue(a.level_, a.real_ + b.real_);
  }
  SValue& operator+=(const SValue& o) { return *this = *this + o; }

  friend SValue operator*(const SValue& a, const SValue& b) {
    if (!a.nonzero_ || !b.nonzero_) return SValue();
    return SValue(a.level_ + b.level_, a.real_ * b.real_);
  }

  friend bool operator==(const SValue& a, const SValue& b) {
    if (a.nonzero_ != b.nonzero_) return false;
    return !a.nonzero_ || (a.level_ == b.level_ && a.real_ == b.real_);
  }

  friend std::strong_ordering operator<=>(const SValue& a, const SValue& b) {
    if (!a.nonzero_ || !b.nonzero_) return a.nonzero_ <=> b.nonzero_;
    if (auto c = a.level_ <=> b.level_; c != 0) return c;
    return a.real_ <=> b.real_;
  }

  std::string to_string() const {
    if (!nonzero_) return "0";
    return "(" + std::to_string(level_) + "," + real_.to_string() + ")";
  }

 private:
  Level level_ = 0;
  XRat real_;
  bool nonzero_ = false;
};

inline std::ostream& operator<<(std::ostream& os, const SValue& x) { return os << x.to_string(); }

/// Real scalar multiplication lambda*(i,t) = (i, lambda*t), lambda in (0,inf].
inline SValue scale(const XRat& lambda, const SValue& x) {
  if (lambda.is_zero()) throw std::invalid_argument("scalar must be positive");
  if (x.is_zero()) return x;
  return SValue(x.level(), lambda * x.real_part());
}

inline SValue sum(std::span<const SValue> xs) {
  SValue total;
  for (const auto& x : xs) total += x;
  return total;
}

inline SValue sum(std::initializer_list<SValue> xs) {
  return sum(std::span<const SValue>(xs.begin(), xs.size()));
}

// ---------------------------------------------------------------------------
// Sequence model: S embeds in [0,inf]^N0 by
//   psi((k,a)) = (inf, ..., inf, a, 0, 0, ...)   (a in slot k),  psi(0) = 0.
// We keep the first H slots.

using SSeq = std::vector<XRat>;

/// True when `s` is inf...inf, a, 0...0 with a in [0,inf] (all-zero included).
inline bool is_valid_sseq(const SSeq& s) {
  std::size_t k = 0;
  while (k < s.size() && s[k].is_inf()) ++k;
  // everything after the first non-inf slot must vanish
  for (std::size_t i = k + 1; i < s.size(); ++i)
    if (!s[i].is_zero()) return false;
  return true;
}

inline SSeq psi(const SValue& x, std::size_t height) {
  SSeq out(height, XRat());
  if (x.is_zero()) return out;
  if (x.level() >= height)
    throw std::out_of_range("level " + std::to_string(x.level()) + " not below height bound " +
                            std::to_string(height));
  for (Level i = 0; i < x.level(); ++i) out[i] = XRat::infinity();
  out[x.level()] = x.real_part();
  return out;
}

inline SValue psi_inv(const SSeq& s) {
  if (!is_valid_sseq(s)) throw std::invalid_argument("not a valid truncated sequence");
  // distinguished index: last positive slot
  std::size_t k = s.size();
  while (k > 0 && s[k - 1].is_zero()) --k;
  if (k == 0) return SValue();
  return SValue(static_cast<Level>(k - 1), s[k - 1]);
}

}  // namespace lamina
