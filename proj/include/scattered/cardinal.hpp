#pragma once

#include "scattered/ordinal.hpp"

#include <algorithm>
#include <compare>
#include <string>

namespace scattered {

/// A cardinal that is either an exact natural number or aleph(k).
/// Only finite-vs-infinite matters for derived sets, so aleph arithmetic is
/// max-absorbing.
class Cardinal {
public:
  Cardinal() = default;
  Cardinal(std::uint64_t n) : finite_(n) {}  // NOLINT(google-explicit-constructor)
  explicit Cardinal(const Natural& n) : finite_(n) {
    if (n < 0) throw DomainError("negative cardinal");
  }

  static Cardinal aleph(unsigned level) {
    Cardinal c;
    c.infinite_ = true;
    c.level_ = level;
    return c;
  }

  bool isFinite() const { return !infinite_; }
  bool isInfinite() const { return infinite_; }
  bool isZero() const { return !infinite_ && finite_ == 0; }
  /// Finite value; throws on infinite cardinals.
  const Natural& value() const {
    if (infinite_) throw DomainError("cardinal is infinite");
    return finite_;
  }
  unsigned alephLevel() const {
    if (!infinite_) throw DomainError("cardinal is finite");
    return level_;
  }

  friend Cardinal operator+(const Cardinal& a, const Cardinal& b) {
    if (a.infinite_ && b.infinite_) return aleph(std::max(a.level_, b.level_));
    if (a.infinite_) return a;
    if (b.infinite_) return b;
    return Cardinal(a.finite_ + b.finite_);
  }

  friend Cardinal operator*(const Cardinal& a, const Cardinal& b) {
    if (a.isZero() || b.isZero()) return Cardinal{};
    return Cardinal::product_nonzero(a, b);
  }

  friend bool operator==(const Cardinal& a, const Cardinal& b) {
    if (a.infinite_ != b.infinite_) return false;
    return a.infinite_ ? a.level_ == b.level_ : a.finite_ == b.finite_;
  }

  friend std::strong_ordering operator<=>(const Cardinal& a, const Cardinal& b) {
    if (a.infinite_ != b.infinite_) return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    if (a.infinite_) return a.level_ <=> b.level_;
    if (a.finite_ == b.finite_) return std::strong_ordering::equal;
    return a.finite_ < b.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }

private:
  static Cardinal product_nonzero(const Cardinal& a, const Cardinal& b) {
    if (a.infinite_ && b.infinite_) return aleph(std::max(a.level_, b.level_));
    if (a.infinite_) return a;
    if (b.infinite_) return b;
    return Cardinal(a.finite_ * b.finite_);
  }

  bool infinite_ = false;
  Natural finite_ = 0;
  unsigned level_ = 0;
};

/// Multiplicity of a child in a tree term: a nonzero cardinal.
using Multiplicity = Cardinal;

inline Multiplicity checkedMultiplicity(const Cardinal& c) {
  if (c.isZero()) throw DomainError("multiplicity must be at least 1");
  return c;
}

inline const Cardinal kAleph0 = Cardinal::aleph(0);

}  // namespace scattered
