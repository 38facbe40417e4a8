#pragma once

// Countable ordinals below epsilon_0 in Cantor normal form.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scattered {

using Natural = boost::multiprecision::cpp_int;

/// Raised when an operation is applied outside its domain.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct OrdinalTerm;

/// An ordinal w^e1*c1 + ... + w^ek*ck with e1 > ... > ek and every ci >= 1.
/// The empty term list is 0. Exponents are ordinals themselves.
class Ordinal {
public:
  Ordinal() = default;
  Ordinal(std::uint64_t n);  // NOLINT(google-explicit-constructor)
  explicit Ordinal(const Natural& n);

  /// Builds from terms; throws DomainError if the list is not in normal form.
  static Ordinal fromTerms(std::vector<OrdinalTerm> terms);

  static Ordinal omega();
  /// w^e * c.
  static Ordinal power(const Ordinal& e, const Natural& c = 1);

  const std::vector<OrdinalTerm>& terms() const { return terms_; }

  bool isZero() const { return terms_.empty(); }
  bool isFinite() const;
  bool isLimit() const;
  bool isSuccessor() const { return !isZero() && !isLimit(); }

  /// Value of a finite ordinal; throws DomainError otherwise.
  Natural finiteValue() const;
  /// Exponent of the leading term; throws DomainError on 0.
  const Ordinal& leadingExponent() const;

private:
  std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
  Ordinal exponent;
  Natural coefficient;
};

std::strong_ordering cmpOrd(const Ordinal& a, const Ordinal& b);

inline bool operator==(const Ordinal& a, const Ordinal& b) { return cmpOrd(a, b) == 0; }
inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) { return cmpOrd(a, b); }
inline bool operator==(const OrdinalTerm& a, const OrdinalTerm& b) {
  return a.coefficient == b.coefficient && a.exponent == b.exponent;
}

// ---------------------------------------------------------------------------

inline Ordinal::Ordinal(std::uint64_t n) {
  if (n != 0) terms_.push_back(OrdinalTerm{Ordinal{}, Natural(n)});
}

inline Ordinal::Ordinal(const Natural& n) {
  if (n < 0) throw DomainError("negative ordinal");
  if (n != 0) terms_.push_back(OrdinalTerm{Ordinal{}, n});
}

inline Ordinal Ordinal::fromTerms(std::vector<OrdinalTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient < 1) throw DomainError("ordinal coefficient must be positive");
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
      throw DomainError("ordinal exponents must be strictly decreasing");
  }
  Ordinal out;
  out.terms_ = std::move(terms);
  return out;
}

inline Ordinal Ordinal::omega() { return power(Ordinal(1)); }

inline Ordinal Ordinal::power(const Ordinal& e, const Natural& c) {
  if (c < 1) throw DomainError("ordinal coefficient must be positive");
  Ordinal out;
  out.terms_.push_back(OrdinalTerm{e, c});
  return out;
}

inline bool Ordinal::isFinite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.isZero());
}

inline bool Ordinal::isLimit() const {
  return !terms_.empty() && !terms_.back().exponent.isZero();
}

inline Natural Ordinal::finiteValue() const {
  if (!isFinite()) throw DomainError("ordinal is infinite");
  return terms_.empty() ? Natural(0) : terms_[0].coefficient;
}

inline const Ordinal& Ordinal::leadingExponent() const {
  if (terms_.empty()) throw DomainError("zero has no leading exponent");
  return terms_[0].exponent;
}

/// Lexicographic comparison of the normal forms.
inline std::strong_ordering cmpOrd(const Ordinal& a, const Ordinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = cmpOrd(ta[i].exponent, tb[i].exponent); c != 0) return c;
    if (ta[i].coefficient != tb[i].coefficient)
      return ta[i].coefficient < tb[i].coefficient ? std::strong_ordering::less
                                                   : std::strong_ordering::greater;
  }
  return ta.size() <=> tb.size();
}

/// Ordinal sum. Terms of a below the leading exponent of b are absorbed.
inline Ordinal addOrd(const Ordinal& a, const Ordinal& b) {
  if (b.isZero()) return a;
  if (a.isZero()) return b;
  const Ordinal& lead = b.leadingExponent();
  std::vector<OrdinalTerm> out;
  for (const auto& t : a.terms()) {
    if (t.exponent < lead) break;
    out.push_back(t);
  }
  auto it = b.terms().begin();
  if (!out.empty() && out.back().exponent == lead) {
    out.back().coefficient += it->coefficient;
    ++it;
  }
  out.insert(out.end(), it, b.terms().end());
  return Ordinal::fromTerms(std::move(out));
}

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return addOrd(a, b); }

/// d * w, which is w^(e+1) for e the leading exponent of d.
inline Ordinal mulByOmega(const Ordinal& d) {
  if (d.isZero()) throw DomainError("mulByOmega: argument must be positive");
  return Ordinal::power(d.leadingExponent() + Ordinal(1));
}

inline Ordinal supOrd(const std::vector<Ordinal>& xs) {
  Ordinal best;
  for (const auto& x : xs)
    if (best < x) best = x;
  return best;
}

struct LimitFiniteSplit {
  Ordinal limitPart;
  Natural finitePart;
};

/// a = limitPart + finitePart with limitPart zero or a limit ordinal.
inline LimitFiniteSplit splitLimitFinite(const Ordinal& a) {
  if (a.isZero() || a.isLimit()) return {a, 0};
  std::vector<OrdinalTerm> head(a.terms().begin(), a.terms().end() - 1);
  return {Ordinal::fromTerms(std::move(head)), a.terms().back().coefficient};
}

inline bool isLimit(const Ordinal& a) { return a.isLimit(); }

/// The unique d with a + d = b; requires a <= b.
inline Ordinal leftDifference(const Ordinal& a, const Ordinal& b) {
  if (b < a) throw DomainError("leftDifference: a > b");
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t i = 0;
  while (i < ta.size() && i < tb.size() && ta[i] == tb[i]) ++i;
  if (i == tb.size()) return Ordinal{};
  std::vector<OrdinalTerm> rest;
  if (i < ta.size() && ta[i].exponent == tb[i].exponent) {
    rest.push_back(OrdinalTerm{tb[i].exponent, tb[i].coefficient - ta[i].coefficient});
    ++i;
    rest.insert(rest.end(), tb.begin() + static_cast<std::ptrdiff_t>(i), tb.end());
  } else {
    rest.insert(rest.end(), tb.begin() + static_cast<std::ptrdiff_t>(i), tb.end());
  }
  return Ordinal::fromTerms(std::move(rest));
}

/// Predecessor of a successor ordinal.
inline Ordinal predecessor(const Ordinal& a) {
  if (!a.isSuccessor()) throw DomainError("predecessor of a non-successor ordinal");
  auto terms = a.terms();
  if (terms.back().coefficient == 1)
    terms.pop_back();
  else
    terms.back().coefficient -= 1;
  return Ordinal::fromTerms(std::move(terms));
}

/// Ordinal times a positive natural number.
inline Ordinal mulNatural(const Ordinal& a, const Natural& n) {
  if (n < 0) throw DomainError("mulNatural: negative factor");
  if (n == 0 || a.isZero()) return Ordinal{};
  auto terms = a.terms();
  terms[0].coefficient *= n;
  return Ordinal::fromTerms(std::move(terms));
}

}  // namespace scattered
