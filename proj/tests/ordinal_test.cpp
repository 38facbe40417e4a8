#include "scattered/ordinal.hpp"
#include "scattered/text.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using scattered::Ordinal;
using scattered::parseOrdinal;

Ordinal w() { return Ordinal::omega(); }

Ordinal randomOrdinal(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> nterms(0, 3);
  std::uniform_int_distribution<int> coef(1, 4);
  std::vector<Ordinal> exps;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) exps.push_back(depth > 0 ? randomOrdinal(rng, depth - 1) : Ordinal(coef(rng) - 1));
  std::sort(exps.begin(), exps.end(), [](const Ordinal& a, const Ordinal& b) { return b < a; });
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  std::vector<scattered::OrdinalTerm> terms;
  for (auto& e : exps) terms.push_back({e, coef(rng)});
  return Ordinal::fromTerms(terms);
}

TEST(Ordinal, ComparisonExamples) {
  EXPECT_GT(w(), Ordinal(3));
  EXPECT_GT(Ordinal::power(Ordinal(2)), parseOrdinal("w*5 + 4"));
  EXPECT_EQ(parseOrdinal("w + 1"), parseOrdinal("w+1"));
}

TEST(Ordinal, AdditionExamples) {
  EXPECT_EQ(Ordinal(1) + w(), w());
  EXPECT_EQ(w() + Ordinal(1), parseOrdinal("w + 1"));
  EXPECT_EQ(parseOrdinal("w*2 + 3") + parseOrdinal("w + 1"), parseOrdinal("w*3 + 1"));
}

TEST(Ordinal, MulByOmegaExamples) {
  EXPECT_EQ(scattered::mulByOmega(Ordinal(3)), w());
  EXPECT_EQ(scattered::mulByOmega(parseOrdinal("w + 1")), parseOrdinal("w^2"));
  EXPECT_EQ(scattered::mulByOmega(parseOrdinal("w*2")), parseOrdinal("w^2"));
  EXPECT_THROW(scattered::mulByOmega(Ordinal{}), scattered::DomainError);
}

TEST(Ordinal, SupExamples) {
  EXPECT_EQ(scattered::supOrd({Ordinal(1), w(), w() + Ordinal(1)}), w() + Ordinal(1));
  EXPECT_EQ(scattered::supOrd({}), Ordinal{});
  EXPECT_EQ(scattered::supOrd({Ordinal(5), Ordinal(5), Ordinal(5)}), Ordinal(5));
}

TEST(Ordinal, SplitLimitFiniteExamples) {
  auto s = scattered::splitLimitFinite(parseOrdinal("w*2 + 3"));
  EXPECT_EQ(s.limitPart, parseOrdinal("w*2"));
  EXPECT_EQ(s.finitePart, 3);
  s = scattered::splitLimitFinite(Ordinal(7));
  EXPECT_EQ(s.limitPart, Ordinal{});
  EXPECT_EQ(s.finitePart, 7);
  s = scattered::splitLimitFinite(parseOrdinal("w^2"));
  EXPECT_EQ(s.limitPart, parseOrdinal("w^2"));
  EXPECT_EQ(s.finitePart, 0);
}

TEST(Ordinal, IsLimitExamples) {
  EXPECT_TRUE(scattered::isLimit(w()));
  EXPECT_FALSE(scattered::isLimit(Ordinal{}));
  EXPECT_FALSE(scattered::isLimit(w() + Ordinal(1)));
}

TEST(Ordinal, RejectsNonNormalTerms) {
  EXPECT_THROW(Ordinal::fromTerms({{Ordinal(0), 1}, {Ordinal(1), 1}}), scattered::DomainError);
  EXPECT_THROW(Ordinal::fromTerms({{Ordinal(1), 0}}), scattered::DomainError);
}

TEST(Ordinal, LeftDifference) {
  EXPECT_EQ(scattered::leftDifference(Ordinal(3), w()), w());
  EXPECT_EQ(scattered::leftDifference(w() + Ordinal(1), parseOrdinal("w*2 + 1")), w() + Ordinal(1));
  EXPECT_EQ(scattered::leftDifference(Ordinal(2), Ordinal(5)), Ordinal(3));
  EXPECT_THROW(scattered::leftDifference(w(), Ordinal(5)), scattered::DomainError);
}

TEST(Ordinal, BigCoefficients) {
  Ordinal big = parseOrdinal("w*340282366920938463463374607431768211456");
  EXPECT_EQ((big + big).terms()[0].coefficient, scattered::Natural("680564733841876926926749214863536422912"));
}

TEST(OrdinalProperty, AlgebraicLaws) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Ordinal a = randomOrdinal(rng, 2), b = randomOrdinal(rng, 2), c = randomOrdinal(rng, 2);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a + Ordinal{}, a);
    ASSERT_EQ(Ordinal{} + a, a);
    if (b < c) ASSERT_LT(a + b, a + c);
    int rel = (a < b) + (a == b) + (b < a);
    ASSERT_EQ(rel, 1);
    if (a < b && b < c) ASSERT_LT(a, c);
    auto s = scattered::splitLimitFinite(a);
    ASSERT_EQ(s.limitPart + Ordinal(s.finitePart), a);
    ASSERT_TRUE(s.limitPart.isZero() || s.limitPart.isLimit());
    if (!a.isZero()) {
      ASSERT_GT(scattered::mulByOmega(a), a);
      ASSERT_EQ(scattered::mulByOmega(a), scattered::mulByOmega(Ordinal::power(a.leadingExponent())));
    }
    if (a <= b) ASSERT_EQ(a + scattered::leftDifference(a, b), b);
  }
}

TEST(OrdinalText, RoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Ordinal a = randomOrdinal(rng, 2);
    ASSERT_EQ(parseOrdinal(scattered::printOrdinal(a)), a) << scattered::printOrdinal(a);
  }
  EXPECT_EQ(scattered::printOrdinal(parseOrdinal("w^2*3 + w*1 + 4")), "w^2*3 + w + 4");
  EXPECT_EQ(scattered::printOrdinal(parseOrdinal("w^(w+1)")), "w^(w + 1)");
  EXPECT_EQ(scattered::printOrdinal(parseOrdinal("1 + w")), "w");
}

}  // namespace
