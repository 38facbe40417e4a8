#include "oracles.hpp"

#include "scattered/generate.hpp"
#include "scattered/normalize.hpp"
#include "scattered/space.hpp"
#include "scattered/text.hpp"

#include <gtest/gtest.h>

namespace {

using namespace scattered;

Ordinal w() { return Ordinal::omega(); }

void expectFiniteAgreement(const TreePtr& t) {
  const auto sizes = oracle::FinitePoints(t).levelSizes();
  ASSERT_EQ(vanRank(t), Ordinal(sizes.size())) << t->key();
  for (std::size_t n = 0; n <= sizes.size(); ++n)
    ASSERT_EQ(levelSize(t, Ordinal(n)), Cardinal(n < sizes.size() ? sizes[n] : 0)) << t->key() << " level " << n;
  std::size_t sch = 0;
  while (sch < sizes.size() && sizes[sch] > 1) ++sch;
  ASSERT_EQ(schHeight(t), Ordinal(sch)) << t->key();
}

void expectStageAgreement(const TreePtr& t) {
  oracle::StageOracle o(t);
  ASSERT_EQ(vanRank(t), o.vanRank()) << t->key();
  ASSERT_EQ(t->rootRank(), o.rootRank()) << t->key();
  ASSERT_EQ(schHeight(t), o.schHeight()) << t->key();
  if (!o.vanRank().isLimit() && !o.vanRank().isZero()) {
    const Ordinal top = predecessor(o.vanRank());
    ASSERT_EQ(levelSize(t, top), o.levelSize(top)) << t->key();
  }
  ASSERT_EQ(levelSize(t, Ordinal{}), o.levelSize(Ordinal{})) << t->key();
}

TEST(FiniteOracle, Examples) {
  EXPECT_EQ(oracle::FinitePoints(parseTree("A(1^3)")).levelSizes(), std::vector<std::size_t>{4});
  EXPECT_EQ(oracle::FinitePoints(parseForest("F[(1,2)]")).levelSizes(), std::vector<std::size_t>{2});
}

TEST(FiniteOracle, SmallCorpus) {
  for (const auto& t : enumerateTrees(3, 2, {Cardinal(1), Cardinal(2), Cardinal(3)})) expectFiniteAgreement(t);
}

TEST(StageOracle, Examples) {
  EXPECT_EQ(oracle::StageOracle(parseTree("A(1^w)")).vanRank(), Ordinal(2));
  EXPECT_EQ(oracle::StageOracle(parseTree("A(fam(A(_^w),1))")).vanRank(), w() + Ordinal(1));
  EXPECT_EQ(oracle::StageOracle(parseTree("A(fam(A(_^w),1))")).levelSize(w()), Cardinal(1));
  EXPECT_EQ(oracle::StageOracle(parseTree("A(fam(A(_^w),1)^w)")).levelSize(w()), Cardinal(1));
  EXPECT_EQ(oracle::StageOracle(parseTree("A(1^a1)")).levelSize(Ordinal{}), Cardinal::aleph(1));
}

TEST(StageOracle, EnumeratedCorpusWithOmega) {
  for (const auto& t : enumerateTrees(3, 2, {Cardinal(1), Cardinal(2), kAleph0})) expectStageAgreement(t);
}

TEST(StageOracle, RandomTreesWithFamilies) {
  Rng rng(99);
  TreeGenOptions opt;
  opt.maxDepth = 4;
  opt.familyPercent = 15;
  opt.alephPercent = 20;
  for (int i = 0; i < 150; ++i) expectStageAgreement(randomTree(rng, opt));
}

TEST(StageOracle, OrdinalSegments) {
  for (const Ordinal& a : {Ordinal(0), Ordinal(1), Ordinal(3), w(), w() + Ordinal(1), w() + w(), Ordinal::power(2)}) {
    for (unsigned n = 1; n <= 3; ++n) {
      oracle::StageOracle o(ordinalTree(a, n));
      EXPECT_EQ(o.vanRank(), a + Ordinal(1)) << printOrdinal(a);
      EXPECT_EQ(o.levelSize(a), Cardinal(n)) << printOrdinal(a);
    }
  }
}

TEST(DerivedProperty, ShiftsVanishingRankByOne) {
  Rng rng(5);
  TreeGenOptions opt;
  opt.maxDepth = 4;
  opt.familyPercent = 10;
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    TreePtr t = randomTree(rng, opt);
    Forest d;
    try {
      d = derivedForest(t);
    } catch (const DomainError& e) {
      // Contexts with a hole inside a nested family derive to two-hole
      // contexts, which the family calculus cannot hold.
      ASSERT_NE(std::string(e.what()).find("not representable"), std::string::npos) << t->key();
      continue;
    }
    ++checked;
    ASSERT_EQ(Ordinal(1) + oracle::StageOracle(d).vanRank(), oracle::StageOracle(t).vanRank()) << t->key();
    ASSERT_EQ(levelSize(d, Ordinal{}), levelSize(t, Ordinal(1))) << t->key();
  }
  EXPECT_GT(checked, 100);
}

TEST(ScatteredProperty, EveryNonemptyTermHasAnIsolatedPoint) {
  Rng rng(6);
  TreeGenOptions opt;
  opt.familyPercent = 10;
  for (int i = 0; i < 200; ++i) {
    TreePtr t = randomTree(rng, opt);
    while (!t->children().empty()) {
      const ChildSpec& c = t->children().front();
      t = c.isFamily() ? c.base : c.subtree;
    }
    ASSERT_TRUE(isolatedRoot(t));
  }
}

}  // namespace
