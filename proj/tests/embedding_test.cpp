#include "scattered/embeddings.hpp"
#include "scattered/generate.hpp"
#include "scattered/text.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace {

using namespace scattered;

constexpr double kPi = std::numbers::pi;

TEST(Sigma, PathIndicators) {
  auto m = sigmaEmbed(TreeOrForest(parseTree("A(1^w)")));
  PathVector root;
  root.set("/", 1);
  EXPECT_EQ(m.at("/"), root);
  PathVector leaf = root;
  leaf.set("/c0#1", 1);
  EXPECT_EQ(m.at("/c0#1"), leaf);
  auto single = sigmaEmbed(TreeOrForest(parseTree("1")));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single.at("/"), root);
}

TEST(Sigma, SupportIsDepthPlusOne) {
  auto m = sigmaEmbed(TreeOrForest(parseTree("A(A(1^2)^w,1^3)")));
  for (const auto& [path, v] : m) EXPECT_EQ(v.supportSize(), pathDepth(path) + 1) << path;
}

TEST(Hilbert, SchemeValues) {
  auto m = hilbertEmbed(TreeOrForest(parseTree("A(1^w)")), Rational(1, 2));
  EXPECT_TRUE(m.at("/").isZero());
  const PathVector& a = m.at("/c0#0");
  ASSERT_EQ(a.supportSize(), 1u);
  EXPECT_EQ(a.get("/c0#0"), Rational(1, 2));
  EXPECT_EQ(a.normSquared(), Rational(1, 4));
  EXPECT_EQ(distanceSquared(a, m.at("/c0#1")), Rational(1, 2));  // distance sqrt(2)/2
  EXPECT_THROW(hilbertEmbed("/", Rational(0)), DomainError);
  EXPECT_THROW(hilbertEmbed("/", Rational(1)), DomainError);
  EXPECT_THROW(hilbertEmbed("/", Rational(3, 2)), DomainError);
}

TEST(Hilbert, DeepNodeCoordinates) {
  PathVector v = hilbertEmbed("/c0#0/c1#2/c0#0", Rational(1, 3));
  EXPECT_EQ(v.get("/c0#0"), Rational(1, 3));
  EXPECT_EQ(v.get("/c0#0/c1#2"), Rational(1, 9));
  EXPECT_EQ(v.get("/c0#0/c1#2/c0#0"), Rational(1, 27));
  EXPECT_EQ(v.supportSize(), 3u);
}

TEST(Forests, NoCommonRoot) {
  auto m = hilbertEmbed(TreeOrForest(parseForest("F[(1,2)]")), Rational(1, 2));
  ASSERT_EQ(m.size(), 2u);
  for (const auto& [path, v] : m) EXPECT_FALSE(v.isZero()) << path;
}

// Generated trees: injectivity, norm bound, zero exactly at the root.
TEST(EmbeddingProperty, InjectiveAndBounded) {
  Rng rng(17);
  TreeGenOptions opt;
  opt.familyPercent = 15;
  const Rational w(1, 2);
  const double bound = hilbertNormBound(w);
  for (int i = 0; i < 60; ++i) {
    TreeOrForest x(randomTree(rng, opt));
    auto sigma = sigmaEmbed(x);
    auto hilbert = hilbertEmbed(x, w);
    std::set<std::map<std::string, Rational>> seen;
    for (const auto& [path, v] : sigma) seen.insert(v.entries());
    ASSERT_EQ(seen.size(), sigma.size());
    std::vector<const PathVector*> vs;
    for (const auto& [path, v] : hilbert) {
      ASSERT_LE(std::sqrt(toDouble(v.normSquared())), bound + 1e-12);
      ASSERT_EQ(v.isZero(), path == "/") << path;
      vs.push_back(&v);
    }
    if (vs.size() > 120) vs.resize(120);
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) ASSERT_GT(distanceSquared(*vs[a], *vs[b]), 0);
  }
}

TEST(EmbeddingProperty, ConvergenceTransport) {
  Rng rng(23);
  TreeGenOptions opt;
  opt.familyPercent = 20;
  int sequences = 0;
  for (int i = 0; i < 40; ++i) {
    TreeOrForest x(randomTree(rng, opt));
    MaterializeOptions mo;
    for (const auto& [path, node] : materializeAll(x, mo)) {
      bool limit = false;
      for (const auto& c : node->children()) limit = limit || c.isFamily() || c.mult.isInfinite();
      if (!limit) continue;
      for (int s = 0; s < 3; ++s) {
        auto points = sampleInstanceSequence(x, path, 40, rng);
        std::vector<PathVector> sig, hil;
        for (const auto& p : points) {
          ASSERT_TRUE(resolveNodePath(x, p).has_value()) << p;
          sig.push_back(sigmaEmbed(p));
          hil.push_back(hilbertEmbed(p));
          ASSERT_LE(std::sqrt(toDouble(hil.back().normSquared())), hilbertNormBound(Rational(1, 2)) + 1e-12);
        }
        ASSERT_TRUE(convergesCoordinatewise(sig, sigmaEmbed(path))) << path;
        ASSERT_TRUE(convergesCoordinatewise(hil, hilbertEmbed(path))) << path;
        ++sequences;
      }
      break;
    }
  }
  EXPECT_GT(sequences, 30);
}

TEST(EmbeddingProperty, ConvergenceCheckRejectsStaticSequence) {
  std::vector<PathVector> same(10, sigmaEmbed("/c0#0"));
  EXPECT_FALSE(convergesCoordinatewise(same, sigmaEmbed("/")));
  EXPECT_TRUE(convergesCoordinatewise(same, sigmaEmbed("/c0#0")));
}

TEST(Cantor, Endpoints) {
  EXPECT_DOUBLE_EQ(cantorPhi(""), kPi / 6);
  EXPECT_DOUBLE_EQ(cantorPhi("0000"), kPi / 6);
  EXPECT_DOUBLE_EQ(cantorPhi("1"), kPi / 6 + kPi / 9);
  EXPECT_NEAR(cantorPhi(std::string(40, '1')), kPi / 3, 1e-15);
  EXPECT_THROW(cantorPhi("102"), DomainError);
  std::set<double> phis;
  for (std::size_t a = 0; a < 256; ++a) {
    const double p = cantorPhi(spineBits(a, 256));
    EXPECT_GE(p, kPi / 6);
    EXPECT_LE(p, kPi / 3);
    phis.insert(p);
  }
  EXPECT_EQ(phis.size(), 256u);
  EXPECT_EQ(spineBits(5, 256), "00000101");
  EXPECT_EQ(spineBits(0, 1), "0");
}

TEST(Hedgehog, Formula) {
  const std::size_t k = 16;
  AxisVector center = hedgehogEmbed({0.0, 7}, k);
  ASSERT_EQ(center.supportSize(), 1u);
  EXPECT_DOUBLE_EQ(center.get(17), 1.0);
  EXPECT_EQ(center, hedgehogEmbed({0.0, 3}, k));
  AxisVector v = hedgehogEmbed({1.0, 0}, k);
  EXPECT_NEAR(v.get(17), std::cos(1.0), 1e-15);
  EXPECT_NEAR(v.get(16), std::sin(1.0) * std::cos(kPi / 6), 1e-15);
  EXPECT_NEAR(v.get(0), std::sin(1.0) * std::sin(kPi / 6), 1e-15);
  EXPECT_THROW(hedgehogEmbed({1.5, 0}, k), DomainError);
  EXPECT_THROW(hedgehogEmbed({-0.1, 0}, k), DomainError);
  EXPECT_THROW(hedgehogEmbed({0.5, 16}, k), DomainError);
}

TEST(Hedgehog, UnitNormExactAndFloating) {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    Rational u(static_cast<long long>(pick(rng, 1000)), 1000 + static_cast<long long>(pick(rng, 1000)));
    Rational v(static_cast<long long>(pick(rng, 997)), 997);
    auto x = hedgehogEmbedRational(u, v, pick(rng, 64), 64);
    ASSERT_EQ(x.normSquared(), Rational(1));
  }
  for (const auto& p : sampleHedgehog(64, 2000, 9)) ASSERT_NEAR(hedgehogEmbed(p, 64).normSquared(), 1.0, 1e-12);
}

TEST(Hedgehog, Injective) {
  const auto pts = sampleHedgehog(256, 2000, 11);
  std::vector<AxisVector> vs;
  for (const auto& p : pts) vs.push_back(hedgehogEmbed(p, 256));
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      if (pts[a].t == pts[b].t && pts[a].spine == pts[b].spine) continue;
      ASSERT_GT(distanceSquared(vs[a], vs[b]), 0.0);
    }
}

TEST(Hedgehog, Csv) {
  std::ostringstream os;
  writeHedgehogCsv(os, {{0.5, 1}, {1.0, 2}}, 4);
  std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "t,spine,phi,x_spine,x_kappa,x_kappa1");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 3);
}

TEST(WeakLimit, Examples) {
  SymbolicSequence c;
  c.fixed.push_back({2, CoefficientSequence::constant(0.25)});
  c.fixed.push_back({5, CoefficientSequence::constant(-0.5)});
  auto r = weakLimit(c);
  ASSERT_EQ(r.status, WeakLimitResult::Status::Limit);
  EXPECT_EQ(r.limit, c.at(0));

  SymbolicSequence drift;
  drift.drift.push_back({CoefficientSequence::constant(0.9), 100, 1});
  r = weakLimit(drift);
  ASSERT_EQ(r.status, WeakLimitResult::Status::Limit);
  EXPECT_TRUE(r.limit.isZero());

  SymbolicSequence osc;
  osc.fixed.push_back({0, CoefficientSequence::divergent([](std::size_t n) { return n % 2 ? 0.5 : -0.5; })});
  EXPECT_EQ(weakLimit(osc).status, WeakLimitResult::Status::Divergent);

  SymbolicSequence bad = drift;
  bad.normBound = std::numeric_limits<double>::infinity();
  EXPECT_EQ(weakLimit(bad).status, WeakLimitResult::Status::IllFormed);
  bad = drift;
  bad.drift[0].stride = 0;
  EXPECT_EQ(weakLimit(bad).status, WeakLimitResult::Status::IllFormed);
}

TEST(WeakLimit, HedgehogDriftLandsInAddedPart) {
  const std::size_t k = 32;
  const double t = 0.7;
  auto r = weakLimit(hedgehogSequence(k, t, std::nullopt, ""));
  ASSERT_EQ(r.status, WeakLimitResult::Status::Limit);
  EXPECT_NEAR(r.limit.get(33), std::cos(t), 1e-15);
  EXPECT_NEAR(r.limit.get(32), std::sin(t) * std::cos(kPi / 6), 1e-15);
  EXPECT_EQ(r.limit.supportSize(), 2u);
  EXPECT_EQ(classifyHedgehogLimit(r.limit, k), ClosureClass::AddedPart);

  auto f = weakLimit(hedgehogSequence(k, t, 9, ""));
  EXPECT_EQ(classifyHedgehogLimit(f.limit, k), ClosureClass::Image);
  for (std::size_t a = 0; a < k; ++a) EXPECT_EQ(classifyHedgehogLimit(hedgehogEmbed({0.4, a}, k), k), ClosureClass::Image);
}

TEST(WeakLimit, ClassifierNegatives) {
  const std::size_t k = 32;
  AxisVector off;  // phi = pi/4 is not a Cantor angle
  off.set(33, std::cos(0.5));
  off.set(32, std::sin(0.5) * std::cos(kPi / 4));
  EXPECT_EQ(classifyHedgehogLimit(off, k), ClosureClass::Fail);
  AxisVector two = hedgehogEmbed({0.5, 1}, k);
  two.set(2, 0.1);
  EXPECT_EQ(classifyHedgehogLimit(two, k), ClosureClass::Fail);
  AxisVector far;  // t > 1
  far.set(33, std::cos(1.3));
  far.set(32, std::sin(1.3) * std::cos(kPi / 6));
  EXPECT_EQ(classifyHedgehogLimit(far, k), ClosureClass::Fail);
  AxisVector wrongAngle = hedgehogEmbed({0.5, 1}, k);
  wrongAngle.set(1, wrongAngle.get(1) * 0.9);
  EXPECT_EQ(classifyHedgehogLimit(wrongAngle, k), ClosureClass::Fail);
}

TEST(WeakLimit, AgreesWithBruteForce) {
  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    std::string bits;
    for (int b = 0; b < 6; ++b) bits += pick(rng, 2) ? '1' : '0';
    const double t = 0.05 + 0.9 * static_cast<double>(pick(rng, 1000)) / 1000;
    auto s = pick(rng, 2) ? hedgehogSequence(64, t, std::nullopt, bits)
                          : hedgehogSequence(64, t, static_cast<std::size_t>(pick(rng, 64)), "");
    auto sym = weakLimit(s);
    auto num = bruteForceLimit(s, 1000, 1e-3);
    ASSERT_EQ(num.status, WeakLimitResult::Status::Limit);
    ASSERT_LT(std::sqrt(distanceSquared(sym.limit, num.limit)), 1e-2);
  }
  SymbolicSequence osc;
  osc.fixed.push_back({0, CoefficientSequence::divergent([](std::size_t n) { return n % 2 ? 0.5 : -0.5; })});
  EXPECT_EQ(bruteForceLimit(osc, 1000, 1e-3).status, WeakLimitResult::Status::Divergent);
}

TEST(WeakLimit, ClosureCheck) {
  auto rep = closureCheckHedgehog(64, 200, 5);
  EXPECT_EQ(rep.trials.size(), 200u);
  EXPECT_EQ(rep.count(ClosureClass::Fail), 0u);
  EXPECT_GT(rep.count(ClosureClass::Image), 0u);
  EXPECT_GT(rep.count(ClosureClass::AddedPart), 0u);
  EXPECT_GT(rep.count(ClosureClass::Rejected), 0u);
}

}  // namespace
