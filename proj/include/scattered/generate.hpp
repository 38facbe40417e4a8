#pragma once

// Seeded generators for ordinals, trees and presentations. Draws use raw
// mt19937_64 output so sequences are identical across standard libraries.

#include "scattered/presentation.hpp"
#include "scattered/space.hpp"
#include "scattered/tree.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <variant>
#include <vector>

namespace scattered {

using Rng = std::mt19937_64;

inline std::uint64_t pick(Rng& rng, std::uint64_t n) { return rng() % n; }
inline bool coin(Rng& rng, std::uint64_t percent) { return pick(rng, 100) < percent; }

inline Ordinal randomOrdinal(Rng& rng, int depth) {
  const auto n = pick(rng, 4);
  std::vector<Ordinal> exps;
  for (std::uint64_t i = 0; i < n; ++i)
    exps.push_back(depth > 0 ? randomOrdinal(rng, depth - 1) : Ordinal(pick(rng, 4)));
  std::sort(exps.begin(), exps.end(), [](const Ordinal& a, const Ordinal& b) { return b < a; });
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  std::vector<OrdinalTerm> terms;
  for (auto& e : exps) terms.push_back({e, Natural(1 + pick(rng, 4))});
  return Ordinal::fromTerms(std::move(terms));
}

struct TreeGenOptions {
  int maxDepth = 3;
  int maxBranch = 3;
  std::vector<Multiplicity> mults = {Multiplicity(1), Multiplicity(2), kAleph0};
  int familyPercent = 0;   // chance that a child is an ordinal-tower family
  int alephPercent = 0;    // chance that an infinite multiplicity is aleph_1
};

inline TreePtr randomTree(Rng& rng, const TreeGenOptions& opt, int depth = 0) {
  if (depth >= opt.maxDepth) return Tree::leaf();
  const auto branches = pick(rng, static_cast<std::uint64_t>(opt.maxBranch) + 1);
  std::vector<ChildSpec> kids;
  for (std::uint64_t i = 0; i < branches; ++i) {
    if (opt.familyPercent > 0 && coin(rng, static_cast<std::uint64_t>(opt.familyPercent))) {
      const unsigned e = static_cast<unsigned>(pick(rng, 2));
      kids.push_back(ChildSpec::family(raiseContext(e), randomTree(rng, opt, opt.maxDepth - 1)));
      continue;
    }
    Multiplicity m = opt.mults[pick(rng, opt.mults.size())];
    if (m.isInfinite() && opt.alephPercent > 0 && coin(rng, static_cast<std::uint64_t>(opt.alephPercent)))
      m = Cardinal::aleph(1);
    kids.push_back(ChildSpec::concrete(randomTree(rng, opt, depth + 1), m));
  }
  return Tree::node(std::move(kids));
}

/// Every tree with at most `levels` levels (a leaf has one), at most
/// `branch` child specs per node and multiplicities from `mults`; child
/// specs are taken as multisets.
inline std::vector<TreePtr> enumerateTrees(int levels, int branch, const std::vector<Multiplicity>& mults) {
  if (levels <= 1) return {Tree::leaf()};
  std::vector<TreePtr> smaller = enumerateTrees(levels - 1, branch, mults);
  std::vector<ChildSpec> options;
  for (const auto& t : smaller)
    for (const auto& m : mults) options.push_back(ChildSpec::concrete(t, m));
  std::vector<TreePtr> out;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    std::vector<ChildSpec> kids;
    for (auto i : chosen) kids.push_back(options[i]);
    out.push_back(Tree::node(std::move(kids)));
    if (chosen.size() == static_cast<std::size_t>(branch)) return;
    for (std::size_t i = from; i < options.size(); ++i) {
      chosen.push_back(i);
      rec(i);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Presentation contexts whose iterates raise the height by one.
inline PresentationPtr towerContext() {
  return Presentation::pointWithBase({}, {Presentation::hole()});
}

struct PresentationGenOptions {
  int maxDepth = 3;
  int maxParts = 3;
  int familyPercent = 15;
};

inline PresentationPtr randomPresentation(Rng& rng, const PresentationGenOptions& opt, int depth = 0) {
  const auto roll = pick(rng, 100);
  if (depth >= opt.maxDepth || roll < 15) return roll < 3 ? Presentation::empty() : Presentation::single();
  if (roll < 55) {
    std::vector<PresentationPart> parts;
    const auto n = 1 + pick(rng, static_cast<std::uint64_t>(opt.maxParts));
    for (std::uint64_t i = 0; i < n; ++i) {
      if (coin(rng, static_cast<std::uint64_t>(opt.familyPercent))) {
        // Bases are single trees after compactification: a point or a pwb.
        PresentationPtr base = coin(rng, 50) ? Presentation::single()
                                             : Presentation::pointWithBase({}, {randomPresentation(rng, opt, opt.maxDepth - 1)});
        parts.push_back(PresentationPart::family(towerContext(), base));
        continue;
      }
      static const Multiplicity kMults[] = {Multiplicity(1), Multiplicity(2), kAleph0};
      parts.push_back(PresentationPart::concrete(randomPresentation(rng, opt, depth + 1), kMults[pick(rng, 3)]));
    }
    return Presentation::sum(std::move(parts));
  }
  std::vector<PresentationPtr> prefix;
  std::vector<PresentationPtr> tail;
  const auto np = pick(rng, 3);
  const auto nt = 1 + pick(rng, 2);
  for (std::uint64_t i = 0; i < np; ++i) prefix.push_back(randomPresentation(rng, opt, depth + 1));
  for (std::uint64_t i = 0; i < nt; ++i) tail.push_back(randomPresentation(rng, opt, depth + 1));
  return Presentation::pointWithBase(std::move(prefix), std::move(tail));
}

inline Forest randomForest(Rng& rng, const TreeGenOptions& opt) {
  std::vector<ForestEntry> entries;
  const auto n = 1 + pick(rng, 3);
  for (std::uint64_t i = 0; i < n; ++i) entries.push_back({randomTree(rng, opt), Natural(1 + pick(rng, 3))});
  return Forest(std::move(entries));
}

/// One of the four expression kinds, chosen uniformly.
inline std::variant<Ordinal, TreePtr, Forest, PresentationPtr> randomExpr(Rng& rng, const TreeGenOptions& topt,
                                                                          const PresentationGenOptions& popt) {
  switch (pick(rng, 4)) {
    case 0:
      return randomOrdinal(rng, 2);
    case 1:
      return randomTree(rng, topt);
    case 2:
      return randomForest(rng, topt);
    default:
      return randomPresentation(rng, popt);
  }
}

}  // namespace scattered
