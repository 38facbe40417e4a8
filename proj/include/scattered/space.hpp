#pragma once

// Derived sets and ordinal invariants of tree compacta.

#include "scattered/cardinal.hpp"
#include "scattered/ordinal.hpp"
#include "scattered/tree.hpp"

#include <variant>
#include <vector>

namespace scattered {

using TreeOrForest = std::variant<TreePtr, Forest>;

inline Forest asForest(const TreePtr& t) { return Forest::single(t); }
inline Forest asForest(const Forest& f) { return f; }
inline Forest asForest(const TreeOrForest& x) {
  return std::visit([](const auto& v) { return asForest(v); }, x);
}

/// True iff the root has finitely many child instances.
inline bool isolatedRoot(const TreePtr& t) { return !t->rootIsLimit(); }

/// One-point compactification of a sum: adds a root only when the sum has
/// infinitely many instances, otherwise the sum is already compact.
inline TreeOrForest aleksandrov(const std::vector<ChildSpec>& children) {
  bool infinite = false;
  for (const auto& c : children)
    if (c.isFamily() || c.mult.isInfinite()) infinite = true;
  if (infinite) return rooted(children);
  std::vector<ForestEntry> entries;
  for (const auto& c : children) entries.push_back({c.subtree, c.mult.value()});
  return Forest(std::move(entries));
}

inline TreeOrForest aleksandrov(const Forest& f) { return f; }

inline Ordinal vanRank(const TreePtr& t) { return t->vanRank(); }
inline Ordinal vanRank(const Forest& f) {
  Ordinal v;
  for (const auto& e : f.entries)
    if (v < e.tree->vanRank()) v = e.tree->vanRank();
  return v;
}

inline Ordinal repComplexity(const TreePtr& t) { return t->repComplexity(); }
/// A sum of two or more instances is a one-step compactification of its parts.
inline Ordinal repComplexity(const Forest& f) {
  if (f.empty()) return Ordinal{};
  if (f.instanceCount() == 1) return f.entries[0].tree->repComplexity();
  Ordinal best;
  for (const auto& e : f.entries) {
    Ordinal c = e.tree->repComplexity() + Ordinal(1);
    if (best < c) best = c;
  }
  return best;
}

Cardinal levelSize(const TreePtr& t, const Ordinal& level);

inline Cardinal levelSize(const Forest& f, const Ordinal& level) {
  Cardinal total;
  for (const auto& e : f.entries) total = total + Cardinal(e.count) * levelSize(e.tree, level);
  return total;
}

namespace detail {

/// Least k with firstVan + step*k > level, capped.
inline std::size_t firstMemberAbove(const FamilyProfile& p, const Ordinal& level) {
  constexpr std::size_t kCap = 4096;
  Ordinal v = p.firstVan;
  for (std::size_t k = 0; k < kCap; ++k) {
    if (level < v) return k;
    v = v + p.vanStep;
  }
  throw DomainError("level lies too deep inside an iterated family");
}

}  // namespace detail

/// |X^(level)|, exact when finite.
inline Cardinal levelSize(const TreePtr& t, const Ordinal& level) {
  if (!(level < t->vanRank())) return Cardinal{};
  Cardinal total = (level <= t->rootRank()) ? Cardinal(1) : Cardinal{};
  const auto& kids = t->children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const ChildSpec& c = kids[i];
    if (!c.isFamily()) {
      total = total + c.mult * levelSize(c.subtree, level);
      continue;
    }
    const FamilyProfile& p = *t->familyProfile(i);
    if (!(level < p.vanLimit)) continue;
    // Infinitely many members meet the level; the sum is their largest
    // cardinal, at least aleph_0.
    unsigned aleph = 0;
    if (t->maxAleph() > 0) {
      std::size_t k0 = detail::firstMemberAbove(p, level);
      TreePtr m = familyMember(c.context, c.base, k0);
      for (int extra = 0; extra < 3; ++extra) {
        Cardinal s = levelSize(m, level);
        if (s.isInfinite()) aleph = std::max(aleph, s.alephLevel());
        m = substitute(c.context, m);
      }
    }
    total = total + Cardinal::aleph(aleph) * c.mult;
  }
  return total;
}

inline Cardinal pointCount(const TreePtr& t) { return levelSize(t, Ordinal{}); }
inline Cardinal pointCount(const Forest& f) { return levelSize(f, Ordinal{}); }

/// Least a with |X^(a)| <= 1.
inline Ordinal schHeight(const Forest& f) {
  Ordinal v = vanRank(f);
  if (v.isZero()) return v;
  Ordinal top = predecessor(v);
  Cardinal n = levelSize(f, top);
  return (n <= Cardinal(1)) ? top : v;
}
inline Ordinal schHeight(const TreePtr& t) { return schHeight(asForest(t)); }

inline Cardinal levelSize(const TreeOrForest& x, const Ordinal& a) { return levelSize(asForest(x), a); }
inline Ordinal vanRank(const TreeOrForest& x) { return vanRank(asForest(x)); }
inline Ordinal schHeight(const TreeOrForest& x) { return schHeight(asForest(x)); }
inline Ordinal repComplexity(const TreeOrForest& x) {
  return std::visit([](const auto& v) { return repComplexity(v); }, x);
}

// --- first derivative --------------------------------------------------------

namespace detail {

inline void appendScaled(std::vector<ChildSpec>& out, const std::vector<ChildSpec>& in, const Multiplicity& m) {
  for (ChildSpec c : in) {
    c.mult = c.mult * m;
    out.push_back(std::move(c));
  }
}

/// Replaces the hole of `ctx` by a list of child entries.
inline TreePtr substituteEntries(const TreePtr& ctx, const std::vector<ChildSpec>& entries) {
  if (ctx->isHole()) throw DomainError("cannot substitute entries at the root");
  if (!ctx->hasHole()) return ctx;
  std::vector<ChildSpec> kids;
  for (const auto& c : ctx->children()) {
    if (c.isFamily()) {
      if (c.base->isHole()) {
        // fam(C, L) = L together with fam(C, C[L]).
        appendScaled(kids, entries, c.mult);
        kids.push_back(ChildSpec::family(c.context, substituteEntries(c.context, entries), c.mult));
      } else if (c.base->hasHole()) {
        kids.push_back(ChildSpec::family(c.context, substituteEntries(c.base, entries), c.mult));
      } else {
        kids.push_back(c);
      }
    } else if (c.subtree->isHole()) {
      appendScaled(kids, entries, c.mult);
    } else if (c.subtree->hasHole()) {
      kids.push_back(ChildSpec::concrete(substituteEntries(c.subtree, entries), c.mult));
    } else {
      kids.push_back(c);
    }
  }
  return Tree::node(std::move(kids));
}

std::vector<ChildSpec> deriveEntries(const TreePtr& t);

/// True iff the hole of a context sits inside the base of a nested family.
inline bool holeUnderFamily(const TreePtr& ctx) {
  if (ctx->isHole() || !ctx->hasHole()) return false;
  for (const auto& c : ctx->children()) {
    if (c.isFamily() && c.base->hasHole()) return true;
    if (!c.isFamily() && holeUnderFamily(c.subtree)) return true;
  }
  return false;
}

inline std::vector<ChildSpec> deriveChild(const ChildSpec& c) {
  std::vector<ChildSpec> out;
  if (!c.isFamily()) {
    appendScaled(out, deriveEntries(c.subtree), c.mult);
    return out;
  }
  if (holeUnderFamily(c.context))
    throw DomainError("derivative not representable: the derived family context would use its hole twice");
  // Member k+1 is context[member k], and derivation commutes with the
  // substitution because survival of context nodes does not depend on the
  // (nonempty) filler.
  std::vector<ChildSpec> ctxDerived = deriveEntries(c.context);
  std::vector<ChildSpec> baseDerived = deriveEntries(c.base);
  std::vector<ChildSpec> rest;
  std::optional<ChildSpec> holeEntry;
  for (auto& e : ctxDerived) {
    bool carriesHole = e.isFamily() ? e.base->hasHole() : e.subtree->hasHole();
    if (carriesHole)
      holeEntry = e;
    else
      rest.push_back(e);
  }
  if (!holeEntry || holeEntry->isFamily()) throw DomainError("malformed family context");
  if (!rest.empty()) appendScaled(out, rest, kAleph0 * c.mult);
  if (holeEntry->subtree->isHole()) {
    // No context node survives: every member's derivative is a finite
    // union of copies of `rest` and of the base's derivative.
    appendScaled(out, baseDerived, kAleph0 * c.mult);
    return out;
  }
  appendScaled(out, baseDerived, c.mult);
  const TreePtr& shell = holeEntry->subtree;
  std::vector<ChildSpec> step = rest;
  step.push_back(ChildSpec::concrete(Tree::hole(), 1));
  TreePtr nextCtx = substituteEntries(shell, step);
  TreePtr first = substituteEntries(shell, baseDerived);
  out.push_back(ChildSpec::family(nextCtx, first, holeEntry->mult * c.mult));
  return out;
}

/// Derivative of the subtree at t, as entries hanging under the nearest
/// surviving ancestor. A node survives iff it has infinitely many child
/// instances.
inline std::vector<ChildSpec> deriveEntries(const TreePtr& t) {
  if (t->isHole()) return {ChildSpec::concrete(Tree::hole(), 1)};
  std::vector<ChildSpec> below;
  for (const auto& c : t->children()) {
    auto d = deriveChild(c);
    below.insert(below.end(), d.begin(), d.end());
  }
  if (t->rootIsLimit()) return {ChildSpec::concrete(Tree::node(std::move(below)), 1)};
  return below;
}

}  // namespace detail

/// X': the subspace of non-isolated points as a forest.
inline Forest derivedForest(const Forest& f) {
  std::vector<ForestEntry> out;
  for (const auto& e : f.entries) {
    for (const auto& c : detail::deriveEntries(e.tree)) {
      if (c.isFamily() || c.mult.isInfinite()) throw DomainError("derivative is not compact");
      out.push_back({c.subtree, c.mult.value() * e.count});
    }
  }
  return Forest(std::move(out));
}
inline Forest derivedForest(const TreePtr& t) { return derivedForest(asForest(t)); }
inline Forest derivedForest(const TreeOrForest& x) { return derivedForest(asForest(x)); }

// --- countable classification -----------------------------------------------

/// Mazurkiewicz-Sierpinski invariant (rank, top-level count).
struct MSInvariant {
  Ordinal rank;
  Natural topCount;
  friend bool operator==(const MSInvariant&, const MSInvariant&) = default;
};

inline bool isCountable(const Forest& f) {
  for (const auto& e : f.entries)
    if (e.tree->maxAleph() > 0) return false;
  return true;
}

inline MSInvariant msInvariant(const Forest& f) {
  if (!isCountable(f)) throw DomainError("msInvariant: space is uncountable");
  if (f.empty()) throw DomainError("msInvariant: space is empty");
  Ordinal rank = predecessor(vanRank(f));
  return {rank, levelSize(f, rank).value()};
}
inline MSInvariant msInvariant(const TreePtr& t) { return msInvariant(asForest(t)); }
inline MSInvariant msInvariant(const TreeOrForest& x) { return msInvariant(asForest(x)); }

inline bool homeoCountable(const Forest& a, const Forest& b) {
  if (!isCountable(a) || !isCountable(b)) throw DomainError("homeoCountable: space is uncountable");
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  return msInvariant(a) == msInvariant(b);
}
inline bool homeoCountable(const TreeOrForest& a, const TreeOrForest& b) {
  return homeoCountable(asForest(a), asForest(b));
}

// --- ordinal segments -------------------------------------------------------

/// Context raising w^g + 1 to w^(g + w^e) + 1.
inline TreePtr raiseContext(unsigned e) {
  TreePtr ctx = rooted({ChildSpec::concrete(Tree::hole(), kAleph0)});
  for (unsigned i = 0; i < e; ++i) ctx = rooted({ChildSpec::family(ctx, Tree::hole())});
  return ctx;
}

/// The segment w^a * n + 1, as n copies of a tree for w^a + 1. Exponents of
/// the normal form of `a` must be finite.
inline Forest ordinalTree(const Ordinal& a, const Natural& n) {
  constexpr unsigned kMaxExponent = 64;
  constexpr unsigned kMaxCoefficient = 4096;
  if (n < 1) throw DomainError("ordinalTree: n must be positive");
  TreePtr t = Tree::leaf();
  for (const auto& term : a.terms()) {
    if (!term.exponent.isFinite() || term.exponent.finiteValue() > kMaxExponent)
      throw DomainError("ordinalTree: exponents must be finite and small");
    if (term.coefficient > kMaxCoefficient) throw DomainError("ordinalTree: coefficient too large");
    TreePtr ctx = raiseContext(term.exponent.finiteValue().convert_to<unsigned>());
    for (unsigned i = 0; i < term.coefficient.convert_to<unsigned>(); ++i) t = substitute(ctx, t);
  }
  return Forest({ForestEntry{t, n}});
}

}  // namespace scattered
