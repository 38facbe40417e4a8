#pragma once

// Tree terms for members of the class of scattered hereditarily paracompact
// compacta. A node is the one-point compactification of the sum of its
// children; a node's basic neighbourhoods are its subtree minus finitely many
// child-subtree instances.

#include "scattered/cardinal.hpp"
#include "scattered/ordinal.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scattered {

class Tree;
using TreePtr = std::shared_ptr<const Tree>;

/// Either `mult` copies of a concrete subtree, or the family
/// {context^k(base) : k in w} with `mult` copies of every member.
struct ChildSpec {
  enum class Kind { Concrete, Family };

  Kind kind = Kind::Concrete;
  TreePtr subtree;
  TreePtr context;
  TreePtr base;
  Multiplicity mult = 1;

  static ChildSpec concrete(TreePtr t, Multiplicity m = 1) {
    ChildSpec c;
    c.kind = Kind::Concrete;
    c.subtree = std::move(t);
    c.mult = checkedMultiplicity(m);
    return c;
  }
  static ChildSpec family(TreePtr ctx, TreePtr base, Multiplicity m = 1) {
    ChildSpec c;
    c.kind = Kind::Family;
    c.context = std::move(ctx);
    c.base = std::move(base);
    c.mult = checkedMultiplicity(m);
    return c;
  }
  bool isFamily() const { return kind == Kind::Family; }
};

/// Height data of an iterated family: member vanishing ranks form the
/// progression first + step*k, whose supremum is `limit`.
struct FamilyProfile {
  Ordinal firstVan;
  Ordinal vanStep;
  Ordinal vanLimit;
  Ordinal complexityLimit;  // sup_k (repComplexity(member k) + 1)
};

class Tree {
public:
  static TreePtr leaf();
  static TreePtr hole();
  /// Validates family specs (one hole per context, constant positive height
  /// step) and computes the cached invariants.
  static TreePtr node(std::vector<ChildSpec> children);

  bool isHole() const { return isHole_; }
  bool isLeaf() const { return !isHole_ && children_.empty(); }
  /// Number of hole positions in the term (family contexts bind their own).
  std::size_t holeCount() const { return holeCount_; }
  bool hasHole() const { return holeCount_ > 0; }

  const std::vector<ChildSpec>& children() const { return children_; }
  /// Profile of the i-th child; engaged only for hole-free families.
  const std::optional<FamilyProfile>& familyProfile(std::size_t i) const { return profiles_[i]; }

  /// True iff the root has infinitely many child instances.
  bool rootIsLimit() const { return infiniteInstances_; }

  /// Cantor-Bendixson rank of the root.
  const Ordinal& rootRank() const { return analysed().rootRank; }
  /// Least g with X^(g) empty.
  const Ordinal& vanRank() const { return analysed().vanRank; }
  /// Complexity of this particular representation.
  const Ordinal& repComplexity() const { return analysed().repComplexity; }
  /// Largest aleph level occurring as a multiplicity, or -1.
  int maxAleph() const { return maxAleph_; }

  /// Canonical text, children in canonical order.
  const std::string& key() const { return key_; }

private:
  struct Analysis {
    Ordinal rootRank;
    Ordinal vanRank;
    Ordinal repComplexity;
  };

  const Analysis& analysed() const {
    if (!analysis_) throw DomainError("tree term contains a hole");
    return *analysis_;
  }

  bool isHole_ = false;
  std::size_t holeCount_ = 0;
  bool infiniteInstances_ = false;
  int maxAleph_ = -1;
  std::vector<ChildSpec> children_;
  std::vector<std::optional<FamilyProfile>> profiles_;
  std::optional<Analysis> analysis_;
  std::string key_;
};

inline bool operator==(const Tree& a, const Tree& b) { return a.key() == b.key(); }
inline bool sameTree(const TreePtr& a, const TreePtr& b) { return a->key() == b->key(); }

/// Finite disjoint sum of trees.
struct ForestEntry {
  TreePtr tree;
  Natural count;
};

struct Forest {
  std::vector<ForestEntry> entries;

  Forest() = default;
  explicit Forest(std::vector<ForestEntry> e) : entries(std::move(e)) {
    for (const auto& x : entries) {
      if (x.count < 1) throw DomainError("forest multiplicity must be at least 1");
      if (x.tree->hasHole()) throw DomainError("forest entry contains a hole");
    }
  }
  static Forest single(TreePtr t) { return Forest({ForestEntry{std::move(t), 1}}); }

  bool empty() const { return entries.empty(); }
  Natural instanceCount() const {
    Natural n = 0;
    for (const auto& e : entries) n += e.count;
    return n;
  }
};

std::string printMultiplicity(const Multiplicity& m);
std::string printChildSpec(const ChildSpec& c);
std::string printForest(const Forest& f);

/// Substitutes `filler` for the hole of `ctx`.
TreePtr substitute(const TreePtr& ctx, const TreePtr& filler);
/// context^k(base).
TreePtr familyMember(const TreePtr& ctx, const TreePtr& base, std::size_t k);

// ---------------------------------------------------------------------------

inline std::string printMultiplicity(const Multiplicity& m) {
  if (m.isFinite()) return m.value().str();
  return m.alephLevel() == 0 ? std::string("w") : "a" + std::to_string(m.alephLevel());
}

inline std::string printChildSpec(const ChildSpec& c) {
  if (c.isFamily()) {
    std::string s = "fam(" + c.context->key() + "," + c.base->key() + ")";
    if (!(c.mult == Multiplicity(1))) s += "^" + printMultiplicity(c.mult);
    return s;
  }
  return c.subtree->key() + "^" + printMultiplicity(c.mult);
}

inline std::string printForest(const Forest& f) {
  std::vector<std::string> parts;
  for (const auto& e : f.entries) parts.push_back("(" + e.tree->key() + "," + e.count.str() + ")");
  std::sort(parts.begin(), parts.end());
  std::string s = "F[";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s + "]";
}

inline TreePtr Tree::leaf() {
  static const TreePtr kLeaf = node({});
  return kLeaf;
}

inline TreePtr Tree::hole() {
  static const TreePtr kHole = [] {
    auto t = std::make_shared<Tree>();
    t->isHole_ = true;
    t->holeCount_ = 1;
    t->key_ = "_";
    return TreePtr(t);
  }();
  return kHole;
}

inline TreePtr substitute(const TreePtr& ctx, const TreePtr& filler) {
  if (ctx->isHole()) return filler;
  if (!ctx->hasHole()) return ctx;
  std::vector<ChildSpec> kids = ctx->children();
  for (auto& c : kids) {
    if (c.isFamily()) {
      if (c.base->hasHole()) c.base = substitute(c.base, filler);
    } else if (c.subtree->hasHole()) {
      c.subtree = substitute(c.subtree, filler);
    }
  }
  return Tree::node(std::move(kids));
}

inline TreePtr familyMember(const TreePtr& ctx, const TreePtr& base, std::size_t k) {
  TreePtr t = base;
  for (std::size_t i = 0; i < k; ++i) t = substitute(ctx, t);
  return t;
}

namespace detail {

inline FamilyProfile profileFamily(const TreePtr& ctx, const TreePtr& base) {
  constexpr std::size_t kSamples = 4;
  std::vector<Ordinal> van;
  std::vector<Ordinal> rc;
  TreePtr member = base;
  for (std::size_t k = 0; k < kSamples; ++k) {
    van.push_back(member->vanRank());
    rc.push_back(member->repComplexity());
    member = substitute(ctx, member);
  }
  auto constantStep = [](const std::vector<Ordinal>& xs, const char* what) {
    if (xs[1] < xs[0]) throw DomainError(std::string("family ") + what + " decreases");
    Ordinal step = leftDifference(xs[0], xs[1]);
    for (std::size_t k = 1; k + 1 < xs.size(); ++k) {
      if (xs[k + 1] < xs[k] || !(leftDifference(xs[k], xs[k + 1]) == step))
        throw DomainError(std::string("family ") + what + " do not grow by a constant step");
    }
    if (step.isZero()) throw DomainError(std::string("family ") + what + " must strictly increase");
    return step;
  };
  FamilyProfile p;
  p.firstVan = van[0];
  p.vanStep = constantStep(van, "heights");
  p.vanLimit = van[0] + mulByOmega(p.vanStep);
  Ordinal rcStep = constantStep(rc, "complexities");
  p.complexityLimit = rc[0] + mulByOmega(rcStep);
  return p;
}

}  // namespace detail

inline TreePtr Tree::node(std::vector<ChildSpec> children) {
  auto t = std::make_shared<Tree>();
  t->profiles_.resize(children.size());
  std::vector<std::string> parts;
  bool holeFree = true;
  for (std::size_t i = 0; i < children.size(); ++i) {
    const ChildSpec& c = children[i];
    checkedMultiplicity(c.mult);
    if (c.mult.isInfinite()) {
      t->infiniteInstances_ = true;
      t->maxAleph_ = std::max<int>(t->maxAleph_, static_cast<int>(c.mult.alephLevel()));
    }
    if (c.isFamily()) {
      if (!c.context || !c.base) throw DomainError("family needs a context and a base");
      if (c.context->isHole()) throw DomainError("family context must not be a bare hole");
      if (c.context->holeCount() != 1) throw DomainError("family context must contain exactly one hole");
      t->infiniteInstances_ = true;
      t->holeCount_ += c.base->holeCount();
      t->maxAleph_ = std::max({t->maxAleph_, c.context->maxAleph(), c.base->maxAleph()});
      if (c.base->hasHole())
        holeFree = false;
      else
        t->profiles_[i] = detail::profileFamily(c.context, c.base);
    } else {
      if (!c.subtree) throw DomainError("concrete child needs a subtree");
      t->holeCount_ += c.subtree->holeCount();
      t->maxAleph_ = std::max(t->maxAleph_, c.subtree->maxAleph());
      if (c.subtree->hasHole()) holeFree = false;
    }
    parts.push_back(printChildSpec(c));
  }
  std::sort(parts.begin(), parts.end());
  if (parts.empty()) {
    t->key_ = "1";
  } else {
    t->key_ = "A(";
    for (std::size_t i = 0; i < parts.size(); ++i) t->key_ += (i ? "," : "") + parts[i];
    t->key_ += ")";
  }
  t->children_ = std::move(children);

  if (holeFree) {
    Analysis a;
    std::vector<Ordinal> complexities;
    for (std::size_t i = 0; i < t->children_.size(); ++i) {
      const ChildSpec& c = t->children_[i];
      if (c.isFamily()) {
        const FamilyProfile& p = *t->profiles_[i];
        if (a.rootRank < p.vanLimit) a.rootRank = p.vanLimit;
        complexities.push_back(p.complexityLimit);
      } else {
        if (c.mult.isInfinite() && a.rootRank < c.subtree->vanRank()) a.rootRank = c.subtree->vanRank();
        complexities.push_back(c.subtree->repComplexity() + Ordinal(1));
      }
    }
    a.vanRank = a.rootRank + Ordinal(1);
    for (const auto& c : t->children_)
      if (!c.isFamily() && a.vanRank < c.subtree->vanRank()) a.vanRank = c.subtree->vanRank();
    a.repComplexity = supOrd(complexities);
    t->analysis_ = std::move(a);
  }
  return t;
}

/// Convenience: A(children...).
inline TreePtr rooted(std::vector<ChildSpec> children) { return Tree::node(std::move(children)); }

/// The convergent sequence A(1^w).
inline TreePtr convergentSequence() { return rooted({ChildSpec::concrete(Tree::leaf(), kAleph0)}); }

}  // namespace scattered
