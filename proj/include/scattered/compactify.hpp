#pragma once

// Compactification of presented scattered metrizable spaces into tree
// compacta, following the height recursion: a space whose top level is
// empty is cut into clopen pieces of smaller height and the compactified
// pieces are summed and closed by one point; a space with a single top
// point a becomes a tree rooted at a over the compactified pieces of X - {a}.
//
// Point addresses are paths into the presentation:
//   p3#k   copy k of sum part 3      f2.k#c  copy c of member k of family 2
//   y1     prefix piece 1 of a pwb   t0#q    q-th cycle of tail piece 0
//   a      base point of a pwb       pt      the point of a singleton
// Node paths are "/" for the root and "/c2#5/c0.1#0" style for descendants
// (child spec 2 copy 5, then member 1 copy 0 of the family child 0). Forest
// results start with "/T<j>#<copy>". Copies of infinite multiplicities are
// listed only for indices below kWitnessCopies, families up to member 2.

#include "scattered/nodepath.hpp"
#include "scattered/presentation.hpp"
#include "scattered/space.hpp"
#include "scattered/tree.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace scattered {

inline constexpr unsigned kWitnessCopies = 2;
inline constexpr std::size_t kWitnessMembers = 3;

struct DensityWitness {
  std::map<std::string, std::string> pointMap;  // address -> node path
  std::set<std::string> addedNodes;
};

/// Case of the height recursion applied at the top: 0 for spaces with at
/// most one point, 1 limit height with empty top level, 2 successor height
/// with empty top level, 3 singleton top level.
enum class CompactifyCase { Trivial = 0, LimitEmptyTop = 1, SuccessorEmptyTop = 2, SingletonTop = 3 };

struct Compactification {
  TreeOrForest space;
  DensityWitness witness;
  Ordinal alpha;
  Natural nAlpha;
  CompactifyCase proofCase = CompactifyCase::Trivial;
};

Compactification compactifyP(const PresentationPtr& p);

namespace detail {

struct AddressStep {
  std::string label;
  Multiplicity mult = 1;
  bool indexed = true;
};

struct CoverPiece {
  std::vector<AddressStep> steps;
  PresentationPtr space;  // null for a family piece
  PresentationPtr context;
  PresentationPtr base;
};

inline std::vector<AddressStep> extend(std::vector<AddressStep> steps, AddressStep s) {
  steps.push_back(std::move(s));
  return steps;
}

/// Bijection between copies of a product multiplicity and pairs of copies.
inline Natural combineCopies(const Natural& x, const Multiplicity& m, const Natural& y, const Multiplicity& n) {
  if (n.isFinite()) return x * n.value() + y;
  if (m.isFinite()) return y * m.value() + x;
  const Natural s = x + y;
  return s * (s + 1) / 2 + y;
}

inline Natural truncatedCopies(const Multiplicity& m) {
  return m.isFinite() ? std::min<Natural>(m.value(), kWitnessCopies) : Natural(kWitnessCopies);
}

struct CopyChoice {
  std::string address;
  Natural copy = 0;
  Multiplicity mult = 1;
};

/// Every truncated choice of copy indices along `steps`, with the address
/// prefix and the combined copy index inside the product multiplicity.
inline std::vector<CopyChoice> copyChoices(const std::vector<AddressStep>& steps) {
  std::vector<CopyChoice> out{CopyChoice{}};
  for (const auto& s : steps) {
    std::vector<CopyChoice> next;
    for (const auto& c : out) {
      const std::string sep = c.address.empty() ? "" : "/";
      if (!s.indexed) {
        next.push_back({c.address + sep + s.label, c.copy, c.mult});
        continue;
      }
      const Natural n = truncatedCopies(s.mult);
      for (Natural k = 0; k < n; ++k)
        next.push_back({c.address + sep + s.label + "#" + k.str(), combineCopies(c.copy, c.mult, k, s.mult),
                        c.mult * s.mult});
    }
    out = std::move(next);
  }
  return out;
}

inline std::string joinAddress(const std::string& prefix, const std::string& inner) {
  if (prefix.empty()) return inner;
  return prefix + "/" + inner;
}

/// Re-roots an inner node path under child segment `segment`.
inline std::string underChild(const std::string& segment, const std::string& innerPath) {
  return innerPath == "/" ? "/" + segment : "/" + segment + innerPath;
}

inline bool hasPoints(const PresentationPtr& p) { return !p->vanRank().isZero(); }

/// Cuts a space with empty level `alpha` into clopen pieces of height
/// below `alpha`.
inline void decomposeBelow(const PresentationPtr& x, const Ordinal& alpha, const std::vector<AddressStep>& steps,
                           std::vector<CoverPiece>& out) {
  if (!hasPoints(x)) return;
  if (schPresentation(x) < alpha) {
    out.push_back({steps, x, nullptr, nullptr});
    return;
  }
  if (x->kind() == Presentation::Kind::Sum) {
    for (std::size_t i = 0; i < x->parts().size(); ++i) {
      const auto& part = x->parts()[i];
      if (part.isFamily())
        out.push_back({extend(steps, {"f" + std::to_string(i), part.mult}), nullptr, part.context, part.base});
      else
        decomposeBelow(part.piece, alpha, extend(steps, {"p" + std::to_string(i), part.mult}), out);
    }
    return;
  }
  if (x->kind() == Presentation::Kind::PointWithBase) {
    // The base point sits below alpha, so it has a clopen neighbourhood
    // W_N of height below alpha; the prefix pieces are cut further.
    std::vector<PresentationPtr> blanks(x->prefix().size(), Presentation::empty());
    for (std::size_t i = 0; i < x->prefix().size(); ++i)
      decomposeBelow(x->prefix()[i], alpha, extend(steps, {"y" + std::to_string(i), 1, false}), out);
    out.push_back({steps, Presentation::pointWithBase(std::move(blanks), x->tail()), nullptr, nullptr});
    return;
  }
  throw DomainError("compactify: cannot decompose a hole");
}

/// Splits X - {a} into clopen pieces whose closures miss a, where a is the
/// only point of X^(alpha). Returns the address of a.
inline std::string removeTop(const PresentationPtr& x, const Ordinal& alpha, const std::vector<AddressStep>& steps,
                             std::vector<CoverPiece>& out) {
  auto here = [&](const std::string& leaf) {
    auto choices = copyChoices(steps);
    return joinAddress(choices.front().address, leaf);
  };
  switch (x->kind()) {
    case Presentation::Kind::Single:
      return here("pt");
    case Presentation::Kind::Sum: {
      for (std::size_t i = 0; i < x->parts().size(); ++i) {
        const auto& part = x->parts()[i];
        if (part.isFamily() || levelSize(part.piece, alpha).isZero()) continue;
        std::vector<PresentationPart> rest = x->parts();
        rest[i] = PresentationPart::concrete(Presentation::empty());
        PresentationPtr others = Presentation::sum(std::move(rest));
        std::string a = removeTop(part.piece, alpha, extend(steps, {"p" + std::to_string(i), 1}), out);
        if (hasPoints(others)) out.push_back({steps, others, nullptr, nullptr});
        return a;
      }
      break;
    }
    case Presentation::Kind::PointWithBase: {
      if (alpha <= x->pointRank()) {
        for (std::size_t i = 0; i < x->prefix().size(); ++i)
          if (hasPoints(x->prefix()[i]))
            out.push_back({extend(steps, {"y" + std::to_string(i), 1, false}), x->prefix()[i], nullptr, nullptr});
        for (std::size_t j = 0; j < x->tail().size(); ++j)
          if (hasPoints(x->tail()[j]))
            out.push_back({extend(steps, {"t" + std::to_string(j), kAleph0}), x->tail()[j], nullptr, nullptr});
        return here("a");
      }
      for (std::size_t i = 0; i < x->prefix().size(); ++i) {
        if (levelSize(x->prefix()[i], alpha).isZero()) continue;
        std::vector<PresentationPtr> prefix = x->prefix();
        prefix[i] = Presentation::empty();
        std::string a = removeTop(x->prefix()[i], alpha, extend(steps, {"y" + std::to_string(i), 1, false}), out);
        out.push_back({steps, Presentation::pointWithBase(std::move(prefix), x->tail()), nullptr, nullptr});
        return a;
      }
      break;
    }
    default:
      break;
  }
  throw DomainError("compactify: top point not found");
}

/// Canonical text that keeps the stored child order, so witness paths
/// computed on one tree can be resolved on another.
inline std::string orderedKey(const TreePtr& t) {
  if (t->isHole()) return "_";
  std::string s = "A(";
  for (const auto& c : t->children()) {
    if (c.isFamily())
      s += "fam(" + orderedKey(c.context) + "," + orderedKey(c.base) + ")^" + printMultiplicity(c.mult) + ",";
    else
      s += orderedKey(c.subtree) + "^" + printMultiplicity(c.mult) + ",";
  }
  return s + ")";
}

inline void appendCompactified(const TreeOrForest& k, const Multiplicity& m, std::vector<ChildSpec>& children) {
  if (const auto* t = std::get_if<TreePtr>(&k)) {
    children.push_back(ChildSpec::concrete(*t, m));
    return;
  }
  for (const auto& e : std::get<Forest>(k).entries) children.push_back(ChildSpec::concrete(e.tree, m * Cardinal(e.count)));
}

/// Tree context of a pwb context: the hole stays where it is.
inline TreePtr contextTree(const PresentationPtr& ctx) {
  if (ctx->kind() == Presentation::Kind::Hole) return Tree::hole();
  if (ctx->kind() != Presentation::Kind::PointWithBase)
    throw DomainError("compactify: family contexts must be pwb terms");
  std::vector<ChildSpec> kids;
  auto add = [&](const PresentationPtr& y, const Multiplicity& m) {
    if (y->hasHole())
      kids.push_back(ChildSpec::concrete(contextTree(y), m));
    else if (hasPoints(y))
      appendCompactified(compactifyP(y).space, m, kids);
  };
  for (const auto& y : ctx->prefix()) add(y, 1);
  for (const auto& y : ctx->tail()) add(y, kAleph0);
  return Tree::node(std::move(kids));
}

/// Compactifies one cover piece into child specs and records its witness
/// entries with node paths relative to the parent node.
inline void emitPiece(const CoverPiece& piece, std::vector<ChildSpec>& children, DensityWitness& w) {
  if (piece.space) {
    Compactification inner = compactifyP(piece.space);
    Multiplicity m = 1;
    for (const auto& s : piece.steps) m = m * s.mult;
    const std::size_t first = children.size();
    appendCompactified(inner.space, m, children);
    const bool isTree = std::holds_alternative<TreePtr>(inner.space);
    const Forest* forest = isTree ? nullptr : &std::get<Forest>(inner.space);
    auto place = [&](const CopyChoice& c, const std::string& path) {
      if (isTree) return underChild("c" + std::to_string(first) + "#" + c.copy.str(), path);
      // "/T<j>#<r>..." inside the forest becomes child first+j.
      const auto slash = path.find('/', 1);
      const std::string seg = path.substr(1, slash == std::string::npos ? std::string::npos : slash - 1);
      const auto hash = seg.find('#');
      const std::size_t j = std::stoul(seg.substr(1, hash - 1));
      const Natural r(seg.substr(hash + 1));
      const Natural copy = combineCopies(c.copy, c.mult, r, Cardinal(forest->entries[j].count));
      const std::string rest = slash == std::string::npos ? "/" : path.substr(slash);
      return underChild("c" + std::to_string(first + j) + "#" + copy.str(), rest);
    };
    for (const auto& c : copyChoices(piece.steps)) {
      for (const auto& [addr, path] : inner.witness.pointMap) w.pointMap[joinAddress(c.address, addr)] = place(c, path);
      for (const auto& path : inner.witness.addedNodes) w.addedNodes.insert(place(c, path));
    }
    return;
  }

  const TreePtr ctx = contextTree(piece.context);
  Compactification baseK = compactifyP(piece.base);
  const auto* base = std::get_if<TreePtr>(&baseK.space);
  if (!base) throw DomainError("compactify: family base must compactify to a single tree");
  Multiplicity m = 1;
  for (const auto& s : piece.steps) m = m * s.mult;
  const std::size_t index = children.size();
  children.push_back(ChildSpec::family(ctx, *base, m));

  std::vector<AddressStep> outer(piece.steps.begin(), piece.steps.end() - 1);
  const AddressStep& fam = piece.steps.back();
  PresentationPtr member = piece.base;
  for (std::size_t k = 0; k < kWitnessMembers; ++k) {
    Compactification mk = compactifyP(member);
    const auto* mt = std::get_if<TreePtr>(&mk.space);
    if (!mt || orderedKey(*mt) != orderedKey(familyMember(ctx, *base, k)))
      throw DomainError("compactify: family context does not commute with compactification");
    auto steps = extend(outer, {fam.label + "." + std::to_string(k), fam.mult});
    for (const auto& c : copyChoices(steps)) {
      const std::string seg = "c" + std::to_string(index) + "." + std::to_string(k) + "#" + c.copy.str();
      for (const auto& [addr, path] : mk.witness.pointMap) w.pointMap[joinAddress(c.address, addr)] = underChild(seg, path);
      for (const auto& path : mk.witness.addedNodes) w.addedNodes.insert(underChild(seg, path));
    }
    member = substitute(piece.context, member);
  }
}

/// Renames child segments "/c<i>#" to forest segments "/T<i>#".
inline std::string asForestPath(const std::string& path) { return "/T" + path.substr(2); }

}  // namespace detail

/// Compactification of the presented space with its density witness.
inline Compactification compactifyP(const PresentationPtr& p) {
  if (p->hasHole()) throw DomainError("compactify: presentation contains a hole");
  Compactification out;
  out.alpha = schPresentation(p);
  out.nAlpha = splitLimitFinite(out.alpha).finitePart;
  if (!detail::hasPoints(p)) {
    out.space = Forest{};
    return out;
  }

  std::vector<detail::CoverPiece> pieces;
  std::vector<ChildSpec> children;
  if (levelSize(p, out.alpha) == Cardinal(1)) {
    out.proofCase = out.alpha.isZero() ? CompactifyCase::Trivial : CompactifyCase::SingletonTop;
    const std::string a = detail::removeTop(p, out.alpha, {}, pieces);
    for (const auto& piece : pieces) detail::emitPiece(piece, children, out.witness);
    out.witness.pointMap[a] = "/";
    out.space = Tree::node(std::move(children));
    return out;
  }

  out.proofCase = out.alpha.isLimit() ? CompactifyCase::LimitEmptyTop : CompactifyCase::SuccessorEmptyTop;
  detail::decomposeBelow(p, out.alpha, {}, pieces);
  for (const auto& piece : pieces) detail::emitPiece(piece, children, out.witness);
  out.space = aleksandrov(children);
  if (std::holds_alternative<TreePtr>(out.space)) {
    out.witness.addedNodes.insert("/");
  } else {
    for (auto& [addr, path] : out.witness.pointMap) path = detail::asForestPath(path);
    std::set<std::string> added;
    for (const auto& path : out.witness.addedNodes) added.insert(detail::asForestPath(path));
    out.witness.addedNodes = std::move(added);
  }
  return out;
}

/// sch(K) <= alpha + n(alpha) + 1 for alpha the height of the presented space.
inline bool checkBound(const PresentationPtr& p, const TreeOrForest& k) {
  const Ordinal alpha = schPresentation(p);
  const Ordinal bound = alpha + Ordinal(splitLimitFinite(alpha).finitePart) + Ordinal(1);
  return schHeight(k) <= bound;
}

/// Witness check: the point map is injective into existing nodes, every
/// materialised node is an image or an added node, every leaf is an
/// image, and every added node is a limit of its child instances.
inline bool checkDense(const DensityWitness& w, const TreeOrForest& k) {
  std::set<std::string> image;
  for (const auto& [addr, path] : w.pointMap) {
    if (!image.insert(path).second) return false;
    if (!resolveNodePath(k, path)) return false;
  }
  for (const auto& path : w.addedNodes) {
    if (image.count(path)) return false;
    auto node = resolveNodePath(k, path);
    if (!node || !(*node)->rootIsLimit()) return false;
  }
  std::vector<std::pair<std::string, TreePtr>> nodes;
  if (const auto* t = std::get_if<TreePtr>(&k)) {
    materializeNodes(*t, "/", kWitnessCopies, kWitnessMembers, nodes);
  } else {
    const auto& f = std::get<Forest>(k);
    for (std::size_t j = 0; j < f.entries.size(); ++j)
      for (Natural r = 0; r < detail::truncatedCopies(Cardinal(f.entries[j].count)); ++r)
        materializeNodes(f.entries[j].tree, "/T" + std::to_string(j) + "#" + r.str(), kWitnessCopies, kWitnessMembers,
                         nodes);
  }
  for (const auto& [path, node] : nodes) {
    const bool mapped = image.count(path) > 0;
    if (node->isLeaf() && !mapped) return false;
    if (!mapped && !w.addedNodes.count(path)) return false;
  }
  return true;
}

}  // namespace scattered
