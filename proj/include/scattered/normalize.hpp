#pragma once

// Complexity-minimising rewriting of tree terms: the result encodes the same
// space and its representation complexity equals the scattered height.

#include "scattered/space.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace scattered {

namespace detail {

/// R1: merges equal child specs (cardinal addition) and sorts canonically.
inline std::vector<ChildSpec> mergeChildren(const std::vector<ChildSpec>& kids) {
  std::map<std::string, ChildSpec> merged;
  for (const auto& c : kids) {
    ChildSpec unit = c;
    unit.mult = 1;
    std::string k = printChildSpec(unit);
    auto [it, fresh] = merged.emplace(k, c);
    if (!fresh) it->second.mult = it->second.mult + c.mult;
  }
  std::vector<std::pair<std::string, ChildSpec>> ordered;
  for (auto& [k, c] : merged) ordered.emplace_back(printChildSpec(c), c);
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ChildSpec> out;
  for (auto& [k, c] : ordered) out.push_back(std::move(c));
  return out;
}

using Pieces = std::vector<std::pair<TreePtr, Natural>>;

/// Cuts out every finite-multiplicity child instance whose subtree meets
/// X^(level). Returns the remaining tree and the cut pieces; each piece
/// is rooted at a point of rank >= level.
inline std::pair<TreePtr, Pieces> extractAbove(const TreePtr& t, const Ordinal& level) {
  std::vector<ChildSpec> kids;
  Pieces pieces;
  for (const auto& c : t->children()) {
    if (c.isFamily() || c.mult.isInfinite() || !(level < c.subtree->vanRank())) {
      kids.push_back(c);
      continue;
    }
    auto [rem, sub] = extractAbove(c.subtree, level);
    const Natural m = c.mult.value();
    if (level <= c.subtree->rootRank())
      pieces.emplace_back(rem, m);
    else
      kids.push_back(ChildSpec::concrete(rem, Cardinal(m)));
    for (auto& [p, k] : sub) pieces.emplace_back(p, k * m);
  }
  return {Tree::node(std::move(kids)), std::move(pieces)};
}

/// Splits a forest into pieces each carrying exactly one point of
/// X^(level) at its root, plus residue trees avoiding X^(level).
inline std::pair<Pieces, Pieces> splitAtLevel(const Forest& f, const Ordinal& level) {
  Pieces tops;
  Pieces residue;
  for (const auto& e : f.entries) {
    auto [rem, sub] = extractAbove(e.tree, level);
    if (level < e.tree->vanRank() && level <= e.tree->rootRank())
      tops.emplace_back(rem, e.count);
    else
      residue.emplace_back(rem, e.count);
    for (auto& [p, k] : sub) tops.emplace_back(p, k * e.count);
  }
  return {std::move(tops), std::move(residue)};
}

}  // namespace detail

TreePtr normalize(const TreePtr& t);

namespace detail {

inline TreePtr normalizeContext(const TreePtr& ctx) {
  if (!ctx->hasHole()) return normalize(ctx);
  if (ctx->isHole()) return ctx;
  std::vector<ChildSpec> kids;
  for (const auto& c : ctx->children()) {
    if (c.isFamily())
      kids.push_back(ChildSpec::family(normalizeContext(c.context), normalizeContext(c.base), c.mult));
    else
      kids.push_back(ChildSpec::concrete(normalizeContext(c.subtree), c.mult));
  }
  return Tree::node(mergeChildren(kids));
}

inline ChildSpec normalizeChild(const ChildSpec& c) {
  if (c.isFamily()) return ChildSpec::family(normalizeContext(c.context), normalize(c.base), c.mult);
  return ChildSpec::concrete(normalize(c.subtree), c.mult);
}

/// Re-roots a nonempty space at a point of its top nonempty level and
/// splits children so that each has height below the whole.
inline TreePtr restructure(const Forest& f) {
  const Ordinal top = predecessor(vanRank(f));
  auto [tops, residue] = splitAtLevel(f, top);
  Natural topCount = 0;
  for (const auto& [p, k] : tops) topCount += k;

  std::vector<ChildSpec> kids;
  if (topCount == 1) {
    const TreePtr& root = tops.front().first;
    kids = root->children();
    for (const auto& [r, k] : residue) kids.push_back(ChildSpec::concrete(r, Cardinal(k)));
    if (top.isSuccessor()) {
      // Children may not keep two points of the level just below the top.
      const Ordinal below = predecessor(top);
      std::vector<ChildSpec> split;
      for (const auto& c : kids) {
        if (c.isFamily() || !(below < c.subtree->vanRank()) || levelSize(c.subtree, below) <= Cardinal(1)) {
          split.push_back(c);
          continue;
        }
        auto [subTops, subResidue] = splitAtLevel(asForest(c.subtree), below);
        for (const auto& [p, k] : subTops) split.push_back(ChildSpec::concrete(p, c.mult * Cardinal(k)));
        for (const auto& [p, k] : subResidue) split.push_back(ChildSpec::concrete(p, c.mult * Cardinal(k)));
      }
      kids = std::move(split);
    }
    for (auto& c : kids) c = normalizeChild(c);
    return Tree::node(mergeChildren(kids));
  }

  // Several top points: one becomes the root, the others hang below it.
  std::vector<std::pair<TreePtr, Natural>> normalized;
  for (const auto& [p, k] : tops) normalized.emplace_back(normalize(p), k);
  std::size_t best = 0;
  for (std::size_t i = 1; i < normalized.size(); ++i)
    if (normalized[i].first->key() < normalized[best].first->key()) best = i;
  const TreePtr root = normalized[best].first;
  kids = root->children();
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    Natural k = normalized[i].second - (i == best ? 1 : 0);
    if (k > 0) kids.push_back(ChildSpec::concrete(normalized[i].first, Cardinal(k)));
  }
  for (const auto& [r, k] : residue) kids.push_back(ChildSpec::concrete(normalize(r), Cardinal(k)));
  return Tree::node(mergeChildren(kids));
}

}  // namespace detail

/// Normal form: children normalised and merged (R3, R1); when the
/// representation still overshoots the scattered height, the term is
/// re-rooted at a top-level point and overweight children are split.
inline TreePtr normalize(const TreePtr& t) {
  if (t->hasHole()) throw DomainError("normalize: term contains a hole");
  if (t->isLeaf()) return t;
  std::vector<ChildSpec> kids;
  for (const auto& c : t->children()) kids.push_back(detail::normalizeChild(c));
  TreePtr merged = Tree::node(detail::mergeChildren(kids));
  if (merged->repComplexity() == schHeight(merged)) return merged;
  return detail::restructure(asForest(merged));
}

inline Forest normalize(const Forest& f) {
  if (f.empty()) return f;
  if (f.instanceCount() == 1) return Forest::single(normalize(f.entries.front().tree));
  return Forest::single(detail::restructure(f));
}

inline TreeOrForest normalize(const TreeOrForest& x) {
  return std::visit([](const auto& v) -> TreeOrForest { return normalize(v); }, x);
}

}  // namespace scattered
