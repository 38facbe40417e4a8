#pragma once

// Node paths name single points of a tree compactum: "/" is the root,
// "/c2#5" is copy 5 of child spec 2, "/c0.3#1" is copy 1 of member 3 of
// the family at child spec 0, and forests start with "/T<entry>#<copy>".

#include "scattered/space.hpp"
#include "scattered/tree.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scattered {

/// Resolves a node path against a tree or forest; nullopt if it names no node.
inline std::optional<TreePtr> resolveNodePath(const TreeOrForest& k, const std::string& path) {
  if (path.empty() || path[0] != '/') return std::nullopt;
  std::vector<std::string> segs;
  for (std::size_t at = 1; at < path.size();) {
    std::size_t next = path.find('/', at);
    if (next == std::string::npos) next = path.size();
    segs.push_back(path.substr(at, next - at));
    at = next + 1;
  }
  TreePtr cur;
  std::size_t i = 0;
  auto parseCopy = [](const std::string& s, std::size_t from) -> std::optional<std::pair<std::string, Natural>> {
    const auto hash = s.find('#');
    if (hash == std::string::npos || hash + 1 >= s.size()) return std::nullopt;
    for (std::size_t q = hash + 1; q < s.size(); ++q)
      if (!std::isdigit(static_cast<unsigned char>(s[q]))) return std::nullopt;
    return std::make_pair(s.substr(from, hash - from), Natural(s.substr(hash + 1)));
  };
  if (const auto* f = std::get_if<Forest>(&k)) {
    if (segs.empty() || segs[0].empty() || segs[0][0] != 'T') return std::nullopt;
    auto pc = parseCopy(segs[0], 1);
    if (!pc) return std::nullopt;
    const std::size_t j = std::stoul(pc->first);
    if (j >= f->entries.size() || pc->second >= f->entries[j].count) return std::nullopt;
    cur = f->entries[j].tree;
    i = 1;
  } else {
    cur = std::get<TreePtr>(k);
  }
  for (; i < segs.size(); ++i) {
    const std::string& s = segs[i];
    if (s.empty() || s[0] != 'c') return std::nullopt;
    auto pc = parseCopy(s, 1);
    if (!pc) return std::nullopt;
    const std::string& head = pc->first;
    const auto dot = head.find('.');
    const std::size_t ci = std::stoul(head.substr(0, dot));
    if (ci >= cur->children().size()) return std::nullopt;
    const ChildSpec& c = cur->children()[ci];
    if (c.mult.isFinite() && pc->second >= c.mult.value()) return std::nullopt;
    if (c.isFamily()) {
      if (dot == std::string::npos) return std::nullopt;
      cur = familyMember(c.context, c.base, std::stoul(head.substr(dot + 1)));
    } else {
      if (dot != std::string::npos) return std::nullopt;
      cur = c.subtree;
    }
  }
  return cur;
}

/// Node paths of a truncated materialisation below `path`: the first
/// `copies` copies of every child spec and members 0..members-1 of every
/// family.
inline void materializeNodes(const TreePtr& t, const std::string& path, unsigned copies, std::size_t members,
                             std::vector<std::pair<std::string, TreePtr>>& out,
                             std::size_t limit = std::numeric_limits<std::size_t>::max()) {
  if (out.size() >= limit) return;
  out.emplace_back(path, t);
  const std::string base = path == "/" ? "/" : path + "/";
  for (std::size_t i = 0; i < t->children().size(); ++i) {
    const ChildSpec& c = t->children()[i];
    const Natural n = c.mult.isFinite() ? std::min<Natural>(c.mult.value(), copies) : Natural(copies);
    if (c.isFamily()) {
      for (std::size_t k = 0; k < members; ++k) {
        TreePtr m = familyMember(c.context, c.base, k);
        for (Natural x = 0; x < n; ++x)
          materializeNodes(m, base + "c" + std::to_string(i) + "." + std::to_string(k) + "#" + x.str(), copies, members, out, limit);
      }
    } else {
      for (Natural x = 0; x < n; ++x)
        materializeNodes(c.subtree, base + "c" + std::to_string(i) + "#" + x.str(), copies, members, out, limit);
    }
  }
}

}  // namespace scattered
