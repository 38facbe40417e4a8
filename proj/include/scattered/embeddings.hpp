#pragma once

// Explicit embeddings: tree compacta into a sigma-product of lines and
// into l2 (block Hilbert scheme), the hedgehog map onto the unit sphere,
// and a symbolic engine for weak limits of bounded sequences whose
// moving part lives on fresh coordinates.

#include "scattered/generate.hpp"
#include "scattered/nodepath.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace scattered {

using Rational = boost::multiprecision::cpp_rational;

/// Finitely supported vector; absent coordinates are zero.
template <class Key, class Scalar>
class FiniteSupportVector {
public:
  void set(const Key& k, const Scalar& v) {
    if (v == Scalar(0))
      entries_.erase(k);
    else
      entries_[k] = v;
  }
  void add(const Key& k, const Scalar& v) { set(k, get(k) + v); }
  Scalar get(const Key& k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? Scalar(0) : it->second;
  }
  const std::map<Key, Scalar>& entries() const { return entries_; }
  std::size_t supportSize() const { return entries_.size(); }
  bool isZero() const { return entries_.empty(); }

  Scalar normSquared() const {
    Scalar s(0);
    for (const auto& [k, v] : entries_) s += v * v;
    return s;
  }

  friend bool operator==(const FiniteSupportVector&, const FiniteSupportVector&) = default;

private:
  std::map<Key, Scalar> entries_;
};

template <class Key, class Scalar>
Scalar distanceSquared(const FiniteSupportVector<Key, Scalar>& a, const FiniteSupportVector<Key, Scalar>& b) {
  Scalar s(0);
  auto i = a.entries().begin();
  auto j = b.entries().begin();
  while (i != a.entries().end() || j != b.entries().end()) {
    Scalar d(0);
    if (j == b.entries().end() || (i != a.entries().end() && i->first < j->first)) {
      d = i->second;
      ++i;
    } else if (i == a.entries().end() || j->first < i->first) {
      d = j->second;
      ++j;
    } else {
      d = i->second - j->second;
      ++i;
      ++j;
    }
    s += d * d;
  }
  return s;
}

using PathVector = FiniteSupportVector<std::string, Rational>;
using AxisVector = FiniteSupportVector<long long, double>;

inline double toDouble(const Rational& r) { return r.convert_to<double>(); }

// --- tree embeddings ---------------------------------------------------------

/// Ancestors of a node (itself included), outermost first. Forest paths
/// have no common root.
inline std::vector<std::string> ancestorPaths(const std::string& path) {
  if (path.empty() || path[0] != '/') throw DomainError("node path must start with '/'");
  std::vector<std::string> out;
  if (path == "/") return {"/"};
  if (path.size() < 2 || path[1] != 'T') out.push_back("/");
  for (std::size_t at = 1; at <= path.size(); ++at)
    if (at == path.size() || path[at] == '/') out.push_back(path.substr(0, at));
  return out;
}

inline std::size_t pathDepth(const std::string& path) {
  if (path == "/") return 0;
  std::size_t d = 0;
  for (char ch : path) d += ch == '/';
  return d;
}

/// 0/1 indicator of the ancestor set: a point of the sigma-product.
inline PathVector sigmaEmbed(const std::string& path) {
  PathVector v;
  for (const auto& a : ancestorPaths(path)) v.set(a, 1);
  return v;
}

/// Weight w^depth on every ancestor below the root; the root goes to 0.
inline PathVector hilbertEmbed(const std::string& path, const Rational& weight = Rational(1, 2)) {
  if (weight <= 0 || weight >= 1) throw DomainError("hilbertEmbed: weight must lie in (0,1)");
  PathVector v;
  for (const auto& a : ancestorPaths(path)) {
    if (a == "/") continue;
    Rational c = 1;
    for (std::size_t d = 0; d < pathDepth(a); ++d) c *= weight;
    v.set(a, c);
  }
  return v;
}

/// Norm bound of the Hilbert scheme: w / sqrt(1 - w^2).
inline double hilbertNormBound(const Rational& weight) {
  const double w = toDouble(weight);
  return w / std::sqrt(1 - w * w);
}

struct MaterializeOptions {
  unsigned copies = 2;
  std::size_t members = 3;
  std::size_t maxNodes = 1500;  // depth-first prefix of the truncation
};

inline std::vector<std::pair<std::string, TreePtr>> materializeAll(const TreeOrForest& x, const MaterializeOptions& opt) {
  std::vector<std::pair<std::string, TreePtr>> nodes;
  if (const auto* t = std::get_if<TreePtr>(&x)) {
    materializeNodes(*t, "/", opt.copies, opt.members, nodes, opt.maxNodes);
    return nodes;
  }
  const auto& f = std::get<Forest>(x);
  for (std::size_t j = 0; j < f.entries.size(); ++j) {
    const Natural n = std::min<Natural>(f.entries[j].count, opt.copies);
    for (Natural r = 0; r < n; ++r)
      materializeNodes(f.entries[j].tree, "/T" + std::to_string(j) + "#" + r.str(), opt.copies, opt.members, nodes, opt.maxNodes);
  }
  return nodes;
}

inline std::map<std::string, PathVector> sigmaEmbed(const TreeOrForest& x, const MaterializeOptions& opt = {}) {
  std::map<std::string, PathVector> out;
  for (const auto& [path, node] : materializeAll(x, opt)) out.emplace(path, sigmaEmbed(path));
  return out;
}

inline std::map<std::string, PathVector> hilbertEmbed(const TreeOrForest& x, const Rational& weight,
                                                      const MaterializeOptions& opt = {}) {
  std::map<std::string, PathVector> out;
  for (const auto& [path, node] : materializeAll(x, opt)) out.emplace(path, hilbertEmbed(path, weight));
  return out;
}

/// Points from pairwise distinct child instances of the node at `target`,
/// each a random descendant inside its instance.
inline std::vector<std::string> sampleInstanceSequence(const TreeOrForest& x, const std::string& target,
                                                       std::size_t length, Rng& rng) {
  auto node = resolveNodePath(x, target);
  if (!node) throw DomainError("sampleInstanceSequence: unknown node " + target);
  std::vector<std::size_t> infinite;
  for (std::size_t i = 0; i < (*node)->children().size(); ++i) {
    const ChildSpec& c = (*node)->children()[i];
    if (c.isFamily() || c.mult.isInfinite()) infinite.push_back(i);
  }
  if (infinite.empty()) throw DomainError("sampleInstanceSequence: node has finitely many child instances");
  const std::string base = target == "/" ? "/" : target + "/";
  std::map<std::size_t, std::size_t> used;
  std::vector<std::string> out;
  for (std::size_t n = 0; n < length; ++n) {
    const std::size_t i = infinite[pick(rng, infinite.size())];
    const ChildSpec& c = (*node)->children()[i];
    const std::size_t fresh = used[i]++;
    std::string path;
    TreePtr cur;
    if (c.isFamily()) {
      path = base + "c" + std::to_string(i) + "." + std::to_string(fresh) + "#0";
      cur = familyMember(c.context, c.base, fresh);
    } else {
      path = base + "c" + std::to_string(i) + "#" + std::to_string(fresh);
      cur = c.subtree;
    }
    for (int depth = 0; depth < 8 && !cur->isLeaf() && coin(rng, 50); ++depth) {
      const std::size_t j = pick(rng, cur->children().size());
      const ChildSpec& d = cur->children()[j];
      const std::uint64_t copies = d.mult.isFinite() ? std::min<std::uint64_t>(d.mult.value().convert_to<std::uint64_t>(), 4) : 4;
      const std::uint64_t x = pick(rng, copies);
      if (d.isFamily()) {
        const std::size_t k = pick(rng, 3);
        path += "/c" + std::to_string(j) + "." + std::to_string(k) + "#" + std::to_string(x);
        cur = familyMember(d.context, d.base, k);
      } else {
        path += "/c" + std::to_string(j) + "#" + std::to_string(x);
        cur = d.subtree;
      }
    }
    out.push_back(std::move(path));
  }
  return out;
}

/// Eventual agreement with `target` on every coordinate seen in the first
/// half of the sequence or in the target.
template <class Key, class Scalar>
bool convergesCoordinatewise(const std::vector<FiniteSupportVector<Key, Scalar>>& images,
                             const FiniteSupportVector<Key, Scalar>& target) {
  std::vector<Key> probes;
  for (const auto& [k, v] : target.entries()) probes.push_back(k);
  const std::size_t half = images.size() / 2;
  for (std::size_t n = 0; n < half; ++n)
    for (const auto& [k, v] : images[n].entries()) probes.push_back(k);
  for (std::size_t n = half; n < images.size(); ++n)
    for (const auto& k : probes)
      if (!(images[n].get(k) == target.get(k))) return false;
  return true;
}

// --- hedgehog ------------------------------------------------------------------

/// Fixed-width binary code of a spine index (most significant bit first).
inline std::string spineBits(std::size_t alpha, std::size_t kappa) {
  std::size_t width = 1;
  while ((std::size_t{1} << width) < kappa) ++width;
  std::string s(width, '0');
  for (std::size_t i = 0; i < width; ++i)
    if (alpha >> (width - 1 - i) & 1U) s[i] = '1';
  return s;
}

/// pi/6 + (pi/6) * sum 2 s_i 3^-i: a point of the middle-thirds Cantor set
/// scaled into [pi/6, pi/3].
inline double cantorPhi(std::string_view bits) {
  double x = 0;
  double scale = 1.0 / 3;
  for (char b : bits) {
    if (b != '0' && b != '1') throw DomainError("cantorPhi: bits must be 0 or 1");
    if (b == '1') x += 2 * scale;
    scale /= 3;
  }
  return std::numbers::pi / 6 + std::numbers::pi / 6 * x;
}

struct HedgehogPoint {
  double t = 0;
  std::size_t spine = 0;
};

/// Coordinates 0..kappa-1 are spines; kappa and kappa+1 are the two extra axes.
inline AxisVector hedgehogEmbed(const HedgehogPoint& p, std::size_t kappa) {
  if (kappa == 0) throw DomainError("hedgehog: kappa must be positive");
  if (!(p.t >= 0 && p.t <= 1)) throw DomainError("hedgehog: t must lie in [0,1]");
  if (p.spine >= kappa) throw DomainError("hedgehog: spine out of range");
  const auto k = static_cast<long long>(kappa);
  AxisVector v;
  v.set(k + 1, std::cos(p.t));
  if (p.t == 0) return v;
  const double phi = cantorPhi(spineBits(p.spine, kappa));
  v.set(k, std::sin(p.t) * std::cos(phi));
  v.set(static_cast<long long>(p.spine), std::sin(p.t) * std::sin(phi));
  return v;
}

/// The same map with cos and sin given through rational half-angle
/// tangents u = tan(t/2), v = tan(phi/2); the norm is then exactly 1.
inline FiniteSupportVector<long long, Rational> hedgehogEmbedRational(const Rational& u, const Rational& v,
                                                                       std::size_t spine, std::size_t kappa) {
  if (spine >= kappa) throw DomainError("hedgehog: spine out of range");
  const Rational cosT = (1 - u * u) / (1 + u * u);
  const Rational sinT = 2 * u / (1 + u * u);
  const Rational cosP = (1 - v * v) / (1 + v * v);
  const Rational sinP = 2 * v / (1 + v * v);
  const auto k = static_cast<long long>(kappa);
  FiniteSupportVector<long long, Rational> out;
  out.set(k + 1, cosT);
  out.set(k, sinT * cosP);
  out.set(static_cast<long long>(spine), sinT * sinP);
  return out;
}

inline std::vector<HedgehogPoint> sampleHedgehog(std::size_t kappa, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<HedgehogPoint> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
    out.push_back({1.0 - u, static_cast<std::size_t>(pick(rng, kappa))});
  }
  return out;
}

/// CSV point cloud: t, spine, phi and the three nonzero coordinates.
inline void writeHedgehogCsv(std::ostream& os, const std::vector<HedgehogPoint>& points, std::size_t kappa) {
  os << "t,spine,phi,x_spine,x_kappa,x_kappa1\n";
  os.precision(17);
  const auto k = static_cast<long long>(kappa);
  for (const auto& p : points) {
    const AxisVector v = hedgehogEmbed(p, kappa);
    os << p.t << ',' << p.spine << ',' << cantorPhi(spineBits(p.spine, kappa)) << ','
       << v.get(static_cast<long long>(p.spine)) << ',' << v.get(k) << ',' << v.get(k + 1) << '\n';
  }
}

// --- symbolic sequences and weak limits ---------------------------------------

enum class CoefficientKind { Constant, Convergent, Divergent };

/// A real sequence described by its kind, its limit when it has one, and
/// its terms.
struct CoefficientSequence {
  CoefficientKind kind = CoefficientKind::Constant;
  double limit = 0;
  std::function<double(std::size_t)> term;

  static CoefficientSequence constant(double v) { return {CoefficientKind::Constant, v, {}}; }
  static CoefficientSequence convergent(double lim, std::function<double(std::size_t)> f) {
    return {CoefficientKind::Convergent, lim, std::move(f)};
  }
  static CoefficientSequence divergent(std::function<double(std::size_t)> f) {
    return {CoefficientKind::Divergent, 0, std::move(f)};
  }
  double at(std::size_t n) const { return kind == CoefficientKind::Constant ? limit : term(n); }
};

struct FixedTerm {
  long long coordinate = 0;
  CoefficientSequence coefficient;
};

/// Coefficient on coordinate firstCoordinate + stride * n at index n.
struct DriftTerm {
  CoefficientSequence coefficient;
  long long firstCoordinate = 0;
  long long stride = 1;
};

struct SymbolicSequence {
  std::vector<FixedTerm> fixed;
  std::vector<DriftTerm> drift;
  double normBound = 1;

  AxisVector at(std::size_t n) const {
    AxisVector v;
    for (const auto& f : fixed) v.add(f.coordinate, f.coefficient.at(n));
    for (const auto& d : drift) v.add(d.firstCoordinate + d.stride * static_cast<long long>(n), d.coefficient.at(n));
    return v;
  }
};

struct WeakLimitResult {
  enum class Status { Limit, Divergent, IllFormed };
  Status status = Status::Limit;
  AxisVector limit;
  std::string reason;
};

/// Coordinatewise limit of a bounded sequence: drift terms leave every
/// fixed coordinate after finitely many indices and so contribute nothing.
inline WeakLimitResult weakLimit(const SymbolicSequence& s) {
  WeakLimitResult r;
  if (!std::isfinite(s.normBound) || s.normBound < 0) {
    r.status = WeakLimitResult::Status::IllFormed;
    r.reason = "norm bound must be finite";
    return r;
  }
  for (const auto& d : s.drift) {
    if (d.stride == 0) {
      r.status = WeakLimitResult::Status::IllFormed;
      r.reason = "drift schedule must visit a fresh coordinate at each index";
      return r;
    }
  }
  for (const auto& f : s.fixed) {
    if (f.coefficient.kind == CoefficientKind::Divergent) {
      r.status = WeakLimitResult::Status::Divergent;
      r.reason = "coordinate " + std::to_string(f.coordinate) + " does not converge";
      r.limit = AxisVector{};
      return r;
    }
    r.limit.add(f.coordinate, f.coefficient.limit);
  }
  return r;
}

/// Numeric reference: evaluates the first n members and reads off the
/// late values of every coordinate touched in the first half.
inline WeakLimitResult bruteForceLimit(const SymbolicSequence& s, std::size_t n, double tol) {
  WeakLimitResult r;
  std::vector<AxisVector> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(s.at(i));
  std::vector<long long> probes;
  for (std::size_t i = 0; i < n / 2; ++i)
    for (const auto& [k, v] : xs[i].entries()) probes.push_back(k);
  for (long long k : probes) {
    const double last = xs[n - 1].get(k);
    if (std::abs(last - xs[n - 2].get(k)) > tol) {
      r.status = WeakLimitResult::Status::Divergent;
      r.limit = AxisVector{};
      return r;
    }
    r.limit.set(k, last);
  }
  return r;
}

enum class ClosureClass { Image, AddedPart, Fail, Rejected, Divergent };

inline const char* closureClassName(ClosureClass c) {
  switch (c) {
    case ClosureClass::Image:
      return "image";
    case ClosureClass::AddedPart:
      return "added-part";
    case ClosureClass::Fail:
      return "fail";
    case ClosureClass::Rejected:
      return "rejected";
    case ClosureClass::Divergent:
      return "divergent";
  }
  return "fail";
}

namespace detail {

/// Membership of x in the middle-thirds Cantor set, up to `tol`.
inline bool inCantorSet(double x, double tol) {
  if (x < -tol || x > 1 + tol) return false;
  for (int i = 0; i < 20; ++i) {
    x *= 3;
    tol *= 3;
    if (x <= 1 + tol) {
      x = std::clamp(x, 0.0, 1.0);
    } else if (x >= 2 - tol) {
      x = std::clamp(x - 2, 0.0, 1.0);
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Decides whether v lies in f(H) or in the added set
/// {cos t e_(kappa+1) + sin t cos(phi) e_kappa : t in [0,1], phi Cantor}.
inline ClosureClass classifyHedgehogLimit(const AxisVector& v, std::size_t kappa, double tol = 1e-9) {
  const auto k = static_cast<long long>(kappa);
  std::vector<long long> spines;
  for (const auto& [coord, x] : v.entries()) {
    if (coord == k || coord == k + 1 || std::abs(x) <= tol) continue;
    if (coord < 0 || coord >= k) return ClosureClass::Fail;
    spines.push_back(coord);
  }
  const double c = v.get(k + 1);
  if (c > 1 + tol || c < std::cos(1.0) - tol) return ClosureClass::Fail;
  const double t = std::acos(std::clamp(c, -1.0, 1.0));
  const double s = std::sin(t);
  if (s <= tol) return spines.empty() && std::abs(v.get(k)) <= tol ? ClosureClass::Image : ClosureClass::Fail;
  const double cosPhi = v.get(k) / s;
  if (spines.size() > 1) return ClosureClass::Fail;
  if (spines.size() == 1) {
    const double sinPhi = v.get(spines[0]) / s;
    if (std::abs(cosPhi * cosPhi + sinPhi * sinPhi - 1) > 1e-6) return ClosureClass::Fail;
    const double phi = std::atan2(sinPhi, cosPhi);
    return std::abs(phi - cantorPhi(spineBits(static_cast<std::size_t>(spines[0]), kappa))) <= 1e-6
               ? ClosureClass::Image
               : ClosureClass::Fail;
  }
  if (cosPhi > 1 + tol || cosPhi < -1 - tol) return ClosureClass::Fail;
  const double phi = std::acos(std::clamp(cosPhi, -1.0, 1.0));
  const double x = (phi - std::numbers::pi / 6) / (std::numbers::pi / 6);
  return detail::inCantorSet(x, 1e-9) ? ClosureClass::AddedPart : ClosureClass::Fail;
}

struct ClosureTrial {
  std::string kind;
  ClosureClass verdict = ClosureClass::Fail;
  AxisVector limit;
};

struct ClosureReport {
  std::vector<ClosureTrial> trials;
  std::size_t count(ClosureClass c) const {
    std::size_t n = 0;
    for (const auto& t : trials) n += t.verdict == c;
    return n;
  }
};

/// Images of a hedgehog sequence: t_n -> t and either a fixed spine or
/// fresh spines (coordinates from kappa+2 on) whose codes converge to
/// `bits` in Cantor space.
inline SymbolicSequence hedgehogSequence(std::size_t kappa, double t, std::optional<std::size_t> spine,
                                         const std::string& bits) {
  const auto k = static_cast<long long>(kappa);
  auto tn = [t](std::size_t n) { return t + (1 - t) / static_cast<double>(n + 2); };
  SymbolicSequence s;
  s.normBound = 1;
  s.fixed.push_back({k + 1, CoefficientSequence::convergent(std::cos(t), [tn](std::size_t n) { return std::cos(tn(n)); })});
  if (spine) {
    const double phi = cantorPhi(spineBits(*spine, kappa));
    s.fixed.push_back({k, CoefficientSequence::convergent(std::sin(t) * std::cos(phi),
                                                           [tn, phi](std::size_t n) { return std::sin(tn(n)) * std::cos(phi); })});
    s.fixed.push_back({static_cast<long long>(*spine),
                       CoefficientSequence::convergent(std::sin(t) * std::sin(phi),
                                                       [tn, phi](std::size_t n) { return std::sin(tn(n)) * std::sin(phi); })});
    return s;
  }
  // Spine n has code bits + 0^n + 1, so phi_n -> cantorPhi(bits).
  const double phi = cantorPhi(bits);
  const double step = std::numbers::pi / 6 * 2;
  auto phin = [phi, step, len = bits.size()](std::size_t n) {
    return phi + step * std::pow(3.0, -static_cast<double>(len + n + 1));
  };
  s.fixed.push_back({k, CoefficientSequence::convergent(std::sin(t) * std::cos(phi), [tn, phin](std::size_t n) {
                       return std::sin(tn(n)) * std::cos(phin(n));
                     })});
  s.drift.push_back({CoefficientSequence::convergent(std::sin(t) * std::sin(phi),
                                                     [tn, phin](std::size_t n) { return std::sin(tn(n)) * std::sin(phin(n)); }),
                     k + 2, 1});
  return s;
}

/// Samples hedgehog sequences of several shapes and classifies each weak
/// limit against the two-part closure description.
inline ClosureReport closureCheckHedgehog(std::size_t kappa, std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  ClosureReport report;
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (std::size_t i = 0; i < trials; ++i) {
    ClosureTrial trial;
    SymbolicSequence s;
    const auto shape = pick(rng, 10);
    const double t = pick(rng, 8) == 0 ? 0.0 : unit();
    if (shape < 4) {
      trial.kind = "fixed-spine";
      s = hedgehogSequence(kappa, t, static_cast<std::size_t>(pick(rng, kappa)), "");
    } else if (shape < 8) {
      trial.kind = "drifting-spines";
      std::string bits;
      const auto len = pick(rng, 12);
      for (std::uint64_t b = 0; b < len; ++b) bits += pick(rng, 2) ? '1' : '0';
      s = hedgehogSequence(kappa, t, std::nullopt, bits);
    } else if (shape < 9) {
      trial.kind = "eventually-fixed";
      // Finitely many fresh spines first; the limit is that of the fixed tail.
      const std::size_t spine = static_cast<std::size_t>(pick(rng, kappa));
      s = hedgehogSequence(kappa, t, spine, "");
      s.drift.push_back({CoefficientSequence::convergent(0.0, [](std::size_t n) { return n < 5 ? 0.5 : 0.0; }),
                         static_cast<long long>(kappa) + 2, 1});
    } else {
      trial.kind = "unbounded";
      s = hedgehogSequence(kappa, t, std::nullopt, "1");
      s.normBound = std::numeric_limits<double>::infinity();
    }
    const WeakLimitResult r = weakLimit(s);
    if (r.status == WeakLimitResult::Status::IllFormed)
      trial.verdict = ClosureClass::Rejected;
    else if (r.status == WeakLimitResult::Status::Divergent)
      trial.verdict = ClosureClass::Divergent;
    else
      trial.verdict = classifyHedgehogLimit(r.limit, kappa);
    trial.limit = r.limit;
    report.trials.push_back(std::move(trial));
  }
  return report;
}

}  // namespace scattered
