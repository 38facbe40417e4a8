#pragma once

// Finite presentations of scattered metrizable spaces: sums over discrete
// clopen covers and points with a clopen neighbourhood base.

#include "scattered/cardinal.hpp"
#include "scattered/ordinal.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace scattered {

class Presentation;
using PresentationPtr = std::shared_ptr<const Presentation>;

struct PresentationPart {
  enum class Kind { Concrete, Family };

  Kind kind = Kind::Concrete;
  PresentationPtr piece;
  PresentationPtr context;
  PresentationPtr base;
  Multiplicity mult = 1;

  static PresentationPart concrete(PresentationPtr p, Multiplicity m = 1) {
    PresentationPart out;
    out.piece = std::move(p);
    out.mult = checkedMultiplicity(m);
    return out;
  }
  static PresentationPart family(PresentationPtr ctx, PresentationPtr base, Multiplicity m = 1) {
    PresentationPart out;
    out.kind = Kind::Family;
    out.context = std::move(ctx);
    out.base = std::move(base);
    out.mult = checkedMultiplicity(m);
    return out;
  }
  bool isFamily() const { return kind == Kind::Family; }
};

struct PresentationFamilyProfile {
  Ordinal firstVan;
  Ordinal vanStep;
  Ordinal vanLimit;
};

/// empty | pt | sum(parts) | pwb([prefix ; tail]) | hole (contexts only).
/// pwb denotes {a} u Y0 u Y1 u ... where (Yn) is the prefix followed by the
/// tail repeated forever, Yn = Wn \ W(n+1) for a clopen base (Wn) at a.
class Presentation {
public:
  enum class Kind { Empty, Single, Sum, PointWithBase, Hole };

  static PresentationPtr empty();
  static PresentationPtr single();
  static PresentationPtr hole();
  static PresentationPtr sum(std::vector<PresentationPart> parts);
  static PresentationPtr pointWithBase(std::vector<PresentationPtr> prefix, std::vector<PresentationPtr> tail);

  Kind kind() const { return kind_; }
  const std::vector<PresentationPart>& parts() const { return parts_; }
  const std::vector<PresentationPtr>& prefix() const { return prefix_; }
  const std::vector<PresentationPtr>& tail() const { return tail_; }
  const std::optional<PresentationFamilyProfile>& familyProfile(std::size_t i) const { return profiles_[i]; }

  std::size_t holeCount() const { return holeCount_; }
  bool hasHole() const { return holeCount_ > 0; }
  int maxAleph() const { return maxAleph_; }

  /// Least g with X^(g) empty (a limit ordinal for some non-compact sums).
  const Ordinal& vanRank() const {
    if (!van_) throw DomainError("presentation contains a hole");
    return *van_;
  }
  /// Rank of the base point of a pwb node.
  const Ordinal& pointRank() const { return pointRank_; }

  const std::string& key() const { return key_; }

private:
  static PresentationPtr finish(std::shared_ptr<Presentation> p);

  Kind kind_ = Kind::Empty;
  std::vector<PresentationPart> parts_;
  std::vector<std::optional<PresentationFamilyProfile>> profiles_;
  std::vector<PresentationPtr> prefix_;
  std::vector<PresentationPtr> tail_;
  std::size_t holeCount_ = 0;
  int maxAleph_ = -1;
  std::optional<Ordinal> van_;
  Ordinal pointRank_;
  std::string key_;
};

PresentationPtr substitute(const PresentationPtr& ctx, const PresentationPtr& filler);
std::string printPresentationPart(const PresentationPart& p);

// ---------------------------------------------------------------------------

inline PresentationPtr Presentation::empty() {
  static const PresentationPtr kEmpty = [] {
    auto p = std::make_shared<Presentation>();
    p->kind_ = Kind::Empty;
    return finish(p);
  }();
  return kEmpty;
}

inline PresentationPtr Presentation::single() {
  static const PresentationPtr kSingle = [] {
    auto p = std::make_shared<Presentation>();
    p->kind_ = Kind::Single;
    return finish(p);
  }();
  return kSingle;
}

inline PresentationPtr Presentation::hole() {
  static const PresentationPtr kHole = [] {
    auto p = std::make_shared<Presentation>();
    p->kind_ = Kind::Hole;
    return finish(p);
  }();
  return kHole;
}

inline PresentationPtr Presentation::sum(std::vector<PresentationPart> parts) {
  auto p = std::make_shared<Presentation>();
  p->kind_ = Kind::Sum;
  p->parts_ = std::move(parts);
  return finish(p);
}

inline PresentationPtr Presentation::pointWithBase(std::vector<PresentationPtr> prefix,
                                                   std::vector<PresentationPtr> tail) {
  auto p = std::make_shared<Presentation>();
  p->kind_ = Kind::PointWithBase;
  p->prefix_ = std::move(prefix);
  p->tail_ = std::move(tail);
  return finish(p);
}

inline std::string printPresentationPart(const PresentationPart& p) {
  std::string m = p.mult.isFinite() ? p.mult.value().str()
                                    : (p.mult.alephLevel() == 0 ? std::string("w") : "a" + std::to_string(p.mult.alephLevel()));
  if (p.isFamily()) {
    std::string s = "fam(" + p.context->key() + "," + p.base->key() + ")";
    return p.mult == Multiplicity(1) ? s : s + "^" + m;
  }
  return p.piece->key() + "^" + m;
}

inline PresentationPtr substitute(const PresentationPtr& ctx, const PresentationPtr& filler) {
  if (ctx->kind() == Presentation::Kind::Hole) return filler;
  if (!ctx->hasHole()) return ctx;
  if (ctx->kind() == Presentation::Kind::Sum) {
    std::vector<PresentationPart> parts = ctx->parts();
    for (auto& part : parts) {
      if (part.isFamily())
        part.base = substitute(part.base, filler);
      else
        part.piece = substitute(part.piece, filler);
    }
    return Presentation::sum(std::move(parts));
  }
  std::vector<PresentationPtr> prefix = ctx->prefix();
  std::vector<PresentationPtr> tail = ctx->tail();
  for (auto& p : prefix) p = substitute(p, filler);
  for (auto& p : tail) p = substitute(p, filler);
  return Presentation::pointWithBase(std::move(prefix), std::move(tail));
}

inline PresentationPtr Presentation::finish(std::shared_ptr<Presentation> p) {
  switch (p->kind_) {
    case Kind::Empty:
      p->key_ = "empty";
      p->van_ = Ordinal{};
      break;
    case Kind::Single:
      p->key_ = "pt";
      p->van_ = Ordinal(1);
      break;
    case Kind::Hole:
      p->key_ = "_";
      p->holeCount_ = 1;
      break;
    case Kind::Sum: {
      p->key_ = "sum(";
      p->profiles_.resize(p->parts_.size());
      bool holeFree = true;
      Ordinal van;
      for (std::size_t i = 0; i < p->parts_.size(); ++i) {
        const auto& part = p->parts_[i];
        checkedMultiplicity(part.mult);
        if (part.mult.isInfinite()) p->maxAleph_ = std::max<int>(p->maxAleph_, static_cast<int>(part.mult.alephLevel()));
        if (part.isFamily()) {
          if (!part.context || !part.base) throw DomainError("family needs a context and a base");
          if (part.context->kind() == Kind::Hole || part.context->holeCount() != 1)
            throw DomainError("family context must contain exactly one hole below its top");
          p->holeCount_ += part.base->holeCount();
          p->maxAleph_ = std::max({p->maxAleph_, part.context->maxAleph(), part.base->maxAleph()});
          if (part.base->hasHole()) {
            holeFree = false;
          } else {
            std::vector<Ordinal> vans;
            PresentationPtr m = part.base;
            for (int k = 0; k < 4; ++k) {
              vans.push_back(m->vanRank());
              m = substitute(part.context, m);
            }
            if (vans[1] < vans[0]) throw DomainError("family heights decrease");
            Ordinal step = leftDifference(vans[0], vans[1]);
            for (int k = 1; k < 3; ++k)
              if (vans[k + 1] < vans[k] || !(leftDifference(vans[k], vans[k + 1]) == step))
                throw DomainError("family heights do not grow by a constant step");
            if (step.isZero()) throw DomainError("family heights must strictly increase");
            PresentationFamilyProfile prof{vans[0], step, vans[0] + mulByOmega(step)};
            if (van < prof.vanLimit) van = prof.vanLimit;
            p->profiles_[i] = prof;
          }
        } else {
          if (!part.piece) throw DomainError("sum part needs a piece");
          p->holeCount_ += part.piece->holeCount();
          p->maxAleph_ = std::max(p->maxAleph_, part.piece->maxAleph());
          if (part.piece->hasHole())
            holeFree = false;
          else if (van < part.piece->vanRank())
            van = part.piece->vanRank();
        }
        p->key_ += (i ? "," : "") + printPresentationPart(part);
      }
      p->key_ += ")";
      if (holeFree) p->van_ = van;
      break;
    }
    case Kind::PointWithBase: {
      p->key_ = "pwb([";
      bool holeFree = true;
      Ordinal van;
      auto visit = [&](const PresentationPtr& y) {
        p->holeCount_ += y->holeCount();
        p->maxAleph_ = std::max(p->maxAleph_, y->maxAleph());
        if (y->hasHole()) {
          holeFree = false;
          return;
        }
        if (van < y->vanRank()) van = y->vanRank();
      };
      for (std::size_t i = 0; i < p->prefix_.size(); ++i) {
        visit(p->prefix_[i]);
        p->key_ += (i ? "," : "") + p->prefix_[i]->key();
      }
      p->key_ += ";";
      for (std::size_t i = 0; i < p->tail_.size(); ++i) {
        visit(p->tail_[i]);
        p->key_ += (i ? "," : "") + p->tail_[i]->key();
      }
      p->key_ += "])";
      if (holeFree) {
        // The base point is a limit of X^(g) points iff some tail piece
        // meets X^(g), since tail pieces recur cofinally.
        Ordinal rank;
        for (const auto& y : p->tail_)
          if (rank < y->vanRank()) rank = y->vanRank();
        p->pointRank_ = rank;
        if (van < rank + Ordinal(1)) van = rank + Ordinal(1);
        p->van_ = van;
      }
      break;
    }
  }
  return p;
}

/// |X^(level)| of the presented space.
inline Cardinal levelSize(const PresentationPtr& p, const Ordinal& level) {
  if (!(level < p->vanRank())) return Cardinal{};
  switch (p->kind()) {
    case Presentation::Kind::Empty:
    case Presentation::Kind::Hole:
      return Cardinal{};
    case Presentation::Kind::Single:
      return Cardinal(1);
    case Presentation::Kind::Sum: {
      Cardinal total;
      for (std::size_t i = 0; i < p->parts().size(); ++i) {
        const auto& part = p->parts()[i];
        if (part.isFamily()) {
          if (level < p->familyProfile(i)->vanLimit)
            total = total + Cardinal::aleph(static_cast<unsigned>(std::max(0, p->maxAleph()))) * part.mult;
        } else {
          total = total + part.mult * levelSize(part.piece, level);
        }
      }
      return total;
    }
    case Presentation::Kind::PointWithBase: {
      Cardinal total = (level <= p->pointRank()) ? Cardinal(1) : Cardinal{};
      for (const auto& y : p->prefix()) total = total + levelSize(y, level);
      for (const auto& y : p->tail()) total = total + kAleph0 * levelSize(y, level);
      return total;
    }
  }
  return Cardinal{};
}

/// Scattered height of the presented space.
inline Ordinal schPresentation(const PresentationPtr& p) {
  const Ordinal& v = p->vanRank();
  if (v.isZero() || v.isLimit()) return v;
  Ordinal top = predecessor(v);
  return levelSize(p, top) <= Cardinal(1) ? top : v;
}

}  // namespace scattered
