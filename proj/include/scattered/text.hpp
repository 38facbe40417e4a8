#pragma once

// Expression language: ordinals, tree terms, forests and presentations.
//
//   ord    := term ('+' term)*
//   term   := 'w' ('^' atom)? ('*' nat)? | nat
//   atom   := nat | 'w' | '(' ord ')'
//   tree   := '1' | '_' | 'A(' spec (',' spec)* ')'
//   spec   := tree '^' mult | 'fam(' tree ',' tree ')' ('^' mult)?
//   mult   := nat | 'w' | 'a' nat
//   forest := 'F[' ('(' tree ',' nat ')' (',' ...)*)? ']'
//   pres   := 'empty' | 'pt' | '_' | 'sum(' (pspec (',' pspec)*)? ')'
//           | 'pwb([' (pres (',' pres)*)? ';' (pres (',' pres)*)? '])'
//   pspec  := pres '^' mult | 'fam(' pres ',' pres ')' ('^' mult)?

#include "scattered/cardinal.hpp"
#include "scattered/ordinal.hpp"
#include "scattered/presentation.hpp"
#include "scattered/tree.hpp"

#include <cctype>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scattered {

class SyntaxError : public std::runtime_error {
public:
  SyntaxError(std::size_t line, std::size_t column, std::vector<std::string> expected, const std::string& found)
      : std::runtime_error(format(line, column, expected, found)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  static std::string format(std::size_t line, std::size_t column, const std::vector<std::string>& expected,
                            const std::string& found) {
    std::string s = "syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? " or " : "") + ("\"" + expected[i] + "\"");
    return s + ", found " + found;
  }

  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

using Expr = std::variant<Ordinal, TreePtr, Forest, PresentationPtr>;

enum class ExprKind { Auto, Ordinal, Tree, Forest, TreeOrForest, Presentation };

std::string printOrdinal(const Ordinal& a);

namespace detail {

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse(ExprKind kind) {
    skipSpace();
    Expr e;
    switch (resolve(kind)) {
      case ExprKind::Ordinal:
        e = ordinal();
        break;
      case ExprKind::Tree:
        e = tree();
        break;
      case ExprKind::Forest:
        e = forest();
        break;
      case ExprKind::Presentation:
        e = presentation();
        break;
      default:
        fail({"expression"});
    }
    skipSpace();
    if (pos_ != src_.size()) fail({"end of input"});
    return e;
  }

private:
  ExprKind resolve(ExprKind kind) {
    if (kind == ExprKind::TreeOrForest) return startsWith("F[") ? ExprKind::Forest : ExprKind::Tree;
    if (kind != ExprKind::Auto) return kind;
    if (startsWith("F[")) return ExprKind::Forest;
    if (startsWith("A(") || startsWith("_") || startsWith("fam(")) return ExprKind::Tree;
    if (startsWith("empty") || startsWith("pt") || startsWith("sum(") || startsWith("pwb(")) return ExprKind::Presentation;
    if (startsWith("w") || (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))))
      return ExprKind::Ordinal;
    fail({"ordinal", "tree", "forest", "presentation"});
  }

  // --- lexical helpers
  void skipSpace() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool startsWith(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }
  bool accept(std::string_view s) {
    skipSpace();
    if (!startsWith(s)) return false;
    pos_ += s.size();
    return true;
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail({std::string(s)});
  }
  bool atDigit() {
    skipSpace();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skipSpace();
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < pos_; ++i) {
      if (src_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string found = pos_ >= src_.size() ? std::string("end of input") : "\"" + std::string(1, src_[pos_]) + "\"";
    throw SyntaxError(line, column, std::move(expected), found);
  }

  Natural natural() {
    if (!atDigit()) fail({"natural number"});
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return Natural(std::string(src_.substr(start, pos_ - start)));
  }

  // --- ordinals
  Ordinal ordinal() {
    Ordinal acc = ordinalTerm();
    while (accept("+")) acc = acc + ordinalTerm();
    return acc;
  }

  Ordinal ordinalTerm() {
    if (accept("w")) {
      Ordinal exponent(1);
      Natural coefficient = 1;
      if (accept("^")) exponent = ordinalAtom();
      if (accept("*")) {
        coefficient = natural();
        if (coefficient == 0) return Ordinal{};
      }
      return Ordinal::power(exponent, coefficient);
    }
    if (atDigit()) return Ordinal(natural());
    fail({"w", "natural number"});
  }

  Ordinal ordinalAtom() {
    if (accept("(")) {
      Ordinal o = ordinal();
      expect(")");
      return o;
    }
    if (accept("w")) return Ordinal::omega();
    if (atDigit()) return Ordinal(natural());
    fail({"natural number", "w", "("});
  }

  // --- multiplicities
  Multiplicity multiplicity() {
    if (accept("w")) return kAleph0;
    if (accept("a")) return Cardinal::aleph(natural().convert_to<unsigned>());
    if (atDigit()) {
      Natural n = natural();
      if (n == 0) fail({"positive multiplicity"});
      return Cardinal(n);
    }
    fail({"natural number", "w", "a"});
  }

  // --- trees
  TreePtr tree() {
    if (accept("_")) return Tree::hole();
    if (accept("A(")) {
      std::vector<ChildSpec> kids;
      if (accept(")")) return Tree::leaf();
      do {
        kids.push_back(childSpec());
      } while (accept(","));
      expect(")");
      return Tree::node(std::move(kids));
    }
    if (atDigit()) {
      std::size_t at = pos_;
      if (natural() == 1) return Tree::leaf();
      pos_ = at;
      fail({"1", "A(", "_"});
    }
    fail({"1", "A(", "_"});
  }

  ChildSpec childSpec() {
    if (accept("fam(")) {
      TreePtr ctx = tree();
      expect(",");
      TreePtr base = tree();
      expect(")");
      Multiplicity m = accept("^") ? multiplicity() : Multiplicity(1);
      return ChildSpec::family(ctx, base, m);
    }
    TreePtr t = tree();
    expect("^");
    return ChildSpec::concrete(t, multiplicity());
  }

  Forest forest() {
    expect("F[");
    std::vector<ForestEntry> entries;
    if (accept("]")) return Forest{};
    do {
      expect("(");
      TreePtr t = tree();
      expect(",");
      Natural n = natural();
      if (n == 0) fail({"positive count"});
      expect(")");
      entries.push_back({t, n});
    } while (accept(","));
    expect("]");
    return Forest(std::move(entries));
  }

  // --- presentations
  PresentationPtr presentation() {
    if (accept("empty")) return Presentation::empty();
    if (accept("pt")) return Presentation::single();
    if (accept("_")) return Presentation::hole();
    if (accept("sum(")) {
      std::vector<PresentationPart> parts;
      if (!accept(")")) {
        do {
          parts.push_back(presentationPart());
        } while (accept(","));
        expect(")");
      }
      return Presentation::sum(std::move(parts));
    }
    if (accept("pwb(")) {
      expect("[");
      std::vector<PresentationPtr> prefix;
      std::vector<PresentationPtr> tail;
      skipSpace();
      if (!startsWith(";")) {
        do {
          prefix.push_back(presentation());
        } while (accept(","));
      }
      expect(";");
      skipSpace();
      if (!startsWith("]")) {
        do {
          tail.push_back(presentation());
        } while (accept(","));
      }
      expect("]");
      expect(")");
      return Presentation::pointWithBase(std::move(prefix), std::move(tail));
    }
    fail({"empty", "pt", "sum(", "pwb(", "_"});
  }

  PresentationPart presentationPart() {
    if (accept("fam(")) {
      PresentationPtr ctx = presentation();
      expect(",");
      PresentationPtr base = presentation();
      expect(")");
      Multiplicity m = accept("^") ? multiplicity() : Multiplicity(1);
      return PresentationPart::family(ctx, base, m);
    }
    PresentationPtr p = presentation();
    expect("^");
    return PresentationPart::concrete(p, multiplicity());
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

inline std::string printExponent(const Ordinal& e) {
  if (e.isFinite()) return e.finiteValue().str();
  if (e == Ordinal::omega()) return "w";
  return "(" + printOrdinal(e) + ")";
}

}  // namespace detail

/// Parses `src` as the requested kind; throws SyntaxError with a position
/// and the expected tokens, or DomainError for well-formed but invalid terms.
inline Expr parseExpr(std::string_view src, ExprKind kind = ExprKind::Auto) {
  return detail::Parser(src).parse(kind);
}

inline Ordinal parseOrdinal(std::string_view src) { return std::get<Ordinal>(parseExpr(src, ExprKind::Ordinal)); }
inline TreePtr parseTree(std::string_view src) { return std::get<TreePtr>(parseExpr(src, ExprKind::Tree)); }
inline Forest parseForest(std::string_view src) { return std::get<Forest>(parseExpr(src, ExprKind::Forest)); }
inline PresentationPtr parsePresentation(std::string_view src) {
  return std::get<PresentationPtr>(parseExpr(src, ExprKind::Presentation));
}

/// Canonical text: "w^2*3 + w + 4".
inline std::string printOrdinal(const Ordinal& a) {
  if (a.isZero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < a.terms().size(); ++i) {
    const auto& t = a.terms()[i];
    if (i) s += " + ";
    if (t.exponent.isZero()) {
      s += t.coefficient.str();
      continue;
    }
    s += "w";
    if (!(t.exponent == Ordinal(1))) s += "^" + detail::printExponent(t.exponent);
    if (t.coefficient != 1) s += "*" + t.coefficient.str();
  }
  return s;
}

inline std::string printExpr(const Expr& e) {
  struct Visitor {
    std::string operator()(const Ordinal& a) const { return printOrdinal(a); }
    std::string operator()(const TreePtr& t) const { return t->key(); }
    std::string operator()(const Forest& f) const { return printForest(f); }
    std::string operator()(const PresentationPtr& p) const { return p->key(); }
  };
  return std::visit(Visitor{}, e);
}

inline ExprKind kindOf(const Expr& e) {
  switch (e.index()) {
    case 0:
      return ExprKind::Ordinal;
    case 1:
      return ExprKind::Tree;
    case 2:
      return ExprKind::Forest;
    default:
      return ExprKind::Presentation;
  }
}

}  // namespace scattered
