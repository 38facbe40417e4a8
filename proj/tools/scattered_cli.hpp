#pragma once

// Command dispatch for the `scattered` tool. Lives in a header so the tests
// can run commands in-process; main() only forwards argv.

#include "scattered/compactify.hpp"
#include "scattered/embeddings.hpp"
#include "scattered/generate.hpp"
#include "scattered/normalize.hpp"
#include "scattered/space.hpp"
#include "scattered/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace scattered::cli {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitSyntax = 2;

struct Outcome {
  int code = kExitOk;
  std::string text;
};

// --- JSON encodings ----------------------------------------------------------

inline Json naturalJson(const Natural& n) {
  if (n >= 0 && n <= Natural(std::numeric_limits<std::uint64_t>::max())) return n.convert_to<std::uint64_t>();
  return n.str();
}

/// CNF as nested arrays [[exponent, coefficient], ...]; zero is 0.
inline Json ordinalJson(const Ordinal& a) {
  if (a.isZero()) return 0;
  Json out = Json::array();
  for (const auto& t : a.terms()) out.push_back(Json::array({ordinalJson(t.exponent), naturalJson(t.coefficient)}));
  return out;
}

inline Json vectorJson(const PathVector& v) {
  Json out = Json::object();
  for (const auto& [k, x] : v.entries()) out[k] = x.str();
  return out;
}

inline Json vectorJson(const AxisVector& v) {
  Json out = Json::object();
  for (const auto& [k, x] : v.entries()) out[std::to_string(k)] = x;
  return out;
}

inline const char* kindName(ExprKind k) {
  switch (k) {
    case ExprKind::Ordinal:
      return "ordinal";
    case ExprKind::Tree:
      return "tree";
    case ExprKind::Forest:
      return "forest";
    case ExprKind::Presentation:
      return "presentation";
    default:
      return "auto";
  }
}

inline ExprKind kindFromName(const std::string& s) {
  if (s == "auto") return ExprKind::Auto;
  if (s == "ordinal") return ExprKind::Ordinal;
  if (s == "tree") return ExprKind::Tree;
  if (s == "forest") return ExprKind::Forest;
  if (s == "presentation") return ExprKind::Presentation;
  throw DomainError("unknown kind '" + s + "'");
}

inline TreeOrForest parseSpace(const std::string& src) {
  Expr e = parseExpr(src, ExprKind::TreeOrForest);
  if (auto* t = std::get_if<TreePtr>(&e)) return *t;
  return std::get<Forest>(e);
}

inline std::string printSpace(const TreeOrForest& x) {
  if (const auto* t = std::get_if<TreePtr>(&x)) return (*t)->key();
  return printForest(std::get<Forest>(x));
}

/// Generator depth, capped by SC_MAX_DEPTH when set.
inline int cappedDepth(int wanted) {
  if (const char* env = std::getenv("SC_MAX_DEPTH")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 0) return static_cast<int>(std::min<long>(wanted, cap));
  }
  return wanted;
}

inline Rational parseRational(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw DomainError("not a rational number: '" + s + "'");
  }
}

// --- verify-all ----------------------------------------------------------------

struct CheckTally {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::vector<std::string> failures;

  void record(bool ok, const std::string& input) {
    if (ok) {
      ++passed;
    } else {
      ++failed;
      if (failures.size() < 5) failures.push_back(input);
    }
  }
  Json json() const {
    return {{"passed", passed}, {"failed", failed}, {"skipped", skipped}, {"failures", failures}};
  }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 50;
  bool oracle = false;
};

/// Runs the library invariants on the given spaces plus generated inputs.
inline Json verifyAll(const std::vector<TreeOrForest>& given, const VerifyOptions& opt) {
  Rng rng(opt.seed);
  TreeGenOptions topt;
  topt.maxDepth = cappedDepth(4);
  topt.maxBranch = 2;
  std::vector<TreeOrForest> spaces = given;
  for (std::size_t i = 0; i < opt.trials; ++i) spaces.emplace_back(randomTree(rng, topt));

  CheckTally norm, idem, homeo, derived, bounded, dense, hilbert, sigma, closure, slow;
  for (const auto& x : spaces) {
    const std::string src = printSpace(x);
    const Forest f = asForest(x);
    const Forest n = normalize(f);
    norm.record(repComplexity(n) == schHeight(f), src);
    idem.record(printForest(normalize(n)) == printForest(n), src);
    if (isCountable(f))
      homeo.record(homeoCountable(f, n), src);
    else
      ++homeo.skipped;
    try {
      const Forest d = derivedForest(f);
      derived.record(Ordinal(1) + vanRank(d) == vanRank(f) && pointCount(d) == levelSize(f, Ordinal(1)), src);
    } catch (const DomainError&) {
      ++derived.skipped;
    }
    bool hOk = true;
    for (const auto& [path, v] : hilbertEmbed(x, Rational(1, 2))) {
      const bool zero = v.isZero();
      const bool isTop = path == "/";
      hOk = hOk && zero == isTop && std::sqrt(toDouble(v.normSquared())) <= hilbertNormBound(Rational(1, 2)) + 1e-12;
    }
    hilbert.record(hOk, src);
    std::set<std::map<std::string, Rational>> seen;
    const auto sig = sigmaEmbed(x);
    for (const auto& [path, v] : sig) seen.insert(v.entries());
    sigma.record(seen.size() == sig.size(), src);
    if (opt.oracle) {
      // Slow path: count derived-set steps until the space is empty.
      const Ordinal van = vanRank(f);
      if (!van.isFinite() || van > Ordinal(12)) {
        ++slow.skipped;
        continue;
      }
      try {
        Forest cur = f;
        std::uint64_t steps = 0;
        while (!cur.empty() && steps < 20) {
          cur = derivedForest(cur);
          ++steps;
        }
        slow.record(Ordinal(steps) == van, src);
      } catch (const DomainError&) {
        ++slow.skipped;
      }
    }
  }

  PresentationGenOptions popt;
  popt.maxDepth = cappedDepth(popt.maxDepth);
  for (std::size_t i = 0; i < opt.trials; ++i) {
    auto p = randomPresentation(rng, popt);
    try {
      auto c = compactifyP(p);
      bounded.record(checkBound(p, c.space), p->key());
      dense.record(checkDense(c.witness, c.space), p->key());
    } catch (const DomainError&) {
      ++bounded.skipped;
      ++dense.skipped;
    }
  }

  const auto report = closureCheckHedgehog(64, opt.trials, opt.seed);
  closure.passed = report.trials.size() - report.count(ClosureClass::Fail);
  closure.failed = report.count(ClosureClass::Fail);

  Json checks = {{"normalize-com-eq-sch", norm.json()},
                 {"normalize-idempotent", idem.json()},
                 {"normalize-homeomorphic", homeo.json()},
                 {"derived-rank", derived.json()},
                 {"compactify-bound", bounded.json()},
                 {"compactify-dense", dense.json()},
                 {"hilbert-norms", hilbert.json()},
                 {"sigma-injective", sigma.json()},
                 {"hedgehog-closure", closure.json()}};
  if (opt.oracle) checks["oracle-derived-steps"] = slow.json();
  bool ok = true;
  for (const auto& [name, c] : checks.items()) ok = ok && c["failed"] == 0;
  return {{"checks", checks}, {"ok", ok}, {"seed", opt.seed}, {"trials", opt.trials}};
}

// --- dispatch ------------------------------------------------------------------

inline Json errorJson(const std::string& type, const std::string& message) {
  return {{"error", {{"type", type}, {"message", message}}}};
}

/// Runs one command line (without the program name).
inline Outcome run(const std::vector<std::string>& argv) {
  CLI::App app{"Scattered compacta: ranks, normal forms, compactifications and embeddings", "scattered"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indented JSON");

  std::vector<std::string> args;
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::size_t kappa = 256;
  bool oracle = false;
  std::string kind = "auto";
  std::string weight = "1/2";
  std::string csvPath;
  MaterializeOptions mo;

  auto spaceCommand = [&](const char* name, const char* help, std::size_t nargs) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("expr", args, "Tree or forest term")->expected(static_cast<int>(nargs))->required();
    return sub;
  };
  auto* parseCmd = app.add_subcommand("parse", "Parse and print an expression in canonical form");
  parseCmd->add_option("expr", args)->expected(1)->required();
  parseCmd->add_option("--kind", kind, "auto|ordinal|tree|forest|presentation");
  spaceCommand("sch", "Scattered height", 1);
  spaceCommand("van", "Vanishing rank of the derived sequence", 1);
  spaceCommand("ms", "Mazurkiewicz-Sierpinski invariant (countable spaces)", 1);
  spaceCommand("com", "Complexity of the given and of the normalized representation", 1);
  spaceCommand("normalize", "Normal form with complexity equal to height", 1);
  spaceCommand("homeo", "Homeomorphism test for countable spaces", 2);
  auto* compCmd = app.add_subcommand("compactify", "Compactification of a presentation with density witness");
  compCmd->add_option("presentation", args)->expected(1)->required();
  for (const char* name : {"embed-sigma", "embed-hilbert"}) {
    auto* sub = spaceCommand(name, name[6] == 's' ? "Sigma-product embedding" : "Hilbert-space embedding", 1);
    sub->add_option("--copies", mo.copies, "Copies per multiplicity to materialize");
    sub->add_option("--members", mo.members, "Family members to materialize");
    sub->add_option("--max-nodes", mo.maxNodes, "Node cap");
    if (name[6] == 'h') sub->add_option("--weight", weight, "Weight base in (0,1), as a rational");
  }
  auto* hedgeCmd = app.add_subcommand("hedgehog", "Sample the hedgehog map onto the unit sphere");
  auto* weakCmd = app.add_subcommand("weaklimit", "Classify weak limits of sampled hedgehog sequences");
  for (auto* sub : {hedgeCmd, weakCmd}) {
    sub->add_option("--kappa", kappa, "Number of spines")->check(CLI::PositiveNumber);
    sub->add_option("--trials", trials, "Number of samples or trials");
    sub->add_option("--seed", seed, "Random seed");
  }
  hedgeCmd->add_option("--csv", csvPath, "Also write the point cloud as CSV");
  auto* verifyCmd = app.add_subcommand("verify-all", "Run the invariant suite on given and generated inputs");
  verifyCmd->add_option("expr", args, "Extra tree or forest terms");
  verifyCmd->add_option("--seed", seed, "Random seed");
  verifyCmd->add_option("--trials", trials, "Generated inputs per check");
  verifyCmd->add_flag("--oracle", oracle, "Cross-check ranks by iterating derived sets");

  auto emit = [&](const Json& j, int code) { return Outcome{code, j.dump(pretty ? 2 : -1) + "\n"}; };

  try {
    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    return {kExitOk, app.help()};
  } catch (const CLI::ParseError& e) {
    return emit(errorJson("usage", e.what()), kExitSyntax);
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    Json out;
    if (cmd == "parse") {
      Expr e = parseExpr(args[0], kindFromName(kind));
      out = {{"kind", kindName(kindOf(e))}, {"canonical", printExpr(e)}};
    } else if (cmd == "sch") {
      out = {{"sch", ordinalJson(schHeight(parseSpace(args[0])))}};
    } else if (cmd == "van") {
      out = {{"van", ordinalJson(vanRank(parseSpace(args[0])))}};
    } else if (cmd == "ms") {
      const MSInvariant m = msInvariant(parseSpace(args[0]));
      out = {{"rank", ordinalJson(m.rank)}, {"count", naturalJson(m.topCount)}};
    } else if (cmd == "com") {
      const TreeOrForest x = parseSpace(args[0]);
      out = {{"com", ordinalJson(repComplexity(x))},
             {"normalizedCom", ordinalJson(repComplexity(normalize(x)))},
             {"sch", ordinalJson(schHeight(x))}};
    } else if (cmd == "normalize") {
      const TreeOrForest n = normalize(parseSpace(args[0]));
      out = {{"normalized", printSpace(n)}, {"com", ordinalJson(repComplexity(n))}};
    } else if (cmd == "homeo") {
      out = {{"homeomorphic", homeoCountable(parseSpace(args[0]), parseSpace(args[1]))}};
    } else if (cmd == "compactify") {
      const PresentationPtr p = parsePresentation(args[0]);
      const Compactification c = compactifyP(p);
      Json witness = Json::object();
      for (const auto& [addr, path] : c.witness.pointMap) witness[addr] = path;
      out = {{"space", printSpace(c.space)},
             {"witness", witness},
             {"added", c.witness.addedNodes},
             {"alpha", ordinalJson(c.alpha)},
             {"nAlpha", naturalJson(c.nAlpha)},
             {"bound", checkBound(p, c.space)},
             {"dense", checkDense(c.witness, c.space)},
             {"case", static_cast<int>(c.proofCase)}};
    } else if (cmd == "embed-sigma" || cmd == "embed-hilbert") {
      const TreeOrForest x = parseSpace(args[0]);
      const auto vs = cmd == "embed-sigma" ? sigmaEmbed(x, mo) : hilbertEmbed(x, parseRational(weight), mo);
      Json vectors = Json::object();
      for (const auto& [path, v] : vs) vectors[path] = vectorJson(v);
      out = {{"vectors", vectors}, {"nodes", vs.size()}, {"truncated", vs.size() >= mo.maxNodes}};
      if (cmd == "embed-hilbert") out["normBound"] = hilbertNormBound(parseRational(weight));
    } else if (cmd == "hedgehog") {
      const auto pts = sampleHedgehog(kappa, trials, seed);
      Json points = Json::array();
      double worst = 0;
      for (const auto& p : pts) {
        const AxisVector v = hedgehogEmbed(p, kappa);
        worst = std::max(worst, std::abs(std::sqrt(v.normSquared()) - 1));
        points.push_back({{"t", p.t}, {"spine", p.spine}, {"vector", vectorJson(v)}});
      }
      if (!csvPath.empty()) {
        std::ofstream csv(csvPath);
        if (!csv) throw DomainError("cannot write " + csvPath);
        writeHedgehogCsv(csv, pts, kappa);
      }
      out = {{"kappa", kappa}, {"points", points}, {"maxNormError", worst}};
    } else if (cmd == "weaklimit") {
      const ClosureReport rep = closureCheckHedgehog(kappa, trials, seed);
      Json list = Json::array();
      for (const auto& t : rep.trials)
        list.push_back({{"kind", t.kind}, {"class", closureClassName(t.verdict)}, {"limit", vectorJson(t.limit)}});
      Json counts = Json::object();
      for (auto c : {ClosureClass::Image, ClosureClass::AddedPart, ClosureClass::Fail, ClosureClass::Rejected,
                     ClosureClass::Divergent})
        counts[closureClassName(c)] = rep.count(c);
      out = {{"kappa", kappa}, {"trials", list}, {"counts", counts}};
    } else if (cmd == "verify-all") {
      std::vector<TreeOrForest> given;
      for (const auto& a : args) given.push_back(parseSpace(a));
      out = verifyAll(given, {seed, trials, oracle});
      return emit(out, out["ok"].get<bool>() ? kExitOk : kExitDomain);
    }
    return emit(out, kExitOk);
  } catch (const SyntaxError& e) {
    Json j = errorJson("syntax", e.what());
    j["error"]["line"] = e.line();
    j["error"]["column"] = e.column();
    j["error"]["expected"] = e.expected();
    return emit(j, kExitSyntax);
  } catch (const DomainError& e) {
    return emit(errorJson("domain", e.what()), kExitDomain);
  }
}

}  // namespace scattered::cli
