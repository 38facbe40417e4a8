#include "cli_cases.hpp"
#include "scattered_cli.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <memory>

namespace {

using namespace scattered;
using cli::Json;

cli::Outcome run(std::vector<std::string> args) { return cli::run(args); }

Json body(const cli::Outcome& o) { return Json::parse(o.text); }

TEST(RoundTrip, GeneratedExpressions) {
  Rng rng(8);
  TreeGenOptions topt;
  topt.familyPercent = 10;
  topt.alephPercent = 10;
  PresentationGenOptions popt;
  std::array<int, 4> kinds{};
  for (int i = 0; i < 1000; ++i) {
    const Expr e = randomExpr(rng, topt, popt);
    const std::string s = printExpr(e);
    const Expr back = parseExpr(s, kindOf(e));
    ASSERT_EQ(kindOf(back), kindOf(e)) << s;
    ASSERT_EQ(printExpr(back), s);
    ++kinds[e.index()];
  }
  for (int k : kinds) EXPECT_GT(k, 100);
}

TEST(RoundTrip, CanonicalReformatting) {
  const std::pair<const char*, const char*> cases[] = {
      {"w^2*3 + 4", "w^2*3 + 4"},
      {"A( 1^w )", "A(1^w)"},
      {"F[(1,3)]", "F[(1,3)]"},
      {"A(A(1^2)^1, 1^w, 1^1)", "A(1^1,1^w,A(1^2)^1)"},
  };
  for (const auto& [src, want] : cases) {
    const std::string once = printExpr(parseExpr(src));
    EXPECT_EQ(once, want) << src;
    EXPECT_EQ(printExpr(parseExpr(once)), once);
  }
}

// Byte-exact outputs; any change in encoding or ordering shows up here.
TEST(Golden, Outputs) {
  const auto& cases = cliGoldenCases();
  for (const auto& [args, want] : cases) {
    const auto o = run(args);
    EXPECT_EQ(o.code, 0) << args[0];
    EXPECT_EQ(o.text, want + "\n") << args[0] << " " << args[1];
  }
}

TEST(Golden, SeededCommandsAreStable) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"hedgehog", "--kappa", "16", "--trials", "20", "--seed", "4"},
           {"weaklimit", "--kappa", "32", "--trials", "30", "--seed", "4"},
           {"verify-all", "--trials", "10", "--seed", "4"}}) {
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, 0) << args[0];
    EXPECT_EQ(a.text, b.text) << args[0];
  }
  const Json h = body(run({"hedgehog", "--kappa", "16", "--trials", "20", "--seed", "4"}));
  EXPECT_EQ(h["points"].size(), 20u);
  EXPECT_LT(h["maxNormError"].get<double>(), 1e-12);
  const Json w = body(run({"weaklimit", "--kappa", "32", "--trials", "30", "--seed", "4"}));
  EXPECT_EQ(w["counts"]["fail"], 0);
}

TEST(ExitCodes, Contract) {
  const auto& cases = cliExitCases();
  ASSERT_EQ(cases.size(), 20u);
  for (const auto& c : cases) {
    const auto o = run(c.args);
    EXPECT_EQ(o.code, c.code) << c.args[0] << " " << (c.args.size() > 1 ? c.args[1] : "");
    const Json j = body(o);
    if (c.errorType) {
      ASSERT_TRUE(j.contains("error")) << o.text;
      EXPECT_EQ(j["error"]["type"], c.errorType) << o.text;
    } else {
      EXPECT_FALSE(j.contains("error")) << o.text;
    }
  }
}

TEST(ExitCodes, SyntaxErrorPosition) {
  const Json j = body(run({"sch", "A(1^w"}));
  EXPECT_EQ(j["error"]["line"], 1);
  EXPECT_EQ(j["error"]["column"], 6);
  EXPECT_EQ(j["error"]["expected"], Json::array({")"}));
}

#ifdef SCATTERED_CLI_PATH
TEST(Binary, ExitCodeAndStdout) {
  auto call = [](const std::string& args, std::string& out) {
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen((std::string(SCATTERED_CLI_PATH) + " " + args).c_str(), "r"), pclose);
    std::array<char, 256> buf{};
    out.clear();
    while (fgets(buf.data(), buf.size(), pipe.get())) out += buf.data();
    const int status = pclose(pipe.release());
    return WEXITSTATUS(status);
  };
  std::string out;
  EXPECT_EQ(call("sch 'A(1^w)'", out), 0);
  EXPECT_EQ(out, "{\"sch\":[[0,1]]}\n");
  EXPECT_EQ(call("sch 'A(1^w'", out), 2);
  EXPECT_EQ(call("ms 'A(1^a1)'", out), 1);
}
#endif

}  // namespace
