#include <doctest.h>

#include <sstream>

#include "betafin/cli.hpp"
#include "test_support.hpp"

using namespace betafin;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "betafin");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("positional rendering") {
    CHECK(cli::positional(Expansion{1, DigitWord::parse("1")}) == "1.0^inf");
    CHECK(cli::positional(Expansion{2, DigitWord::parse("1 0 0 0 0 0 2 0 (1)")}) == "10.000020(1)^inf");
    CHECK(cli::positional(Expansion{0, DigitWord::parse("0 1")}) == "0.010^inf");
    CHECK(cli::positional(Expansion{1, DigitWord::parse("18 3")}) == "[18].30^inf");
  }

  TEST_CASE("x specs") {
    BetaNumeration num(family_field(2));
    const FieldPtr& F = num.field();
    CHECK(cli::parse_x_spec(num, "1") == F->one());
    CHECK(cli::parse_x_spec(num, "1:1") == F->one());
    CHECK(cli::parse_x_spec(num, "0,1,0") == F->beta());
    CHECK(cli::parse_x_coords(F, "1/2") == F->constant(Rational(1, 2)));
    CHECK_THROWS_AS(cli::parse_x_spec(num, "1:2 x"), ParseError);
    CHECK(cli::parse_vector("1,-2") == SrsVector{1, -2});
    CHECK_THROWS_AS(cli::parse_vector("1,,2"), ParseError);
  }

  TEST_CASE("expand") {
    const Run r = run({"expand", "--poly", "x^3-4x^2+4x-2", "--x", "1:2 2 1 0 1 1 1"});
    CHECK(r.code == cli::kOk);
    CHECK(has(r.out, "expansion: 10.000020(1)^inf, infinite"));
    CHECK(has(r.out, "reconstruction = exact"));
    CHECK(has(r.out, "d_beta(1) = 221002"));
    const Run j = run({"--format", "json", "expand", "--poly", "x^3-x^2-x-1", "--x", "1"});
    CHECK(j.code == cli::kOk);
    CHECK(has(j.out, "\"finite\":true"));
  }

  TEST_CASE("usage and input errors") {
    CHECK(run({"expand", "--x", "1"}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"classify", "--poly", "x^3+2x^"}).code == cli::kUsage);
    CHECK(run({"classify", "--poly", "x^3-3x^2+3x-1"}).code == cli::kInputError);
    CHECK(run({"expand", "--poly", "x^3-4x^2+4x-2", "--x", "1", "--x-coords", "1"}).code == cli::kUsage);
    CHECK(run({"expand", "--poly", "x^3-4x^2+4x-2", "--x", "-1"}).code == cli::kInputError);
  }

  TEST_CASE("srs subcommands") {
    const Run q = run({"srs", "qset", "--poly", "x^3-5x^2+5x-3"});
    CHECK(q.code == cli::kOk);
    CHECK(has(q.out, "|Q_beta| = 43"));
    const Run p = run({"srs", "pset", "--poly", "x^3-4x^2+4x-2"});
    CHECK(has(p.out, "|P_beta| = 1"));
    const Run g = run({"srs", "graph", "--poly", "x^3-4x^2+4x-2", "--format", "json"});
    CHECK(g.out.rfind("{\"edges\":", 0) == 0);
    const Run c = run({"srs", "fcheck", "--poly", "x^3-4x^2+4x-2"});
    CHECK(has(c.out, "proven"));
    const Run v = run({"srs", "fcheck", "--poly", "x^3-4x^2+4x-2", "--vec", "0,-1"});
    CHECK(has(v.out, "in F_beta"));
    CHECK_FALSE(has(v.out, "not in F_beta"));
  }

  TEST_CASE("classify") {
    const Run r = run({"classify", "--poly", "x^3-4x^2+4x-2", "--format", "json"});
    CHECK(r.code == cli::kOk);
    CHECK(has(r.out, "\"PF\":\"refuted\""));
    CHECK(has(r.out, "\"F1\":\"proven\""));
    const Run t = run({"classify", "--poly", "x^3-x^2-x-1"});
    CHECK(has(t.out, "F: proven"));
  }

  TEST_CASE("verify-family") {
    const Run r = run({"verify-family", "--t-min", "2", "--t-max", "3"});
    CHECK(r.code == cli::kOk);
    CHECK(has(r.out, "t=2 PASS"));
    CHECK(has(r.out, "all passed"));
    CHECK(run({"verify-family", "--t-min", "1", "--t-max", "3"}).code != cli::kOk);
    cli::RunConfig cfg;
    for (const auto& [name, ok] : cli::verify_family_member(4, cfg)) CHECK_MESSAGE(ok, name);
  }
}
