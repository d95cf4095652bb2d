#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "betafin/expansion.hpp"
#include "test_support.hpp"

using namespace betafin;

namespace {

DigitWord W(const std::string& s) { return DigitWord::parse(s); }

// Family example: (2t-2) + (2t-2)/beta + (t-1)/beta^2 + (t-1)(1/beta^4 + 1/beta^5 + 1/beta^6).
FieldElement example_x(const FieldPtr& F, long t) {
  FieldElement x = F->constant(2 * t - 2);
  const long c[] = {2 * t - 2, t - 1, 0, t - 1, t - 1, t - 1};
  for (int i = 0; i < 6; ++i) x += F->beta_pow(-(i + 1)) * Rational(c[i]);
  return x;
}

}  // namespace

TEST_SUITE("expansion") {
  TEST_CASE("words are canonical") {
    CHECK(W("1 1 1 0 0") == DigitWord::finite({1, 1, 1}));
    CHECK(W("(1 1 0 1 1 0)") == W("(1 1 0)"));
    CHECK(W("1 1 0 (1 1 0)") == W("(1 1 0)"));
    CHECK(W("2 (0)") == W("2"));
    CHECK(W("0 0 0").is_zero());
    CHECK(W("1 0 0 0 0 0 2 0 (1)").to_string() == "1 0 0 0 0 0 2 0 (1)");
    CHECK(W("2 2 1 0 0 2").to_string() == "2 2 1 0 0 2");
    CHECK(compact_string(W("1 0 0 0 1")) == "10001");
    CHECK(compact_string(W("(1 1 0)")) == "(110)");
    CHECK_THROWS_AS(W("1 (2"), ParseError);
    CHECK_THROWS_AS(W("-1 0"), ParseError);
    CHECK(SignedWord::parse("0 -1 (2)").min_digit() == -1);
  }

  TEST_CASE("lexicographic comparison of eventually periodic words") {
    CHECK(lex_compare(W("1 1 1"), W("(1 1 0)")) > 0);
    CHECK(lex_compare(W("(1 1 0)"), W("1 1 0 (1 1 0)")) == 0);
    CHECK(lex_compare(W("1 1 0 1 1 0 1"), W("(1 1 0)")) < 0);
    CHECK(lex_compare(W("(1 0)"), W("(1 0 1 0 1 1)")) < 0);
  }

  TEST_CASE("t_map") {
    const FieldPtr trib = make_field(ints({1, 1, 1}));
    BetaNumeration num(trib);
    auto [d0, x0] = num.t_map(trib->zero());
    CHECK(d0 == 0);
    CHECK(x0.is_zero());
    auto [d1, x1] = num.t_map(trib->one());
    CHECK(d1 == 1);
    CHECK(x1 == trib->beta() - Rational(1));
    for (long t = 2; t <= 6; ++t) {
      const FieldPtr F = family_field(t);
      auto [d, x] = BetaNumeration(F).t_map(F->one());
      CHECK(d == 2 * t - 2);
      CHECK(x == F->beta() - Rational(2 * t - 2));
    }
    CHECK_THROWS_AS(num.t_map(trib->constant(2)), OutOfRange);
    CHECK_THROWS_AS(num.t_map(trib->constant(-1)), OutOfRange);
  }

  TEST_CASE("d_beta(1) and the quasi-greedy word") {
    BetaNumeration trib(make_field(ints({1, 1, 1})));
    CHECK(trib.d_beta_one() == W("1 1 1"));
    CHECK(trib.d_beta_star() == W("(1 1 0)"));
    BetaNumeration minimal(make_field(ints({1, 1, 0})));
    CHECK(minimal.d_beta_one() == W("1 0 0 0 1"));
    CHECK(minimal.d_beta_star() == W("(1 0 0 0 0)"));
    for (long t = 2; t <= 10; ++t) {
      BetaNumeration num(family_field(t));
      CHECK(num.d_beta_one() == DigitWord::finite({2 * t - 2, 2 * t - 2, t - 1, 0, 0, t}));
      CHECK(num.d_beta_star() == DigitWord::purely_periodic({2 * t - 2, 2 * t - 2, t - 1, 0, 0, t - 1}));
    }
    // x^2 - 3x + 1: d(1) = 2(1) is infinite, so d* = d.
    BetaNumeration quad(make_field(ints({-1, 3})));
    CHECK(quad.d_beta_one() == W("2 (1)"));
    CHECK(quad.d_beta_star() == quad.d_beta_one());
  }

  TEST_CASE("admissibility") {
    BetaNumeration trib(make_field(ints({1, 1, 1})));
    CHECK(trib.is_admissible(W("0")));
    CHECK_FALSE(trib.is_admissible(W("1 1 1")));
    CHECK(trib.is_admissible(W("1 1 0 1 1")));
    CHECK_FALSE(trib.is_admissible(W("(1 1 0)")));
    CHECK_FALSE(trib.is_admissible(W("2")));
    for (long t : {2, 3, 5}) {
      BetaNumeration num(family_field(t));
      CHECK(num.is_admissible(DigitWord({1, 0, 0, 0, 0, t - 2, 2 * t - 2, t - 2}, {t - 1})));
      CHECK_FALSE(num.is_admissible(num.d_beta_star()));
    }
  }

  TEST_CASE("big_l") {
    const FieldPtr F = family_field(2);
    BetaNumeration num(F);
    CHECK(num.big_l(F->zero()) == 0);
    CHECK(num.big_l(F->constant(Rational(1, 2))) == 0);
    CHECK(num.big_l(F->one()) == 1);
    CHECK(num.big_l(F->constant(F->floor_beta() + 1)) == 2);
    CHECK_THROWS_AS(num.big_l(F->constant(-1)), OutOfRange);
  }

  TEST_CASE("beta_expand on the worked family example") {
    for (long t : {2, 3, 5}) {
      const FieldPtr F = family_field(t);
      BetaNumeration num(F);
      const FieldElement x = example_x(F, t);
      const Expansion e = num.beta_expand(x);
      CHECK(e.exponent == 2);
      CHECK(e.word == DigitWord({1, 0, 0, 0, 0, t - 2, 2 * t - 2, t - 2}, {t - 1}));
      CHECK_FALSE(num.is_finite_expansion(x));
      CHECK(num.is_admissible(e.word));
      CHECK(num.value(e) == x);
      // {x} is the tail after the radix point.
      CHECK(num.frac_part(x) == num.nu(DigitWord({0, 0, 0, t - 2, 2 * t - 2, t - 2}, {t - 1})));
    }
  }

  TEST_CASE("simple expansions") {
    const FieldPtr F = family_field(2);
    BetaNumeration num(F);
    CHECK(num.beta_expand(F->zero()) == Expansion{0, DigitWord()});
    CHECK(num.is_finite_expansion(F->one()));
    CHECK(num.frac_part(F->one()).is_zero());
    // floor(beta)+1 = 10.d({-beta}), so {floor(beta)+1} = floor(beta)+1-beta.
    const FieldElement n = F->constant(F->floor_beta() + 1);
    const Expansion e = num.beta_expand(n);
    CHECK(e.exponent == 2);
    CHECK(e.word.prefix(2) == std::vector<Digit>{1, 0});
    CHECK(num.frac_part(n) == n - F->beta());
    for (long k = 0; k <= 100; ++k) CHECK(num.is_finite_expansion(F->constant(k)));
  }

  TEST_CASE("xi values") {
    const FieldPtr F = make_field(ints({1, 1, 1}));
    BetaNumeration num(F);
    CHECK(num.xi(1) == F->one());
    // Oracle: truncated float sum of sigma(d*) = (101)... for 50 terms.
    const double beta = F->beta().approx();
    double partial = 0;
    for (int n = 1; n <= 50; ++n) partial += static_cast<double>(num.d_beta_star().at(n)) * std::pow(beta, -n);
    CHECK(num.xi(2).approx() == doctest::Approx(partial).epsilon(1e-12));
    for (const auto& co : {ints({1, 1, 1}), ints({1, 1, 0}), ints({2, -4, 4}), ints({-1, 3})}) {
      BetaNumeration m(make_field(co));
      std::set<std::vector<Rational>> orbit, xis;
      for (const auto& v : m.orbit_of_one()) orbit.insert(v.coords());
      for (std::size_t n = 1; n <= 3 * m.orbit_of_one().size() + 5; ++n) xis.insert(m.xi(n).coords());
      CHECK(orbit == xis);
    }
  }

  TEST_CASE("quasi-greedy suffixes never exceed the word") {
    for (const auto& co : {ints({1, 1, 1}), ints({1, 1, 0}), ints({3, -6, 6}), ints({-1, 3})}) {
      BetaNumeration num(make_field(co));
      const DigitWord& d = num.d_beta_star();
      for (std::size_t n = 0; n < d.preperiod().size() + d.cycle_length(); ++n) CHECK(lex_compare(d.shift(n), d) <= 0);
    }
  }

  TEST_CASE("greedy digits: conjugation, order, reconstruction, Parry") {
    std::mt19937_64 rng(11);
    for (const auto& co : {ints({1, 1, 1}), ints({1, 1, 0}), ints({2, -4, 4}), ints({-1, 3})}) {
      const FieldPtr F = make_field(co);
      BetaNumeration num(F);
      for (int k = 0; k < 25; ++k) {
        const FieldElement x = random_unit(F, rng), y = random_unit(F, rng);
        const DigitWord dx = num.d_beta(x), dy = num.d_beta(y);
        CHECK(num.nu(dx) == x);
        CHECK(num.d_beta(num.t_map(x).second) == dx.shift(1));
        const int s = compare(x, y);
        const int l = lex_compare(dx, dy);
        CHECK((s > 0) == (l > 0));
        CHECK((s < 0) == (l < 0));
        CHECK(num.is_admissible(dx));
      }
    }
  }

  TEST_CASE("budget guard") {
    // Salem number: the orbit of 1 is long; a tiny budget must fail loudly.
    CHECK_THROWS_AS(BetaNumeration(make_field(ints({-1, 1, 1, 1})), 3), OrbitBudgetExceeded);
  }
}
