#include <doctest.h>

#include "betafin/classify.hpp"
#include "test_support.hpp"

using namespace betafin;

namespace {

void check_lattice(const PropertyReport& r) {
  if (r.f == Verdict::proven) CHECK(r.pf == Verdict::proven);
  if (r.pf == Verdict::proven) CHECK(r.f1 == Verdict::proven);
  if (r.f1 == Verdict::refuted) CHECK(r.pf == Verdict::refuted);
  if (r.pf == Verdict::refuted) CHECK(r.f == Verdict::refuted);
  if (r.pisot == Verdict::refuted) CHECK(r.f1 == Verdict::refuted);
  if (r.pf == Verdict::proven && r.d_beta_one && r.f != Verdict::unknown)
    CHECK((r.f == Verdict::proven) == r.d_beta_one->is_finite());
}

}  // namespace

TEST_SUITE("classify") {
  TEST_CASE("coefficient shapes") {
    CHECK(fs_type(ints({1, 1, 1})));
    CHECK_FALSE(fs_type(ints({2, -4, 4})));
    CHECK(fs_type(ints({1, 2, 2})));
    CHECK(hollander_type(ints({1, 2, 5})));
    CHECK_FALSE(hollander_type(ints({1, 1, 1})));
    CHECK_FALSE(hollander_type(ints({2, -4, 4})));
  }

  TEST_CASE("pf_shape") {
    for (long t = 2; t <= 6; ++t) CHECK(pf_shape(ints({t, -2 * t, 2 * t}), 2 * t - 2) == PfShape::not_special_form);
    const FieldPtr F = make_field(ints({-2, 0, 4}));
    CHECK(is_pisot(*F));
    CHECK(F->floor_beta() == 3);
    CHECK(pf_shape(F->coeffs(), F->floor_beta()) == PfShape::pf_without_f_proven);
    CHECK(pf_shape(ints({1, 1, 1}), 1) == PfShape::not_special_form);
    CHECK_THROWS_AS(pf_shape(ints({-2, 0, 4}), 2), InvariantViolation);
  }

  TEST_CASE("Bassino cases") {
    CHECK(bassino_case(2, 1, -1) == BassinoCase::case_I);
    CHECK(bassino_case(3, 0, -1) == BassinoCase::case_II);
    CHECK(bassino_case(4, -2, 1) == BassinoCase::case_II);
    long k = 0;
    CHECK(bassino_case(5, -5, 2, &k) == BassinoCase::case_III);
    CHECK(k == 3);
    for (long t = 2; t <= 10; ++t) CHECK(bassino_case(2 * t, -2 * t, t) == BassinoCase::finite);
    CHECK_THROWS_AS(bassino_case(3, -1, -1), NotCubicPisot);
    CHECK_THROWS_AS(bassino_case(4, -4, 1), NotCubicPisot);
  }

  TEST_CASE("Bassino cases agree with computed d_beta(1)") {
    int n = 0;
    for (long a = 0; a <= 8; ++a)
      for (long b = -9; b <= 9; ++b)
        for (long c = -9; c <= 9; ++c) {
          FieldPtr F;
          try {
            F = cubic_pisot_field(a, b, c);
          } catch (const NotCubicPisot&) {
            continue;
          }
          ++n;
          const BassinoCase bc = bassino_case(a, b, c);
          BetaNumeration num(F);
          CHECK_MESSAGE((bc == BassinoCase::finite) == num.d_beta_one().is_finite(), a << "," << b << "," << c);
          if (bc != BassinoCase::finite) {
            CHECK(floor_beta_cubic(a, b, c) == F->floor_beta());
            CHECK(F->beta() >= F->constant(2));
          }
          // |c| < beta.
          CHECK(F->constant(Rational(c < 0 ? -c : c)) < F->beta());
        }
    CHECK(n > 300);
  }

  TEST_CASE("floor_beta_cubic") {
    CHECK(floor_beta_cubic(2, 1, -1) == 2);
    CHECK(floor_beta_cubic(3, 0, -1) == 2);
    CHECK(floor_beta_cubic(5, -5, 2) == 3);
    CHECK_THROWS_AS(floor_beta_cubic(4, -4, 2), NotApplicable);
  }

  TEST_CASE("cpcase_check") {
    // (3,1,-1): (F1) fails, so the proposition does not apply.
    CHECK_THROWS_AS(cpcase_check(3, 1, -1), F1Unknown);
    const CpcaseReport trib = cpcase_check(1, 1, 1);
    CHECK(trib.d_beta_one_finite);
    CHECK_FALSE(trib.pf_without_f);
    CHECK(trib.holds);
    // x^3 - 3x^2 + 1 has the special shape.
    const CpcaseReport special = cpcase_check(3, 0, -1);
    CHECK(special.pf_without_f);
    CHECK_FALSE(special.d_beta_one_finite);
    CHECK(special.holds);
    const CpcaseReport fam = cpcase_check(4, -4, 2);
    CHECK(fam.f1_source == "srs-certificate");
    CHECK(fam.holds);
  }

  TEST_CASE("cubic units") {
    const CubicUnitReport trib = cubic_unit_classify(1, 1, 1);
    CHECK(trib.f == Verdict::proven);
    const CubicUnitReport minimal = cubic_unit_classify(0, 1, 1);
    CHECK(minimal.f == Verdict::proven);
    for (long a = 2; a <= 6; ++a) {
      try {
        CHECK(cubic_unit_classify(a, 1, -1).f1 == Verdict::refuted);
      } catch (const NotCubicPisot&) {
      }
    }
    CHECK_THROWS_AS(cubic_unit_classify(2, 1, 2), NotUnit);
  }

  TEST_CASE("classify examples") {
    const PropertyReport fam = classify(ints({2, -4, 4}));
    CHECK(fam.pisot == Verdict::proven);
    CHECK(fam.f == Verdict::refuted);
    CHECK(fam.pf == Verdict::refuted);
    CHECK(fam.f1 == Verdict::proven);
    CHECK(compact_string(*fam.d_beta_one) == "221002");

    const PropertyReport trib = classify(ints({1, 1, 1}));
    CHECK(trib.f == Verdict::proven);
    CHECK(trib.pf == Verdict::proven);
    CHECK(trib.f1 == Verdict::proven);

    const PropertyReport quad = classify(ints({-1, 3}));
    CHECK(quad.pisot == Verdict::proven);
    CHECK(quad.pf == Verdict::proven);
    CHECK(quad.f == Verdict::refuted);  // d(1) infinite

    const PropertyReport unit = classify(ints({-1, 1, 3}));
    CHECK(unit.f1 == Verdict::refuted);

    const PropertyReport salem = classify(ints({-1, 1, 1, 1}));
    CHECK(salem.pisot == Verdict::refuted);
    CHECK(salem.f1 == Verdict::refuted);
    CHECK(salem.f == Verdict::refuted);

    const std::string j = fam.to_json();
    CHECK(j.rfind("{\"poly\":\"x^3-4x^2+4x-2\",\"pisot\":\"proven\",\"F\":\"refuted\",\"PF\":\"refuted\",\"F1\":\"proven\",\"d_beta_1\":\"221002\",\"evidence\":[", 0) == 0);
  }

  TEST_CASE("lattice consistency over a grid") {
    for (long a = 1; a <= 5; ++a)
      for (long b = -5; b <= 5; ++b)
        for (long c = -5; c <= 5; ++c) {
          if (c == 0) continue;
          const auto co = ints({c, b, a});
          if (is_reducible(co)) continue;
          try {
            check_lattice(classify(co));
          } catch (const NoRootAboveOne&) {
          }
        }
  }
}
