#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betafin/srs.hpp"

namespace betafin {

struct Evidence {
  std::string claim;  // e.g. "F proven"
  std::string rule;
  std::string cite;
  std::string data;
};

struct PropertyReport {
  std::string poly;
  Verdict pisot = Verdict::unknown;
  Verdict f = Verdict::unknown;
  Verdict pf = Verdict::unknown;
  Verdict f1 = Verdict::unknown;
  std::optional<DigitWord> d_beta_one;  // empty when it could not be computed
  std::vector<Evidence> evidence;

  std::string to_json() const;
};

struct ClassifyOptions {
  std::size_t orbit_budget = kDefaultOrbitBudget;
  SrsBudgets srs;
  long n_sweep = 200;
};

/// a_{d-1} >= ... >= a_0 >= 1.
bool fs_type(const std::vector<Integer>& a);
/// a_{d-1} > a_{d-2} + ... + a_0 and every a_j >= 0.
bool hollander_type(const std::vector<Integer>& a);

enum class PfShape { pf_without_f_proven, not_special_form };
const char* to_string(PfShape s);
/// Whether p = x^d - B x^{d-1} + sum_{i>=2} A_i x^{d-i} with A_i >= 0, A_d > 0
/// and B > 1 + sum A_i. In that case B = floor(beta) + 1 is asserted.
PfShape pf_shape(const std::vector<Integer>& a, const Integer& floor_beta);

/// Cubic x^3 - a x^2 - b x - c with a Pisot root; throws NotCubicPisot.
FieldPtr cubic_pisot_field(const Integer& a, const Integer& b, const Integer& c);

enum class BassinoCase { case_I, case_II, case_III, finite };
const char* to_string(BassinoCase c);
/// Which of the three infinite-d_beta(1) patterns (a, b, c) falls in. For
/// case III the matching k is stored in *k.
BassinoCase bassino_case(const Integer& a, const Integer& b, const Integer& c, long* k = nullptr);
/// a, a - 1 or a - 2 by case; cross-checked against the exact floor.
/// Throws NotApplicable when d_beta(1) is finite.
Integer floor_beta_cubic(const Integer& a, const Integer& b, const Integer& c);

struct CpcaseReport {
  std::string f1_source;     // "srs-certificate" or "pf-shape"
  bool d_beta_one_finite = false;
  bool pf_without_f = false;  // from the coefficient shape
  bool holds = false;         // pf_without_f == !d_beta_one_finite
};
/// For a cubic Pisot beta with (F1): PF without F iff d_beta(1) is infinite.
/// Throws F1Unknown when (F1) cannot be established.
CpcaseReport cpcase_check(const Integer& a, const Integer& b, const Integer& c, const ClassifyOptions& opt = {});

struct CubicUnitReport {
  Verdict f = Verdict::unknown;
  Verdict pf = Verdict::unknown;
  Verdict f1 = Verdict::unknown;
  std::vector<Evidence> evidence;
};
/// Closed-form verdicts for a cubic Pisot unit (|c| = 1), cross-checked
/// against d_beta(1), the SRS certificate and the coefficient shape.
/// Throws NotUnit or NotCubicPisot.
CubicUnitReport cubic_unit_classify(const Integer& a, const Integer& b, const Integer& c, const ClassifyOptions& opt = {});

/// Smallest N in [1, n_max] whose expansion is infinite, if any.
std::optional<long> first_infinite_natural(const BetaNumeration& num, long n_max);

PropertyReport classify(const std::vector<Integer>& coeffs, const ClassifyOptions& opt = {});

}  // namespace betafin
