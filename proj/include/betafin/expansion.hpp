#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "betafin/field.hpp"
#include "betafin/word.hpp"

namespace betafin {

/// x = beta^exponent * nu(word).
struct Expansion {
  long exponent = 0;
  DigitWord word;

  friend bool operator==(const Expansion&, const Expansion&) = default;
};

inline constexpr std::size_t kDefaultOrbitBudget = 100'000;

/// Greedy beta-expansions over a fixed field. Constructing one computes the
/// orbit of 1 under T, d_beta(1) and the quasi-greedy word d*_beta(1) once;
/// all methods are const and safe to call concurrently.
class BetaNumeration {
 public:
  explicit BetaNumeration(FieldPtr field, std::size_t orbit_budget = kDefaultOrbitBudget);

  const FieldPtr& field() const { return field_; }
  std::size_t orbit_budget() const { return budget_; }
  /// Largest admissible digit.
  Digit alphabet_bound() const { return bound_; }

  /// T(x) = beta x - floor(beta x) for 0 <= x <= 1. Throws OutOfRange.
  std::pair<Digit, FieldElement> t_map(const FieldElement& x) const;
  /// Greedy digits of 0 <= x <= 1. Throws OrbitBudgetExceeded.
  DigitWord d_beta(const FieldElement& x) const;

  const DigitWord& d_beta_one() const { return d_one_; }
  const DigitWord& d_beta_star() const { return d_star_; }
  /// T^m(1) for m = 0, 1, ... up to the first repeat, zero excluded.
  const std::vector<FieldElement>& orbit_of_one() const { return orbit_; }
  /// Index m with T^m(1) == xi(n), reduced into [0, orbit_of_one().size()).
  std::size_t xi_exponent(std::size_t n) const;

  bool is_admissible(const DigitWord& w) const;
  long big_l(const FieldElement& x) const;
  Expansion beta_expand(const FieldElement& x) const;
  bool is_finite_expansion(const FieldElement& x) const;
  /// nu(sigma^{n-1}(d*_beta(1))), n >= 1.
  FieldElement xi(std::size_t n) const;
  /// sum c_n beta^{-n}, summed in closed form.
  template <class Tag>
  FieldElement nu(const BasicWord<Tag>& w) const;
  FieldElement value(const Expansion& e) const;
  /// The beta-fractional part {x}_beta.
  FieldElement frac_part(const FieldElement& x) const;

 private:
  FieldElement nu_digits(const std::vector<Digit>& pre, const std::vector<Digit>& per) const;
  FieldElement finite_sum(const std::vector<Digit>& ds) const;
  const FieldElement& periodic_factor(std::size_t p) const;

  FieldPtr field_;
  std::size_t budget_;
  Digit bound_ = 0;
  FieldElement beta_inv_;
  DigitWord d_one_;
  DigitWord d_star_;
  std::vector<FieldElement> orbit_;
  std::size_t orbit_pre_ = 0;  // T^m(1) is periodic from orbit_pre_ on
  bool orbit_hits_zero_ = false;
  std::vector<FieldElement> xi_table_;

  mutable std::mutex cache_mu_;
  mutable std::map<std::size_t, FieldElement> periodic_factor_;
};

}  // namespace betafin
