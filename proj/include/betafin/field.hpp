#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "betafin/errors.hpp"
#include "betafin/polynomial.hpp"

namespace betafin {

class BetaField;
class FieldElement;
using FieldPtr = std::shared_ptr<const BetaField>;

/// The number field Q(beta) for the dominant real root beta > 1 of
/// p(x) = x^d - a_{d-1} x^{d-1} - ... - a_1 x - a_0.
///
/// Everything is immutable after construction except the isolating interval,
/// which only ever shrinks. Refinement is guarded by an internal mutex so a
/// field may be shared freely between threads.
class BetaField : public std::enable_shared_from_this<BetaField> {
 public:
  struct Interval {
    Rational lo;
    Rational hi;
  };

  /// Use make_field(); the constructor trusts its arguments.
  BetaField(std::vector<Integer> a, bool irreducibility_verified, Interval initial);

  int degree() const { return static_cast<int>(a_.size()); }
  /// (a_0, ..., a_{d-1}).
  const std::vector<Integer>& coeffs() const { return a_; }
  const Integer& a(int i) const { return a_[static_cast<std::size_t>(i)]; }
  /// p(x) itself, low to high.
  const Polynomial& polynomial() const { return poly_; }
  bool irreducibility_verified() const { return irreducible_; }
  /// Symbolic form such as "x^3-4x^2+4x-2".
  std::string to_string() const { return poly_.to_string(); }

  Interval isolating_interval() const;
  std::uint64_t bisections() const;
  /// Bisect the isolating interval n more times.
  void refine(int n) const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement beta() const;
  FieldElement constant(const Rational& q) const;
  FieldElement element(std::vector<Rational> coords) const;
  /// beta^n for any integer n.
  FieldElement beta_pow(long n) const;
  FieldElement beta_inverse() const;
  Integer floor_beta() const;

  // Interval machinery used by FieldElement; exposed for testing.
  int sign_of_coords(const std::vector<Rational>& q) const;
  Integer floor_of_coords(const std::vector<Rational>& q) const;
  double approx(const std::vector<Rational>& q) const;

 private:
  Interval enclose_locked(const std::vector<Rational>& q) const;
  void bisect_locked() const;
  void refresh_powers_locked() const;

  std::vector<Integer> a_;
  Polynomial poly_;
  bool irreducible_;
  int sign_at_lo_;

  mutable std::mutex mu_;
  mutable Interval iv_;
  mutable std::vector<Rational> lo_pow_, hi_pow_;
  mutable std::uint64_t bisections_ = 0;
};

/// q_0 + q_1 beta + ... + q_{d-1} beta^{d-1} with rational q_i.
class FieldElement {
 public:
  FieldElement(FieldPtr field, std::vector<Rational> coords);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational() const;
  /// Integer coordinates, i.e. an element of Z[beta].
  bool is_integral() const;

  int sign() const { return field_->sign_of_coords(coords_); }
  Integer floor() const { return field_->floor_of_coords(coords_); }
  /// x - floor(x).
  FieldElement frac() const;
  FieldElement inverse() const;
  double approx() const { return field_->approx(coords_); }
  std::string to_string() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator*=(const Rational& s);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator*(FieldElement a, const Rational& s) { return a *= s; }
  friend FieldElement operator*(const Rational& s, FieldElement a) { return a *= s; }
  friend FieldElement operator+(FieldElement a, const Rational& s);
  friend FieldElement operator-(FieldElement a, const Rational& s);

  /// Structural equality; throws FieldMismatch across fields.
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend int compare(const FieldElement& a, const FieldElement& b) { return (a - b).sign(); }
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; }
  friend bool operator<=(const FieldElement& a, const FieldElement& b) { return compare(a, b) <= 0; }
  friend bool operator>(const FieldElement& a, const FieldElement& b) { return compare(a, b) > 0; }
  friend bool operator>=(const FieldElement& a, const FieldElement& b) { return compare(a, b) >= 0; }

 private:
  void same_field(const FieldElement& o) const;
  FieldPtr field_;
  std::vector<Rational> coords_;
};

enum class ArithOp { add, sub, mul };
FieldElement elem_arith(const FieldElement& a, const FieldElement& b, ArithOp op);

/// Build the field for coefficients (a_0, ..., a_{d-1}).
/// Throws ParseError for d < 2 or a_0 == 0, Reducible, NoRootAboveOne.
FieldPtr make_field(std::vector<Integer> a);

/// Parse either "c_0,c_1,...,c_{d-1},1" (coefficients of p, low to high) or a
/// symbolic polynomial such as "x^3-4x^2+4x-2". Returns (a_0, ..., a_{d-1}).
std::vector<Integer> parse_polynomial(const std::string& text);

/// Exact reducibility test over Q: complete for d <= 4. For d >= 5 only linear
/// factors are detected and *complete is set to false.
bool is_reducible(const std::vector<Integer>& a, bool* complete = nullptr);

struct PisotReport {
  bool pisot = false;
  bool boundary_root = false;
  int roots_inside = -1;  // strictly inside the unit disk; -1 if undetermined
  std::string diagnostic;
};

/// Exact Schur-Cohn classification of the roots of p.
PisotReport pisot_report(const BetaField& field);
bool is_pisot(const BetaField& field);

/// Whether f has a root of modulus exactly 1.
bool has_unit_circle_root(const Polynomial& f);
/// Number of roots strictly inside the unit disk, assuming none lies on the
/// circle. nullopt when the plain recursion hits a singular step.
std::optional<int> schur_cohn_inside(Polynomial f);
/// Inside count with the perturbed-radius fallback for singular steps.
std::optional<int> count_inside_unit_disk(const Polynomial& f);

/// Cubic Pisot criterion for x^3 - a x^2 - b x - c:
/// |b - 1| < a + c and c^2 - b < sgn(c)(1 + ac).
bool cubic_pisot_criterion(const Integer& a, const Integer& b, const Integer& c);

}  // namespace betafin
