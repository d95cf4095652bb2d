#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace betafin {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(const Integer& z) { return sgn(z); }

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// Dense univariate polynomial over Q, coefficients stored low to high.
/// The zero polynomial has degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial from_integers(std::span<const Integer> coeffs);
  static Polynomial monomial(int degree, Rational coeff = 1);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int i) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const { return sign_of((*this)(x)); }

  Polynomial derivative() const;
  /// z^n p(1/z) for n = degree().
  Polynomial reversed() const;
  /// p(rho * z).
  Polynomial scaled_argument(const Rational& rho) const;
  Polynomial monic() const;
  /// p(z) / z^k where z^k is the largest power dividing p.
  Polynomial strip_zero_roots() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& p);
  friend Polynomial operator-(const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  /// Euclidean division: a = q*b + r, deg r < deg b.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic gcd; gcd(0, 0) is 0.
Polynomial gcd(Polynomial a, Polynomial b);
Polynomial squarefree_part(const Polynomial& p);

/// Sturm chain of the square-free part of p.
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& p);
  int variations(const Rational& x) const;
  /// Number of distinct real roots in the half-open interval (a, b].
  int count_roots(const Rational& a, const Rational& b) const;
  const Polynomial& base() const { return chain_.front(); }

 private:
  std::vector<Polynomial> chain_;
};

/// Integer roots of a monic integer polynomial (which are all its rational
/// roots). Requires p(0) != 0.
std::vector<Integer> integer_roots(std::span<const Integer> coeffs_low_to_high);

}  // namespace betafin
