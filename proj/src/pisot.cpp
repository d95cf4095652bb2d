// Root location relative to the unit circle, all in exact rational arithmetic.

#include <utility>

#include "betafin/field.hpp"

namespace betafin {

namespace {

constexpr int kMaxPerturbationExponent = 200;

// Strip every factor (z - 1) and (z + 1).
Polynomial remove_unit_real_roots(Polynomial g) {
  for (const Rational& r : {Rational(1), Rational(-1)}) {
    Polynomial lin(std::vector<Rational>{-r, 1});
    while (g.degree() > 0 && g(r) == 0) g = Polynomial::divmod(g, lin).first;
  }
  return g;
}

}  // namespace

bool has_unit_circle_root(const Polynomial& f0) {
  Polynomial f = f0.strip_zero_roots();
  if (f.degree() <= 0) return false;
  if (f(1) == 0 || f(-1) == 0) return true;
  // Roots on the circle are common to f and its reciprocal.
  Polynomial g = remove_unit_real_roots(gcd(f, f.reversed()));
  if (g.degree() <= 0) return false;
  // g is palindromic of even degree 2k: z^{-k} g(z) = h(z + 1/z).
  const int k = g.degree() / 2;
  Polynomial y(std::vector<Rational>{0, 1});
  Polynomial prev(std::vector<Rational>{2});  // D_0
  Polynomial cur = y;                          // D_1
  Polynomial h(std::vector<Rational>{g.coeff(k)});
  for (int j = 1; j <= k; ++j) {
    h = h + g.coeff(k + j) * cur;
    Polynomial next = y * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  // z on the circle and z != +-1  <=>  z + 1/z real in (-2, 2).
  SturmChain sturm(h);
  return sturm.count_roots(-2, 2) + (h(-2) == 0 ? 1 : 0) > 0;
}

std::optional<int> schur_cohn_inside(Polynomial f) {
  int count = 0;
  while (f.degree() > 0) {
    const Rational c0 = f.coeff(0);
    const Rational cn = f.leading();
    if (c0 == 0) {
      Polynomial g = f.strip_zero_roots();
      count += f.degree() - g.degree();
      f = std::move(g);
      continue;
    }
    const Rational abs0 = abs(c0), absn = abs(cn);
    if (absn > abs0) {
      // cn f - c0 f* vanishes at 0 and has the same zeros inside as f.
      Polynomial g = cn * f - c0 * f.reversed();
      g = Polynomial::divmod(g, Polynomial(std::vector<Rational>{0, 1})).first;
      f = std::move(g);
      ++count;
    } else if (abs0 > absn) {
      f = c0 * f - cn * f.reversed();
    } else {
      return std::nullopt;
    }
  }
  return count;
}

std::optional<int> count_inside_unit_disk(const Polynomial& f0) {
  // Zero roots are inside; handle them up front.
  int zeros = 0;
  while (zeros <= f0.degree() && f0.coeff(zeros) == 0) ++zeros;
  Polynomial f = f0.strip_zero_roots();
  if (auto n = schur_cohn_inside(f)) return *n + zeros;
  // Singular step: count inside slightly smaller and slightly larger circles.
  for (int k = 4; k <= kMaxPerturbationExponent; ++k) {
    Rational eps = Rational(1) / Rational(Integer(1) << k);
    Polynomial inner = f.scaled_argument(1 - eps);
    Polynomial outer = f.scaled_argument(1 + eps);
    if (has_unit_circle_root(inner) || has_unit_circle_root(outer)) continue;
    auto a = schur_cohn_inside(inner);
    auto b = schur_cohn_inside(outer);
    if (a && b && *a == *b) return *a + zeros;
  }
  return std::nullopt;
}

PisotReport pisot_report(const BetaField& field) {
  PisotReport r;
  const Polynomial& p = field.polynomial();
  if (has_unit_circle_root(p)) {
    r.boundary_root = true;
    r.diagnostic = "BoundaryRoot: a root of modulus 1 exists";
    return r;
  }
  auto inside = count_inside_unit_disk(p);
  if (!inside) {
    r.diagnostic = "Schur-Cohn recursion stayed singular under perturbation";
    return r;
  }
  r.roots_inside = *inside;
  r.pisot = *inside == field.degree() - 1;
  if (!r.pisot)
    r.diagnostic = std::to_string(field.degree() - *inside) + " roots outside the closed unit disk";
  return r;
}

bool is_pisot(const BetaField& field) { return pisot_report(field).pisot; }

bool cubic_pisot_criterion(const Integer& a, const Integer& b, const Integer& c) {
  return abs(b - 1) < a + c && c * c - b < sgn(c) * (1 + a * c);
}

}  // namespace betafin
