#include "betafin/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace betafin {

namespace {

constexpr std::uint64_t kBisectionCap = 1'000'000;

Polynomial defining_polynomial(const std::vector<Integer>& a) {
  std::vector<Rational> c(a.size() + 1);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  c.back() = 1;
  return Polynomial(std::move(c));
}

// Interval product of q with [plo, phi], plo > 0.
void accumulate(const Rational& q, const Rational& plo, const Rational& phi, Rational& lo, Rational& hi) {
  if (q >= 0) {
    lo += q * plo;
    hi += q * phi;
  } else {
    lo += q * phi;
    hi += q * plo;
  }
}

std::vector<Integer> divisors(const Integer& n) {
  Integer m = abs(n);
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    out.push_back(d);
    if (d * d != m) out.push_back(m / d);
  }
  return out;
}

bool is_perfect_square(const Integer& n, Integer* root) {
  if (n < 0) return false;
  Integer r = sqrt(n);
  if (r * r != n) return false;
  *root = r;
  return true;
}

// Monic quartic x^4 + c3 x^3 + c2 x^2 + c1 x + c0 as a product of two monic
// integer quadratics.
bool has_quadratic_factor(const Integer& c0, const Integer& c1, const Integer& c2, const Integer& c3) {
  for (const Integer& d : divisors(c0)) {
    for (const Integer& v : {d, Integer(-d)}) {
      Integer w = c0 / v;
      auto check = [&](const Integer& u) {
        Integer s = c3 - u;
        return v + w + u * s == c2 && u * w + s * v == c1;
      };
      if (w != v) {
        Integer num = c1 - c3 * v;
        Integer den = w - v;
        if (num % den == 0 && check(num / den)) return true;
      } else {
        if (c1 != c3 * v) continue;
        Integer disc = c3 * c3 - 4 * (c2 - 2 * v);
        Integer r;
        if (!is_perfect_square(disc, &r)) continue;
        for (const Integer& num : {Integer(c3 + r), Integer(c3 - r)})
          if (num % 2 == 0 && check(num / 2)) return true;
      }
    }
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------- BetaField

BetaField::BetaField(std::vector<Integer> a, bool irreducibility_verified, Interval initial)
    : a_(std::move(a)), poly_(defining_polynomial(a_)), irreducible_(irreducibility_verified), iv_(std::move(initial)) {
  sign_at_lo_ = poly_.sign_at(iv_.lo);
  refresh_powers_locked();
}

void BetaField::refresh_powers_locked() const {
  const auto d = static_cast<std::size_t>(degree());
  lo_pow_.assign(d, 1);
  hi_pow_.assign(d, 1);
  for (std::size_t i = 1; i < d; ++i) {
    lo_pow_[i] = lo_pow_[i - 1] * iv_.lo;
    hi_pow_[i] = hi_pow_[i - 1] * iv_.hi;
  }
}

void BetaField::bisect_locked() const {
  if (++bisections_ > kBisectionCap) throw InvariantViolation("isolating interval refinement cap exceeded");
  Rational mid = (iv_.lo + iv_.hi) / 2;
  int s = poly_.sign_at(mid);
  if (s == 0) throw InvariantViolation("rational root found during refinement");
  if (s == sign_at_lo_)
    iv_.lo = mid;
  else
    iv_.hi = mid;
  refresh_powers_locked();
}

BetaField::Interval BetaField::isolating_interval() const {
  std::lock_guard lock(mu_);
  return iv_;
}

std::uint64_t BetaField::bisections() const {
  std::lock_guard lock(mu_);
  return bisections_;
}

void BetaField::refine(int n) const {
  std::lock_guard lock(mu_);
  for (int i = 0; i < n; ++i) bisect_locked();
}

BetaField::Interval BetaField::enclose_locked(const std::vector<Rational>& q) const {
  Interval v{0, 0};
  for (std::size_t i = 0; i < q.size(); ++i) accumulate(q[i], lo_pow_[i], hi_pow_[i], v.lo, v.hi);
  return v;
}

int BetaField::sign_of_coords(const std::vector<Rational>& q) const {
  if (std::all_of(q.begin(), q.end(), [](const Rational& c) { return c == 0; })) return 0;
  std::lock_guard lock(mu_);
  for (;;) {
    Interval v = enclose_locked(q);
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    bisect_locked();
  }
}

Integer BetaField::floor_of_coords(const std::vector<Rational>& q) const {
  if (std::all_of(q.begin() + 1, q.end(), [](const Rational& c) { return c == 0; })) return floor_of(q[0]);
  std::lock_guard lock(mu_);
  for (;;) {
    Interval v = enclose_locked(q);
    Integer f = floor_of(v.lo);
    if (v.hi < f + 1) return f;
    bisect_locked();
  }
}

double BetaField::approx(const std::vector<Rational>& q) const {
  std::lock_guard lock(mu_);
  Interval v = enclose_locked(q);
  Rational mid = (v.lo + v.hi) / 2;
  return mid.get_d();
}

FieldElement BetaField::element(std::vector<Rational> coords) const {
  coords.resize(static_cast<std::size_t>(degree()));
  return FieldElement(shared_from_this(), std::move(coords));
}

FieldElement BetaField::zero() const { return element({}); }

FieldElement BetaField::constant(const Rational& q) const { return element({q}); }

FieldElement BetaField::one() const { return constant(1); }

FieldElement BetaField::beta() const { return element({0, 1}); }

FieldElement BetaField::beta_inverse() const {
  // a_0 beta^{-1} = beta^{d-1} - a_{d-1} beta^{d-2} - ... - a_1
  std::vector<Rational> c(static_cast<std::size_t>(degree()));
  for (int i = 0; i + 1 < degree(); ++i) c[static_cast<std::size_t>(i)] = Rational(-a(i + 1)) / a(0);
  c.back() += Rational(1) / a(0);
  return element(std::move(c));
}

FieldElement BetaField::beta_pow(long n) const {
  FieldElement base = n >= 0 ? beta() : beta_inverse();
  unsigned long e = n >= 0 ? static_cast<unsigned long>(n) : static_cast<unsigned long>(-n);
  FieldElement acc = one();
  while (e > 0) {
    if (e & 1UL) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Integer BetaField::floor_beta() const { return beta().floor(); }

// ------------------------------------------------------------- FieldElement

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  coords_.resize(static_cast<std::size_t>(field_->degree()));
}

void FieldElement::same_field(const FieldElement& o) const {
  if (field_ != o.field_) throw FieldMismatch();
}

bool FieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

FieldElement FieldElement::frac() const { return *this - Rational(floor()); }

FieldElement FieldElement::operator-() const {
  FieldElement r(*this);
  for (auto& c : r.coords_) c = -c;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  same_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  same_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  same_field(o);
  const std::size_t d = coords_.size();
  std::vector<Rational> prod(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (coords_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += coords_[i] * o.coords_[j];
  }
  // beta^d = sum a_i beta^i
  const auto& a = field_->coeffs();
  for (std::size_t k = prod.size() - 1; k >= d; --k) {
    if (prod[k] == 0) continue;
    Rational c = prod[k];
    prod[k] = 0;
    for (std::size_t i = 0; i < d; ++i) prod[k - d + i] += c * a[i];
  }
  prod.resize(d);
  coords_ = std::move(prod);
  return *this;
}

FieldElement& FieldElement::operator*=(const Rational& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

FieldElement operator+(FieldElement a, const Rational& s) {
  a.coords_[0] += s;
  return a;
}

FieldElement operator-(FieldElement a, const Rational& s) {
  a.coords_[0] -= s;
  return a;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  a.same_field(b);
  return a.coords_ == b.coords_;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero field element");
  const std::size_t d = coords_.size();
  // Column j of M holds the coordinates of x * beta^j; solve M y = e_0.
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
  FieldElement col = *this;
  const FieldElement b = field_->beta();
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coords_[i];
    col *= b;
  }
  m[0][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && m[piv][c] == 0) ++piv;
    if (piv == d) throw InvariantViolation("singular multiplication matrix; polynomial not irreducible");
    std::swap(m[c], m[piv]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<Rational> y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = m[i][d] / m[i][i];
  return FieldElement(field_, std::move(y));
}

std::string FieldElement::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < coords_.size(); ++i) out << (i ? ", " : "") << coords_[i].get_str();
  out << ']';
  return out.str();
}

FieldElement elem_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  throw std::invalid_argument("unknown op");
}

// ------------------------------------------------------------- construction

bool is_reducible(const std::vector<Integer>& a, bool* complete) {
  const int d = static_cast<int>(a.size());
  std::vector<Integer> p(a.size() + 1);
  for (std::size_t i = 0; i < a.size(); ++i) p[i] = -a[i];
  p.back() = 1;
  if (complete) *complete = d <= 4;
  if (!integer_roots(p).empty()) return true;
  if (d == 4) return has_quadratic_factor(p[0], p[1], p[2], p[3]);
  return false;
}

FieldPtr make_field(std::vector<Integer> a) {
  if (a.size() < 2) throw ParseError("degree must be at least 2");
  if (a[0] == 0) throw ParseError("constant coefficient must be nonzero");
  bool complete = true;
  if (is_reducible(a, &complete)) throw Reducible("polynomial " + defining_polynomial(a).to_string() + " is reducible");

  Polynomial p = defining_polynomial(a);
  Integer sum = 0;
  for (const auto& ai : a) sum += abs(ai);
  Rational lo = 1;
  Rational hi = Rational(1 + std::max(Integer(1), sum));
  SturmChain sturm(p);
  if (sturm.count_roots(lo, hi) == 0) throw NoRootAboveOne("no real root greater than 1 for " + p.to_string());

  // Isolate the largest root, then push lo past 1.
  while (sturm.count_roots(lo, hi) > 1) {
    Rational mid = (lo + hi) / 2;
    if (sturm.count_roots(mid, hi) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  const int s_hi = p.sign_at(hi);
  while (lo <= 1 || p.sign_at(lo) == s_hi) {
    Rational mid = (lo + hi) / 2;
    if (p.sign_at(mid) == s_hi)
      hi = mid;
    else
      lo = mid;
  }
  auto field = std::make_shared<BetaField>(std::move(a), complete, BetaField::Interval{lo, hi});
  Rational target = Rational(1) / Rational(Integer(1) << 64);
  while (true) {
    auto iv = field->isolating_interval();
    if (iv.hi - iv.lo <= target) break;
    field->refine(1);
  }
  return field;
}

std::vector<Integer> parse_polynomial(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty polynomial");

  std::vector<Integer> p;  // coefficients of p, low to high
  if (s.find('x') == std::string::npos) {
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      Integer v;
      if (tok.empty() || v.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10) != 0)
        throw ParseError("bad coefficient '" + tok + "'");
      p.push_back(v);
    }
  } else {
    std::size_t i = 0;
    auto digits = [&](std::size_t& j) {
      std::size_t start = j;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      return s.substr(start, j - start);
    };
    while (i < s.size()) {
      int sgn = 1;
      if (s[i] == '+' || s[i] == '-') {
        if (s[i] == '-') sgn = -1;
        ++i;
      } else if (i != 0) {
        throw ParseError("expected sign in polynomial at position " + std::to_string(i));
      }
      std::string num = digits(i);
      if (i < s.size() && s[i] == '*') ++i;
      Integer coef = num.empty() ? Integer(1) : Integer(num);
      std::size_t power = 0;
      if (i < s.size() && s[i] == 'x') {
        ++i;
        power = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          std::string e = digits(i);
          if (e.empty()) throw ParseError("missing exponent");
          power = std::stoul(e);
        }
      } else if (num.empty()) {
        throw ParseError("empty term in polynomial");
      }
      if (p.size() <= power) p.resize(power + 1);
      p[power] += sgn * coef;
    }
    while (!p.empty() && p.back() == 0) p.pop_back();
  }
  if (p.size() < 3) throw ParseError("degree must be at least 2");
  if (p.back() != 1) throw ParseError("polynomial must be monic");
  std::vector<Integer> a(p.size() - 1);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = -p[k];
  return a;
}

}  // namespace betafin
