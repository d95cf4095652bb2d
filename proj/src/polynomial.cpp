#include "betafin/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace betafin {

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

Polynomial Polynomial::from_integers(std::span<const Integer> coeffs) {
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  return Polynomial(std::move(c));
}

Polynomial Polynomial::monomial(int degree, Rational coeff) {
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
  c.back() = std::move(coeff);
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() <= 0) return {};
  std::vector<Rational> c(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::reversed() const {
  std::vector<Rational> c(coeffs_.rbegin(), coeffs_.rend());
  return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled_argument(const Rational& rho) const {
  std::vector<Rational> c(coeffs_);
  Rational power = 1;
  for (auto& ci : c) {
    ci *= power;
    power *= rho;
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  Rational lc = leading();
  std::vector<Rational> c(coeffs_);
  for (auto& ci : c) ci /= lc;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::strip_zero_roots() const {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q != 0; });
  return Polynomial(std::vector<Rational>(first, coeffs_.end()));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.coeffs_.size()) c[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) c[i] += b.coeffs_[i];
  }
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& p) {
  std::vector<Rational> c(p.coeffs_);
  for (auto& ci : c) ci = -ci;
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
  std::vector<Rational> c(p.coeffs_);
  for (auto& ci : c) ci *= s;
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  assert(!b.is_zero());
  std::vector<Rational> rem(a.coeffs_);
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db) + 1);
  for (int i = a.degree(); i >= db; --i) {
    Rational q = rem[static_cast<std::size_t>(i)] / b.leading();
    quot[static_cast<std::size_t>(i - db)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= q * b.coeffs_[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::string Polynomial::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (c < 0) {
      out << '-';
      c = -c;
    } else if (!first) {
      out << '+';
    }
    if (c != 1 || i == 0) out << c.get_str();
    if (i >= 1) out << var;
    if (i >= 2) out << '^' << i;
    first = false;
  }
  return out.str();
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = Polynomial::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  Polynomial g = gcd(p, p.derivative());
  return Polynomial::divmod(p, g).first;
}

SturmChain::SturmChain(const Polynomial& p) {
  Polynomial base = squarefree_part(p);
  chain_.push_back(base);
  if (base.degree() <= 0) return;
  chain_.push_back(base.derivative());
  while (chain_.back().degree() > 0) {
    auto r = Polynomial::divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.is_zero()) break;
    chain_.push_back(-r);
  }
}

int SturmChain::variations(const Rational& x) const {
  int count = 0;
  int last = 0;
  for (const auto& p : chain_) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int SturmChain::count_roots(const Rational& a, const Rational& b) const {
  return variations(a) - variations(b);
}

std::vector<Integer> integer_roots(std::span<const Integer> coeffs) {
  assert(!coeffs.empty() && coeffs.front() != 0);
  Integer c0 = abs(coeffs.front());
  auto eval = [&](const Integer& x) {
    Integer acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  std::vector<Integer> roots;
  auto test = [&](const Integer& d) {
    for (const Integer& cand : {d, Integer(-d)})
      if (eval(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end()) roots.push_back(cand);
  };
  for (Integer d = 1; d * d <= c0; ++d) {
    if (c0 % d != 0) continue;
    test(d);
    test(Integer(c0 / d));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace betafin
