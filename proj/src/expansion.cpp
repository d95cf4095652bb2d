#include "betafin/expansion.hpp"

#include <string>

namespace betafin {

namespace {

Digit to_digit(const Integer& z) {
  if (!z.fits_slong_p()) throw OutOfRange("digit does not fit in 64 bits");
  return z.get_si();
}

}  // namespace

BetaNumeration::BetaNumeration(FieldPtr field, std::size_t orbit_budget)
    : field_(std::move(field)), budget_(orbit_budget), beta_inv_(field_->beta_inverse()) {
  const FieldElement beta = field_->beta();
  bound_ = to_digit(beta.floor());
  if (beta.is_rational()) bound_ -= 1;  // integer base; unreachable for irreducible p

  // Orbit of 1 and d_beta(1) in one pass.
  std::map<std::vector<Rational>, std::size_t> seen;
  std::vector<Digit> digits;
  FieldElement x = field_->one();
  for (;;) {
    if (x.is_zero()) {
      orbit_hits_zero_ = true;
      break;
    }
    auto [it, fresh] = seen.emplace(x.coords(), orbit_.size());
    if (!fresh) {
      orbit_pre_ = it->second;
      break;
    }
    if (orbit_.size() >= budget_) throw OrbitBudgetExceeded("orbit of 1 exceeds " + std::to_string(budget_) + " states");
    orbit_.push_back(x);
    FieldElement bx = beta * x;
    Integer c = bx.floor();
    digits.push_back(to_digit(c));
    x = bx - Rational(c);
  }
  if (orbit_hits_zero_) {
    d_one_ = DigitWord::finite(digits);
    std::vector<Digit> per(digits);
    per.back() -= 1;
    d_star_ = DigitWord::purely_periodic(std::move(per));
    orbit_pre_ = 0;  // xi(n) is purely periodic with period q
  } else {
    std::vector<Digit> pre(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(orbit_pre_));
    std::vector<Digit> per(digits.begin() + static_cast<std::ptrdiff_t>(orbit_pre_), digits.end());
    d_one_ = DigitWord(std::move(pre), std::move(per));
    d_star_ = d_one_;
  }
  xi_table_.reserve(orbit_.size());
  for (std::size_t m = 0; m < orbit_.size(); ++m) xi_table_.push_back(nu(d_star_.shift(m)));
}

std::size_t BetaNumeration::xi_exponent(std::size_t n) const {
  if (n == 0) throw OutOfRange("xi is indexed from 1");
  const std::size_t m = n - 1;
  const std::size_t len = orbit_.size();
  if (m < len) return m;
  const std::size_t per = len - orbit_pre_;
  return orbit_pre_ + (m - orbit_pre_) % per;
}

FieldElement BetaNumeration::xi(std::size_t n) const { return xi_table_[xi_exponent(n)]; }

std::pair<Digit, FieldElement> BetaNumeration::t_map(const FieldElement& x) const {
  if (x.sign() < 0 || compare(x, field_->one()) > 0) throw OutOfRange("T is defined on [0, 1]");
  FieldElement bx = field_->beta() * x;
  Integer c = bx.floor();
  return {to_digit(c), bx - Rational(c)};
}

DigitWord BetaNumeration::d_beta(const FieldElement& x0) const {
  if (x0.sign() < 0 || compare(x0, field_->one()) > 0) throw OutOfRange("d_beta is defined on [0, 1]");
  const FieldElement beta = field_->beta();
  std::map<std::vector<Rational>, std::size_t> seen;
  std::vector<Digit> digits;
  FieldElement x = x0;
  for (;;) {
    if (x.is_zero()) return DigitWord::finite(std::move(digits));
    auto [it, fresh] = seen.emplace(x.coords(), digits.size());
    if (!fresh) {
      const auto start = static_cast<std::ptrdiff_t>(it->second);
      return DigitWord(std::vector<Digit>(digits.begin(), digits.begin() + start),
                       std::vector<Digit>(digits.begin() + start, digits.end()));
    }
    if (digits.size() >= budget_) throw OrbitBudgetExceeded("T-orbit exceeds " + std::to_string(budget_) + " states");
    FieldElement bx = beta * x;
    Integer c = bx.floor();
    digits.push_back(to_digit(c));
    x = bx - Rational(c);
  }
}

bool BetaNumeration::is_admissible(const DigitWord& w) const {
  if (w.min_digit() < 0) return false;
  const std::size_t shifts = w.preperiod().size() + (w.is_finite() ? 0 : w.period().size());
  for (std::size_t n = 0; n < shifts; ++n)
    if (lex_compare(w.shift(n), d_star_) >= 0) return false;
  return true;
}

long BetaNumeration::big_l(const FieldElement& x) const {
  if (x.sign() < 0) throw OutOfRange("L(x) needs x >= 0");
  const FieldElement beta = field_->beta();
  FieldElement p = field_->one();
  long n = 0;
  while (compare(x, p) >= 0) {
    p *= beta;
    ++n;
  }
  return n;
}

Expansion BetaNumeration::beta_expand(const FieldElement& x) const {
  long l = big_l(x);
  return {l, d_beta(field_->beta_pow(-l) * x)};
}

bool BetaNumeration::is_finite_expansion(const FieldElement& x) const { return beta_expand(x).word.is_finite(); }

FieldElement BetaNumeration::value(const Expansion& e) const { return field_->beta_pow(e.exponent) * nu(e.word); }

FieldElement BetaNumeration::frac_part(const FieldElement& x) const {
  Expansion e = beta_expand(x);
  return nu(e.word.shift(static_cast<std::size_t>(e.exponent)));
}

FieldElement BetaNumeration::finite_sum(const std::vector<Digit>& ds) const {
  // Horner in beta^{-1}: sum_{i>=1} d_i beta^{-i}.
  FieldElement acc = field_->zero();
  for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
    acc += field_->constant(Rational(static_cast<long>(*it)));
    acc *= beta_inv_;
  }
  return acc;
}

const FieldElement& BetaNumeration::periodic_factor(std::size_t p) const {
  std::lock_guard lock(cache_mu_);
  auto it = periodic_factor_.find(p);
  if (it != periodic_factor_.end()) return it->second;
  // beta^p / (beta^p - 1)
  FieldElement bp = field_->beta_pow(static_cast<long>(p));
  FieldElement f = bp * (bp - Rational(1)).inverse();
  return periodic_factor_.emplace(p, std::move(f)).first->second;
}

FieldElement BetaNumeration::nu_digits(const std::vector<Digit>& pre, const std::vector<Digit>& per) const {
  FieldElement v = finite_sum(pre);
  if (per.empty()) return v;
  FieldElement tail = finite_sum(per) * periodic_factor(per.size());
  return v + field_->beta_pow(-static_cast<long>(pre.size())) * tail;
}

template <class Tag>
FieldElement BetaNumeration::nu(const BasicWord<Tag>& w) const {
  return nu_digits(w.preperiod(), w.period());
}

template FieldElement BetaNumeration::nu(const BasicWord<DigitTag>&) const;
template FieldElement BetaNumeration::nu(const BasicWord<SignedTag>&) const;

}  // namespace betafin
