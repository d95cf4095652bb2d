#include "betafin/normalization.hpp"

#include <map>
#include <numeric>
#include <sstream>

namespace betafin {

namespace {

std::vector<Digit> incremented_prefix(const DigitWord& c, std::size_t len) {
  std::vector<Digit> p = c.prefix(len);
  p.back() += 1;
  return p;
}

std::string coords_json(const std::vector<Rational>& q) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < q.size(); ++i) out << (i ? "," : "") << '"' << q[i].get_str() << '"';
  out << ']';
  return out.str();
}

}  // namespace

// ------------------------------------------------------------- free blocks

std::size_t FreeBlockDecomposition::at(std::size_t i) const {
  if (i == 0) return 0;
  const std::size_t idx = i - 1;
  if (idx < head.size()) return head[idx];
  const std::size_t t = idx - head.size();
  return cycle[t % cycle.size()] + (t / cycle.size()) * shift;
}

std::size_t FreeBlockDecomposition::block_containing(std::size_t ell) const {
  if (ell == 0) throw OutOfRange("positions start at 1");
  std::size_t i = 0;
  while (at(i + 1) < ell) ++i;
  return i;
}

std::vector<std::size_t> FreeBlockDecomposition::first(std::size_t n) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(at(i));
  return out;
}

FreeBlockDecomposition free_blocks(const BetaNumeration& num, const DigitWord& w) {
  const DigitWord& d = num.d_beta_star();
  const std::size_t pre = w.preperiod().size();
  const std::size_t cyc = w.cycle_length();
  auto state = [&](std::size_t k) { return k < pre ? k : pre + (k - pre) % cyc; };

  std::vector<std::size_t> ks{0};
  std::map<std::size_t, std::size_t> seen;  // suffix state -> position in ks
  for (;;) {
    const std::size_t k = ks.back();
    auto [it, fresh] = seen.emplace(state(k), ks.size() - 1);
    if (!fresh) {
      const std::size_t a = it->second, b = ks.size() - 1;
      FreeBlockDecomposition out;
      out.head.assign(ks.begin() + 1, ks.begin() + static_cast<std::ptrdiff_t>(a) + 1);
      out.cycle.assign(ks.begin() + static_cast<std::ptrdiff_t>(a) + 1, ks.begin() + static_cast<std::ptrdiff_t>(b) + 1);
      out.shift = ks[b] - ks[a];
      return out;
    }
    const DigitWord suffix = w.shift(k);
    const std::size_t limit = agreement_window(suffix, d) + std::lcm(suffix.cycle_length(), d.cycle_length());
    std::size_t j = 0;
    while (j < limit && suffix.at(j) == d.at(j)) ++j;
    if (j == limit || suffix.at(j) > d.at(j))
      throw NotAdmissible("word " + w.to_string() + " is not admissible");
    ks.push_back(k + j + 1);
  }
}

// ------------------------------------------------------------------- carry

CarryResult carry_step(const BetaNumeration& num, const DigitWord& c, const FreeBlockDecomposition& blocks,
                       std::size_t i, std::size_t ell, const DigitWord& tail) {
  if (i == 0) throw NotApplicable("the carry formula needs k_i >= 1");
  const std::size_t ki = blocks.at(i), kn = blocks.at(i + 1);
  if (ell <= ki) throw NotApplicable("position must lie beyond k_i");

  CarryResult r;
  if (ell < kn) {
    r.theta = 1;
    r.c_tilde = tail.prepend(incremented_prefix(c, ell));
  } else {
    r.theta = 0;
    std::vector<Digit> h = incremented_prefix(c, kn);
    h.resize(ell, 0);
    r.c_tilde = tail.prepend(h);
  }
  const bool admissible = num.is_admissible(r.c_tilde);
  if (admissible && r.theta == 0) throw NotApplicable("word is already admissible");

  r.head = incremented_prefix(c, ki);
  r.head.resize(ell - 1, 0);
  r.head.push_back(r.theta);
  r.tail = subtract(tail, num.d_beta_star().shift(ell - ki));
  r.carry = r.tail.prepend(r.head);

  if (!(num.nu(r.c_tilde) == num.nu(r.carry))) throw InvariantViolation("carry rewrite changed the value");
  if (!admissible) {
    FieldElement slack = num.nu(tail) + Rational(r.theta) - num.xi(ell - ki + 1);
    if (slack.sign() < 0) throw InvariantViolation("carry inequality theta + nu(c') - xi >= 0 failed");
  }
  return r;
}

// ----------------------------------------------------------------- add one

std::string KeyWitness::to_json() const {
  std::ostringstream out;
  out << "{\"theta\": " << theta << ", \"omegas\": [";
  for (std::size_t j = 0; j < omegas.size(); ++j) out << (j ? ", " : "") << omegas[j];
  out << "], \"lhs\": " << coords_json(lhs) << ", \"rhs\": " << coords_json(rhs)
      << ", \"verified\": " << (verified ? "true" : "false") << '}';
  return out.str();
}

AddOneResult add_one(const BetaNumeration& num, const FieldElement& x) {
  const FieldPtr& F = num.field();
  const FieldElement x1 = x + Rational(1);
  const long lx = num.big_l(x);
  const long ell_l = num.big_l(x1);
  const auto ell = static_cast<std::size_t>(ell_l);
  const FieldElement target = F->beta_pow(-ell_l) * x1;

  // Carry look-ahead: pad so that position ell is the units digit.
  const DigitWord c = num.d_beta(F->beta_pow(-lx) * x).prepend(std::vector<Digit>(static_cast<std::size_t>(ell_l - lx), 0));
  const FreeBlockDecomposition blocks = free_blocks(num, c);
  const std::size_t i = blocks.block_containing(ell);
  const std::size_t ki = blocks.at(i);
  const int theta = ell < blocks.at(i + 1) ? 1 : 0;
  const FieldElement y0 = num.nu(c.shift(ell));

  DigitWord current = c.shift(ell).prepend(incremented_prefix(c, ell));
  if (!(num.nu(current) == target)) throw InvariantViolation("c_0^+ does not represent beta^-ell (x+1)");

  std::vector<std::size_t> used;  // arguments m of the subtracted xi(m)
  std::size_t n = 0;
  if (!num.is_admissible(current)) {
    used.push_back(ell - ki + 1);
    FieldElement y = y0 + Rational(theta) - num.xi(ell - ki + 1);
    if (compare(y, F->one()) >= 0) throw InvariantViolation("gamma < 1 failed");
    for (n = 1;; ++n) {
      if (n > i) throw CascadeOverrun("carry cascade ran past the first free block");
      if (y.sign() < 0 || compare(y, F->one()) >= 0) throw InvariantViolation("cascade value left [0, 1)");
      const std::size_t kk = blocks.at(i - n + 1);
      std::vector<Digit> h = incremented_prefix(c, kk);
      h.resize(ell, 0);
      current = num.d_beta(y).prepend(h);
      if (!(num.nu(current) == target)) throw InvariantViolation("cascade word changed value");
      if (num.is_admissible(current)) break;
      const std::size_t m = ell - blocks.at(i - n) + 1;
      used.push_back(m);
      y -= num.xi(m);
    }
  } else if (theta != 0) {
    throw InvariantViolation("admissible c_0^+ with theta = 1");
  }

  KeyWitness w;
  w.theta = n == 0 ? 0 : theta;
  w.cascade_steps = n;
  for (std::size_t m : used) {
    const std::size_t e = num.xi_exponent(m);
    if (w.omegas.size() <= e) w.omegas.resize(e + 1, 0);
    ++w.omegas[e];
  }
  while (!w.omegas.empty() && w.omegas.back() == 0) w.omegas.pop_back();

  const Expansion direct = num.beta_expand(x1);
  FieldElement lhs = num.frac_part(x1) - y0;
  FieldElement rhs = F->constant(w.theta);
  for (std::size_t j = 0; j < w.omegas.size(); ++j) rhs -= num.orbit_of_one()[j] * Rational(w.omegas[j]);
  w.lhs = lhs.coords();
  w.rhs = rhs.coords();
  w.verified = lhs == rhs && direct.exponent == ell_l && direct.word == current;
  if (!w.verified) throw InvariantViolation("key identity failed for x = " + x.to_string());
  return {Expansion{ell_l, current}, std::move(w)};
}

bool check_natural_witness(const BetaNumeration& num, long n, const std::vector<long>& omegas) {
  const FieldPtr& F = num.field();
  FieldElement s = num.frac_part(F->constant(n));
  const auto& orbit = num.orbit_of_one();
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    if (omegas[k] < 0) return false;
    const std::size_t e = k + 1;
    // T^e(1) past the stored orbit is either zero or wraps periodically.
    if (e < orbit.size()) {
      s += orbit[e] * Rational(omegas[k]);
    } else if (omegas[k] != 0) {
      return false;
    }
  }
  return s.is_rational() && s.coords()[0].get_den() == 1;
}

std::vector<std::vector<long>> witnesses_up_to(const BetaNumeration& num, long n_max) {
  const FieldPtr& F = num.field();
  std::vector<std::vector<long>> out{{}};
  std::vector<long> acc;
  for (long n = 0; n < n_max; ++n) {
    const KeyWitness w = add_one(num, F->constant(n)).witness;
    // T^0(1) = 1 and theta are integers; they vanish modulo Z.
    if (acc.size() + 1 < w.omegas.size()) acc.resize(w.omegas.size() - 1, 0);
    for (std::size_t j = 1; j < w.omegas.size(); ++j) acc[j - 1] += w.omegas[j];
    if (!check_natural_witness(num, n + 1, acc)) throw InvariantViolation("natural witness failed at N = " + std::to_string(n + 1));
    out.push_back(acc);
  }
  return out;
}

std::vector<long> witness_for_natural(const BetaNumeration& num, long n) {
  if (n < 0) throw OutOfRange("N must be nonnegative");
  return witnesses_up_to(num, n).back();
}

}  // namespace betafin
