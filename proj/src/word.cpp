#include "betafin/word.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <type_traits>

#include "betafin/errors.hpp"

namespace betafin {

template <class Tag>
BasicWord<Tag>::BasicWord(std::vector<Digit> preperiod, std::vector<Digit> period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
  canonicalize();
}

template <class Tag>
void BasicWord<Tag>::canonicalize() {
  // Primitive period.
  const std::size_t n = per_.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = per_[i] == per_[i - p];
    if (ok) {
      per_.resize(p);
      break;
    }
  }
  if (std::all_of(per_.begin(), per_.end(), [](Digit d) { return d == 0; })) per_.clear();
  if (per_.empty()) {
    while (!pre_.empty() && pre_.back() == 0) pre_.pop_back();
    return;
  }
  // Absorb the tail of the preperiod into the period.
  while (!pre_.empty() && pre_.back() == per_.back()) {
    pre_.pop_back();
    std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
  }
}

template <class Tag>
BasicWord<Tag> BasicWord<Tag>::parse(const std::string& text) {
  std::vector<Digit> pre, per;
  bool in_period = false, closed = false, any = false;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == '(') {
      if (in_period || closed) throw ParseError("unexpected '(' in word");
      in_period = true;
      ++i;
    } else if (c == ')') {
      if (!in_period) throw ParseError("unexpected ')' in word");
      in_period = false;
      closed = true;
      ++i;
    } else if (c == '-' || (c >= '0' && c <= '9')) {
      if (closed) throw ParseError("digits after the period");
      std::size_t j = i + (c == '-' ? 1 : 0);
      std::size_t start = j;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      if (j == start) throw ParseError("bad digit in word");
      Digit v = std::stoll(text.substr(i, j - i));
      if (v < 0 && std::is_same_v<Tag, DigitTag>) throw ParseError("negative digit in digit word");
      (in_period ? per : pre).push_back(v);
      any = true;
      i = j;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in word");
    }
  }
  if (in_period) throw ParseError("unterminated period");
  if (!any) throw ParseError("empty word");
  return BasicWord(std::move(pre), std::move(per));
}

template <class Tag>
Digit BasicWord<Tag>::at(std::size_t n) const {
  if (n < pre_.size()) return pre_[n];
  if (per_.empty()) return 0;
  return per_[(n - pre_.size()) % per_.size()];
}

template <class Tag>
std::vector<Digit> BasicWord<Tag>::prefix(std::size_t n) const {
  std::vector<Digit> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i);
  return out;
}

template <class Tag>
BasicWord<Tag> BasicWord<Tag>::shift(std::size_t n) const {
  if (n <= pre_.size()) return BasicWord(std::vector<Digit>(pre_.begin() + static_cast<std::ptrdiff_t>(n), pre_.end()), per_);
  if (per_.empty()) return BasicWord();
  std::size_t r = (n - pre_.size()) % per_.size();
  std::vector<Digit> rot(per_.begin() + static_cast<std::ptrdiff_t>(r), per_.end());
  rot.insert(rot.end(), per_.begin(), per_.begin() + static_cast<std::ptrdiff_t>(r));
  return BasicWord({}, std::move(rot));
}

template <class Tag>
BasicWord<Tag> BasicWord<Tag>::prepend(const std::vector<Digit>& head) const {
  std::vector<Digit> pre(head);
  pre.insert(pre.end(), pre_.begin(), pre_.end());
  return BasicWord(std::move(pre), per_);
}

template <class Tag>
Digit BasicWord<Tag>::min_digit() const {
  Digit m = per_.empty() ? 0 : per_.front();
  for (Digit d : pre_) m = std::min(m, d);
  for (Digit d : per_) m = std::min(m, d);
  return m;
}

template <class Tag>
Digit BasicWord<Tag>::max_digit() const {
  Digit m = per_.empty() ? 0 : per_.front();
  for (Digit d : pre_) m = std::max(m, d);
  for (Digit d : per_) m = std::max(m, d);
  return m;
}

template <class Tag>
std::string BasicWord<Tag>::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (Digit d : pre_) {
    out << (first ? "" : " ") << d;
    first = false;
  }
  if (!per_.empty()) {
    out << (first ? "(" : " (");
    for (std::size_t i = 0; i < per_.size(); ++i) out << (i ? " " : "") << per_[i];
    out << ')';
  }
  return out.str();
}

template <class A, class B>
std::size_t agreement_window(const BasicWord<A>& a, const BasicWord<B>& b) {
  std::size_t l = std::lcm(a.cycle_length(), b.cycle_length());
  return std::max(a.preperiod().size(), b.preperiod().size()) + l;
}

template <class A, class B>
int lex_compare(const BasicWord<A>& a, const BasicWord<B>& b) {
  // One extra common period beyond the exact bound, as a guard.
  const std::size_t n = agreement_window(a, b) + std::lcm(a.cycle_length(), b.cycle_length());
  for (std::size_t i = 0; i < n; ++i) {
    Digit x = a.at(i), y = b.at(i);
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

template <class A, class B>
SignedWord subtract(const BasicWord<A>& a, const BasicWord<B>& b) {
  const std::size_t pre = std::max(a.preperiod().size(), b.preperiod().size());
  const std::size_t per = std::lcm(a.cycle_length(), b.cycle_length());
  std::vector<Digit> u(pre), v(per);
  for (std::size_t i = 0; i < pre; ++i) u[i] = a.at(i) - b.at(i);
  for (std::size_t i = 0; i < per; ++i) v[i] = a.at(pre + i) - b.at(pre + i);
  return SignedWord(std::move(u), std::move(v));
}

template <class Tag>
std::string compact_string(const BasicWord<Tag>& w) {
  bool wide = w.min_digit() < 0 || w.max_digit() > 9;
  std::ostringstream out;
  auto emit = [&](const std::vector<Digit>& ds) {
    for (std::size_t i = 0; i < ds.size(); ++i) out << (wide && i ? " " : "") << ds[i];
  };
  emit(w.preperiod());
  if (!w.period().empty()) {
    out << (wide && !w.preperiod().empty() ? " (" : "(");
    emit(w.period());
    out << ')';
  }
  if (w.is_zero()) out << '0';
  return out.str();
}

template class BasicWord<DigitTag>;
template class BasicWord<SignedTag>;

#define BETAFIN_PAIR(A, B)                                                   \
  template int lex_compare(const BasicWord<A>&, const BasicWord<B>&);        \
  template SignedWord subtract(const BasicWord<A>&, const BasicWord<B>&);    \
  template std::size_t agreement_window(const BasicWord<A>&, const BasicWord<B>&);
BETAFIN_PAIR(DigitTag, DigitTag)
BETAFIN_PAIR(DigitTag, SignedTag)
BETAFIN_PAIR(SignedTag, DigitTag)
BETAFIN_PAIR(SignedTag, SignedTag)
#undef BETAFIN_PAIR

template std::string compact_string(const BasicWord<DigitTag>&);
template std::string compact_string(const BasicWord<SignedTag>&);

}  // namespace betafin
