#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace betafin {

using Digit = std::int64_t;

struct DigitTag {};
struct SignedTag {};

/// Eventually periodic sequence u v v v ... of integer digits, held in
/// canonical form: v is primitive, u is as short as possible, and a zero
/// period is dropped (an empty period means the word ends in 0^infinity,
/// in which case trailing zeros of u are trimmed too).
///
/// Text form: "c1 c2 (p1 p2)". The all-zero word prints as "0".
template <class Tag>
class BasicWord {
 public:
  BasicWord() = default;
  BasicWord(std::vector<Digit> preperiod, std::vector<Digit> period);
  template <class Other>
  explicit BasicWord(const BasicWord<Other>& o) : BasicWord(o.preperiod(), o.period()) {}

  static BasicWord finite(std::vector<Digit> digits) { return BasicWord(std::move(digits), {}); }
  static BasicWord purely_periodic(std::vector<Digit> period) { return BasicWord({}, std::move(period)); }
  /// Parse the text form; throws ParseError.
  static BasicWord parse(const std::string& text);

  const std::vector<Digit>& preperiod() const { return pre_; }
  const std::vector<Digit>& period() const { return per_; }
  bool is_finite() const { return per_.empty(); }
  bool is_zero() const { return pre_.empty() && per_.empty(); }
  /// Period length, counting 0^infinity as a period of length 1.
  std::size_t cycle_length() const { return per_.empty() ? 1 : per_.size(); }

  /// 0-based digit access, any index.
  Digit at(std::size_t n) const;
  Digit operator[](std::size_t n) const { return at(n); }
  std::vector<Digit> prefix(std::size_t n) const;
  /// sigma^n.
  BasicWord shift(std::size_t n) const;
  /// head followed by this word.
  BasicWord prepend(const std::vector<Digit>& head) const;
  Digit min_digit() const;
  Digit max_digit() const;

  std::string to_string() const;

  friend bool operator==(const BasicWord&, const BasicWord&) = default;

 private:
  void canonicalize();
  std::vector<Digit> pre_;
  std::vector<Digit> per_;
};

using DigitWord = BasicWord<DigitTag>;
using SignedWord = BasicWord<SignedTag>;

/// Lexicographic comparison of two infinite words: -1, 0 or +1.
template <class A, class B>
int lex_compare(const BasicWord<A>& a, const BasicWord<B>& b);

/// Termwise difference (a_1 - b_1)(a_2 - b_2)...
template <class A, class B>
SignedWord subtract(const BasicWord<A>& a, const BasicWord<B>& b);

/// Number of leading symbols after which both words are provably equal from
/// that point on whenever they agree up to it.
template <class A, class B>
std::size_t agreement_window(const BasicWord<A>& a, const BasicWord<B>& b);

/// Render the digits compactly ("10001") when all are single decimal digits,
/// space separated otherwise. Periods are shown as "(...)".
template <class Tag>
std::string compact_string(const BasicWord<Tag>& w);

}  // namespace betafin
