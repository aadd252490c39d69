#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>

#include "ultradisc/error.hpp"
#include "ultradisc/laurent.hpp"
#include "ultradisc/rational.hpp"

namespace ultradisc {

namespace detail {

// Recursive-descent reader for the series grammar:
//   series   := term (('+' | '-') term)*
//   term     := ['+' | '-'] (coeff ['*'] [monomial] | monomial | 'O(' monomial ')')
//   coeff    := digits ['/' digits]
//   monomial := 'T' ['^' ['-'] digits]
// Whitespace is skipped everywhere. Columns are 0-based offsets into the
// original text.
class SeriesReader {
 public:
  explicit SeriesReader(std::string_view text) : text_(text) {}

  LaurentSeries read() {
    skip_ws();
    if (at_end()) fail("expected a term");
    read_term(/*first=*/true);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("expected '+' or '-', found '") + c + "'");
      read_term(/*first=*/false);
    }
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool any = false;
    for (const auto& [e, c] : terms_) {
      if (c.is_zero()) continue;
      if (!any) lo = e;
      hi = e;
      any = true;
    }
    std::vector<Rational> coeffs;
    if (any) {
      coeffs.resize(static_cast<std::size_t>(hi - lo + 1));
      for (const auto& [e, c] : terms_)
        if (!c.is_zero()) coeffs[static_cast<std::size_t>(e - lo)] = c;
    }
    return LaurentSeries(lo, std::move(coeffs), precision_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string read_digits(const char* what) {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::int64_t read_exponent() {
    skip_ws();
    bool negative = false;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      negative = peek() == '-';
      ++pos_;
    }
    const std::size_t start = pos_;
    const std::string digits = read_digits("integer exponent");
    if (digits.size() > 15) {
      pos_ = start;
      fail("exponent out of range");
    }
    const std::int64_t e = std::stoll(digits);
    return negative ? -e : e;
  }

  // After 'T' has been consumed.
  std::int64_t read_monomial_tail() {
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      return read_exponent();
    }
    return 1;
  }

  bool at_monomial() {
    skip_ws();
    return !at_end() && peek() == 'T';
  }

  void read_big_o() {
    // 'O' consumed
    skip_ws();
    if (at_end() || peek() != '(') fail("expected '(' after 'O'");
    ++pos_;
    skip_ws();
    if (at_end() || peek() != 'T') fail("expected 'T' inside O(...)");
    ++pos_;
    const std::int64_t p = read_monomial_tail();
    skip_ws();
    if (at_end() || peek() != ')') fail("expected ')'");
    ++pos_;
    precision_ = min_precision(precision_, Precision(p));
  }

  void read_term(bool first) {
    skip_ws();
    bool negative = false;
    if (!at_end() && (peek() == '+' || peek() == '-')) {
      negative = peek() == '-';
      ++pos_;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    skip_ws();
    if (at_end()) fail("expected a coefficient or 'T'");
    if (peek() == 'O') {
      if (negative) fail("O(...) cannot be negated");
      ++pos_;
      read_big_o();
      return;
    }
    Rational coeff(1);
    std::int64_t exponent = 0;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::string num = read_digits("coefficient");
      std::string den = "1";
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        const std::size_t den_pos = pos_;
        den = read_digits("denominator");
        if (mpz_class(den) == 0) {
          pos_ = den_pos;
          fail("zero denominator");
        }
      }
      coeff = Rational(mpz_class(num), mpz_class(den));
      skip_ws();
      bool star = false;
      if (!at_end() && peek() == '*') {
        ++pos_;
        star = true;
      }
      if (at_monomial()) {
        ++pos_;
        exponent = read_monomial_tail();
      } else if (star) {
        fail("expected 'T' after '*'");
      }
    } else if (peek() == 'T') {
      ++pos_;
      exponent = read_monomial_tail();
    } else {
      fail(std::string("unexpected character '") + peek() + "'");
    }
    if (negative) coeff = -coeff;
    terms_[exponent] += coeff;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::int64_t, Rational> terms_;
  Precision precision_;
};

}  // namespace detail

/// Parses the series text grammar, e.g. "1+T" or "-1/2*T^-1 + 3*T^2".
/// An optional "O(T^k)" term marks the result as known modulo T^k.
inline LaurentSeries parse_series(std::string_view text) {
  return detail::SeriesReader(text).read();
}

}  // namespace ultradisc
