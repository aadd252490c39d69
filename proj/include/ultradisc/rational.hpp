#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "ultradisc/error.hpp"

namespace ultradisc {

/// Exact rational number, always in lowest terms with positive denominator.
/// Thin value wrapper over mpq_class so that expression templates never leak
/// into `auto` deductions.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : q_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::kDivisionByZero, "rational with zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(ErrorCode::kDivisionByZero, "rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  /// Parses "p" or "p/q" (optional leading sign, decimal digits only).
  static Rational from_string(const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0)
      throw Error(ErrorCode::kInvalidArgument, "not a rational: '" + text + "'");
    if (q.get_den() == 0) throw Error(ErrorCode::kDivisionByZero, "zero denominator in '" + text + "'");
    q.canonicalize();
    return Rational(q);
  }

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  std::string to_string() const { return q_.get_str(10); }
  double to_double() const { return q_.get_d(); }

  /// floor and ceiling, as machine integers. Callers only use this on
  /// valuations, which are small.
  std::int64_t floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r.get_si();
  }
  std::int64_t ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r.get_si();
  }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error(ErrorCode::kDivisionByZero, "rational division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
  }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& b) { q_ += b.q_; return *this; }
  Rational& operator-=(const Rational& b) { q_ -= b.q_; return *this; }
  Rational& operator*=(const Rational& b) { q_ *= b.q_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class q_;
};

/// Exact r-th root of a rational, if it exists in Q.
inline std::optional<Rational> exact_root(const Rational& value, unsigned long r) {
  if (r == 0) throw Error(ErrorCode::kInvalidArgument, "root of order 0");
  if (r == 1) return value;
  if (value.is_zero()) return value;
  const bool negative = value.sign() < 0;
  if (negative && r % 2 == 0) return std::nullopt;
  mpz_class num = value.numerator();
  if (negative) num = -num;
  const mpz_class den = value.denominator();
  mpz_class num_root, den_root;
  if (mpz_root(num_root.get_mpz_t(), num.get_mpz_t(), r) == 0) return std::nullopt;
  if (mpz_root(den_root.get_mpz_t(), den.get_mpz_t(), r) == 0) return std::nullopt;
  if (negative) num_root = -num_root;
  return Rational(num_root, den_root);
}

inline Rational factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r, mpz_class(1));
}

inline Rational binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r, mpz_class(1));
}

}  // namespace ultradisc
