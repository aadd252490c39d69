#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ultradisc/error.hpp"
#include "ultradisc/rational.hpp"

namespace ultradisc {

/// Exponent of an absolute value, |x| = eps^v with 0 < eps < 1. Larger
/// valuation means smaller absolute value. Integer-valued on Q((T)); rational
/// values only appear as Newton-polygon slopes and disc exponents.
class Valuation {
 public:
  Valuation() : infinite_(true) {}
  Valuation(Rational value) : value_(std::move(value)), infinite_(false) {}  // NOLINT
  Valuation(std::int64_t value) : value_(Rational(value, 1)), infinite_(false) {}  // NOLINT
  Valuation(int value) : value_(Rational(value)), infinite_(false) {}  // NOLINT

  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  const Rational& value() const {
    if (infinite_) throw Error(ErrorCode::kInvalidArgument, "finite value of an infinite valuation");
    return value_;
  }

  std::string to_string() const { return infinite_ ? "infinity" : value_.to_string(); }

  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.to_string(); }

 private:
  Rational value_;
  bool infinite_;
};

/// Absolute precision P: the series is known modulo T^P. nullopt means exact.
using Precision = std::optional<std::int64_t>;

inline Precision min_precision(const Precision& a, const Precision& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

inline Precision shift_precision(const Precision& p, std::int64_t by) {
  if (!p) return p;
  return *p + by;
}

/// Element of Q((T)): sum_{j} coeffs[j] T^{offset + j}, known modulo
/// T^precision. Normal form: first and last stored coefficients are nonzero
/// and every stored exponent lies below the precision. A zero element has no
/// coefficients; if its precision is finite it is only "zero so far".
class LaurentSeries {
 public:
  LaurentSeries() = default;  // exact zero

  LaurentSeries(std::int64_t offset, std::vector<Rational> coeffs, Precision precision = std::nullopt)
      : offset_(offset), coeffs_(std::move(coeffs)), precision_(precision) {
    normalize();
  }

  static LaurentSeries constant(const Rational& c) { return LaurentSeries(0, {c}); }
  static LaurentSeries monomial(const Rational& c, std::int64_t exponent) {
    return LaurentSeries(exponent, {c});
  }
  static LaurentSeries one() { return constant(Rational(1)); }
  static LaurentSeries t() { return monomial(Rational(1), 1); }
  /// O(T^precision): zero known only to the given precision.
  static LaurentSeries big_o(std::int64_t precision) { return LaurentSeries(precision, {}, precision); }

  std::int64_t offset() const { return offset_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Precision& precision() const { return precision_; }
  bool is_exact() const { return !precision_.has_value(); }

  /// No nonzero coefficient below the precision.
  bool is_zero_within_precision() const { return coeffs_.empty(); }
  bool is_exact_zero() const { return coeffs_.empty() && is_exact(); }
  bool is_monomial() const { return coeffs_.size() == 1; }

  /// Exponent one past the last stored term (offset when empty).
  std::int64_t end_exponent() const { return offset_ + static_cast<std::int64_t>(coeffs_.size()); }

  /// Coefficient of T^exponent; raises if the exponent lies at or beyond the
  /// tracked precision.
  Rational coefficient(std::int64_t exponent) const {
    if (precision_ && exponent >= *precision_)
      throw Error(ErrorCode::kPrecisionIndeterminate,
                  "coefficient of T^" + std::to_string(exponent) + " beyond precision " +
                      std::to_string(*precision_));
    if (coeffs_.empty() || exponent < offset_ || exponent >= end_exponent()) return Rational(0);
    return coeffs_[static_cast<std::size_t>(exponent - offset_)];
  }

  const Rational& leading_coefficient() const {
    if (coeffs_.empty()) throw Error(ErrorCode::kPrecisionIndeterminate, "leading coefficient of zero");
    return coeffs_.front();
  }

  /// Best valuation lower bound that is certain: the valuation itself when a
  /// nonzero term is known, the precision for an inexact zero, infinity for
  /// the exact zero.
  Valuation valuation_lower_bound() const {
    if (!coeffs_.empty()) return Valuation(offset_);
    if (precision_) return Valuation(*precision_);
    return Valuation::infinity();
  }

  /// Drops terms at or beyond the given absolute precision (lowering the
  /// tracked precision if needed).
  LaurentSeries truncated(std::int64_t precision) const {
    const Precision p = min_precision(precision_, Precision(precision));
    return LaurentSeries(offset_, coeffs_, p);
  }

  /// Same coefficients, exactness forgotten beyond `precision`.
  LaurentSeries with_precision(Precision precision) const {
    return LaurentSeries(offset_, coeffs_, precision);
  }

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.precision_ != b.precision_ || a.coeffs_.size() != b.coeffs_.size()) return false;
    if (a.coeffs_.empty()) return true;
    return a.offset_ == b.offset_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize() {
    if (precision_) {
      const std::int64_t keep = std::clamp<std::int64_t>(*precision_ - offset_, 0,
                                                         static_cast<std::int64_t>(coeffs_.size()));
      coeffs_.resize(static_cast<std::size_t>(keep));
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      offset_ += static_cast<std::int64_t>(lead);
    }
    if (coeffs_.empty()) offset_ = precision_ ? *precision_ : 0;
  }

  std::int64_t offset_ = 0;
  std::vector<Rational> coeffs_;
  Precision precision_;
};

/// Valuation of x. Raises PrecisionIndeterminate when x vanishes through its
/// finite precision, since the terms that would decide it are unknown.
inline Valuation val(const LaurentSeries& x) {
  if (!x.is_zero_within_precision()) return Valuation(x.offset());
  if (x.is_exact()) return Valuation::infinity();
  throw Error(ErrorCode::kPrecisionIndeterminate,
              "series is zero modulo T^" + std::to_string(*x.precision()));
}

inline LaurentSeries operator-(const LaurentSeries& x) {
  std::vector<Rational> c;
  c.reserve(x.coeffs().size());
  for (const auto& v : x.coeffs()) c.push_back(-v);
  return LaurentSeries(x.offset(), std::move(c), x.precision());
}

inline LaurentSeries add(const LaurentSeries& x, const LaurentSeries& y) {
  const Precision p = min_precision(x.precision(), y.precision());
  if (x.is_zero_within_precision()) return y.with_precision(p);
  if (y.is_zero_within_precision()) return x.with_precision(p);
  const std::int64_t lo = std::min(x.offset(), y.offset());
  std::int64_t hi = std::max(x.end_exponent(), y.end_exponent());
  if (p) hi = std::min(hi, *p);
  if (hi <= lo) return LaurentSeries(lo, {}, p);
  std::vector<Rational> c(static_cast<std::size_t>(hi - lo));
  for (std::size_t j = 0; j < x.coeffs().size(); ++j) {
    const std::int64_t e = x.offset() + static_cast<std::int64_t>(j);
    if (e < hi) c[static_cast<std::size_t>(e - lo)] += x.coeffs()[j];
  }
  for (std::size_t j = 0; j < y.coeffs().size(); ++j) {
    const std::int64_t e = y.offset() + static_cast<std::int64_t>(j);
    if (e < hi) c[static_cast<std::size_t>(e - lo)] += y.coeffs()[j];
  }
  return LaurentSeries(lo, std::move(c), p);
}

inline LaurentSeries sub(const LaurentSeries& x, const LaurentSeries& y) { return add(x, -y); }

/// Cauchy product. Precision: min(P(x) + v(y), P(y) + v(x)), where an
/// inexact zero contributes its precision as a valuation lower bound.
inline LaurentSeries mul(const LaurentSeries& x, const LaurentSeries& y) {
  if (x.is_exact_zero() || y.is_exact_zero()) return LaurentSeries();
  const Valuation vx = x.valuation_lower_bound();
  const Valuation vy = y.valuation_lower_bound();
  Precision p;
  if (x.precision()) p = min_precision(p, *x.precision() + vy.value().floor());
  if (y.precision()) p = min_precision(p, *y.precision() + vx.value().floor());
  if (x.is_zero_within_precision() || y.is_zero_within_precision()) return LaurentSeries(0, {}, p);

  const std::int64_t lo = x.offset() + y.offset();
  std::int64_t hi = x.end_exponent() + y.end_exponent() - 1;
  if (p) hi = std::min(hi, *p);
  if (hi <= lo) return LaurentSeries(lo, {}, p);
  std::vector<Rational> c(static_cast<std::size_t>(hi - lo));
  const auto& xc = x.coeffs();
  const auto& yc = y.coeffs();
  for (std::size_t i = 0; i < xc.size(); ++i) {
    if (xc[i].is_zero()) continue;
    for (std::size_t j = 0; j < yc.size(); ++j) {
      const std::size_t e = i + j;
      if (static_cast<std::int64_t>(e) >= hi - lo) break;
      c[e] += xc[i] * yc[j];
    }
  }
  return LaurentSeries(lo, std::move(c), p);
}

inline LaurentSeries scale(const LaurentSeries& x, const Rational& c) {
  return mul(x, LaurentSeries::constant(c));
}

inline LaurentSeries operator+(const LaurentSeries& x, const LaurentSeries& y) { return add(x, y); }
inline LaurentSeries operator-(const LaurentSeries& x, const LaurentSeries& y) { return sub(x, y); }
inline LaurentSeries operator*(const LaurentSeries& x, const LaurentSeries& y) { return mul(x, y); }

/// Multiplicative inverse to `relative_precision` terms beyond the leading
/// one: the result is known modulo T^{-v(x) + relative_precision} (less if x
/// itself carries fewer known terms). Exact monomials invert exactly.
inline LaurentSeries inv(const LaurentSeries& x, std::int64_t relative_precision) {
  if (x.is_exact_zero()) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
  if (x.is_zero_within_precision())
    throw Error(ErrorCode::kPrecisionIndeterminate, "inverse of a series that is zero through its precision");
  if (relative_precision < 1) throw Error(ErrorCode::kInvalidArgument, "relative precision must be >= 1");
  const std::int64_t v = x.offset();
  const Rational lead_inv = Rational(1) / x.leading_coefficient();
  if (x.is_exact() && x.is_monomial()) return LaurentSeries::monomial(lead_inv, -v);

  std::int64_t rel = relative_precision;
  if (x.precision()) rel = std::min(rel, *x.precision() - v);
  const auto& a = x.coeffs();
  std::vector<Rational> b(static_cast<std::size_t>(rel));
  b[0] = lead_inv;
  for (std::int64_t j = 1; j < rel; ++j) {
    Rational s;
    const std::int64_t top = std::min<std::int64_t>(j, static_cast<std::int64_t>(a.size()) - 1);
    for (std::int64_t i = 1; i <= top; ++i)
      s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j - i)];
    b[static_cast<std::size_t>(j)] = -(s * lead_inv);
  }
  return LaurentSeries(-v, std::move(b), -v + rel);
}

inline LaurentSeries div(const LaurentSeries& x, const LaurentSeries& y, std::int64_t relative_precision) {
  return mul(x, inv(y, relative_precision));
}

inline LaurentSeries pow(const LaurentSeries& x, unsigned n) {
  LaurentSeries result = LaurentSeries::one();
  LaurentSeries base = x;
  while (n > 0) {
    if (n & 1U) result = mul(result, base);
    n >>= 1U;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

/// Reduction modulo the maximal ideal: the constant term of an integral x.
inline Rational residue(const LaurentSeries& x) {
  const Valuation v = x.valuation_lower_bound();
  if (v < Valuation(0)) throw Error(ErrorCode::kNotIntegral, "residue of an element with negative valuation");
  return x.coefficient(0);
}

/// x == y modulo the coarser of their two precisions.
inline bool equal_within_precision(const LaurentSeries& x, const LaurentSeries& y) {
  return sub(x, y).is_zero_within_precision();
}

/// An r-th root of x in Q((T)), to `relative_precision` terms, when one
/// exists: v(x) divisible by r and the leading coefficient an r-th power in Q.
/// The unit part uses the power recurrence y_n = 1/(n a_0) sum_k ((a+1)k - n) a_k y_{n-k}.
inline std::optional<LaurentSeries> nth_root(const LaurentSeries& x, unsigned r, std::int64_t relative_precision) {
  if (r == 0) throw Error(ErrorCode::kInvalidArgument, "root of order 0");
  if (x.is_exact_zero()) return x;
  if (x.is_zero_within_precision())
    throw Error(ErrorCode::kPrecisionIndeterminate, "root of a series that is zero through its precision");
  if (r == 1) return x;
  const std::int64_t v = x.offset();
  if (v % static_cast<std::int64_t>(r) != 0) return std::nullopt;
  const auto lead_root = exact_root(x.leading_coefficient(), r);
  if (!lead_root) return std::nullopt;
  const std::int64_t root_offset = v / static_cast<std::int64_t>(r);
  if (x.is_exact() && x.is_monomial()) return LaurentSeries::monomial(*lead_root, root_offset);

  std::int64_t rel = relative_precision;
  if (x.precision()) rel = std::min(rel, *x.precision() - v);
  // unit part u = x / (c T^v), u_0 = 1
  const Rational c_inv = Rational(1) / x.leading_coefficient();
  std::vector<Rational> u;
  for (const auto& c : x.coeffs()) u.push_back(c * c_inv);
  const Rational alpha = Rational(1, static_cast<std::int64_t>(r));
  std::vector<Rational> y(static_cast<std::size_t>(rel));
  y[0] = Rational(1);
  for (std::int64_t n = 1; n < rel; ++n) {
    Rational s;
    const std::int64_t top = std::min<std::int64_t>(n, static_cast<std::int64_t>(u.size()) - 1);
    for (std::int64_t k = 1; k <= top; ++k)
      s += ((alpha + Rational(1)) * Rational(k) - Rational(n)) * u[static_cast<std::size_t>(k)] *
           y[static_cast<std::size_t>(n - k)];
    y[static_cast<std::size_t>(n)] = s / Rational(n);
  }
  for (auto& c : y) c *= *lead_root;
  return LaurentSeries(root_offset, std::move(y), root_offset + rel);
}

namespace detail {

inline std::string monomial_text(std::int64_t exponent) {
  if (exponent == 1) return "T";
  return "T^" + std::to_string(exponent);
}

}  // namespace detail

/// Canonical text: ascending exponents, `c*T^k`, unit coefficients elided,
/// and a trailing `+O(T^P)` for inexact elements. Parses back to itself.
inline std::string to_string(const LaurentSeries& x) {
  std::string out;
  for (std::size_t j = 0; j < x.coeffs().size(); ++j) {
    const Rational& c = x.coeffs()[j];
    if (c.is_zero()) continue;
    const std::int64_t e = x.offset() + static_cast<std::int64_t>(j);
    std::string term;
    if (e == 0) {
      term = c.to_string();
    } else if (c == Rational(1)) {
      term = detail::monomial_text(e);
    } else if (c == Rational(-1)) {
      term = "-" + detail::monomial_text(e);
    } else {
      term = c.to_string() + "*" + detail::monomial_text(e);
    }
    if (!out.empty() && term.front() != '-') out += '+';
    out += term;
  }
  if (x.precision()) {
    if (!out.empty()) out += '+';
    out += "O(" + detail::monomial_text(*x.precision()) + ")";
  }
  return out.empty() ? "0" : out;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentSeries& x) { return os << to_string(x); }

}  // namespace ultradisc
