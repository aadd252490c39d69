#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultradisc/error.hpp"
#include "ultradisc/laurent.hpp"

namespace ultradisc {

/// Power series in x over Q((T)), known through x-degree `order`.
class PowerSeries {
 public:
  PowerSeries() = default;

  PowerSeries(std::vector<LaurentSeries> coeffs, int order) : coeffs_(std::move(coeffs)), order_(order) {
    if (order < 0) throw Error(ErrorCode::kInvalidArgument, "negative series order");
    coeffs_.resize(static_cast<std::size_t>(order) + 1);
  }

  static PowerSeries zero(int order) { return PowerSeries({}, order); }
  static PowerSeries identity(int order) {
    PowerSeries s = zero(order);
    if (order >= 1) s.coeffs_[1] = LaurentSeries::one();
    return s;
  }

  int order() const { return order_; }

  const LaurentSeries& operator[](int degree) const {
    if (degree < 0 || degree > order_)
      throw Error(ErrorCode::kInvalidArgument, "x-degree " + std::to_string(degree) + " outside series order");
    return coeffs_[static_cast<std::size_t>(degree)];
  }

  void set(int degree, LaurentSeries value) {
    if (degree < 0 || degree > order_)
      throw Error(ErrorCode::kInvalidArgument, "x-degree " + std::to_string(degree) + " outside series order");
    coeffs_[static_cast<std::size_t>(degree)] = std::move(value);
  }

  PowerSeries truncated(int order) const {
    std::vector<LaurentSeries> c(coeffs_.begin(),
                                 coeffs_.begin() + std::min<std::ptrdiff_t>(order + 1, order_ + 1));
    return PowerSeries(std::move(c), std::min(order, order_));
  }

  /// Degrees carrying a coefficient that is not zero within its precision.
  std::vector<std::pair<int, LaurentSeries>> terms() const {
    std::vector<std::pair<int, LaurentSeries>> out;
    for (int i = 0; i <= order_; ++i)
      if (!coeffs_[static_cast<std::size_t>(i)].is_zero_within_precision())
        out.emplace_back(i, coeffs_[static_cast<std::size_t>(i)]);
    return out;
  }

  /// Largest degree with a nonzero coefficient, -1 if none.
  int degree() const {
    for (int i = order_; i >= 0; --i)
      if (!coeffs_[static_cast<std::size_t>(i)].is_zero_within_precision()) return i;
    return -1;
  }

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  std::vector<LaurentSeries> coeffs_{LaurentSeries()};
  int order_ = 0;
};

inline PowerSeries add(const PowerSeries& f, const PowerSeries& g) {
  const int order = std::min(f.order(), g.order());
  PowerSeries out = PowerSeries::zero(order);
  for (int i = 0; i <= order; ++i) out.set(i, f[i] + g[i]);
  return out;
}

inline PowerSeries sub(const PowerSeries& f, const PowerSeries& g) {
  const int order = std::min(f.order(), g.order());
  PowerSeries out = PowerSeries::zero(order);
  for (int i = 0; i <= order; ++i) out.set(i, f[i] - g[i]);
  return out;
}

inline PowerSeries scale(const PowerSeries& f, const LaurentSeries& c) {
  PowerSeries out = PowerSeries::zero(f.order());
  for (int i = 0; i <= f.order(); ++i) out.set(i, c * f[i]);
  return out;
}

inline PowerSeries mul(const PowerSeries& f, const PowerSeries& g, int order) {
  order = std::min({order, f.order(), g.order()});
  PowerSeries out = PowerSeries::zero(order);
  std::vector<LaurentSeries> acc(static_cast<std::size_t>(order) + 1);
  for (int i = 0; i <= order; ++i) {
    if (f[i].is_exact_zero()) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (g[j].is_exact_zero()) continue;
      acc[static_cast<std::size_t>(i + j)] = acc[static_cast<std::size_t>(i + j)] + f[i] * g[j];
    }
  }
  for (int k = 0; k <= order; ++k) out.set(k, std::move(acc[static_cast<std::size_t>(k)]));
  return out;
}

/// outer(inner(x)) through x-degree `order`, by Horner's rule. The inner
/// series must vanish at the origin.
inline PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner, int order) {
  if (!inner[0].is_zero_within_precision())
    throw Error(ErrorCode::kInvalidArgument, "inner series of a composition must have zero constant term");
  order = std::min({order, outer.order(), inner.order()});
  const PowerSeries g = inner.truncated(order);
  PowerSeries acc = PowerSeries::zero(order);
  for (int i = order; i >= 1; --i) {
    acc.set(0, acc[0] + outer[i]);
    acc = mul(acc, g, order);
  }
  acc.set(0, acc[0] + outer[0]);
  return acc;
}

/// sum_i h_i x^i, Horner over the stored degrees.
inline LaurentSeries evaluate(const PowerSeries& h, const LaurentSeries& x) {
  LaurentSeries acc;
  for (int i = h.order(); i >= 1; --i) acc = (acc + h[i]) * x;
  return acc + h[0];
}

/// f(x) = lambda x + sum_{i>=2} a_i x^i with finitely many nonzero a_i whose
/// coefficients are exact Laurent polynomials, and |lambda| = 1.
class AnalyticMap {
 public:
  struct Term {
    int degree;
    LaurentSeries coefficient;
  };

  static constexpr int kDefaultRootOfUnityBound = 64;

  /// Checks v(lambda) = 0 and lambda^n != 1 for n <= root_of_unity_bound.
  AnalyticMap(LaurentSeries multiplier, std::vector<Term> higher,
              int root_of_unity_bound = kDefaultRootOfUnityBound)
      : multiplier_(std::move(multiplier)) {
    if (!multiplier_.is_exact()) throw Error(ErrorCode::kInvalidArgument, "multiplier must be exact");
    if (val(multiplier_) != Valuation(0))
      throw Error(ErrorCode::kInvalidArgument,
                  "multiplier must have valuation 0 (|lambda| = 1), got " + val(multiplier_).to_string());
    std::sort(higher.begin(), higher.end(), [](const Term& a, const Term& b) { return a.degree < b.degree; });
    for (auto& t : higher) {
      if (t.degree < 2) throw Error(ErrorCode::kInvalidArgument, "higher terms need degree >= 2");
      if (!t.coefficient.is_exact())
        throw Error(ErrorCode::kInvalidArgument, "coefficient a" + std::to_string(t.degree) + " must be exact");
      if (!higher_.empty() && higher_.back().degree == t.degree)
        throw Error(ErrorCode::kInvalidArgument, "duplicate coefficient a" + std::to_string(t.degree));
      if (t.coefficient.is_exact_zero()) continue;
      higher_.push_back(std::move(t));
    }
    certify_not_root_of_unity(root_of_unity_bound);
  }

  const LaurentSeries& multiplier() const { return multiplier_; }
  const std::vector<Term>& higher() const { return higher_; }
  bool is_linear() const { return higher_.empty(); }
  int degree() const { return higher_.empty() ? 1 : higher_.back().degree; }

  /// a_i, with a_1 = lambda and zero for absent degrees.
  LaurentSeries coefficient(int degree) const {
    if (degree == 1) return multiplier_;
    for (const auto& t : higher_)
      if (t.degree == degree) return t.coefficient;
    return LaurentSeries();
  }

  /// lambda^n != 1 has been verified exactly for every n up to this value.
  int root_of_unity_checked_through() const { return checked_through_; }

  /// Extends the exact check lambda^n != 1 through n = bound.
  void certify_not_root_of_unity(int bound) {
    if (bound <= checked_through_) return;
    LaurentSeries power = pow(multiplier_, static_cast<unsigned>(checked_through_ + 1));
    const LaurentSeries one = LaurentSeries::one();
    for (int n = checked_through_ + 1; n <= bound; ++n) {
      if ((power - one).is_exact_zero())
        throw Error(ErrorCode::kRootOfUnity, "multiplier satisfies lambda^" + std::to_string(n) + " = 1");
      checked_through_ = n;
      if (n < bound) power = power * multiplier_;
    }
  }

  PowerSeries as_series(int order) const {
    PowerSeries s = PowerSeries::zero(order);
    if (order >= 1) s.set(1, multiplier_);
    for (const auto& t : higher_)
      if (t.degree <= order) s.set(t.degree, t.coefficient);
    return s;
  }

  /// The complete polynomial, order = degree().
  PowerSeries polynomial() const { return as_series(degree()); }

 private:
  LaurentSeries multiplier_;
  std::vector<Term> higher_;
  int checked_through_ = 0;
};

/// Disc about the origin of radius eps^exponent, or the whole field.
struct DiscRadius {
  enum class Boundary { kOpen, kClosed };

  Rational exponent;
  Boundary boundary = Boundary::kOpen;
  bool whole_field = false;

  static DiscRadius open(Rational exponent) { return {std::move(exponent), Boundary::kOpen, false}; }
  static DiscRadius closed(Rational exponent) { return {std::move(exponent), Boundary::kClosed, false}; }
  static DiscRadius everything() { return {Rational(0), Boundary::kOpen, true}; }

  /// Rational in K iff the exponent is an integer; otherwise the open and
  /// closed discs coincide.
  bool is_rational() const { return whole_field || exponent.is_integer(); }

  bool contains(const Valuation& v) const {
    if (whole_field || v.is_infinite()) return true;
    if (boundary == Boundary::kClosed || !is_rational()) return v.value() >= exponent;
    return v.value() > exponent;
  }

  friend bool operator==(const DiscRadius& a, const DiscRadius& b) {
    if (a.whole_field || b.whole_field) return a.whole_field == b.whole_field;
    return a.exponent == b.exponent && a.boundary == b.boundary;
  }
};

inline AnalyticMap linear_map(LaurentSeries lambda) { return AnalyticMap(std::move(lambda), {}); }

struct GrowthExponent {
  /// w = min_i v(a_i)/(i-1), so a = eps^w; infinite for a linear map.
  Valuation w;
  /// The supremum is a maximum. Always true for finitely supported maps.
  bool attained = true;
};

inline GrowthExponent growth_exponent(const AnalyticMap& f) {
  GrowthExponent g;
  for (const auto& t : f.higher()) {
    const Valuation q(val(t.coefficient).value() / Rational(t.degree - 1));
    if (q < g.w) g.w = q;
  }
  return g;
}

/// How a map behaves at the boundary sphere S_{1/a}. Finitely supported maps
/// always attain the maximum; the other two values are the hook for maps with
/// infinite tails, which this library does not represent.
enum class TailBehavior { kMaxAttained, kDivergesOnSphere, kConvergesOnSphere };

/// Largest disc M on which f is a bijective isometry, given w and the tail
/// behavior: open D_{1/a} unless the supremum is not attained and f converges
/// on the sphere, in which case the closed disc.
inline DiscRadius maximal_bijection_disc(const Valuation& w, TailBehavior tail) {
  if (w.is_infinite()) return DiscRadius::everything();
  if (tail == TailBehavior::kConvergesOnSphere) return DiscRadius::closed(-w.value());
  return DiscRadius::open(-w.value());
}

inline DiscRadius maximal_bijection_disc(const AnalyticMap& f) {
  return maximal_bijection_disc(growth_exponent(f).w, TailBehavior::kMaxAttained);
}

enum class EvaluationDomain { kInsideBijectionDisc, kAnywhere };

/// f(x) computed term by term. By default x must lie strictly inside the
/// maximal bijection disc; pass kAnywhere to evaluate on its boundary.
inline LaurentSeries evaluate(const AnalyticMap& f, const LaurentSeries& x,
                              EvaluationDomain domain = EvaluationDomain::kInsideBijectionDisc) {
  if (domain == EvaluationDomain::kInsideBijectionDisc &&
      !maximal_bijection_disc(f).contains(x.valuation_lower_bound()))
    throw Error(ErrorCode::kInvalidArgument,
                "point of valuation " + x.valuation_lower_bound().to_string() + " outside the bijection disc");
  return evaluate(f.polynomial(), x);
}

inline PowerSeries compose(const AnalyticMap& f, const PowerSeries& g, int order) {
  return compose(f.as_series(order), g, order);
}

inline PowerSeries compose(const PowerSeries& f, const AnalyticMap& g, int order) {
  return compose(f, g.as_series(order), order);
}

/// n-fold self-composition through x-degree `order`.
inline PowerSeries iterate(const AnalyticMap& f, int n, int order) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "iteration count must be >= 1");
  const PowerSeries base = f.as_series(order);
  PowerSeries acc = base;
  for (int i = 1; i < n; ++i) acc = compose(base, acc, order);
  return acc;
}

struct WeierstrassData {
  /// exponent of s = max_i |c_i| r^i
  Rational s_exponent;
  /// largest index attaining s
  int d = 0;
  /// smallest index attaining s
  int d_prime = 0;
};

/// Image radius and mapping degrees of h on discs of radius eps^q.
inline WeierstrassData weierstrass_data(const PowerSeries& h, const Rational& q) {
  std::optional<WeierstrassData> best;
  for (const auto& [i, c] : h.terms()) {
    const Rational e = val(c).value() + Rational(i) * q;
    if (!best || e < best->s_exponent) {
      best = WeierstrassData{e, i, i};
    } else if (e == best->s_exponent) {
      best->d = i;
    }
  }
  if (!best) throw Error(ErrorCode::kEmptyMap, "weierstrass data of the zero series");
  return *best;
}

/// |c_i| r^i <= |c_1| r for all i >= 2, with r = eps^q: h is one-to-one on
/// the open disc of that radius.
inline bool injectivity_check(const PowerSeries& h, const Rational& q) {
  if (h.order() < 1 || h[1].is_zero_within_precision())
    throw Error(ErrorCode::kInvalidArgument, "injectivity check needs a nonzero linear coefficient");
  const Rational linear = val(h[1]).value() + q;
  for (int i = 2; i <= h.order(); ++i) {
    const LaurentSeries& c = h[i];
    if (c.is_exact_zero()) continue;
    const Rational e = c.valuation_lower_bound().value() + Rational(i) * q;
    if (e >= linear) continue;
    if (c.is_zero_within_precision())
      throw Error(ErrorCode::kPrecisionIndeterminate,
                  "coefficient of x^" + std::to_string(i) + " too imprecise to decide injectivity");
    return false;
  }
  return true;
}

}  // namespace ultradisc
