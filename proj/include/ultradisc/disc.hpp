#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultradisc/error.hpp"
#include "ultradisc/laurent.hpp"
#include "ultradisc/maps.hpp"
#include "ultradisc/newton.hpp"

namespace ultradisc {

/// v(1 - lambda^n) for n = 1..N, and the first n where it is positive.
struct DistanceProfile {
  LaurentSeries lambda;
  int N = 0;
  std::vector<std::int64_t> vals;  // vals[n - 1] = v(1 - lambda^n)
  std::optional<int> m;

  std::int64_t at(int n) const { return vals.at(static_cast<std::size_t>(n - 1)); }
  std::int64_t v_m() const {
    if (!m) throw Error(ErrorCode::kInvalidArgument, "profile has no residue root of unity");
    return at(*m);
  }
  /// sum_{n=1}^{k-1} v(1 - lambda^n)
  std::int64_t partial_sum(int k) const {
    std::int64_t s = 0;
    for (int n = 1; n < k; ++n) s += at(n);
    return s;
  }
};

/// Computes 1 - lambda^n exactly for every n <= N. The pattern
/// v = 0 off multiples of m and v = v(1 - lambda^m) on them is re-checked;
/// a mismatch raises InvariantViolation.
inline DistanceProfile distance_profile(const LaurentSeries& lambda, int N) {
  if (N < 1) throw Error(ErrorCode::kInvalidArgument, "profile length must be >= 1");
  if (!lambda.is_exact()) throw Error(ErrorCode::kInvalidArgument, "multiplier must be exact");
  if (val(lambda) != Valuation(0)) throw Error(ErrorCode::kInvalidArgument, "multiplier must have valuation 0");
  DistanceProfile p{lambda, N, {}, std::nullopt};
  p.vals.reserve(static_cast<std::size_t>(N));
  const LaurentSeries one = LaurentSeries::one();
  LaurentSeries power = lambda;
  for (int n = 1; n <= N; ++n) {
    const LaurentSeries d = one - power;
    if (d.is_exact_zero())
      throw Error(ErrorCode::kRootOfUnity, "lambda^" + std::to_string(n) + " = 1");
    const std::int64_t v = val(d).value().floor();
    p.vals.push_back(v);
    if (!p.m && v > 0) p.m = n;
    if (n < N) power = power * lambda;
  }
  for (int n = 1; n <= N; ++n) {
    const std::int64_t expected = (p.m && n % *p.m == 0) ? p.at(*p.m) : 0;
    if (p.at(n) != expected)
      throw Error(ErrorCode::kInvariantViolation,
                  "distance pattern broken at n = " + std::to_string(n) + ": v = " + std::to_string(p.at(n)) +
                      ", expected " + std::to_string(expected));
  }
  return p;
}

/// CASE1: the residue of lambda is not a root of unity in Q.
/// CASE2: it is, i.e. it equals 1 (order 1) or -1 (order 2).
enum class ResidueCase { kCase1, kCase2 };

inline const char* case_name(ResidueCase c) { return c == ResidueCase::kCase1 ? "CASE1" : "CASE2"; }

struct CaseClassification {
  ResidueCase residue_case;
  std::optional<int> order;
};

inline CaseClassification classify_case(const LaurentSeries& lambda) {
  if (val(lambda) != Valuation(0)) throw Error(ErrorCode::kInvalidArgument, "multiplier must have valuation 0");
  const Rational r = residue(lambda);
  if (r == Rational(1)) return {ResidueCase::kCase2, 1};
  if (r == Rational(-1)) return {ResidueCase::kCase2, 2};
  return {ResidueCase::kCase1, std::nullopt};
}

/// Bounds lower <= Delta_f <= upper on the linearization disc.
struct DiscEstimate {
  ResidueCase residue_case = ResidueCase::kCase1;
  Valuation w;
  std::optional<int> m;
  std::optional<std::int64_t> v_m;
  DiscRadius lower;
  DiscRadius upper;
  bool exact = false;
  DistanceProfile profile;

  /// exponent of rho = |1 - lambda^m|^{1/m} / a (CASE2), or of 1/a (CASE1).
  Rational lower_exponent() const { return lower.exponent; }
};

inline DiscEstimate estimate_disc(const AnalyticMap& f, int N, TailBehavior tail = TailBehavior::kMaxAttained) {
  DiscEstimate e;
  e.profile = distance_profile(f.multiplier(), N);
  const CaseClassification cls = classify_case(f.multiplier());
  e.residue_case = cls.residue_case;
  e.w = growth_exponent(f).w;

  if (cls.residue_case == ResidueCase::kCase2) {
    if (N >= *cls.order && e.profile.m != cls.order)
      throw Error(ErrorCode::kInvariantViolation, "profile period disagrees with the residue order");
    e.m = cls.order;
    if (N < *cls.order) throw Error(ErrorCode::kInvalidArgument, "N too small to reach the residue order");
    e.v_m = e.profile.v_m();
  } else if (e.profile.m) {
    throw Error(ErrorCode::kInvariantViolation, "CASE1 multiplier with a positive distance");
  }

  if (e.w.is_infinite()) {
    e.lower = DiscRadius::everything();
    e.upper = DiscRadius::everything();
    e.exact = true;
    return e;
  }
  const Rational w = e.w.value();
  e.upper = maximal_bijection_disc(e.w, tail);
  if (cls.residue_case == ResidueCase::kCase1) {
    e.lower = DiscRadius::open(-w);
    e.exact = tail != TailBehavior::kConvergesOnSphere;
  } else {
    e.lower = DiscRadius::open(Rational(*e.v_m) / Rational(*e.m) - w);
    e.exact = false;
    if (!(e.lower.exponent > -w))
      throw Error(ErrorCode::kInvariantViolation, "lower disc not strictly inside the upper disc");
  }
  return e;
}

struct Witness {
  std::string description;
  /// The point itself when it lies in K; otherwise only its valuation is
  /// certified, by a Newton polygon.
  std::optional<LaurentSeries> point;
  Rational sphere_exponent;
  int period = 1;
  /// Roots of (f^period(x) - x)/x on the sphere, counted with multiplicity.
  std::int64_t multiplicity = 1;
  /// For a constructed point: f^period(point) = point at tracked precision.
  /// For a certificate: the polygon has the required segment.
  bool verified = false;
  std::optional<NewtonPolygon> polygon;
};

namespace detail {

/// (f^period(x) - x) / x as an exact polynomial.
inline PowerSeries periodic_quotient(const AnalyticMap& f, int period) {
  std::int64_t order = 1;
  for (int i = 0; i < period; ++i) {
    order *= f.degree();
    if (order > 4096) throw Error(ErrorCode::kInvalidArgument, "iterate degree too large for an exact polygon");
  }
  const PowerSeries iterate_poly = iterate(f, period, static_cast<int>(order));
  PowerSeries q = PowerSeries::zero(static_cast<int>(order) - 1);
  for (int i = 1; i <= order; ++i) q.set(i - 1, iterate_poly[i]);
  q.set(0, q[0] - LaurentSeries::one());
  return q;
}

}  // namespace detail

/// Certifies roots of f^period(x) = x, x != 0, on the sphere of valuation
/// `exponent` via the Newton polygon of (f^period(x) - x)/x.
inline Witness polygon_witness(const AnalyticMap& f, int period, const Rational& exponent) {
  const PowerSeries q = detail::periodic_quotient(f, period);
  NewtonPolygon poly = build_polygon(q);
  for (const auto& rv : root_valuations(poly)) {
    if (rv.valuation != exponent) continue;
    Witness wit;
    wit.description = period == 1 ? "fixed point(s) certified by Newton polygon"
                                  : "period-" + std::to_string(period) + " point(s) certified by Newton polygon";
    wit.sphere_exponent = exponent;
    wit.period = period;
    wit.multiplicity = rv.multiplicity;
    wit.verified = true;
    wit.polygon = std::move(poly);
    return wit;
  }
  throw Error(ErrorCode::kWitnessNotFound,
              "no segment of slope " + (-exponent).to_string() + " in the polygon of (f^" +
                  std::to_string(period) + "(x) - x)/x");
}

/// Fixed point x = [(1 - lambda)/a_n]^{1/(n-1)} of f = lambda x + a_n x^n.
/// Built in K when the root exists there (always for n = 2), and checked by
/// f(x) = x; otherwise a valuation certificate.
inline Witness fixed_point_witness(const LaurentSeries& lambda, const LaurentSeries& a_n, int n,
                                   std::int64_t t_precision = 32) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "monomial degree must be >= 2");
  const AnalyticMap f(lambda, {{n, a_n}});
  const LaurentSeries one_minus = LaurentSeries::one() - lambda;
  const Rational exponent = (val(one_minus).value() - val(a_n).value()) / Rational(n - 1);

  const LaurentSeries y = div(one_minus, a_n, t_precision);
  const std::optional<LaurentSeries> point = nth_root(y, static_cast<unsigned>(n - 1), t_precision);
  if (!point) {
    Witness wit = polygon_witness(f, 1, exponent);
    wit.description = "fixed point outside K; valuation certified by Newton polygon";
    return wit;
  }
  Witness wit;
  wit.description = "fixed point constructed in K";
  wit.point = point;
  wit.sphere_exponent = exponent;
  wit.period = 1;
  wit.multiplicity = 1;
  wit.verified = val(*point) == Valuation(exponent) &&
                 equal_within_precision(evaluate(f, *point, EvaluationDomain::kAnywhere), *point);
  return wit;
}

/// Period-m points on the sphere S_rho, rho exponent v(1 - lambda^m)/m - w.
/// Returns nullopt for a linear map, which has none.
inline std::optional<Witness> periodic_witness(const AnalyticMap& f, int m) {
  if (f.is_linear()) return std::nullopt;
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "period must be >= 1");
  const LaurentSeries d = LaurentSeries::one() - pow(f.multiplier(), static_cast<unsigned>(m));
  const Rational rho = Rational(val(d).value()) / Rational(m) - growth_exponent(f).w.value();
  Witness wit = polygon_witness(f, m, rho);
  wit.description = "period-" + std::to_string(m) + " point(s) on the lower-bound sphere";
  return wit;
}

/// Outcomes of the sharpness search for one map.
struct WitnessReport {
  std::vector<Witness> witnesses;
  std::vector<std::string> not_found;
  /// A witness the theorem guarantees was missing or failed verification.
  bool falsified = false;
};

/// Searches for the points that stop the conjugacy from extending: fixed
/// points on S_{1/a} in CASE1, period-m points on S_rho in CASE2.
inline WitnessReport sharpness_witnesses(const AnalyticMap& f, const DiscEstimate& e,
                                         std::int64_t t_precision = 32) {
  WitnessReport r;
  if (f.is_linear()) return r;
  const bool monomial = f.higher().size() == 1;
  const bool quadratic = monomial && f.higher().front().degree == 2;
  if (monomial) {
    const auto& t = f.higher().front();
    r.witnesses.push_back(fixed_point_witness(f.multiplier(), t.coefficient, t.degree, t_precision));
  }
  if (e.residue_case == ResidueCase::kCase1) {
    if (!monomial) {
      try {
        Witness wit = polygon_witness(f, 1, -e.w.value());
        wit.description = "fixed point(s) on the boundary sphere";
        r.witnesses.push_back(std::move(wit));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::kWitnessNotFound) throw;
        r.not_found.push_back(err.what());
        r.falsified = true;  // a polynomial always has a fixed point on S_{1/a} here
      }
    }
  } else if (!(quadratic && *e.m == 1)) {
    // for m = 1 and a quadratic map the fixed point above already sits on S_rho
    try {
      r.witnesses.push_back(*periodic_witness(f, *e.m));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kWitnessNotFound) throw;
      r.not_found.push_back(err.what());
      if (quadratic) r.falsified = true;
    }
  }
  for (const auto& wit : r.witnesses)
    if (!wit.verified) r.falsified = true;
  return r;
}

}  // namespace ultradisc
