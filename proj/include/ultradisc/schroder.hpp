#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultradisc/disc.hpp"
#include "ultradisc/error.hpp"
#include "ultradisc/laurent.hpp"
#include "ultradisc/maps.hpp"

namespace ultradisc {

enum class SolveMethod { kComposition, kPartition };

inline const char* method_name(SolveMethod m) {
  return m == SolveMethod::kComposition ? "composition" : "partition";
}

/// Formal solution g(x) = x + sum_{k>=2} b_k x^k of g(f(x)) = lambda g(x),
/// through degree K. Each b_k carries its own certified T-precision.
struct Conjugacy {
  std::vector<LaurentSeries> coeffs;  // coeffs[k - 1] = b_k
  AnalyticMap source;
  std::int64_t t_precision;
  SolveMethod method;

  int K() const { return static_cast<int>(coeffs.size()); }
  const LaurentSeries& b(int k) const { return coeffs.at(static_cast<std::size_t>(k - 1)); }

  PowerSeries series() const {
    PowerSeries g = PowerSeries::zero(K());
    for (int k = 1; k <= K(); ++k) g.set(k, b(k));
    return g;
  }
};

/// Nonnegative (alpha_1..alpha_k) with sum alpha_j = l and sum j alpha_j = k.
struct IndexSolution {
  int k;
  int l;
  std::vector<int> alphas;  // alphas[j - 1] = alpha_j

  friend bool operator==(const IndexSolution&, const IndexSolution&) = default;
};

namespace detail {

inline void enumerate_solutions(int j, int parts_left, int weight_left, std::vector<int>& alphas,
                                std::vector<IndexSolution>& out, int k, int l) {
  if (j == 0) {
    if (parts_left == 0 && weight_left == 0) out.push_back({k, l, alphas});
    return;
  }
  // each remaining part weighs between 1 and j
  if (parts_left > weight_left || weight_left > parts_left * j) return;
  for (int a = std::min(parts_left, weight_left / j); a >= 0; --a) {
    alphas[static_cast<std::size_t>(j - 1)] = a;
    enumerate_solutions(j - 1, parts_left - a, weight_left - a * j, alphas, out, k, l);
  }
  alphas[static_cast<std::size_t>(j - 1)] = 0;
}

inline LaurentSeries resonance_divisor(const LaurentSeries& d, int k) {
  if (d.is_exact_zero())
    throw Error(ErrorCode::kResonantMultiplier, "lambda^" + std::to_string(k - 1) + " = 1");
  return d;
}

}  // namespace detail

inline std::vector<IndexSolution> enumerate_index_solutions(int k, int l) {
  if (l < 1 || l > k - 1)
    throw Error(ErrorCode::kInvalidArgument, "index equations need 1 <= l <= k - 1");
  std::vector<IndexSolution> out;
  std::vector<int> alphas(static_cast<std::size_t>(k), 0);
  detail::enumerate_solutions(k, l, k, alphas, out, k, l);
  return out;
}

/// l! / (alpha_1! ... alpha_k!)
inline Rational multinomial(int l, const std::vector<int>& alphas) {
  Rational r = factorial(static_cast<unsigned long>(l));
  for (int a : alphas) r = r / factorial(static_cast<unsigned long>(a));
  return r;
}

/// Coefficient matching in g(f(x)) = lambda g(x): at degree k,
/// b_k = [x^k](sum_{l<k} b_l f^l) / (lambda - lambda^k).
inline Conjugacy solve_by_composition(const AnalyticMap& f, int K, std::int64_t t_precision) {
  if (K < 1) throw Error(ErrorCode::kInvalidArgument, "K must be >= 1");
  Conjugacy c{{LaurentSeries::one()}, f, t_precision, SolveMethod::kComposition};
  const LaurentSeries& lambda = f.multiplier();
  const PowerSeries base = f.as_series(K);
  std::vector<PowerSeries> powers{base};  // powers[l - 1] = f^l through degree K
  LaurentSeries lambda_k = lambda;
  for (int k = 2; k <= K; ++k) {
    lambda_k = lambda_k * lambda;
    LaurentSeries numerator;
    for (int l = 1; l < k; ++l) {
      const LaurentSeries& p = powers[static_cast<std::size_t>(l - 1)][k];
      if (p.is_exact_zero() || c.b(l).is_exact_zero()) continue;
      numerator = numerator + c.b(l) * p;
    }
    const LaurentSeries divisor = detail::resonance_divisor(lambda - lambda_k, k);
    c.coeffs.push_back(numerator.is_exact_zero() ? LaurentSeries() : div(numerator, divisor, t_precision));
    if (k < K) powers.push_back(mul(powers.back(), base, K));
  }
  return c;
}

/// The explicit recurrence
/// b_k = 1/(lambda (1 - lambda^{k-1})) sum_l b_l sum_alpha l!/prod alpha_j! prod a_j^alpha_j,
/// with a_1 = lambda and alpha running over the index-equation solutions.
inline Conjugacy solve_by_partition(const AnalyticMap& f, int K, std::int64_t t_precision) {
  if (K < 1) throw Error(ErrorCode::kInvalidArgument, "K must be >= 1");
  Conjugacy c{{LaurentSeries::one()}, f, t_precision, SolveMethod::kPartition};
  const LaurentSeries& lambda = f.multiplier();
  // cached powers a_j^e
  std::map<std::pair<int, int>, LaurentSeries> apow;
  const auto power_of = [&](int j, int e) -> LaurentSeries {
    const auto key = std::make_pair(j, e);
    if (auto it = apow.find(key); it != apow.end()) return it->second;
    LaurentSeries v = pow(f.coefficient(j), static_cast<unsigned>(e));
    apow.emplace(key, v);
    return v;
  };

  LaurentSeries lambda_km1 = LaurentSeries::one();
  for (int k = 2; k <= K; ++k) {
    lambda_km1 = lambda_km1 * lambda;
    LaurentSeries numerator;
    for (int l = 1; l < k; ++l) {
      if (c.b(l).is_exact_zero()) continue;
      LaurentSeries inner;
      for (const auto& sol : enumerate_index_solutions(k, l)) {
        LaurentSeries term = LaurentSeries::constant(multinomial(l, sol.alphas));
        for (int j = 1; j <= k && !term.is_exact_zero(); ++j) {
          const int a = sol.alphas[static_cast<std::size_t>(j - 1)];
          if (a == 0) continue;
          term = term * power_of(j, a);
        }
        inner = inner + term;
      }
      if (!inner.is_exact_zero()) numerator = numerator + c.b(l) * inner;
    }
    const LaurentSeries divisor =
        detail::resonance_divisor(lambda * (LaurentSeries::one() - lambda_km1), k);
    c.coeffs.push_back(numerator.is_exact_zero() ? LaurentSeries() : div(numerator, divisor, t_precision));
  }
  return c;
}

inline Conjugacy solve(const AnalyticMap& f, int K, std::int64_t t_precision, SolveMethod method) {
  return method == SolveMethod::kComposition ? solve_by_composition(f, K, t_precision)
                                             : solve_by_partition(f, K, t_precision);
}

/// Coefficientwise agreement through min(K) at the coarser precision of
/// each pair.
inline bool same_coefficients(const Conjugacy& a, const Conjugacy& b, int through) {
  if (a.K() < through || b.K() < through) return false;
  for (int k = 1; k <= through; ++k)
    if (!equal_within_precision(a.b(k), b.b(k))) return false;
  return true;
}

struct ResidualReport {
  /// coefficients of g(f(x)) - lambda g(x), x-degrees 0..K
  std::vector<LaurentSeries> coeffs;
  bool zero = true;
  std::optional<int> first_nonzero_degree;
};

/// g(f(x)) - lambda g(x) through degree K. Independent of how g was solved.
inline ResidualReport residual(const AnalyticMap& f, const Conjugacy& c, int K) {
  const int order = std::min(K, c.K());
  const PowerSeries g = c.series().truncated(order);
  const PowerSeries r = sub(compose(g, f.as_series(order), order), scale(g, f.multiplier()));
  ResidualReport rep;
  for (int i = 0; i <= order; ++i) {
    rep.coeffs.push_back(r[i]);
    if (!r[i].is_zero_within_precision() && rep.zero) {
      rep.zero = false;
      rep.first_nonzero_degree = i;
    }
  }
  return rep;
}

struct BoundCheck {
  int k;
  /// v(b_k), or a lower bound for it when `from_precision` is set
  Valuation valuation;
  bool from_precision = false;
  /// (k-1) w - sum_{n<k} v(1 - lambda^n)
  Valuation bound;
  /// valuation - bound, when both are finite
  std::optional<Rational> slack;
  bool holds = false;
};

/// v(b_k) >= (k-1) w - sum_{n=1}^{k-1} v(1 - lambda^n) for every k in [2, K].
inline std::vector<BoundCheck> check_bk_bound(const Conjugacy& c, const DistanceProfile& profile, const Valuation& w) {
  if (profile.N < c.K() - 1)
    throw Error(ErrorCode::kInvalidArgument, "distance profile shorter than K - 1");
  std::vector<BoundCheck> out;
  for (int k = 2; k <= c.K(); ++k) {
    BoundCheck chk{k, Valuation::infinity(), false, Valuation::infinity(), std::nullopt, false};
    if (w.is_finite())
      chk.bound = Valuation(Rational(k - 1) * w.value() - Rational(profile.partial_sum(k)));
    const LaurentSeries& b = c.b(k);
    if (b.is_exact_zero()) {
      chk.holds = true;
    } else if (!b.is_zero_within_precision()) {
      chk.valuation = val(b);
      chk.holds = chk.valuation >= chk.bound;
    } else {
      chk.valuation = b.valuation_lower_bound();
      chk.from_precision = true;
      if (!(chk.valuation >= chk.bound))
        throw Error(ErrorCode::kPrecisionIndeterminate,
                    "b_" + std::to_string(k) + " vanishes only modulo T^" + chk.valuation.to_string() +
                        ", below the bound " + chk.bound.to_string());
      chk.holds = true;
    }
    if (chk.valuation.is_finite() && chk.bound.is_finite()) chk.slack = chk.valuation.value() - chk.bound.value();
    out.push_back(std::move(chk));
  }
  return out;
}

}  // namespace ultradisc
