#pragma once

#include <random>
#include <string>
#include <vector>

#include "ultradisc/ultradisc.hpp"

namespace ultradisc::testing {

inline LaurentSeries S(const std::string& text) { return parse_series(text); }

inline Rational random_unit(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  int n = 0;
  while (n == 0) n = num(rng);
  return Rational(n, den(rng));
}

/// Exact Laurent polynomial with valuation in [vmin, vmax] and 1-3 terms.
inline LaurentSeries random_element(std::mt19937& rng, int vmin, int vmax) {
  std::uniform_int_distribution<int> v(vmin, vmax);
  std::uniform_int_distribution<int> extra(0, 2);
  std::bernoulli_distribution keep(0.6);
  const int offset = v(rng);
  std::vector<Rational> c{random_unit(rng)};
  const int n = extra(rng);
  for (int i = 0; i < n; ++i) c.push_back(keep(rng) ? random_unit(rng) : Rational(0));
  return LaurentSeries(offset, std::move(c));
}

/// The corpus multipliers: 1+T, -1+T, 2+T and 1/3 + c*T.
inline LaurentSeries corpus_lambda(std::mt19937& rng, int which) {
  switch (which % 4) {
    case 0: return S("1+T");
    case 1: return S("-1+T");
    case 2: return S("2+T");
    default: return LaurentSeries(0, {Rational(1, 3), random_unit(rng)});
  }
}

/// Polynomial map of degree 2..max_degree with coefficient valuations in
/// [-2, 2]; the top coefficient is always present.
inline AnalyticMap random_map(std::mt19937& rng, const LaurentSeries& lambda, int max_degree = 5) {
  std::uniform_int_distribution<int> deg(2, max_degree);
  std::bernoulli_distribution present(0.5);
  const int d = deg(rng);
  std::vector<AnalyticMap::Term> terms;
  for (int i = 2; i <= d; ++i)
    if (i == d || present(rng)) terms.push_back({i, random_element(rng, -2, 2)});
  return AnalyticMap(lambda, std::move(terms));
}

inline std::vector<AnalyticMap> random_corpus(unsigned seed, int count, int max_degree = 5) {
  std::mt19937 rng(seed);
  std::vector<AnalyticMap> out;
  for (int i = 0; i < count; ++i) out.push_back(random_map(rng, corpus_lambda(rng, i), max_degree));
  return out;
}

/// Random point of exact valuation v with a few extra terms.
inline LaurentSeries random_point(std::mt19937& rng, int v) {
  std::uniform_int_distribution<int> extra(0, 2);
  std::vector<Rational> c{random_unit(rng)};
  const int n = extra(rng);
  for (int i = 0; i < n; ++i) c.push_back(random_unit(rng));
  return LaurentSeries(v, std::move(c));
}

}  // namespace ultradisc::testing
