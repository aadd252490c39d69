#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "ultradisc/error.hpp"
#include "ultradisc/laurent.hpp"
#include "ultradisc/maps.hpp"

namespace ultradisc {

struct PolygonPoint {
  std::int64_t index;
  Rational valuation;

  friend bool operator==(const PolygonPoint&, const PolygonPoint&) = default;
};

struct PolygonSegment {
  PolygonPoint start;
  PolygonPoint end;
  Rational slope;
  std::int64_t length;
};

struct RootValuation {
  Rational valuation;
  std::int64_t multiplicity;

  friend bool operator==(const RootValuation&, const RootValuation&) = default;
};

/// Lower convex hull of the points (i, v(c_i)) of sum c_i x^i.
struct NewtonPolygon {
  std::vector<PolygonPoint> points;
  std::vector<PolygonPoint> vertices;
  std::vector<PolygonSegment> segments;
};

namespace detail {

// z-component of (a - o) x (b - o)
inline Rational cross(const PolygonPoint& o, const PolygonPoint& a, const PolygonPoint& b) {
  return Rational(a.index - o.index) * (b.valuation - o.valuation) -
         (a.valuation - o.valuation) * Rational(b.index - o.index);
}

}  // namespace detail

/// Coefficients must be exact; exact zeros are skipped. Collinear points are
/// not vertices, so each segment is maximal.
inline NewtonPolygon build_polygon(std::vector<std::pair<std::int64_t, LaurentSeries>> coeffs) {
  NewtonPolygon poly;
  std::sort(coeffs.begin(), coeffs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const auto& [i, c] = coeffs[k];
    if (i < 0) throw Error(ErrorCode::kInvalidArgument, "negative polynomial index");
    if (k > 0 && coeffs[k - 1].first == i)
      throw Error(ErrorCode::kInvalidArgument, "duplicate index " + std::to_string(i));
    if (!c.is_exact())
      throw Error(ErrorCode::kInvalidArgument, "Newton polygon needs exact coefficients (x^" + std::to_string(i) + ")");
    if (c.is_exact_zero()) continue;
    poly.points.push_back({i, val(c).value()});
  }
  if (poly.points.size() < 2)
    throw Error(ErrorCode::kDegenerateInput, "Newton polygon needs at least two nonzero coefficients");

  for (const auto& p : poly.points) {
    while (poly.vertices.size() >= 2 &&
           detail::cross(poly.vertices[poly.vertices.size() - 2], poly.vertices.back(), p).sign() <= 0)
      poly.vertices.pop_back();
    poly.vertices.push_back(p);
  }
  for (std::size_t k = 0; k + 1 < poly.vertices.size(); ++k) {
    const auto& a = poly.vertices[k];
    const auto& b = poly.vertices[k + 1];
    const std::int64_t len = b.index - a.index;
    poly.segments.push_back({a, b, (b.valuation - a.valuation) / Rational(len), len});
  }
  return poly;
}

inline NewtonPolygon build_polygon(const PowerSeries& p) {
  std::vector<std::pair<std::int64_t, LaurentSeries>> coeffs;
  for (int i = 0; i <= p.order(); ++i)
    if (!p[i].is_exact_zero()) coeffs.emplace_back(i, p[i]);
  return build_polygon(std::move(coeffs));
}

/// A segment of slope -v and length l accounts for l roots (with
/// multiplicity) of valuation v in the algebraic closure.
inline std::vector<RootValuation> root_valuations(const NewtonPolygon& p) {
  std::vector<RootValuation> out;
  out.reserve(p.segments.size());
  for (const auto& s : p.segments) out.push_back({-s.slope, s.length});
  return out;
}

}  // namespace ultradisc
