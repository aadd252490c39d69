#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "ultradisc/maps.hpp"

namespace ultradisc {
namespace {

using testing::S;

AnalyticMap M(const std::string& lambda, std::vector<std::pair<int, std::string>> terms) {
  std::vector<AnalyticMap::Term> t;
  for (auto& [d, c] : terms) t.push_back({d, S(c)});
  return AnalyticMap(S(lambda), std::move(t));
}

PowerSeries P(std::vector<std::string> coeffs) {
  std::vector<LaurentSeries> c;
  for (const auto& s : coeffs) c.push_back(S(s));
  const int order = static_cast<int>(c.size()) - 1;
  return PowerSeries(std::move(c), order);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

TEST(AnalyticMap, RejectsBadInputs) {
  EXPECT_EQ(code_of([] { M("T", {{2, "1"}}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { M("1", {{2, "1"}}); }), ErrorCode::kRootOfUnity);
  EXPECT_EQ(code_of([] { M("-1", {{2, "1"}}); }), ErrorCode::kRootOfUnity);
  EXPECT_EQ(code_of([] { M("2", {{1, "1"}}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { M("2", {{2, "1"}, {2, "T"}}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { M("2", {{2, "1 + O(T^3)"}}); }), ErrorCode::kInvalidArgument);
}

TEST(AnalyticMap, DropsZeroCoefficientsAndSorts) {
  const AnalyticMap f = M("2+T", {{4, "T"}, {2, "0"}, {3, "1"}});
  ASSERT_EQ(f.higher().size(), 2u);
  EXPECT_EQ(f.higher()[0].degree, 3);
  EXPECT_EQ(f.degree(), 4);
  EXPECT_EQ(f.root_of_unity_checked_through(), 64);
}

TEST(Evaluate, Examples) {
  const AnalyticMap f = M("1+T", {{2, "1"}});
  EXPECT_EQ(evaluate(f, S("T")), S("T + 2*T^2"));
  EXPECT_EQ(evaluate(f, LaurentSeries()), LaurentSeries());
  const AnalyticMap lin = linear_map(S("1/3 + T"));
  EXPECT_EQ(evaluate(lin, S("T^-5 + 2")), S("1/3 + T") * S("T^-5 + 2"));
}

TEST(Evaluate, DomainCheck) {
  const AnalyticMap f = M("1+T", {{2, "1"}});
  EXPECT_THROW(evaluate(f, S("1")), Error);
  EXPECT_EQ(evaluate(f, S("1"), EvaluationDomain::kAnywhere), S("2+T"));
}

TEST(Compose, Examples) {
  const PowerSeries sq = P({"0", "0", "1"});
  const PowerSeries g = P({"0", "1", "0", "1"});
  const PowerSeries c = compose(sq, g, 4);
  EXPECT_EQ(c.order(), 2);  // limited by the outer series order
  const PowerSeries g4 = P({"0", "1", "0", "1", "0"});
  const PowerSeries c4 = compose(P({"0", "0", "1", "0", "0"}), g4, 4);
  EXPECT_EQ(c4[2], S("1"));
  EXPECT_TRUE(c4[3].is_exact_zero());
  EXPECT_EQ(c4[4], S("2"));

  const AnalyticMap f = M("1+T", {{2, "T^-1"}, {3, "5"}});
  EXPECT_EQ(compose(f, PowerSeries::identity(5), 5), f.as_series(5));
  const PowerSeries h = P({"0", "2", "T", "-1/3"});
  EXPECT_EQ(compose(linear_map(S("2+T")), h, 3), scale(h, S("2+T")));
}

TEST(Compose, InnerMustFixOrigin) {
  EXPECT_THROW(compose(P({"0", "1"}), P({"1", "1"}), 1), Error);
}

TEST(Iterate, Examples) {
  const AnalyticMap f = M("-1+T", {{2, "1"}});
  EXPECT_EQ(iterate(f, 1, 4), f.as_series(4));
  EXPECT_EQ(iterate(f, 2, 4)[1], S("1 - 2*T + T^2"));
  const AnalyticMap lin = linear_map(S("2+T"));
  EXPECT_EQ(iterate(lin, 3, 4)[1], pow(S("2+T"), 3));
  EXPECT_TRUE(iterate(lin, 3, 4)[2].is_exact_zero());
  // f^2 = lambda^2 x + (lambda + lambda^2) x^2 + 2 lambda x^3 + x^4, by hand
  const PowerSeries f2 = iterate(f, 2, 4);
  const LaurentSeries lam = S("-1+T");
  EXPECT_EQ(f2[2], lam + lam * lam);
  EXPECT_EQ(f2[3], scale(lam, 2));
  EXPECT_EQ(f2[4], S("1"));
}

TEST(GrowthExponent, Examples) {
  EXPECT_EQ(growth_exponent(M("3", {{2, "1"}})).w, Valuation(0));
  EXPECT_EQ(growth_exponent(M("3", {{2, "T"}, {3, "T"}})).w, Valuation(Rational(1, 2)));
  EXPECT_TRUE(growth_exponent(linear_map(S("3"))).w.is_infinite());
  EXPECT_TRUE(growth_exponent(M("3", {{5, "T^-2"}})).attained);
}

TEST(MaximalBijectionDisc, Examples) {
  EXPECT_EQ(maximal_bijection_disc(M("1+T", {{2, "1"}})), DiscRadius::open(0));
  EXPECT_EQ(maximal_bijection_disc(M("3", {{2, "T^3"}})), DiscRadius::open(-3));
  EXPECT_TRUE(maximal_bijection_disc(linear_map(S("3"))).whole_field);
}

TEST(MaximalBijectionDisc, TailHook) {
  EXPECT_EQ(maximal_bijection_disc(Valuation(2), TailBehavior::kDivergesOnSphere), DiscRadius::open(-2));
  EXPECT_EQ(maximal_bijection_disc(Valuation(2), TailBehavior::kConvergesOnSphere), DiscRadius::closed(-2));
}

TEST(DiscRadius, Membership) {
  const DiscRadius open = DiscRadius::open(1);
  EXPECT_TRUE(open.contains(Valuation(2)));
  EXPECT_FALSE(open.contains(Valuation(1)));
  EXPECT_TRUE(DiscRadius::closed(1).contains(Valuation(1)));
  const DiscRadius irrational = DiscRadius::open(Rational(1, 2));
  EXPECT_FALSE(irrational.is_rational());
  EXPECT_TRUE(irrational.contains(Valuation(1)));
  EXPECT_FALSE(irrational.contains(Valuation(0)));
}

TEST(WeierstrassData, Examples) {
  const PowerSeries h = P({"0", "T", "1"});
  const WeierstrassData a = weierstrass_data(h, 1);
  EXPECT_EQ(a.s_exponent, Rational(2));
  EXPECT_EQ(a.d, 2);
  EXPECT_EQ(a.d_prime, 1);
  const WeierstrassData b = weierstrass_data(h, 2);
  EXPECT_EQ(b.s_exponent, Rational(3));
  EXPECT_EQ(b.d, 1);
  EXPECT_EQ(b.d_prime, 1);
  const WeierstrassData c = weierstrass_data(P({"0", "1"}), Rational(7, 3));
  EXPECT_EQ(c.s_exponent, Rational(7, 3));
  EXPECT_EQ(c.d, 1);
  EXPECT_EQ(code_of([] { weierstrass_data(PowerSeries::zero(3), 0); }), ErrorCode::kEmptyMap);
}

TEST(WeierstrassData, DegreeBoundProperty) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const AnalyticMap f = testing::random_map(rng, S("2+T"), 6);
    const PowerSeries h = f.polynomial();
    const Rational q(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 3));
    const WeierstrassData wd = weierstrass_data(h, q);
    EXPECT_LE(wd.d_prime, wd.d);
    EXPECT_FALSE(h[wd.d].is_exact_zero());
    EXPECT_FALSE(h[wd.d_prime].is_exact_zero());
  }
}

TEST(InjectivityCheck, Examples) {
  EXPECT_TRUE(injectivity_check(P({"0", "1", "1"}), 0));
  EXPECT_FALSE(injectivity_check(P({"0", "1", "T^-1"}), 0));
  EXPECT_TRUE(injectivity_check(P({"0", "1"}), 5));
  EXPECT_THROW(injectivity_check(P({"0", "0", "1"}), 0), Error);
}

TEST(MapProperties, IsometryInsideBijectionDisc) {
  std::mt19937 rng(13);
  const auto corpus = testing::random_corpus(21, 30);
  for (const auto& f : corpus) {
    const Rational w = growth_exponent(f).w.value();
    for (int s = 0; s < 10; ++s) {
      const int v = static_cast<int>((-w).floor()) + 1 + static_cast<int>(rng() % 4);
      const LaurentSeries x = testing::random_point(rng, v);
      ASSERT_TRUE(maximal_bijection_disc(f).contains(val(x)));
      EXPECT_EQ(val(evaluate(f, x)), val(x));
    }
  }
}

TEST(MapProperties, MultiplierOfIterateIsPower) {
  const auto corpus = testing::random_corpus(4, 10, 3);
  for (const auto& f : corpus)
    for (int n = 1; n <= 4; ++n)
      EXPECT_EQ(iterate(f, n, 3)[1], pow(f.multiplier(), static_cast<unsigned>(n)));
}

TEST(MapProperties, CompositionAssociativeAtTruncation) {
  std::mt19937 rng(17);
  const int k = 6;
  const auto random_series = [&] {
    PowerSeries s = PowerSeries::zero(k);
    for (int i = 1; i <= k; ++i)
      if (rng() % 3 != 0) s.set(i, testing::random_element(rng, -1, 2));
    return s;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const PowerSeries f = random_series();
    const PowerSeries g = random_series();
    const PowerSeries h = random_series();
    EXPECT_EQ(compose(f, compose(g, h, k), k), compose(compose(f, g, k), h, k));
  }
}

}  // namespace
}  // namespace ultradisc
