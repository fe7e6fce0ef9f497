#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "arinv/arith.hpp"

using namespace arinv;

namespace {

// Real root of a monotone stretch of p by plain bisection in long double.
long double bisect(const IntPolynomial& p, long double lo, long double hi) {
  auto f = [&](long double x) {
    long double acc = 0;
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + it->convert_to<long double>();
    return acc;
  };
  for (int i = 0; i < 200; ++i) {
    long double mid = (lo + hi) / 2;
    if ((f(lo) < 0) == (f(mid) < 0))
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

long double abs_residual(const IntPolynomial& p, std::complex<long double> z) {
  std::complex<long double> acc = 0;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + it->convert_to<long double>();
  return std::abs(acc);
}

// Smallest unit a + b sqrt(m) > 1 of the maximal order by direct search over
// (A, B) = (2a, 2b).
long double brute_force_unit(long long m) {
  const bool half = m % 4 == 1;
  for (long long B = 1; B < 2000000; ++B) {
    if (!half && B % 2) continue;
    for (long long sign : {-4LL, 4LL}) {
      long long A2 = m * B * B + sign;
      if (A2 <= 0) continue;
      long long A = static_cast<long long>(std::llround(std::sqrt(static_cast<long double>(A2))));
      if (A * A != A2) continue;
      if (!half && A % 2) continue;
      if ((A - B) % 2) continue;
      return (A + B * std::sqrt(static_cast<long double>(m))) / 2;
    }
  }
  return 0;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(to_string(Rational(7, 3)), "7/3");
  EXPECT_EQ(to_string(Rational(-4)), "-4");
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Valuation, Basics) {
  EXPECT_EQ(valuation(Integer(270000), Integer(2)), 4);
  EXPECT_EQ(valuation(Integer(270000), Integer(5)), 4);
  EXPECT_EQ(valuation(Rational(9, 250), Integer(5)), -3);
}

TEST(PolyRoots, SqrtTwo) {
  IntPolynomial p{-2, 0, 1};
  auto r = poly_roots<long double>(p, 1e-15L);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_TRUE(r[0].is_real());
  EXPECT_TRUE(r[1].is_real());
  EXPECT_NEAR(static_cast<double>(r[1].re), static_cast<double>(bisect(p, 1, 2)), 1e-15);
  EXPECT_NEAR(static_cast<double>(r[0].re), static_cast<double>(bisect(p, -2, -1)), 1e-15);
}

TEST(PolyRoots, GaussianPair) {
  IntPolynomial p{1, 0, 1};
  auto r = poly_roots<long double>(p, 1e-15L);
  ASSERT_EQ(r.size(), 2u);
  for (const auto& z : r) {
    EXPECT_FALSE(z.is_real());
    EXPECT_NEAR(static_cast<double>(std::fabs(z.im)), 1.0, 1e-15);
    EXPECT_NEAR(static_cast<double>(z.re), 0.0, 1e-15);
  }
}

TEST(PolyRoots, PlasticCubic) {
  IntPolynomial p{-1, -1, 0, 1};
  auto r = poly_roots<long double>(p, 1e-15L);
  ASSERT_EQ(r.size(), 3u);
  int real = 0;
  for (const auto& z : r) {
    if (z.is_real()) {
      ++real;
      EXPECT_NEAR(static_cast<double>(z.re), static_cast<double>(bisect(p, 1, 2)), 1e-14);
    }
    EXPECT_LT(abs_residual(p, z.value()), 1e-14L);
    EXPECT_LE(z.err, 1e-12L);
  }
  EXPECT_EQ(real, 1);
}

TEST(PolyRoots, ResidualsOnRandomPolynomials) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Integer> c;
    const int deg = 2 + trial % 4;
    for (int i = 0; i < deg; ++i) c.emplace_back(coeff(rng));
    c.emplace_back(1);
    IntPolynomial p(c);
    if (!is_squarefree(p)) continue;
    auto r = poly_roots<long double>(p, 1e-14L);
    ASSERT_EQ(static_cast<int>(r.size()), deg);
    long double scale = 0;
    for (const auto& x : c) scale += std::fabs(x.convert_to<long double>());
    for (const auto& z : r) EXPECT_LT(abs_residual(p, z.value()), 1e-11L * scale * std::pow(1 + std::abs(z.value()), deg));
  }
}

TEST(Pell, MatchesBruteForce) {
  for (long long m : {2, 3, 5, 6, 7, 10, 13, 21}) {
    auto u = pell_fundamental_solution(Integer(m));
    auto n = u.norm();
    EXPECT_TRUE(n == 1 || n == -1) << m;
    EXPECT_NEAR(static_cast<double>(u.value<long double>()), static_cast<double>(brute_force_unit(m)), 1e-9) << m;
  }
  EXPECT_NEAR(static_cast<double>(std::log(pell_fundamental_solution(Integer(2)).value<long double>())),
              0.881373587019543, 1e-12);
  EXPECT_NEAR(static_cast<double>(std::log(pell_fundamental_solution(Integer(5)).value<long double>())),
              0.481211825059603, 1e-12);
}

TEST(Pell, RejectsNonSquarefree) {
  EXPECT_THROW(pell_fundamental_solution(Integer(12)), Error);
  EXPECT_THROW(pell_fundamental_solution(Integer(1)), Error);
}

TEST(Factorize, SmallExamples) {
  auto f = factorize(Integer(37));
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors[0].first, 37);

  f = factorize(Integer(-432));
  EXPECT_EQ(f.sign, -1);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0], std::make_pair(Integer(2), 4u));
  EXPECT_EQ(f.factors[1], std::make_pair(Integer(3), 3u));

  f = factorize(Integer(270000));
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_EQ(f.factors[2], std::make_pair(Integer(5), 4u));
  EXPECT_EQ(f.value(), 270000);
}

TEST(Factorize, PastTrialDivision) {
  Integer n = Integer(1000003) * Integer(1000033) * Integer(1000037);
  auto f = factorize(n);
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_EQ(f.value(), n);
  for (const auto& [p, e] : f.factors) EXPECT_TRUE(is_prime(p));
}

TEST(Factorize, RandomRecompositions) {
  std::mt19937_64 rng(12345);
  const std::vector<long long> primes{2, 3, 5, 7, 11, 13, 37, 101, 389, 5077, 65537, 999983};
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  std::uniform_int_distribution<int> expo(0, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    std::map<long long, unsigned> want;
    Integer n = 1;
    for (int k = 0; k < 4; ++k) {
      long long p = primes[pick(rng)];
      int e = expo(rng);
      if (!e) continue;
      want[p] += e;
      n *= ipow(Integer(p), e);
    }
    auto f = factorize(n);
    ASSERT_EQ(f.factors.size(), want.size());
    std::size_t i = 0;
    for (const auto& [p, e] : want) {
      EXPECT_EQ(f.factors[i].first, p);
      EXPECT_EQ(f.factors[i].second, e);
      ++i;
    }
  }
}

TEST(Primality, KnownValues) {
  EXPECT_TRUE(is_prime(Integer(2)));
  EXPECT_TRUE(is_prime(Integer(5077)));
  EXPECT_FALSE(is_prime(Integer(561)));
  EXPECT_TRUE(is_prime(Integer("18446744073709551557")));
  EXPECT_FALSE(is_prime(Integer("18446744073709551559")));
}

TEST(Squarefree, Integers) {
  EXPECT_TRUE(is_squarefree(Integer(-10)));
  EXPECT_FALSE(is_squarefree(Integer(18)));
}
