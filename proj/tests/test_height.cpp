#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "arinv/height.hpp"

using namespace arinv;

namespace {

const WeierstrassCurve k37a = WeierstrassCurve::from_ints(0, 0, 1, -1, 0);
const WeierstrassCurve k389a = WeierstrassCurve::from_ints(0, 1, 1, -2, 0);
const WeierstrassCurve k5077a = WeierstrassCurve::from_ints(0, 0, 1, -7, 6);

Point pt(long long x, long long y) { return Point::affine(Rational(x), Rational(y)); }

// log max(|num x|, den x) of 2^k P by repeated exact doubling, divided by 4^k.
long double group_law_limit(const WeierstrassCurve& E, Point P, int k) {
  for (int i = 0; i < k; ++i) P = group_law(E, P, P);
  const long double a = P.x == 0 ? 0 : log_abs<long double>(num(P.x));
  const long double b = log_abs<long double>(den(P.x));
  return std::max(a, b) / std::pow(4.0L, k);
}

HeightOptions tight() {
  HeightOptions o;
  o.tol = 1e-12L;
  return o;
}

}  // namespace

TEST(Height, Generator37aAgainstGroupLawLimit) {
  const long double h = canonical_height<long double>(k37a, pt(0, 0), tight());
  const long double B = height_difference_bound<long double>(k37a);
  const int k = 9;
  EXPECT_LE(std::fabs(h - group_law_limit(k37a, pt(0, 0), k)), B / std::pow(4.0L, k));
  EXPECT_NEAR(static_cast<double>(h), 0.0511114082399688, 1e-12);
}

TEST(Height, Generator37aAgainstDoublingOracle) {
  const long double h = canonical_height<long double>(k37a, pt(0, 0), tight());
  auto o = doubling_height<long double>(k37a, pt(0, 0), 1e-6L);
  EXPECT_FALSE(o.torsion);
  EXPECT_LE(o.error_bound, 1e-6L);
  EXPECT_LE(std::fabs(h - o.value), o.error_bound);
  EXPECT_LE(std::fabs(h - o.value), 2e-6L);
}

TEST(Height, PartialValueAtSixteenP) {
  const Point Q = scalar_mul(k37a, 16, pt(0, 0));
  EXPECT_EQ(Q.x, Rational(480106, 4225));
  const long double partial = std::log(480106.0L) / 256;
  const long double h = canonical_height<long double>(k37a, pt(0, 0), tight());
  EXPECT_LE(std::fabs(partial - h), height_difference_bound<long double>(k37a) / 256);
}

TEST(Height, CrossCheckOptionAgrees) {
  HeightOptions o;
  o.cross_check = true;
  EXPECT_NO_THROW(canonical_height<long double>(k389a, pt(1, 0), o));
}

TEST(Height, TorsionIsZero) {
  const auto E = WeierstrassCurve::from_ints(0, 0, 0, 0, 1);
  EXPECT_EQ(canonical_height<long double>(E, pt(2, 3)), 0.0L);
  EXPECT_EQ(canonical_height<long double>(E, pt(-1, 0)), 0.0L);
  EXPECT_EQ(canonical_height<long double>(E, Point::infinity()), 0.0L);
  // doubling only reaches O from 2-power torsion; odd torsion leaves a bounded height
  EXPECT_TRUE(doubling_height<long double>(E, pt(-1, 0), 1e-6L).torsion);
  auto o = doubling_height<long double>(E, pt(2, 3), 1e-6L);
  EXPECT_FALSE(o.torsion);
  EXPECT_LE(o.value, o.error_bound);
}

TEST(Height, Quadraticity) {
  const std::vector<std::pair<WeierstrassCurve, Point>> gens{
      {k37a, pt(0, 0)}, {k389a, pt(0, 0)}, {k389a, pt(1, 0)}, {k5077a, pt(0, 2)}, {k5077a, pt(1, 0)}, {k5077a, pt(2, 0)}};
  for (const auto& [E, P] : gens) {
    const long double h = canonical_height<long double>(E, P, tight());
    for (int n : {2, 3, 5}) {
      const long double hn = canonical_height<long double>(E, scalar_mul(E, n, P), tight());
      EXPECT_NEAR(static_cast<double>(hn), static_cast<double>(n * n * h), 1e-5) << to_string(P) << " n=" << n;
    }
  }
}

TEST(Height, ParallelogramLaw) {
  const Point P = pt(0, 2), Q = pt(1, 0);
  const auto sum = group_law(k5077a, P, Q), diff = group_law(k5077a, P, negate(k5077a, Q));
  auto h = [](const Point& R) { return canonical_height<long double>(k5077a, R, tight()); };
  EXPECT_NEAR(static_cast<double>(h(sum) + h(diff)), static_cast<double>(2 * h(P) + 2 * h(Q)), 1e-9);
}

TEST(Height, InvariantUnderChangeOfModel) {
  const CoordinateChange ch{Rational(1, 6), Rational(2), Rational(1), Rational(3)};
  const WeierstrassCurve big = transform(k37a, ch);
  const Point Q = transform(pt(0, 0), ch);
  EXPECT_NEAR(static_cast<double>(canonical_height<long double>(big, Q, tight())), 0.0511114082399688, 1e-12);
}

TEST(Height, MultiplesAgainstOracle) {
  // multiples of a generator against the oracle at a coarse tolerance
  for (int n = 1; n <= 4; ++n) {
    const Point P = scalar_mul(k5077a, n, pt(2, 0));
    const long double h = canonical_height<long double>(k5077a, P, tight());
    auto o = doubling_height<long double>(k5077a, P, 1e-4L);
    EXPECT_LE(std::fabs(h - o.value), o.error_bound + 1e-12L) << n;
  }
}

TEST(Pairing, BilinearAndScaled) {
  const Point P = pt(0, 0), Q = pt(1, 0);
  const long double pq = pairing<long double>(k389a, P, Q, tight());
  const long double p2q = pairing<long double>(k389a, scalar_mul(k389a, 2, P), Q, tight());
  EXPECT_NEAR(static_cast<double>(p2q), static_cast<double>(2 * pq), 1e-10);
  const long double pp = pairing<long double>(k389a, P, P, tight());
  // <P,P> = (h(2P) - 2 h(P)) / 2 = h(P), times the pairing scale
  EXPECT_NEAR(static_cast<double>(pp), static_cast<double>(kPairingScale * canonical_height<long double>(k389a, P, tight())),
              1e-10);
}

TEST(Regulator, ReferenceValues) {
  auto r389 = mw_regulator<long double>(k389a, {pt(0, 0), pt(1, 0)}, 2, tight());
  EXPECT_NEAR(static_cast<double>(r389.regulator), 0.343035400372, 1e-10);
  EXPECT_NEAR(static_cast<double>(r389.regulator / 2.25L), 0.152460177943, 1e-10);
  auto r5077 = mw_regulator<long double>(k5077a, {pt(0, 2), pt(1, 0), pt(2, 0)}, 3, tight());
  EXPECT_NEAR(static_cast<double>(r5077.regulator), 1.407859510810, 1e-10);
  EXPECT_NEAR(static_cast<double>(r5077.regulator / 3.375L), 0.417143558758, 1e-10);
}

TEST(Regulator, RankZeroIsOne) {
  auto r = mw_regulator<long double>(WeierstrassCurve::from_ints(0, 0, 0, 0, 25), {}, 0);
  EXPECT_EQ(r.regulator, 1.0L);
  EXPECT_TRUE(r.gram.empty());
}

TEST(Regulator, Errors) {
  EXPECT_THROW(mw_regulator<long double>(k389a, {pt(0, 0)}, 2), Error);
  EXPECT_THROW(mw_regulator<long double>(k389a, {pt(0, 0), scalar_mul(k389a, 2, pt(0, 0))}, 2), Error);
  EXPECT_THROW(mw_regulator<long double>(k389a, {pt(0, 0), pt(5, 5)}, 2), Error);
}

TEST(Regulator, UnimodularRecombinations) {
  const std::vector<Point> base{pt(0, 2), pt(1, 0), pt(2, 0)};
  const long double R = mw_regulator<long double>(k5077a, base, 3, tight()).regulator;
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> idx(0, 2), coef(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = base;
    for (int step = 0; step < 3; ++step) {
      const int i = idx(rng), j = idx(rng), c = coef(rng);
      if (i == j || c == 0) {
        std::swap(pts[0], pts[2]);
        continue;
      }
      pts[i] = group_law(k5077a, pts[i], scalar_mul(k5077a, c, pts[j]));
    }
    const long double r = mw_regulator<long double>(k5077a, pts, 3, tight()).regulator;
    EXPECT_NEAR(static_cast<double>(r), static_cast<double>(R), 1e-8) << trial;
  }
}

TEST(Faltings, NonnegativeOnSamples) {
  for (const auto& E : {k37a, k389a, k5077a, WeierstrassCurve::from_ints(0, 0, 0, 0, 1),
                        WeierstrassCurve::from_ints(0, 0, 0, 1, 0), WeierstrassCurve::from_ints(0, 0, 0, 0, 25)})
    EXPECT_GE(faltings_height_plus<long double>(E), 0.0L) << to_string(E);
}

TEST(Faltings, MatchesLatticeCovolume) {
  // h_F+ = log(2 pi) - log(2 covol) / 2 for the period lattice of the minimal model
  for (const auto& E : {k37a, k389a, WeierstrassCurve::from_ints(0, 0, 0, 0, 1)}) {
    auto p = agm_periods<long double>(minimal_model(E).curve);
    const long double covol = std::fabs(std::imag(std::conj(p.omega1) * p.omega2));
    const long double want = std::log(2 * std::acos(-1.0L)) - std::log(2 * covol) / 2;
    EXPECT_NEAR(static_cast<double>(faltings_height_plus<long double>(E)), static_cast<double>(want), 1e-10)
        << to_string(E);
  }
}
