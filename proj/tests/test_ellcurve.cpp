#include <cmath>

#include <gtest/gtest.h>

#include "arinv/periods.hpp"

using namespace arinv;

namespace {

const WeierstrassCurve k37a = WeierstrassCurve::from_ints(0, 0, 1, -1, 0);

Point pt(long long x, long long y) { return Point::affine(Rational(x), Rational(y)); }

}  // namespace

TEST(Curve, Invariants37a) {
  EXPECT_EQ(k37a.b2(), 0);
  EXPECT_EQ(k37a.b4(), -2);
  EXPECT_EQ(k37a.b6(), 1);
  EXPECT_EQ(k37a.b8(), -1);
  EXPECT_EQ(k37a.c4(), 48);
  EXPECT_EQ(k37a.c6(), -216);
  EXPECT_EQ(k37a.discriminant(), 37);
  EXPECT_EQ(k37a.j(), Rational(110592, 37));
}

TEST(Curve, InvariantIdentities) {
  for (const auto& E : {k37a, WeierstrassCurve::from_ints(1, -1, 1, -7, 6), WeierstrassCurve::from_ints(0, 1, 1, -2, 0),
                        WeierstrassCurve::from_ints(1, 2, 3, 4, 5)}) {
    EXPECT_EQ(4 * E.b8(), E.b2() * E.b6() - E.b4() * E.b4());
    EXPECT_EQ(1728 * E.discriminant(), E.c4() * E.c4() * E.c4() - E.c6() * E.c6());
  }
}

TEST(Curve, SingularRejected) {
  EXPECT_THROW(WeierstrassCurve::from_ints(0, 0, 0, 0, 0), Error);
  EXPECT_THROW(WeierstrassCurve::from_ints(0, 1, 0, 0, 0), Error);
}

TEST(GroupLaw, Multiples37a) {
  const Point P = pt(0, 0);
  EXPECT_EQ(scalar_mul(k37a, 2, P), pt(1, 0));
  EXPECT_EQ(scalar_mul(k37a, 3, P), pt(-1, -1));
  EXPECT_EQ(scalar_mul(k37a, 4, P), pt(2, -3));
  EXPECT_EQ(scalar_mul(k37a, 5, P), Point::affine(Rational(1, 4), Rational(-5, 8)));
  EXPECT_EQ(scalar_mul(k37a, -1, P), negate(k37a, P));
  EXPECT_EQ(scalar_mul(k37a, 0, P), Point::infinity());
}

TEST(GroupLaw, GroupAxioms) {
  const Point P = pt(0, 0);
  const Point Q = scalar_mul(k37a, 3, P), R = scalar_mul(k37a, -5, P);
  EXPECT_EQ(group_law(k37a, P, Q), group_law(k37a, Q, P));
  EXPECT_EQ(group_law(k37a, group_law(k37a, P, Q), R), group_law(k37a, P, group_law(k37a, Q, R)));
  EXPECT_EQ(group_law(k37a, P, negate(k37a, P)), Point::infinity());
  EXPECT_EQ(group_law(k37a, P, Point::infinity()), P);
  EXPECT_EQ(group_law(k37a, Q, R), scalar_mul(k37a, -2, P));
}

TEST(GroupLaw, RejectsPointOffCurve) {
  EXPECT_THROW(group_law(k37a, pt(1, 1), pt(0, 0)), Error);
  EXPECT_THROW(scalar_mul(k37a, 2, pt(5, 5)), Error);
}

TEST(Torsion, Orders) {
  const auto E = WeierstrassCurve::from_ints(0, 0, 0, 0, 1);
  EXPECT_EQ(torsion_order(E, pt(2, 3)), 6);
  EXPECT_EQ(torsion_order(E, pt(0, 1)), 3);
  EXPECT_EQ(torsion_order(E, pt(-1, 0)), 2);
  EXPECT_FALSE(torsion_order(k37a, pt(0, 0)).has_value());
}

TEST(MinimalModel, AlreadyMinimal) {
  auto mm = minimal_model(k37a);
  EXPECT_EQ(mm.curve, k37a);
  EXPECT_EQ(mm.change.u, 1);
  EXPECT_TRUE(is_minimal(k37a));
}

TEST(MinimalModel, RecoversFromScaledModel) {
  // a non-minimal, non-reduced model of 37a
  const CoordinateChange ch{Rational(1, 6), Rational(2), Rational(1), Rational(3)};
  const WeierstrassCurve big = transform(k37a, ch);
  EXPECT_TRUE(big.is_integral());
  EXPECT_FALSE(is_minimal(big));
  EXPECT_EQ(big.discriminant(), k37a.discriminant() * rpow(Rational(6), 12));
  auto mm = minimal_model(big);
  EXPECT_EQ(mm.curve, k37a);
  EXPECT_EQ(transform(big, mm.change), k37a);
  // points follow the change of coordinates both ways
  for (int n = 1; n <= 4; ++n) {
    const Point P = scalar_mul(k37a, n, pt(0, 0));
    const Point Q = transform(P, ch);
    ASSERT_TRUE(on_curve(big, Q));
    EXPECT_EQ(transform(Q, mm.change), P);
  }
}

TEST(MinimalModel, RationalCoefficients) {
  // y^2 = x^3 - x/16 becomes y^2 = x^3 - x after x -> x/4, y -> y/8
  const WeierstrassCurve E({Rational(0), Rational(0), Rational(0), Rational(-1, 16), Rational(0)});
  auto mm = minimal_model(E);
  EXPECT_TRUE(is_minimal(mm.curve));
  EXPECT_EQ(mm.curve.j(), E.j());
  EXPECT_EQ(abs(mm.curve.discriminant()), 64);
}

TEST(Reduction, Semistable37a) {
  auto r = reduction_data(k37a);
  ASSERT_EQ(r.primes.size(), 1u);
  EXPECT_EQ(r.primes[0].p, 37);
  EXPECT_EQ(r.primes[0].kind, ReductionKind::Multiplicative);
  EXPECT_TRUE(r.primes[0].stable);
  EXPECT_TRUE(r.semistable);
  EXPECT_EQ(r.n0, 37);
  EXPECT_EQ(r.n_stable, 37);
  EXPECT_EQ(r.n_unstable, 1);
}

TEST(Reduction, AdditiveJZero) {
  auto r = reduction_data(WeierstrassCurve::from_ints(0, 0, 0, 0, 1));
  ASSERT_EQ(r.primes.size(), 2u);
  EXPECT_EQ(r.primes[0].p, 2);
  EXPECT_EQ(r.primes[1].p, 3);
  for (const auto& bp : r.primes) {
    EXPECT_EQ(bp.kind, ReductionKind::Additive);
    EXPECT_FALSE(bp.stable);
  }
  EXPECT_FALSE(r.semistable);
  EXPECT_EQ(r.n0, 6);
  EXPECT_EQ(r.n_unstable, 6);
}

TEST(Reduction, RequiresMinimalModel) {
  EXPECT_THROW(reduction_data(transform(k37a, {Rational(1, 2), 0, 0, 0})), Error);
}

TEST(EpFamily, PrimesFiveModNine) {
  auto f = ep_family(60);
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[0].label, "Ep5");
  EXPECT_EQ(f[3].label, "Ep59");
  EXPECT_EQ(f[1].a[4], 529);
  EXPECT_EQ(ep_family(4).size(), 0u);
  EXPECT_EQ(ep_family(25).size(), 2u);
  for (const auto& r : ep_family(100)) {
    EXPECT_EQ(r.rank, 0);
    EXPECT_TRUE(r.generators.empty());
  }
}

TEST(Periods, SquareLattice) {
  auto p = agm_periods<long double>(WeierstrassCurve::from_ints(0, 0, 0, 1, 0));
  EXPECT_NEAR(static_cast<double>(p.tau.value.re()), 0.0, 1e-8);
  EXPECT_NEAR(static_cast<double>(p.tau.value.im()), 1.0, 1e-8);
}

TEST(Periods, HexagonalLattice) {
  auto p = agm_periods<long double>(WeierstrassCurve::from_ints(0, 0, 0, 0, 1));
  EXPECT_NEAR(static_cast<double>(p.tau.value.re()), 0.5, 1e-8);
  EXPECT_NEAR(static_cast<double>(p.tau.value.im()), std::sqrt(3.0) / 2, 1e-8);
}

TEST(Periods, RealPeriod37a) {
  // least real period 2.99345864623196; twice it counts both real components
  auto p = agm_periods<long double>(k37a);
  EXPECT_NEAR(static_cast<double>(std::abs(p.omega1)), 2.99345864623196, 1e-10);
}

TEST(Periods, AnalyticJMatches) {
  for (const auto& E : {k37a, WeierstrassCurve::from_ints(0, 1, 1, -2, 0), WeierstrassCurve::from_ints(0, 0, 1, -7, 6),
                        WeierstrassCurve::from_ints(0, 0, 0, 0, 25), WeierstrassCurve::from_ints(1, -1, 0, -4, 4)}) {
    auto p = agm_periods<long double>(E);
    auto j = j_invariant_series(p.tau.value);
    const long double ja = to_real<long double>(E.j());
    EXPECT_LE(std::abs(j.value() - std::complex<long double>(ja)), 1e-6L * std::max(1.0L, std::fabs(ja)));
  }
}
