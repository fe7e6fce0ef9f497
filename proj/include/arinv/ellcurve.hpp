#pragma once

// Elliptic curves over Q: Weierstrass models, exact group law, global
// minimal models and bad-reduction data.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "arinv/arith.hpp"
#include "arinv/error.hpp"

namespace arinv {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with its standard invariants.
class WeierstrassCurve {
 public:
  /// Coefficients in the order a1, a2, a3, a4, a6.
  explicit WeierstrassCurve(std::array<Rational, 5> a) : a_(std::move(a)) {
    const auto& [a1, a2, a3, a4, a6] = a_;
    b2_ = a1 * a1 + 4 * a2;
    b4_ = 2 * a4 + a1 * a3;
    b6_ = a3 * a3 + 4 * a6;
    b8_ = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c4_ = b2_ * b2_ - 24 * b4_;
    c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
    disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
    if (disc_ == 0) throw Error(ErrorKind::SingularCurve, "discriminant is zero");
    j_ = c4_ * c4_ * c4_ / disc_;
  }

  static WeierstrassCurve from_ints(long long a1, long long a2, long long a3, long long a4, long long a6) {
    return WeierstrassCurve({Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6)});
  }

  const std::array<Rational, 5>& a() const { return a_; }
  const Rational& a1() const { return a_[0]; }
  const Rational& a2() const { return a_[1]; }
  const Rational& a3() const { return a_[2]; }
  const Rational& a4() const { return a_[3]; }
  const Rational& a6() const { return a_[4]; }
  const Rational& b2() const { return b2_; }
  const Rational& b4() const { return b4_; }
  const Rational& b6() const { return b6_; }
  const Rational& b8() const { return b8_; }
  const Rational& c4() const { return c4_; }
  const Rational& c6() const { return c6_; }
  const Rational& discriminant() const { return disc_; }
  const Rational& j() const { return j_; }

  bool is_integral() const {
    for (const auto& c : a_)
      if (!arinv::is_integral(c)) return false;
    return true;
  }

  bool operator==(const WeierstrassCurve& o) const { return a_ == o.a_; }

 private:
  std::array<Rational, 5> a_;
  Rational b2_, b4_, b6_, b8_, c4_, c6_, disc_, j_;
};

inline std::string to_string(const WeierstrassCurve& E) {
  std::string s = "[";
  for (std::size_t i = 0; i < 5; ++i) s += (i ? "," : "") + to_string(E.a()[i]);
  return s + "]";
}

// ---------------------------------------------------------------------------
// Points and the group law

struct Point {
  bool infinite = true;
  Rational x, y;

  static Point infinity() { return {}; }
  static Point affine(Rational x, Rational y) { return {false, std::move(x), std::move(y)}; }
  bool operator==(const Point& o) const {
    return infinite == o.infinite && (infinite || (x == o.x && y == o.y));
  }
};

inline std::string to_string(const Point& P) {
  if (P.infinite) return "O";
  return "(" + to_string(P.x) + "," + to_string(P.y) + ")";
}

inline bool on_curve(const WeierstrassCurve& E, const Point& P) {
  if (P.infinite) return true;
  const auto& x = P.x;
  const auto& y = P.y;
  return y * y + E.a1() * x * y + E.a3() * y == x * x * x + E.a2() * x * x + E.a4() * x + E.a6();
}

inline void require_on_curve(const WeierstrassCurve& E, const Point& P) {
  if (!on_curve(E, P)) throw Error(ErrorKind::PointNotOnCurve, to_string(P) + " is not on " + to_string(E));
}

inline Point negate(const WeierstrassCurve& E, const Point& P) {
  if (P.infinite) return P;
  return Point::affine(P.x, -P.y - E.a1() * P.x - E.a3());
}

namespace detail {

inline Point add_unchecked(const WeierstrassCurve& E, const Point& P, const Point& Q) {
  if (P.infinite) return Q;
  if (Q.infinite) return P;
  Rational lambda, nu;
  if (P.x == Q.x) {
    if (P.y + Q.y + E.a1() * Q.x + E.a3() == 0) return Point::infinity();
    Rational num = 3 * P.x * P.x + 2 * E.a2() * P.x + E.a4() - E.a1() * P.y;
    Rational den = 2 * P.y + E.a1() * P.x + E.a3();
    lambda = num / den;
    nu = (-P.x * P.x * P.x + E.a4() * P.x + 2 * E.a6() - E.a3() * P.y) / den;
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
    nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
  }
  Rational x3 = lambda * lambda + E.a1() * lambda - E.a2() - P.x - Q.x;
  Rational y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
  return Point::affine(std::move(x3), std::move(y3));
}

}  // namespace detail

/// Chord-tangent addition with O as identity.
inline Point group_law(const WeierstrassCurve& E, const Point& P, const Point& Q) {
  require_on_curve(E, P);
  require_on_curve(E, Q);
  return detail::add_unchecked(E, P, Q);
}

inline Point scalar_mul(const WeierstrassCurve& E, long long n, const Point& P) {
  require_on_curve(E, P);
  Point base = n < 0 ? negate(E, P) : P;
  unsigned long long k = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1 : static_cast<unsigned long long>(n);
  Point acc = Point::infinity();
  while (k) {
    if (k & 1) acc = detail::add_unchecked(E, acc, base);
    base = detail::add_unchecked(E, base, base);
    k >>= 1;
  }
  return acc;
}

/// Smallest n <= bound with nP = O, if any.
inline std::optional<int> torsion_order(const WeierstrassCurve& E, const Point& P, int bound = 12) {
  require_on_curve(E, P);
  Point acc = P;
  for (int n = 1; n <= bound; ++n) {
    if (acc.infinite) return n;
    acc = detail::add_unchecked(E, acc, P);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Changes of coordinates and minimal models

/// x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct CoordinateChange {
  Rational u{1}, r{0}, s{0}, t{0};
};

inline WeierstrassCurve transform(const WeierstrassCurve& E, const CoordinateChange& ch) {
  const auto& [a1, a2, a3, a4, a6] = E.a();
  const auto& [u, r, s, t] = ch;
  Rational n1 = a1 + 2 * s;
  Rational n2 = a2 - s * a1 + 3 * r - s * s;
  Rational n3 = a3 + r * a1 + 2 * t;
  Rational n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
  Rational n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
  return WeierstrassCurve({n1 / u, n2 / (u * u), n3 / rpow(u, 3), n4 / rpow(u, 4), n6 / rpow(u, 6)});
}

inline Point transform(const Point& P, const CoordinateChange& ch) {
  if (P.infinite) return P;
  Rational xp = (P.x - ch.r) / (ch.u * ch.u);
  Rational yp = (P.y - ch.s * (P.x - ch.r) - ch.t) / rpow(ch.u, 3);
  return Point::affine(std::move(xp), std::move(yp));
}

struct MinimalModel {
  WeierstrassCurve curve;
  CoordinateChange change;  // from the input model; Delta_in = u^12 Delta_min
};

namespace detail {

inline Rational smod(const Integer& a, long m, long lo) {
  // representative of a mod m in [lo, lo + m)
  Integer r = a % m;
  if (r < 0) r += m;
  Integer v = r;
  while (v < lo) v += m;
  while (v >= lo + m) v -= m;
  return Rational(v);
}

}  // namespace detail

/// Global minimal model over Q in reduced form (a1, a3 in {0,1},
/// a2 in {-1,0,1}), following Laska, Kraus and Connell.
inline MinimalModel minimal_model(const WeierstrassCurve& E) {
  // integral model first: scale by the lcm of the denominators
  Integer lcm_den = 1;
  for (const auto& c : E.a()) lcm_den = lcm(lcm_den, den(c));
  Rational u0 = Rational(1) / Rational(lcm_den);
  WeierstrassCurve integral = transform(E, {u0, 0, 0, 0});

  Integer c4 = num(integral.c4()), c6 = num(integral.c6()), disc = num(integral.discriminant());
  Integer g = gcd(Integer(c6 * c6), disc);
  Integer u = 1;
  if (abs_int(g) > 1) {
    for (const auto& [p, e] : factorize(g).factors) {
      int d = static_cast<int>(e) / 12;
      if (d == 0) continue;
      if (p == 2) {
        Integer a = c4 / ipow(p, 4 * d);
        Integer b = c6 / ipow(p, 6 * d);
        Integer a16 = ((a % 16) + 16) % 16, b32 = ((b % 32) + 32) % 32;
        if ((((b % 4) + 4) % 4) != 3 && !(a16 == 0 && (b32 == 0 || b32 == 8))) --d;
      } else if (p == 3) {
        if (valuation(c6, p) == 6 * d + 2) --d;
      }
      u *= ipow(p, static_cast<unsigned>(d));
    }
  }
  Integer c4m = c4 / ipow(u, 4), c6m = c6 / ipow(u, 6);
  Rational b2 = detail::smod(-c6m, 12, -5);
  Rational b4 = (b2 * b2 - Rational(c4m)) / 24;
  Rational b6 = (-b2 * b2 * b2 + 36 * b2 * b4 - Rational(c6m)) / 216;
  Rational a1 = detail::smod(num(b2), 2, 0);
  Rational a3 = detail::smod(num(b6), 2, 0);
  Rational a2 = (b2 - a1) / 4;
  Rational a4 = (b4 - a1 * a3) / 2;
  Rational a6 = (b6 - a3) / 4;
  WeierstrassCurve minimal({a1, a2, a3, a4, a6});

  // recover (r, s, t) relative to the original model
  Rational ut = u0 * Rational(u);
  Rational s = (ut * minimal.a1() - E.a1()) / 2;
  Rational r = (ut * ut * minimal.a2() - E.a2() + s * E.a1() + s * s) / 3;
  Rational t = (rpow(ut, 3) * minimal.a3() - E.a3() - r * E.a1()) / 2;
  CoordinateChange ch{ut, r, s, t};
  if (!(transform(E, ch) == minimal)) throw Error(ErrorKind::Internal, "minimal model change does not reproduce model");
  return {minimal, ch};
}

inline bool is_minimal(const WeierstrassCurve& E) {
  return E.is_integral() && minimal_model(E).change.u == 1;
}

// ---------------------------------------------------------------------------
// Reduction data

enum class ReductionKind { Multiplicative, Additive };

struct BadPrime {
  Integer p;
  int disc_valuation = 0;
  ReductionKind kind = ReductionKind::Additive;
  bool stable = false;  // potentially multiplicative: v_p(j) < 0
};

struct ReductionData {
  std::vector<BadPrime> primes;
  Integer n0 = 1;
  Integer n_stable = 1;
  Integer n_unstable = 1;
  bool semistable = true;
};

inline ReductionData reduction_data(const WeierstrassCurve& minimal) {
  if (!is_minimal(minimal)) throw Error(ErrorKind::NotMinimal, to_string(minimal) + " is not a minimal model");
  ReductionData out;
  const Integer c4 = num(minimal.c4());
  for (const auto& [p, e] : factorize(num(minimal.discriminant())).factors) {
    BadPrime bp;
    bp.p = p;
    bp.disc_valuation = static_cast<int>(e);
    bp.kind = (c4 % p != 0) ? ReductionKind::Multiplicative : ReductionKind::Additive;
    bp.stable = minimal.j() != 0 && valuation(minimal.j(), p) < 0;
    out.n0 *= p;
    (bp.stable ? out.n_stable : out.n_unstable) *= p;
    if (bp.kind == ReductionKind::Additive) out.semistable = false;
    out.primes.push_back(std::move(bp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Curve records

struct CurveRecord {
  std::string label;
  std::array<Rational, 5> a;
  int rank = 0;
  std::vector<Point> generators;
};

/// y^2 = x^3 + p^2 for primes p <= p_max with p = 5 mod 9; all have rank 0.
inline std::vector<CurveRecord> ep_family(long long p_max) {
  std::vector<CurveRecord> out;
  for (long long p = 5; p <= p_max; p += 9) {
    if (!is_prime(Integer(p))) continue;
    CurveRecord rec;
    rec.label = "Ep" + std::to_string(p);
    rec.a = {Rational(0), Rational(0), Rational(0), Rational(0), Rational(p * p)};
    rec.rank = 0;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace arinv
