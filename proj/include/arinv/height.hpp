#pragma once

// Canonical heights in the x-normalization, the height pairing on L = 3(O),
// Mordell-Weil regulators and the stable Faltings height.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "arinv/analytic.hpp"
#include "arinv/ellcurve.hpp"
#include "arinv/linalg.hpp"
#include "arinv/periods.hpp"

namespace arinv {

/// h_{3(O)} = kPairingScale * h_x. The x-function has polar divisor 2(O).
inline constexpr long double kPairingScale = 1.5L;

inline constexpr const char* kHeightNormalization =
    "heights: h_x = lim 4^-n log H(x(2^n P)); pairing uses h_3(O) = (3/2) h_x";

struct HeightOptions {
  long double tol = 1e-6L;
  bool cross_check = false;  // also run the doubling oracle and compare within 2 tol
};

template <class Real = long double>
struct OracleHeight {
  Real value = 0;
  Real error_bound = 0;
  int doublings = 0;
  bool torsion = false;
};

namespace detail {

template <class Real>
Real log_max1(const Rational& q) {
  if (q == 0) return Real(0);
  Real l = log_abs<Real>(q);
  return l > 0 ? l : Real(0);
}

// log max(|num|, |den|)
template <class Real>
Real naive_height(const Rational& q) {
  Real a = q == 0 ? Real(0) : log_abs<Real>(num(q));
  Real b = log_abs<Real>(den(q));
  return a > b ? a : b;
}

/// Height data attached to a curve: the minimal model, its bad primes and a
/// real translate x' = x - r with x' >= 1 on the real locus.
template <class Real>
struct HeightContext {
  WeierstrassCurve input;
  MinimalModel minimal;
  ReductionData reduction;
  Real shift;
  Real b2, b4, b6, b8;  // of the translated minimal model

  explicit HeightContext(const WeierstrassCurve& E)
      : input(E), minimal(minimal_model(E)), reduction(reduction_data(minimal.curve)) {
    const auto& M = minimal.curve;
    auto e = real_two_torsion_x<Real>(M);
    if (e.empty()) throw Error(ErrorKind::Internal, "no real 2-torsion abscissa");
    const Real r = e.front() - Real(1);
    shift = r;
    const Real B2 = to_real<Real>(M.b2()), B4 = to_real<Real>(M.b4()), B6 = to_real<Real>(M.b6()),
               B8 = to_real<Real>(M.b8());
    b2 = B2 + Real(12) * r;
    b4 = B4 + r * B2 + Real(6) * r * r;
    b6 = B6 + Real(2) * r * B4 + r * r * B2 + Real(4) * r * r * r;
    b8 = B8 + Real(3) * r * B6 + Real(3) * r * r * B4 + r * r * r * B2 + Real(3) * r * r * r * r;
  }

  // log|x'| + sum 4^-(n+1) log z(2^n P)
  Real archimedean(const Point& P) const {
    using std::abs;
    using std::log;
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real xp = to_real<Real>(P.x) - shift;
    Real sum = log(xp);
    Real t = Real(1) / xp;
    Real weight = Real(1) / Real(4);
    for (int n = 0; n < 4096; ++n) {
      const Real t2 = t * t, t3 = t2 * t, t4 = t3 * t;
      const Real z = Real(1) - b4 * t2 - Real(2) * b6 * t3 - b8 * t4;
      const Real w = Real(4) * t + b2 * t2 + Real(2) * b4 * t3 + b6 * t4;
      const Real lz = log(z);
      sum += weight * lz;
      t = w / z;
      if (weight * (abs(lz) + Real(1)) < eps * Real(1e-2)) break;
      weight /= Real(4);
    }
    return sum;
  }

  // log den(x) plus corrections at primes where P reduces to the singular point
  Real non_archimedean(const Point& P) const {
    using std::min;
    const auto& M = minimal.curve;
    Real sum = log_abs<Real>(den(P.x));
    if (!is_integral(P.x)) return sum;
    const Rational psi2 = 2 * P.y + M.a1() * P.x + M.a3();
    const Rational dfdx = 3 * P.x * P.x + 2 * M.a2() * P.x + M.a4() - M.a1() * P.y;
    for (const auto& bp : reduction.primes) {
      const Integer& p = bp.p;
      const int v2 = psi2 == 0 ? std::numeric_limits<int>::max() : valuation(psi2, p);
      const int vd = dfdx == 0 ? std::numeric_limits<int>::max() : valuation(dfdx, p);
      if (v2 <= 0 || vd <= 0) continue;
      const Real logp = log_abs<Real>(p);
      if (bp.kind == ReductionKind::Multiplicative) {
        const Real N = bp.disc_valuation;
        const Real n = min(Real(v2), N / Real(2));
        sum -= n * (N - n) / N * logp;
      } else {
        const Rational& x = P.x;
        const Rational psi3 = 3 * x * x * x * x + M.b2() * x * x * x + 3 * M.b4() * x * x + 3 * M.b6() * x + M.b8();
        const int v3 = psi3 == 0 ? std::numeric_limits<int>::max() : valuation(psi3, p);
        if (static_cast<long long>(v3) >= 3LL * v2)
          sum -= Real(2) / Real(3) * Real(v2) * logp;
        else
          sum -= Real(v3) / Real(4) * logp;
      }
    }
    return sum;
  }

  Point to_minimal(const Point& P) const { return transform(P, minimal.change); }

  Real height(const Point& P, Real tol) const {
    require_on_curve(input, P);
    if (P.infinite) return Real(0);
    const Point Q = to_minimal(P);
    Real h = archimedean(Q) + non_archimedean(Q);
    if (h < tol && torsion_order(input, P).has_value()) return Real(0);
    return h;
  }
};

}  // namespace detail

/// Bound B with |h_x(P) - h_x canonical(P)| <= B on an integral model.
template <class Real = long double>
Real height_difference_bound(const WeierstrassCurve& integral) {
  using std::log;
  const Real hj = detail::naive_height<Real>(integral.j());
  const Real mu = log_abs<Real>(integral.discriminant()) / Real(12) + detail::log_max1<Real>(integral.j()) / Real(12) +
                  detail::log_max1<Real>(integral.b2() / 12) / Real(2) +
                  (integral.b2() != 0 ? log(Real(2)) / Real(2) : Real(0));
  const Real lower = hj / Real(8) + mu + Real(0.973);
  const Real upper = hj / Real(12) + mu + Real(1.07);
  return Real(2) * (lower > upper ? lower : upper);
}

/// h_x(P) = lim 4^-n h(x(2^n P)) by exact doubling on the minimal model;
/// stops at the first n with B / 4^n <= tol.
template <class Real = long double>
OracleHeight<Real> doubling_height(const WeierstrassCurve& E, const Point& P, Real tol) {
  require_on_curve(E, P);
  OracleHeight<Real> out;
  if (P.infinite) {
    out.torsion = true;
    return out;
  }
  const auto mm = minimal_model(E);
  const auto& M = mm.curve;
  const Real B = height_difference_bound<Real>(M);
  int n = 0;
  Real scale = 1;
  while (B * scale > tol && n < 24) {
    ++n;
    scale /= Real(4);
  }
  // x = A / D with integer A, D. The resultant of the doubling numerator and
  // denominator is 16 Delta^2, so common factors only involve primes of 2 Delta.
  std::vector<Integer> primes{Integer(2)};
  for (const auto& [p, e] : factorize(num(M.discriminant())).factors)
    if (p != 2) primes.push_back(p);
  const Rational x0 = transform(P, mm.change).x;
  Integer A = num(x0), D = den(x0);
  const Integer b2 = num(M.b2()), b4 = num(M.b4()), b6 = num(M.b6()), b8 = num(M.b8());
  for (int k = 0; k < n; ++k) {
    const Integer A2 = A * A, D2 = D * D;
    Integer den_new = D * (4 * A2 * A + b2 * A2 * D + 2 * b4 * A * D2 + b6 * D2 * D);
    if (den_new == 0) {
      out.torsion = true;
      out.doublings = k;
      return out;
    }
    Integer num_new = A2 * A2 - b4 * A2 * D2 - 2 * b6 * A * D2 * D - b8 * D2 * D2;
    for (const auto& p : primes)
      while (num_new % p == 0 && den_new % p == 0) {
        num_new /= p;
        den_new /= p;
      }
    A = std::move(num_new);
    D = std::move(den_new);
  }
  const Real la = A == 0 ? Real(0) : log_abs<Real>(A), ld = log_abs<Real>(D);
  out.value = (la > ld ? la : ld) * scale;
  out.error_bound = B * scale;
  out.doublings = n;
  return out;
}

/// Canonical height h_x(P) by local decomposition; exactly 0 on torsion.
template <class Real = long double>
Real canonical_height(const WeierstrassCurve& E, const Point& P, HeightOptions opt = {}) {
  using std::abs;
  detail::HeightContext<Real> ctx(E);
  const Real h = ctx.height(P, Real(opt.tol));
  if (opt.cross_check) {
    const auto oracle = doubling_height<Real>(E, P, Real(opt.tol));
    const Real other = oracle.torsion ? Real(0) : oracle.value;
    if (abs(h - other) > Real(2) * Real(opt.tol))
      throw Error(ErrorKind::HeightMismatch, "local and doubling heights disagree for " + to_string(P));
  }
  return h;
}

/// <P,Q> = (h(P+Q) - h(P) - h(Q)) / 2 with h = h_{3(O)}.
template <class Real = long double>
Real pairing(const WeierstrassCurve& E, const Point& P, const Point& Q, HeightOptions opt = {}) {
  detail::HeightContext<Real> ctx(E);
  const Point S = group_law(E, P, Q);
  const Real tol = Real(opt.tol);
  const Real hx = (ctx.height(S, tol) - ctx.height(P, tol) - ctx.height(Q, tol)) / Real(2);
  return Real(kPairingScale) * hx;
}

template <class Real = long double>
struct MordellWeilBasis {
  std::vector<Point> points;
  int rank = 0;
  Matrix<Real> gram;
  Real regulator = 1;
};

template <class Real = long double>
Matrix<Real> gram_matrix(const WeierstrassCurve& E, const std::vector<Point>& pts, HeightOptions opt = {}) {
  detail::HeightContext<Real> ctx(E);
  const Real tol = Real(opt.tol);
  const std::size_t m = pts.size();
  std::vector<Real> h(m);
  for (std::size_t i = 0; i < m; ++i) h[i] = ctx.height(pts[i], tol);
  Matrix<Real> g = zeros<Real>(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    g[i][i] = Real(kPairingScale) * h[i];
    for (std::size_t j = i + 1; j < m; ++j) {
      const Real s = ctx.height(group_law(E, pts[i], pts[j]), tol);
      g[i][j] = g[j][i] = Real(kPairingScale) * (s - h[i] - h[j]) / Real(2);
    }
  }
  return g;
}

/// Reg = |det <P_i, P_j>|; the empty determinant is 1.
template <class Real = long double>
MordellWeilBasis<Real> mw_regulator(const WeierstrassCurve& E, const std::vector<Point>& pts, int claimed_rank,
                                    HeightOptions opt = {}) {
  using std::abs;
  using std::pow;
  if (static_cast<int>(pts.size()) != claimed_rank)
    throw Error(ErrorKind::RankMismatch,
                std::to_string(pts.size()) + " points supplied for rank " + std::to_string(claimed_rank));
  for (const auto& P : pts) require_on_curve(E, P);
  MordellWeilBasis<Real> out{pts, claimed_rank, {}, Real(1)};
  if (claimed_rank == 0) return out;
  out.gram = gram_matrix<Real>(E, pts, opt);
  const std::size_t m = pts.size();
  Real trace = 0;
  for (std::size_t i = 0; i < m; ++i) trace += out.gram[i][i];
  const Real det = determinant(out.gram);
  const Real scale = pow(trace / Real(m), Real(m));
  const auto ev = symmetric_eigenvalues(out.gram);
  if (!(det > Real(1e-8) * scale) || ev.front() <= 0)
    throw Error(ErrorKind::DependentPoints, "Gram determinant " + std::to_string(static_cast<long double>(det)) +
                                                " is degenerate");
  out.regulator = abs(det);
  return out;
}

template <class Real = long double>
struct FaltingsData {
  Real value;
  Real log_abs_disc;
  ReducedTau<Real> tau;
};

/// h_F+ = (log|Delta_min| - log(|Delta(tau)| (2 Im tau)^6)) / 12.
template <class Real = long double>
FaltingsData<Real> faltings_data(const WeierstrassCurve& E) {
  using std::abs;
  using std::log;
  const auto mm = minimal_model(E);
  const auto per = agm_periods<Real>(mm.curve);
  const Real ld = log_abs<Real>(mm.curve.discriminant());
  const auto delta = modular_discriminant(per.tau.value);
  const Real im = per.tau.value.im();
  const Real analytic = log(abs(delta.value())) + Real(6) * log(Real(2) * im);
  return {(ld - analytic) / Real(12), ld, per.tau};
}

template <class Real = long double>
Real faltings_height_plus(const WeierstrassCurve& E) {
  return faltings_data<Real>(E).value;
}

}  // namespace arinv
