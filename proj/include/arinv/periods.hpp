#pragma once

// Period lattice of a rational Weierstrass model via the AGM.

#include <complex>

#include "arinv/analytic.hpp"
#include "arinv/ellcurve.hpp"

namespace arinv {

template <class Real = long double>
struct Periods {
  std::complex<Real> omega1;
  std::complex<Real> omega2;
  ReducedTau<Real> tau;
};

/// 4x^3 + b2 x^2 + 2 b4 x + b6 with denominators cleared.
inline IntPolynomial two_division_polynomial(const WeierstrassCurve& E) {
  std::array<Rational, 4> c{E.b6(), 2 * E.b4(), E.b2(), Rational(4)};
  Integer l = 1;
  for (const auto& v : c) l = lcm(l, den(v));
  std::vector<Integer> out;
  for (const auto& v : c) out.push_back(num(v * Rational(l)));
  return IntPolynomial(std::move(out));
}

/// Real roots of the 2-division polynomial, ascending.
template <class Real>
std::vector<Real> real_two_torsion_x(const WeierstrassCurve& E) {
  std::vector<Real> out;
  for (const auto& r : poly_roots<Real>(two_division_polynomial(E), Real(1e-12)))
    if (r.is_real()) out.push_back(r.re);
  return out;
}

/// Periods of dx/(2y + a1 x + a3) for the real embedding. Delta > 0 uses the
/// three real roots e1 > e2 > e3, Delta < 0 the single real root.
template <class Real = long double>
Periods<Real> agm_periods(const WeierstrassCurve& E) {
  using Cx = std::complex<Real>;
  using std::abs;
  using std::sqrt;
  const Real P = pi<Real>();
  auto e = real_two_torsion_x<Real>(E);
  const Real b2 = to_real<Real>(E.b2()), b4 = to_real<Real>(E.b4());
  Cx w1, w2;
  if (E.discriminant() > 0) {
    if (e.size() != 3) throw Error(ErrorKind::Internal, "expected three real 2-torsion points");
    const Real e1 = e[2], e2 = e[1], e3 = e[0];
    w1 = Cx(P) / agm(Cx(sqrt(e1 - e3)), Cx(sqrt(e1 - e2)));
    w2 = Cx(0, P) / agm(Cx(sqrt(e1 - e3)), Cx(sqrt(e2 - e3)));
  } else {
    if (e.size() != 1) throw Error(ErrorKind::Internal, "expected one real 2-torsion point");
    const Real e1 = e[0];
    const Real a = Real(3) * e1 + b2 / Real(4);
    const Real b = sqrt(Real(3) * e1 * e1 + b2 * e1 / Real(2) + b4 / Real(2));
    w1 = Cx(Real(2) * P) / agm(Cx(Real(2) * sqrt(b)), Cx(sqrt(Real(2) * b + a)));
    w2 = -w1 / Real(2) + Cx(0, P) / agm(Cx(Real(2) * sqrt(b)), Cx(sqrt(Real(2) * b - a)));
  }
  Cx t = w2 / w1;
  if (t.imag() < 0) {
    w2 = -w2;
    t = -t;
  }
  Periods<Real> out{w1, w2, reduce_to_fundamental_domain(Tau<Real>(t))};

  // the analytic j of the lattice must match the algebraic one
  auto j_an = j_invariant_series(out.tau.value);
  const Real j_alg = to_real<Real>(E.j());
  if (abs(j_an.value() - Cx(j_alg)) > Real(1e-6) * std::max(Real(1), abs(j_alg)))
    throw Error(ErrorKind::AgmNoConvergence, "period lattice does not reproduce j");
  return out;
}

}  // namespace arinv
