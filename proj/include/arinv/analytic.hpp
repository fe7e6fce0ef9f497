#pragma once

// Upper half-plane analytics: SL2(Z) reduction, the modular discriminant and
// j-function q-series, complex AGM periods and the injectivity diameter.

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include <boost/math/constants/constants.hpp>

#include "arinv/arith.hpp"
#include "arinv/error.hpp"

namespace arinv {

template <class Real>
Real pi() {
  return boost::math::constants::pi<Real>();
}

/// A point of the upper half-plane.
template <class Real = long double>
class Tau {
 public:
  explicit Tau(std::complex<Real> value) : value_(value) {
    if (!(value.imag() > 0)) throw Error(ErrorKind::NotUpperHalfPlane, "Im(tau) must be positive");
  }
  Tau(Real re, Real im) : Tau(std::complex<Real>(re, im)) {}

  const std::complex<Real>& value() const { return value_; }
  Real re() const { return value_.real(); }
  Real im() const { return value_.imag(); }

 private:
  std::complex<Real> value_;
};

/// Integer matrix [[a, b], [c, d]] acting by Moebius transformation.
struct Sl2 {
  long long a = 1, b = 0, c = 0, d = 1;

  Sl2 operator*(const Sl2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  long long det() const { return a * d - b * c; }
  bool operator==(const Sl2&) const = default;

  static Sl2 T(long long n = 1) { return {1, n, 0, 1}; }
  static Sl2 S() { return {0, -1, 1, 0}; }

  template <class Real>
  std::complex<Real> apply(const std::complex<Real>& z) const {
    return (Real(a) * z + Real(b)) / (Real(c) * z + Real(d));
  }
};

template <class Real = long double>
struct ReducedTau {
  Tau<Real> value;
  Sl2 transform;  // value = transform . original
};

/// Standard reduction into Re in (-1/2, 1/2], |tau| >= 1, with |tau| = 1
/// forcing Re >= 0.
template <class Real>
ReducedTau<Real> reduce_to_fundamental_domain(const Tau<Real>& tau) {
  using std::floor;
  using std::norm;
  const Real eps = Real(64) * std::numeric_limits<Real>::epsilon();
  std::complex<Real> z = tau.value();
  Sl2 g;
  for (int iter = 0; iter < 10000; ++iter) {
    // shift into (-1/2, 1/2]
    Real n = -floor(Real(0.5) - z.real() + eps);
    if (n != 0) {
      long long k = static_cast<long long>(static_cast<long double>(n));
      z -= Real(k);
      g = Sl2::T(-k) * g;
    }
    if (norm(z) < Real(1) - eps) {
      z = Real(-1) / z;
      g = Sl2::S() * g;
      continue;
    }
    break;
  }
  if (norm(z) <= Real(1) + eps && z.real() < -eps) {
    z = Real(-1) / z;
    g = Sl2::S() * g;
  }
  return {Tau<Real>(z), g};
}

template <class Real>
bool is_reduced(const Tau<Real>& tau) {
  using std::abs;
  using std::sqrt;
  return tau.im() >= sqrt(Real(3)) / Real(2) - Real(1e-12) && abs(tau.re()) <= Real(0.5) + Real(1e-12);
}

namespace detail {

// q = exp(2 pi i tau)
template <class Real>
std::complex<Real> nome(const std::complex<Real>& tau) {
  using std::exp;
  return exp(std::complex<Real>(0, 2) * pi<Real>() * tau);
}

}  // namespace detail

/// q prod (1 - q^n)^24 for any Im tau > 0, truncated once |q^n| drops below
/// the working epsilon; the error field bounds the neglected tail.
template <class Real>
ComplexApprox<Real> discriminant_series(const Tau<Real>& tau) {
  using std::abs;
  using std::pow;
  const auto q = detail::nome(tau.value());
  const Real aq = abs(q);
  const Real stop = std::numeric_limits<Real>::epsilon() / Real(16);
  std::complex<Real> prod(1), qn = q;
  Real aqn = aq;
  int terms = 0;
  while (aqn >= stop && terms < 1000000) {
    prod *= (std::complex<Real>(1) - qn);
    qn *= q;
    aqn *= aq;
    ++terms;
  }
  if (terms >= 1000000) throw Error(ErrorKind::NoConvergence, "discriminant series too slow");
  std::complex<Real> p2 = prod * prod;
  std::complex<Real> p4 = p2 * p2;
  std::complex<Real> p8 = p4 * p4;
  std::complex<Real> value = q * p8 * p8 * p8;
  // |log prod_{n>N}(1-q^n)^24| <= 24 sum_{n>N} 2|q|^n for |q|^n <= 1/2
  const Real tail = Real(48) * aqn / (Real(1) - aq);
  const Real rounding = Real(4 * (terms + 30)) * std::numeric_limits<Real>::epsilon();
  return {value.real(), value.imag(), abs(value) * (tail + rounding)};
}

template <class Real>
void require_reduced(const Tau<Real>& tau) {
  using std::sqrt;
  if (tau.im() < sqrt(Real(3)) / Real(2) - Real(1e-12))
    throw Error(ErrorKind::TauNotReduced, "Im(tau) below sqrt(3)/2; reduce first");
}

/// Delta(tau) = q prod (1 - q^n)^24 at a reduced tau.
template <class Real>
ComplexApprox<Real> modular_discriminant(const Tau<Real>& tau) {
  require_reduced(tau);
  return discriminant_series(tau);
}

/// E4(tau) = 1 + 240 sum n^3 q^n / (1 - q^n).
template <class Real>
std::complex<Real> eisenstein_e4(const Tau<Real>& tau) {
  using std::abs;
  const auto q = detail::nome(tau.value());
  const Real stop = std::numeric_limits<Real>::epsilon() / Real(1e6);
  std::complex<Real> sum(0), qn = q;
  for (int n = 1; n < 1000000; ++n) {
    Real n3 = Real(n) * Real(n) * Real(n);
    std::complex<Real> term = n3 * qn / (std::complex<Real>(1) - qn);
    sum += term;
    if (abs(term) < stop * abs(sum) || abs(qn) < stop * stop) break;
    qn *= q;
  }
  return std::complex<Real>(1) + Real(240) * sum;
}

/// j(tau) = E4^3 / Delta at a reduced tau.
template <class Real>
ComplexApprox<Real> j_invariant_series(const Tau<Real>& tau) {
  using std::abs;
  require_reduced(tau);
  auto e4 = eisenstein_e4(tau);
  auto delta = discriminant_series(tau);
  std::complex<Real> j = e4 * e4 * e4 / delta.value();
  return {j.real(), j.imag(), abs(j) * (delta.err / abs(delta.value()) + Real(1e3) * std::numeric_limits<Real>::epsilon())};
}

/// Injectivity diameter (Im tau)^{-1/2} of the reduced period.
template <class Real>
Real injectivity_diameter(const ReducedTau<Real>& tau) {
  using std::sqrt;
  return Real(1) / sqrt(tau.value.im());
}

/// Complex arithmetic-geometric mean with the right choice of square root
/// (the one closer to the running arithmetic mean).
template <class Real>
std::complex<Real> agm(std::complex<Real> a, std::complex<Real> b) {
  using std::abs;
  using std::sqrt;
  const Real eps = Real(8) * std::numeric_limits<Real>::epsilon();
  for (int iter = 0; iter < 200; ++iter) {
    if (abs(a - b) <= eps * abs(a)) return a;
    std::complex<Real> an = (a + b) / Real(2);
    std::complex<Real> bn = sqrt(a * b);
    if (abs(an - bn) > abs(an + bn)) bn = -bn;
    a = an;
    b = bn;
  }
  throw Error(ErrorKind::AgmNoConvergence, "AGM did not converge");
}

}  // namespace arinv
