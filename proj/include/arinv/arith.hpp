#pragma once

// Exact integers and rationals, integer polynomials, certified complex roots,
// integer factorization and fundamental units of real quadratic fields.

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/miller_rabin.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arinv/error.hpp"

namespace arinv {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return den(q) == 1; }

inline Integer abs_int(const Integer& n) { return n < 0 ? Integer(-n) : n; }

/// p-adic valuation of a nonzero integer.
inline int valuation(Integer n, const Integer& p) {
  if (n == 0) return std::numeric_limits<int>::max();
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// p-adic valuation of a rational; max int for zero.
inline int valuation(const Rational& q, const Integer& p) {
  if (q == 0) return std::numeric_limits<int>::max();
  return valuation(num(q), p) - valuation(den(q), p);
}

inline Integer isqrt(const Integer& n) { return boost::multiprecision::sqrt(n); }

inline bool is_square(const Integer& n) {
  if (n < 0) return false;
  Integer s = isqrt(n);
  return s * s == n;
}

inline Integer ipow(Integer base, unsigned e) { return boost::multiprecision::pow(base, e); }

inline Rational rpow(const Rational& base, int e) {
  Rational out = 1;
  Rational b = e < 0 ? Rational(1) / base : base;
  for (int i = 0; i < std::abs(e); ++i) out *= b;
  return out;
}

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

/// Parses "p" or "p/q" with optional sign.
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer n(text.substr(0, slash));
    Integer d(text.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rational(n, d);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "not a rational number: '" + text + "'");
  }
}

/// Natural log of |n|; valid for integers far outside the floating range.
template <class Real = long double>
Real log_abs(const Integer& n) {
  using std::log;
  if (n == 0) throw Error(ErrorKind::ZeroElement, "log of zero");
  Integer a = abs_int(n);
  const unsigned bits = static_cast<unsigned>(msb(a));
  const unsigned keep = static_cast<unsigned>(std::numeric_limits<Real>::digits) + 16;
  if (bits <= keep) return log(static_cast<Real>(a));
  const unsigned shift = bits - keep;
  Integer top = a >> shift;
  return log(static_cast<Real>(top)) + Real(shift) * log(Real(2));
}

template <class Real = long double>
Real log_abs(const Rational& q) {
  return log_abs<Real>(num(q)) - log_abs<Real>(den(q));
}

template <class Real = long double>
Real to_real(const Integer& n) {
  return static_cast<Real>(n);
}

/// Rational to floating point without overflow in the intermediate parts.
template <class Real = long double>
Real to_real(const Rational& q) {
  using std::ldexp;
  Integer n = num(q), d = den(q);
  if (n == 0) return Real(0);
  const int keep = std::numeric_limits<Real>::digits + 16;
  const int nb = static_cast<int>(msb(abs_int(n)));
  const int db = static_cast<int>(msb(d));
  const int ns = std::max(0, nb - keep);
  const int ds = std::max(0, db - keep);
  Real top = static_cast<Real>(Integer(n >> ns));
  Real bottom = static_cast<Real>(Integer(d >> ds));
  return ldexp(top / bottom, ns - ds);
}

// ---------------------------------------------------------------------------
// Polynomials

/// Integer polynomial, constant term first. The zero polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long long> coeffs) {
    for (long long v : coeffs) c_.emplace_back(v);
    trim();
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Integer>& coefficients() const { return c_; }
  const Integer& operator[](std::size_t i) const { return c_[i]; }
  const Integer& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  IntPolynomial derivative() const {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Integer(i));
    return IntPolynomial(std::move(d));
  }

  Rational evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
  }

  bool operator==(const IntPolynomial&) const = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Integer> c_;
};

/// Dense polynomial over Q, constant term first; used for exact gcd and reduction.
using RatPoly = std::vector<Rational>;

inline void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly to_rat_poly(const IntPolynomial& p) {
  RatPoly out;
  for (const auto& c : p.coefficients()) out.emplace_back(c);
  return out;
}

/// Remainder of a modulo b (b nonzero).
inline RatPoly poly_mod(RatPoly a, const RatPoly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

inline bool is_squarefree(const IntPolynomial& p) {
  if (p.degree() < 1) return true;
  return poly_gcd(to_rat_poly(p), to_rat_poly(p.derivative())).size() == 1;
}

// ---------------------------------------------------------------------------
// Certified complex approximations

template <class Real = long double>
struct ComplexApprox {
  Real re{0};
  Real im{0};
  Real err{0};  // absolute radius valid for both parts

  std::complex<Real> value() const { return {re, im}; }
  bool is_real() const { return im == 0; }
};

namespace detail {

template <class Real>
std::complex<Real> horner(const std::vector<Real>& c, const std::complex<Real>& z) {
  std::complex<Real> acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Bound on the floating-point error of horner() at z.
template <class Real>
Real horner_error(const std::vector<Real>& c, const std::complex<Real>& z) {
  using std::abs;
  Real az = abs(z), acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * az + abs(*it);
  const Real eps = std::numeric_limits<Real>::epsilon();
  return Real(4 * (c.size() + 1)) * eps * acc;
}

}  // namespace detail

/// All complex roots of a squarefree integer polynomial, each certified to
/// lie within `tol` of a true root. Real roots come first (ascending) with
/// imaginary part exactly zero, followed by conjugate pairs (upper member
/// first), pairs ordered by ascending real part.
template <class Real = long double>
std::vector<ComplexApprox<Real>> poly_roots(const IntPolynomial& p, Real tol) {
  using std::abs;
  using std::cos;
  using std::sin;
  using Cx = std::complex<Real>;
  const int n = p.degree();
  if (n < 1) throw Error(ErrorKind::NoConvergence, "poly_roots needs degree >= 1");
  if (!is_squarefree(p)) throw Error(ErrorKind::NotSquarefree, "polynomial has a repeated factor");

  std::vector<Real> c;
  for (const auto& a : p.coefficients()) c.push_back(to_real<Real>(a));
  std::vector<Real> dc;
  for (int i = 1; i <= n; ++i) dc.push_back(c[i] * Real(i));
  const Real lead = c.back();

  // Cauchy bound for the starting circle.
  Real radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, abs(c[i] / lead));
  radius = Real(1) + radius;

  std::vector<Cx> z(n);
  const Real two_pi = Real(2) * boost::math::constants::pi<Real>();
  for (int k = 0; k < n; ++k) {
    Real angle = two_pi * Real(k) / Real(n) + Real(0.4);
    z[k] = Cx(radius * cos(angle), radius * sin(angle)) * Real(0.5);
  }

  const Real eps = std::numeric_limits<Real>::epsilon();
  bool converged = false;
  for (int iter = 0; iter < 1000 && !converged; ++iter) {
    converged = true;
    for (int k = 0; k < n; ++k) {
      Cx pv = detail::horner(c, z[k]);
      if (pv == Cx(0)) continue;
      Cx ratio = pv / detail::horner(dc, z[k]);
      Cx sum(0);
      for (int j = 0; j < n; ++j)
        if (j != k) sum += Cx(1) / (z[k] - z[j]);
      Cx step = ratio / (Cx(1) - ratio * sum);
      z[k] -= step;
      if (abs(step) > Real(16) * eps * std::max(Real(1), abs(z[k]))) converged = false;
    }
  }
  if (!converged) throw Error(ErrorKind::NoConvergence, "root iteration budget exhausted");

  // Inclusion radii: each disc D(z_k, r_k) contains a root; disjoint discs one each.
  auto inclusion_radius = [&](int k) {
    Cx prod(lead);
    for (int j = 0; j < n; ++j)
      if (j != k) prod *= (z[k] - z[j]);
    Real resid = abs(detail::horner(c, z[k])) + detail::horner_error(c, z[k]);
    return Real(n) * resid / abs(prod) + Real(4) * eps * abs(z[k]);
  };
  std::vector<Real> r(n);
  for (int k = 0; k < n; ++k) {
    r[k] = inclusion_radius(k);
    // Nearly real approximations are projected to the real axis and polished there.
    if (z[k].imag() != 0 && abs(z[k].imag()) <= Real(1e-6) * (Real(1) + abs(z[k]))) {
      Cx saved = z[k];
      Real x = z[k].real();
      for (int it = 0; it < 4; ++it) {
        Real d = detail::horner(dc, Cx(x)).real();
        if (d == 0) break;
        x -= detail::horner(c, Cx(x)).real() / d;
      }
      z[k] = Cx(x, 0);
      Real rr = inclusion_radius(k);
      if (rr <= std::max(r[k], tol))
        r[k] = rr;
      else
        z[k] = saved;
    }
  }
  for (int k = 0; k < n; ++k) {
    if (r[k] > tol) throw Error(ErrorKind::NoConvergence, "root could not be certified to the tolerance");
    for (int j = k + 1; j < n; ++j)
      if (abs(z[k] - z[j]) <= r[k] + r[j])
        throw Error(ErrorKind::NoConvergence, "root inclusion discs overlap");
  }

  std::vector<ComplexApprox<Real>> reals, uppers;
  std::vector<bool> used(n, false);
  for (int k = 0; k < n; ++k) {
    // conj(root) lies within 3 r_k of z_k; if no other disc reaches there the root is real.
    bool isolated = abs(z[k].imag()) <= r[k];
    for (int j = 0; j < n && isolated; ++j)
      if (j != k && abs(z[k] - z[j]) <= Real(3) * r[k] + r[j]) isolated = false;
    if (isolated) {
      reals.push_back({z[k].real(), Real(0), r[k]});
      used[k] = true;
    }
  }
  for (int k = 0; k < n; ++k) {
    if (used[k] || z[k].imag() < 0) continue;
    int partner = -1;
    Real best = std::numeric_limits<Real>::max();
    for (int j = 0; j < n; ++j) {
      if (used[j] || j == k || z[j].imag() >= 0) continue;
      Real d = abs(z[j] - std::conj(z[k]));
      if (d < best) {
        best = d;
        partner = j;
      }
    }
    if (partner < 0) throw Error(ErrorKind::NoConvergence, "unpaired complex root");
    used[k] = used[partner] = true;
    Cx mid = (z[k] + std::conj(z[partner])) / Real(2);
    uppers.push_back({mid.real(), abs(mid.imag()), std::max(r[k], r[partner]) + best});
  }
  if (reals.size() + 2 * uppers.size() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::NoConvergence, "could not classify roots");

  std::sort(reals.begin(), reals.end(), [](const auto& a, const auto& b) { return a.re < b.re; });
  std::sort(uppers.begin(), uppers.end(), [](const auto& a, const auto& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  });
  std::vector<ComplexApprox<Real>> out = reals;
  for (const auto& u : uppers) {
    out.push_back(u);
    out.push_back({u.re, -u.im, u.err});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factorization

struct Factorization {
  int sign = 1;
  std::vector<std::pair<Integer, unsigned>> factors;  // ascending primes

  Integer value() const {
    Integer v = sign;
    for (const auto& [p, e] : factors) v *= ipow(p, e);
    return v;
  }
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for all 64-bit n.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (msb(n) < 64) return detail::is_prime_u64(n.convert_to<std::uint64_t>());
  return boost::multiprecision::miller_rabin_test(n, 32);
}

struct FactorBudget {
  std::uint64_t trial_limit = 1'000'000;
  std::uint64_t rho_iterations = 10'000'000;
};

namespace detail {

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
inline Integer pollard_brent(const Integer& n, std::uint64_t& budget) {
  if (n % 2 == 0) return Integer(2);
  for (unsigned seed = 1; seed < 20; ++seed) {
    Integer y = 2, c = seed, m = 64, g = 1, r = 1, q = 1, x, ys;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    do {
      x = y;
      for (Integer i = 0; i < r; ++i) y = f(y);
      Integer k = 0;
      do {
        ys = y;
        for (Integer i = 0, lim = std::min<Integer>(m, r - k); i < lim; ++i) {
          y = f(y);
          q = (q * abs_int(Integer(x - y))) % n;
          if (budget == 0) return Integer(0);
          --budget;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs_int(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return Integer(0);
}

inline void factor_rest(const Integer& n, std::vector<Integer>& primes, std::uint64_t& budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  Integer d = pollard_brent(n, budget);
  if (d == 0) throw Error(ErrorKind::FactorBudgetExceeded, "could not split " + n.str());
  factor_rest(d, primes, budget);
  factor_rest(n / d, primes, budget);
}

}  // namespace detail

/// Factorization by trial division followed by Pollard rho.
inline Factorization factorize(const Integer& n, FactorBudget budget = {}) {
  if (n == 0) throw Error(ErrorKind::ZeroElement, "cannot factor zero");
  Factorization out;
  out.sign = n < 0 ? -1 : 1;
  Integer m = abs_int(n);
  auto limit = [&] {
    const Integer s = isqrt(m);
    return s > budget.trial_limit ? budget.trial_limit : s.convert_to<std::uint64_t>();
  };
  std::uint64_t lim = limit();
  for (std::uint64_t p = 2; p <= lim; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    if (msb(m) < 64) {
      std::uint64_t v = m.convert_to<std::uint64_t>();
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      if (e) m = v;
    } else {
      while (static_cast<unsigned long>(m % static_cast<unsigned long>(p)) == 0) {
        m /= static_cast<unsigned long>(p);
        ++e;
      }
    }
    if (e) {
      out.factors.emplace_back(Integer(p), e);
      lim = limit();
    }
  }
  if (m > 1) {
    std::vector<Integer> rest;
    std::uint64_t iters = budget.rho_iterations;
    detail::factor_rest(m, rest, iters);
    std::sort(rest.begin(), rest.end());
    for (const auto& p : rest) {
      if (!out.factors.empty() && out.factors.back().first == p)
        ++out.factors.back().second;
      else
        out.factors.emplace_back(p, 1u);
    }
  }
  return out;
}

inline bool is_squarefree(const Integer& n) {
  for (const auto& [p, e] : factorize(n).factors)
    if (e > 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Real quadratic units

/// A unit u + v*omega of the maximal order of Q(sqrt m), where omega is
/// sqrt(m), or (1+sqrt(m))/2 when m = 1 mod 4.
struct QuadraticUnit {
  Integer m;
  Integer u;
  Integer v;

  bool half_integral_basis() const { return m % 4 == 1; }

  /// Coefficients (a, b) with unit = a + b*sqrt(m).
  std::pair<Rational, Rational> power_basis() const {
    if (half_integral_basis()) return {Rational(u) + Rational(v, 2), Rational(v, 2)};
    return {Rational(u), Rational(v)};
  }

  /// Exact norm a^2 - m b^2.
  Rational norm() const {
    auto [a, b] = power_basis();
    return a * a - Rational(m) * b * b;
  }

  template <class Real = long double>
  Real value() const {
    using std::sqrt;
    auto [a, b] = power_basis();
    return to_real<Real>(a) + to_real<Real>(b) * sqrt(to_real<Real>(m));
  }
};

/// Fundamental unit > 1 of Q(sqrt m) from the continued fraction of the
/// order generator; the first convergent of unit norm gives it.
inline QuadraticUnit pell_fundamental_solution(const Integer& m) {
  if (m <= 1 || !is_squarefree(m)) throw Error(ErrorKind::NotSquarefree, "m must be squarefree and > 1");
  const bool half = (m % 4 == 1);
  const Integer s = isqrt(m);
  // Complete quotients (P + sqrt m)/Q.
  Integer P = half ? 1 : 0;
  Integer Q = half ? 2 : 1;
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;  // convergent recurrence h_{n-1}, h_{n-2}, ...
  for (int n = 0; n < 100000; ++n) {
    Integer a = (P + s) / Q;
    Integer h = a * h1 + h2;
    Integer k = a * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    QuadraticUnit cand = half ? QuadraticUnit{m, h - k, k} : QuadraticUnit{m, h, k};
    Rational nrm = cand.norm();
    if (nrm == 1 || nrm == -1) return cand;
    P = a * Q - P;
    Q = (m - P * P) / Q;
  }
  throw Error(ErrorKind::NoConvergence, "continued fraction period not found");
}

}  // namespace arinv
