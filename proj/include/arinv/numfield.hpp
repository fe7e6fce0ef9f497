#pragma once

// Number fields given by a monic defining polynomial, their embeddings,
// verified unit systems and the regulator.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "arinv/arith.hpp"
#include "arinv/linalg.hpp"

namespace arinv {

/// alpha = sum c_i theta^i in the power basis of the field generator.
struct AlgebraicElement {
  std::vector<Rational> coefficients;

  static AlgebraicElement one(int degree) {
    AlgebraicElement e{std::vector<Rational>(degree, Rational(0))};
    e.coefficients[0] = 1;
    return e;
  }
  bool is_zero() const {
    for (const auto& c : coefficients)
      if (c != 0) return false;
    return true;
  }
  bool operator==(const AlgebraicElement&) const = default;
};

template <class Real = long double>
struct NumberField {
  std::string label;
  IntPolynomial poly;
  int degree = 0;
  int r1 = 0;
  int r2 = 0;
  std::optional<Integer> discriminant;
  int roots_of_unity = 2;
  // All d roots: real ascending, then the upper representatives of the
  // complex pairs by ascending real part, then their conjugates.
  std::vector<ComplexApprox<Real>> embeddings;

  /// Number of archimedean places r1 + r2.
  int places() const { return r1 + r2; }
  /// Local degree d_i of place i.
  int local_degree(int i) const { return i < r1 ? 1 : 2; }
};

template <class Real>
int unit_rank(const NumberField<Real>& K) {
  return K.r1 + K.r2 - 1;
}

/// Exact discriminant of a polynomial via the Sylvester resultant.
inline Integer polynomial_discriminant(const IntPolynomial& f) {
  const int n = f.degree();
  if (n < 1) return 0;
  if (n == 1) return 1;
  IntPolynomial g = f.derivative();
  const int m = g.degree();
  const int size = n + m;
  Matrix<Rational> syl = zeros<Rational>(size, size);
  for (int row = 0; row < m; ++row)
    for (int i = 0; i <= n; ++i) syl[row][row + i] = Rational(f[n - i]);
  for (int row = 0; row < n; ++row)
    for (int i = 0; i <= m; ++i) syl[m + row][row + i] = Rational(g[m - i]);
  Rational res = determinant(syl);
  Rational disc = res / Rational(f.leading());
  if ((n * (n - 1) / 2) % 2 == 1) disc = -disc;
  return num(disc);
}

namespace detail {

// Irreducibility over Q for small degree: any factor corresponds to a subset
// of roots whose elementary symmetric functions are integers.
template <class Real>
bool is_irreducible(const IntPolynomial& f, const std::vector<ComplexApprox<Real>>& roots) {
  using Cx = std::complex<Real>;
  using std::abs;
  using std::llround;
  const int n = f.degree();
  if (n <= 1) return n == 1;
  for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
    const int k = __builtin_popcount(mask);
    if (2 * k > n) continue;
    std::vector<Cx> prod{Cx(1)};  // constant first
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      std::vector<Cx> next(prod.size() + 1, Cx(0));
      for (std::size_t j = 0; j < prod.size(); ++j) {
        next[j + 1] += prod[j];
        next[j] -= prod[j] * roots[i].value();
      }
      prod = std::move(next);
    }
    bool near_integral = true;
    std::vector<Rational> cand;
    for (const auto& c : prod) {
      Real re = c.real();
      long long rounded = llround(static_cast<long double>(re));
      if (abs(re - Real(rounded)) > Real(1e-6) || abs(c.imag()) > Real(1e-6)) {
        near_integral = false;
        break;
      }
      cand.emplace_back(rounded);
    }
    if (near_integral && poly_mod(to_rat_poly(f), cand).empty()) return false;
  }
  return true;
}

}  // namespace detail

/// Builds a field from a monic irreducible polynomial. The discriminant is
/// checked against disc(poly) = D_K f^2 when supplied.
template <class Real = long double>
NumberField<Real> make_number_field(std::string label, IntPolynomial poly, std::optional<Integer> disc,
                                    int roots_of_unity = 2) {
  if (!poly.is_monic()) throw Error(ErrorKind::InvalidField, label + ": defining polynomial must be monic");
  if (poly.degree() < 1) throw Error(ErrorKind::InvalidField, label + ": degree must be >= 1");
  if (roots_of_unity < 2 || roots_of_unity % 2 != 0)
    throw Error(ErrorKind::InvalidField, label + ": number of roots of unity must be even");
  NumberField<Real> K;
  K.label = std::move(label);
  K.degree = poly.degree();
  {
    // real roots, then upper representatives, then their conjugates
    auto roots = poly_roots<Real>(poly, Real(1e-15));
    std::vector<ComplexApprox<Real>> real, upper, lower;
    for (auto& r : roots) (r.is_real() ? real : (r.im > 0 ? upper : lower)).push_back(r);
    K.embeddings = real;
    K.embeddings.insert(K.embeddings.end(), upper.begin(), upper.end());
    K.embeddings.insert(K.embeddings.end(), lower.begin(), lower.end());
  }
  if (!detail::is_irreducible(poly, K.embeddings))
    throw Error(ErrorKind::InvalidField, K.label + ": defining polynomial is reducible");
  for (const auto& e : K.embeddings)
    if (e.is_real()) ++K.r1;
  K.r2 = (K.degree - K.r1) / 2;
  if (disc) {
    Integer pd = polynomial_discriminant(poly);
    if (*disc == 0 || pd % *disc != 0 || !is_square(Integer(pd / *disc)))
      throw Error(ErrorKind::InvalidField, K.label + ": disc(poly) is not D_K times a square");
    // sign(D_K) = (-1)^r2
    if ((*disc < 0) != (K.r2 % 2 == 1)) throw Error(ErrorKind::InvalidField, K.label + ": discriminant sign");
  }
  K.discriminant = std::move(disc);
  K.poly = std::move(poly);
  K.roots_of_unity = roots_of_unity;
  return K;
}

/// Q(sqrt m) with its discriminant and roots of unity.
template <class Real = long double>
NumberField<Real> quadratic_field(long long m, std::string label = {}) {
  if (m == 0 || m == 1 || !is_squarefree(Integer(m)))
    throw Error(ErrorKind::NotSquarefree, "m must be squarefree and different from 0, 1");
  Integer d = (((m % 4) + 4) % 4 == 1) ? Integer(m) : Integer(4 * m);
  int w = m == -1 ? 4 : (m == -3 ? 6 : 2);
  if (label.empty()) label = m > 0 ? "Q_sqrt" + std::to_string(m) : "Q_sqrtm" + std::to_string(-m);
  return make_number_field<Real>(std::move(label), IntPolynomial{-m, 0, 1}, d, w);
}

/// The rational field with generator x.
template <class Real = long double>
NumberField<Real> rational_field(std::string label = "Q") {
  return make_number_field<Real>(std::move(label), IntPolynomial{0, 1}, Integer(1), 2);
}

// ---------------------------------------------------------------------------
// Elements

/// Matrix of multiplication by alpha on the power basis (column j = alpha*theta^j).
template <class Real>
Matrix<Rational> multiplication_matrix(const NumberField<Real>& K, const AlgebraicElement& alpha) {
  const int d = K.degree;
  RatPoly f = to_rat_poly(K.poly);
  Matrix<Rational> m = zeros<Rational>(d, d);
  RatPoly power{Rational(1)};
  for (int j = 0; j < d; ++j) {
    RatPoly prod = poly_mod(poly_mul(alpha.coefficients, power), f);
    for (std::size_t i = 0; i < prod.size(); ++i) m[i][j] = prod[i];
    power = poly_mod(poly_mul(power, RatPoly{Rational(0), Rational(1)}), f);
  }
  return m;
}

template <class Real>
void check_element(const NumberField<Real>& K, const AlgebraicElement& alpha) {
  if (static_cast<int>(alpha.coefficients.size()) != K.degree)
    throw Error(ErrorKind::InvalidField, K.label + ": element length differs from field degree");
}

/// Exact norm N(alpha); for a monic defining polynomial this is the
/// resultant Res(f, alpha) = det of the multiplication matrix.
template <class Real>
Rational norm(const NumberField<Real>& K, const AlgebraicElement& alpha) {
  check_element(K, alpha);
  return determinant(multiplication_matrix(K, alpha));
}

/// Integral iff the characteristic polynomial (a power of the minimal
/// polynomial) has integer coefficients.
template <class Real>
bool is_algebraic_integer(const NumberField<Real>& K, const AlgebraicElement& alpha) {
  check_element(K, alpha);
  for (const auto& c : characteristic_polynomial(multiplication_matrix(K, alpha)))
    if (!is_integral(c)) return false;
  return true;
}

template <class Real>
std::complex<Real> embed(const NumberField<Real>& K, const AlgebraicElement& alpha, int i) {
  check_element(K, alpha);
  std::complex<Real> theta = K.embeddings[i].value(), acc(0);
  for (auto it = alpha.coefficients.rbegin(); it != alpha.coefficients.rend(); ++it)
    acc = acc * theta + to_real<Real>(*it);
  return acc;
}

/// (d_1 log|s_1(alpha)|, ..., d_{r1+r2} log|s_{r1+r2}(alpha)|).
template <class Real>
std::vector<Real> log_embedding(const NumberField<Real>& K, const AlgebraicElement& alpha) {
  using std::abs;
  using std::log;
  check_element(K, alpha);
  if (alpha.is_zero()) throw Error(ErrorKind::ZeroElement, "log embedding of zero");
  std::vector<Real> out;
  // complex places use the upper representatives stored right after the real roots
  for (int i = 0; i < K.places(); ++i) out.push_back(Real(K.local_degree(i)) * log(abs(embed(K, alpha, i))));
  return out;
}

// ---------------------------------------------------------------------------
// Units and regulators

template <class Real = long double>
struct UnitSystem {
  std::vector<AlgebraicElement> units;
  Matrix<Real> log_matrix;  // r x (r1 + r2)
};

/// Verifies integrality and |N| = 1 for each unit and builds the log matrix.
template <class Real>
UnitSystem<Real> make_unit_system(const NumberField<Real>& K, std::vector<AlgebraicElement> units) {
  using std::abs;
  UnitSystem<Real> U;
  for (const auto& u : units) {
    Rational n = norm(K, u);
    if (n != 1 && n != -1) throw Error(ErrorKind::NotAUnit, K.label + ": unit norm is " + to_string(n));
    if (!is_algebraic_integer(K, u)) throw Error(ErrorKind::NotAUnit, K.label + ": unit is not integral");
    std::vector<Real> row = log_embedding(K, u);
    Real sum = 0, scale = 1;
    for (const auto& x : row) {
      sum += x;
      scale += abs(x);
    }
    if (abs(sum) > Real(1e-9) * scale)
      throw Error(ErrorKind::Internal, K.label + ": log embedding of a unit does not sum to zero");
    U.log_matrix.push_back(std::move(row));
  }
  U.units = std::move(units);
  return U;
}

template <class Real = long double>
struct RegulatorForms {
  Real bordered;  // (r1+r2)-square determinant with the (r1+r2)^{-1} row
  Real minor;     // r x r determinant with the last column deleted
};

template <class Real>
RegulatorForms<Real> regulator_forms(const NumberField<Real>& K, const UnitSystem<Real>& U) {
  using std::abs;
  using std::sqrt;
  const int r = unit_rank(K);
  if (static_cast<int>(U.units.size()) != r)
    throw Error(ErrorKind::WrongUnitCount,
                K.label + ": expected " + std::to_string(r) + " units, got " + std::to_string(U.units.size()));
  if (r == 0) return {Real(1), Real(1)};
  const int n = K.places();
  Matrix<Real> big = U.log_matrix;
  big.push_back(std::vector<Real>(n, Real(1) / Real(n)));
  Matrix<Real> small = zeros<Real>(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) small[i][j] = U.log_matrix[i][j];
  RegulatorForms<Real> f{abs(determinant(big)), abs(determinant(small))};
  Real scale = 1;
  for (const auto& row : U.log_matrix) {
    Real s = 0;
    for (const auto& x : row) s += x * x;
    scale *= sqrt(s);
  }
  if (!(f.bordered > Real(1e-12) * scale)) throw Error(ErrorKind::DependentUnits, K.label + ": units are dependent");
  return f;
}

/// R_K as the bordered determinant; cross-checked against the minor form.
template <class Real>
Real regulator(const NumberField<Real>& K, const UnitSystem<Real>& U) {
  using std::abs;
  RegulatorForms<Real> f = regulator_forms(K, U);
  if (abs(f.bordered - f.minor) > Real(1e-10) * std::max(Real(1), f.bordered))
    throw Error(ErrorKind::Internal, K.label + ": regulator determinant forms disagree");
  return f.bordered;
}

/// Volume of H / lambda(U_K) from the Gram matrix of the log lattice.
template <class Real>
Real log_lattice_volume(const UnitSystem<Real>& U) {
  using std::abs;
  using std::sqrt;
  const std::size_t r = U.log_matrix.size();
  if (r == 0) return Real(1);
  Matrix<Real> gram = zeros<Real>(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < U.log_matrix[i].size(); ++k) gram[i][j] += U.log_matrix[i][k] * U.log_matrix[j][k];
  return sqrt(abs(determinant(gram)));
}

// ---------------------------------------------------------------------------
// Corpus-level field records and CM verification

template <class Real = long double>
struct FieldRecord {
  NumberField<Real> field;
  std::optional<UnitSystem<Real>> units;
  std::optional<std::string> subfield;
  std::optional<int> r0;
};

/// Regulator of a record; rank-0 fields need no units.
template <class Real>
Real record_regulator(const FieldRecord<Real>& rec) {
  if (unit_rank(rec.field) == 0) return Real(1);
  if (!rec.units) throw Error(ErrorKind::MissingUnits, rec.field.label + ": no units supplied");
  return regulator(rec.field, *rec.units);
}

/// Maximum unit rank of proper subfields: supplied, or 0 when the degree
/// is prime (only Q) or 1.
template <class Real>
std::optional<int> record_r0(const FieldRecord<Real>& rec) {
  if (rec.r0) return rec.r0;
  const int d = rec.field.degree;
  if (d == 1) return 0;
  bool prime = true;
  for (int k = 2; k * k <= d; ++k)
    if (d % k == 0) prime = false;
  if (prime) return 0;
  return std::nullopt;
}

template <class Real = long double>
struct CmVerdict {
  bool is_cm = false;
  std::optional<int> s;
  Real ratio = std::numeric_limits<Real>::quiet_NaN();
  bool s_within_bounds = false;  // s integral and r0 - 1 <= s <= r0
};

template <class Real>
CmVerdict<Real> verify_cm(const FieldRecord<Real>& K, const FieldRecord<Real>& K0) {
  using std::abs;
  using std::log2;
  using std::round;
  CmVerdict<Real> v;
  const auto& F = K.field;
  const auto& F0 = K0.field;
  if (F.degree % F0.degree != 0)
    throw Error(ErrorKind::NotASubfield, F0.label + " cannot be a subfield of " + F.label);
  const int rel = F.degree / F0.degree;
  const bool shape = F.r1 == 0 && F0.r2 == 0;
  if (shape && rel != 2 && F.degree > F0.degree)
    throw Error(ErrorKind::DegreeMismatch, F.label + " over " + F0.label + " has relative degree " +
                                               std::to_string(rel) + ", not 2");
  v.is_cm = shape && rel == 2;
  Real rk = record_regulator(K), rk0 = record_regulator(K0);
  v.ratio = rk / rk0;
  if (v.is_cm) {
    Real s = log2(v.ratio);
    long long si = static_cast<long long>(round(static_cast<long double>(s)));
    int r0 = unit_rank(F0);
    if (abs(s - Real(si)) <= Real(1e-6)) {
      v.s = static_cast<int>(si);
      v.s_within_bounds = (r0 - 1 <= si) && (si <= r0);
    }
  }
  return v;
}

}  // namespace arinv
