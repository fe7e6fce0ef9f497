#pragma once

// Named inequality instances over fields and curves, each with lhs >= rhs
// orientation and margin lhs - rhs, plus implied-constant reporters.

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arinv/corpus.hpp"
#include "arinv/height.hpp"
#include "arinv/numfield.hpp"

namespace arinv {

enum class Verdict { Pass, Fail, ReportOnly };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::ReportOnly: return "report-only";
  }
  return "?";
}

inline constexpr long double kPassThreshold = -1e-9L;

struct CheckResult {
  std::string check_id;
  std::string object;
  long double lhs = 0;
  long double rhs = 0;
  long double margin = 0;
  Verdict verdict = Verdict::ReportOnly;
  std::string note;

  /// Family is the id up to the first dot.
  std::string family() const { return check_id.substr(0, check_id.find('.')); }
};

inline CheckResult make_check(std::string id, std::string object, long double lhs, long double rhs,
                              std::string note = {}) {
  CheckResult r{std::move(id), std::move(object), lhs, rhs, lhs - rhs, Verdict::Fail, std::move(note)};
  r.verdict = (std::isfinite(static_cast<double>(r.margin)) && r.margin >= kPassThreshold) ? Verdict::Pass
                                                                                             : Verdict::Fail;
  return r;
}

inline CheckResult make_report(std::string id, std::string object, long double lhs, long double rhs,
                               std::string note) {
  return {std::move(id), std::move(object), lhs, rhs, lhs - rhs, Verdict::ReportOnly, std::move(note)};
}

inline std::string fmt(long double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, x);
  return buf;
}

/// Explicit constants of the regulator and height inequalities.
struct ConstantsTable {
  static constexpr long double friedmanA = 0.0031L;
  static constexpr long double friedmanB = 0.241L;
  static constexpr long double friedmanC = 0.497L;
  static long double fsC1() { return std::pow(11.5L, -39.0L); }
  static constexpr long double fsC2 = 1.15L;
  /// (2^26 3^8 + 2^8 log 16) d^3 + 2^8 d log|D_K|.
  static long double c5(int d, long double log_disc_k) {
    const long double lead = 67108864.0L * 6561.0L + 256.0L * std::log(16.0L);
    return lead * d * d * d + 256.0L * d * log_disc_k;
  }
};

// ---------------------------------------------------------------------------
// Number fields

template <class Real>
std::vector<CheckResult> check_hermite_minkowski(const NumberField<Real>& K) {
  std::vector<CheckResult> out;
  if (!K.discriminant) return out;
  const long double pi = std::acos(-1.0L);
  const int d = K.degree;
  const long double absd = std::fabs(to_real<long double>(*K.discriminant));
  long double dd = std::pow(static_cast<long double>(d), d) / std::tgamma(d + 1.0L);
  long double rhs1 = std::pow(pi / 4, K.r2) * dd;
  out.push_back(make_check("hm.1", K.label, std::sqrt(absd), rhs1, "|D|^1/2 vs (pi/4)^r2 d^d/d!"));
  if (d >= 2) {
    long double rhs2 = pi / 3 * std::pow(3 * pi / 4, d - 1);
    out.push_back(make_check("hm.2", K.label, absd, rhs2, "|D| vs (pi/3)(3pi/4)^(d-1)"));
  }
  return out;
}

template <class Real>
CheckResult check_friedman(const NumberField<Real>& K, Real reg) {
  using C = ConstantsTable;
  const long double lhs = static_cast<long double>(reg) / K.roots_of_unity;
  const long double rhs = C::friedmanA * std::exp(C::friedmanB * K.degree + C::friedmanC * K.r1);
  return make_check("friedman", K.label, lhs, rhs, "R/w = " + fmt(lhs) + ", w = " + std::to_string(K.roots_of_unity));
}

template <class Real>
CheckResult check_friedman_skoruppa(const NumberField<Real>& L, Real reg_l, const NumberField<Real>& K, Real reg_k) {
  using C = ConstantsTable;
  if (L.degree % K.degree != 0)
    throw Error(ErrorKind::NotASubfield, K.label + " cannot be a subfield of " + L.label);
  const int rel = L.degree / K.degree;
  const long double lhs = static_cast<long double>(reg_l / reg_k);
  const long double rhs = std::pow(C::fsC1() * std::pow(C::fsC2, rel), static_cast<long double>(K.degree));
  return make_check("friedman-skoruppa", L.label, lhs, rhs,
                    "over " + K.label + ", [L:K] = " + std::to_string(rel) + ", slack 10^" +
                        fmt(std::log10(lhs) - std::log10(rhs), 4));
}

/// Implied constant c3 = R d^{2d} log(|D|/d^d)^{-(r - r0)}.
template <class Real>
CheckResult report_silverman_friedman(const FieldRecord<Real>& rec, Real reg, std::optional<long double>* c3 = nullptr) {
  const auto& K = rec.field;
  const long double R = static_cast<long double>(reg);
  const int d = K.degree;
  const long double d2d = std::pow(static_cast<long double>(d), 2 * d);
  auto r0 = record_r0(rec);
  if (!r0) return make_report("silverman-friedman", K.label, R, 0, "r0 not supplied; no implied constant");
  if (!K.discriminant) return make_report("silverman-friedman", K.label, R, 0, "no discriminant; no implied constant");
  const int e = unit_rank(K) - *r0;
  if (e == 0)
    return make_report("silverman-friedman", K.label, R, 1 / d2d,
                       "exponent zero: bound reads R_K >= c3 d^-2d (CM case, bound trivial)");
  const long double L = std::log(std::fabs(to_real<long double>(*K.discriminant)) / std::pow((long double)d, d));
  if (!(L > 0))
    return make_report("silverman-friedman", K.label, R, L,
                       "log(|D|/d^d) = " + fmt(L) + " <= 0; no implied constant");
  const long double c = R * d2d * std::pow(L, -static_cast<long double>(e));
  if (c3) *c3 = c;
  return make_report("silverman-friedman", K.label, c, 0, "implied c3 = " + fmt(c));
}

template <class Real>
CheckResult check_cm(const FieldRecord<Real>& K, const FieldRecord<Real>& K0) {
  auto v = verify_cm(K, K0);
  const int r0 = unit_rank(K0.field);
  const long double ratio = static_cast<long double>(v.ratio);
  if (!v.is_cm)
    return make_report("cm", K.field.label, ratio, 0,
                       "not CM over " + K0.field.label + "; r_K - r0 = " +
                           std::to_string(unit_rank(K.field) - r0) + ", ratio " + fmt(ratio));
  const long double s = std::log2(ratio);
  const long double frac = std::fabs(s - std::round(s));
  const long double slack = std::min({s - (r0 - 1), static_cast<long double>(r0) - s, 1e-6L - frac});
  std::string note = "over " + K0.field.label + ": ratio " + fmt(ratio, 12) + ", s = " +
                     (v.s ? std::to_string(*v.s) : std::string("non-integral")) + " in [" + std::to_string(r0 - 1) +
                     "," + std::to_string(r0) + "]";
  return make_check("cm", K.field.label, slack, 0, note);
}

template <class Real>
CheckResult check_regulator_forms(const FieldRecord<Real>& rec) {
  auto f = regulator_forms(rec.field, *rec.units);
  const long double diff = std::fabs(static_cast<long double>(f.bordered - f.minor));
  const long double allow = 1e-10L * std::max(1.0L, static_cast<long double>(f.bordered));
  return make_check("regulator-forms", rec.field.label, allow, diff,
                    "bordered " + fmt(static_cast<long double>(f.bordered), 14) + ", minor " +
                        fmt(static_cast<long double>(f.minor), 14));
}

// ---------------------------------------------------------------------------
// Successive minima of a Gram matrix

template <class Real = long double>
struct MinimaResult {
  std::vector<Real> minima;    // lambda_i = sqrt(q_i)
  std::vector<Real> squared;   // q_i = c^T G c at the witnesses
  std::vector<std::vector<long long>> witnesses;
  int box = 0;
  bool exact = false;          // every vector with q <= q_m lies inside the box
};

namespace detail {

inline bool extends_rank(std::vector<std::vector<Rational>>& echelon, const std::vector<long long>& c) {
  std::vector<Rational> v(c.begin(), c.end());
  for (const auto& row : echelon) {
    std::size_t lead = 0;
    while (row[lead] == 0) ++lead;
    if (v[lead] != 0) {
      Rational f = v[lead] / row[lead];
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= f * row[k];
    }
  }
  for (const auto& x : v)
    if (x != 0) {
      echelon.push_back(std::move(v));
      // keep rows sorted by leading index
      std::sort(echelon.begin(), echelon.end(), [](const auto& a, const auto& b) {
        std::size_t la = 0, lb = 0;
        while (a[la] == 0) ++la;
        while (b[lb] == 0) ++lb;
        return la < lb;
      });
      return true;
    }
  return false;
}

}  // namespace detail

/// Exhaustive search over coefficient vectors in [-box, box]^m.
template <class Real>
MinimaResult<Real> successive_minima(const Matrix<Real>& gram, int box = 20) {
  using std::floor;
  using std::sqrt;
  const std::size_t m = gram.size();
  MinimaResult<Real> out;
  out.box = box;
  if (m == 0) {
    out.exact = true;
    return out;
  }
  const auto ev = symmetric_eigenvalues(gram);
  if (!(ev.front() > 0)) throw Error(ErrorKind::DependentPoints, "Gram matrix is not positive definite");
  const auto inv = inverse(gram);
  Real Q = 0;
  for (std::size_t i = 0; i < m; ++i) Q = std::max(Q, gram[i][i]);
  const Real slack = Real(1) + Real(1e-12);
  std::vector<long long> bound(m);
  for (std::size_t i = 0; i < m; ++i) {
    const long long b = static_cast<long long>(static_cast<long double>(floor(sqrt(Q * inv[i][i] * slack))));
    bound[i] = std::min<long long>(b, box);
  }

  struct Cand {
    Real q;
    std::vector<long long> c;
  };
  std::vector<Cand> cands;
  std::vector<long long> c(m);
  for (std::size_t i = 0; i < m; ++i) c[i] = -bound[i];
  while (true) {
    // canonical sign: first nonzero coordinate positive
    std::size_t nz = 0;
    while (nz < m && c[nz] == 0) ++nz;
    if (nz < m && c[nz] > 0) {
      Real q = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (c[i] == 0) continue;
        Real row = 0;
        for (std::size_t j = 0; j < m; ++j) row += gram[i][j] * Real(c[j]);
        q += Real(c[i]) * row;
      }
      if (q <= Q * slack) cands.push_back({q, c});
    }
    std::size_t k = 0;
    while (k < m && c[k] == bound[k]) {
      c[k] = -bound[k];
      ++k;
    }
    if (k == m) break;
    ++c[k];
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.q != b.q) return a.q < b.q;
    return a.c < b.c;
  });
  std::vector<std::vector<Rational>> echelon;
  for (const auto& cd : cands) {
    if (out.witnesses.size() == m) break;
    if (detail::extends_rank(echelon, cd.c)) {
      out.witnesses.push_back(cd.c);
      out.squared.push_back(cd.q);
      out.minima.push_back(sqrt(cd.q));
    }
  }
  if (out.witnesses.size() != m) throw Error(ErrorKind::Internal, "minima search found too few independent vectors");
  const Real qm = out.squared.back();
  out.exact = true;
  for (std::size_t i = 0; i < m; ++i) {
    const long long need = static_cast<long long>(static_cast<long double>(floor(sqrt(qm * inv[i][i] * slack))));
    if (need > box) out.exact = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Curves

template <class Real = long double>
struct CurveAnalysis {
  std::string label;
  WeierstrassCurve curve;
  MinimalModel minimal;
  ReductionData reduction;
  FaltingsData<Real> faltings;
  int rank = 0;
  std::vector<Point> generators;
  std::vector<Real> heights;  // x-normalized
  MordellWeilBasis<Real> basis;
};

template <class Real = long double>
CurveAnalysis<Real> analyze_curve(const CurveEntry& e, HeightOptions opt = {}) {
  WeierstrassCurve E(e.a);
  auto mm = minimal_model(E);
  auto red = reduction_data(mm.curve);
  auto falt = faltings_data<Real>(E);
  auto basis = mw_regulator<Real>(E, e.gens, e.rank, opt);
  std::vector<Real> hs;
  for (const auto& P : e.gens) hs.push_back(canonical_height<Real>(E, P, opt));
  return {e.label, E, std::move(mm), std::move(red), std::move(falt), e.rank, e.gens, std::move(hs), std::move(basis)};
}

inline constexpr long double kTwelve8 = 429981696.0L;

template <class Real>
long double hf_plus(const CurveAnalysis<Real>& a) {
  return static_cast<long double>(a.faltings.value);
}

template <class Real>
long double log_n0(const CurveAnalysis<Real>& a) {
  return a.reduction.n0 == 1 ? 0.0L : log_abs<long double>(a.reduction.n0);
}

template <class Real>
CheckResult check_bost(const CurveAnalysis<Real>& a) {
  return make_check("bost", a.label, hf_plus(a), 0, "h_F+ >= 0");
}

template <class Real>
CheckResult check_semistable_height_bound(const CurveAnalysis<Real>& a, int d = 1) {
  const long double rhs = log_n0(a) / (12.0L * d);
  if (!a.reduction.semistable)
    return make_report("semistable-height", a.label, hf_plus(a), rhs, "not semistable; bound not asserted");
  return make_check("semistable-height", a.label, hf_plus(a), rhs, "N0 = " + a.reduction.n0.str());
}

template <class Real>
CheckResult check_general_height_bound(const CurveAnalysis<Real>& a, int d = 1) {
  const long double rhs = log_n0(a) / (kTwelve8 * d);
  return make_check("general-height", a.label, hf_plus(a), rhs, "N0 = " + a.reduction.n0.str());
}

template <class Real>
std::vector<CheckResult> check_injectivity_theorem(const CurveAnalysis<Real>& a, int d = 1) {
  const long double pi = std::acos(-1.0L);
  const long double lp = std::log(pi / (pi - 3));
  const long double im = static_cast<long double>(a.faltings.tau.value.im());  // rho^-2
  const long double hf = hf_plus(a);
  std::vector<CheckResult> out;
  out.push_back(make_check("injectivity.autissier", a.label, 2 * hf + lp, im / d,
                           "rho^-2 = Im tau = " + fmt(im)));
  const long double rhs = log_n0(a) / (3 * kTwelve8 * d) + im / (3.0L * d) - lp / 3;
  out.push_back(make_check("injectivity.theorem", a.label, hf, rhs, "rho = " + fmt(1 / std::sqrt(im))));
  return out;
}

template <class Real>
CheckResult check_rank_bound(const CurveAnalysis<Real>& a, int d = 1, long double log_disc_k = 0) {
  const long double c5 = ConstantsTable::c5(d, log_disc_k);
  return make_check("rank-bound", a.label, c5 * std::max(1.0L, hf_plus(a)), a.rank, "c5 = " + fmt(c5, 12));
}

template <class Real>
CheckResult report_lang_silverman(const CurveAnalysis<Real>& a, std::optional<long double>* c4 = nullptr) {
  if (a.rank == 0 || a.heights.empty()) return make_report("lang-silverman", a.label, 0, 0, "no dense point");
  long double best = std::numeric_limits<long double>::infinity();
  for (const auto& h : a.heights) best = std::min(best, kPairingScale * static_cast<long double>(h));
  const long double c = best / std::max(1.0L, hf_plus(a));
  if (c4) *c4 = c;
  return make_report("lang-silverman", a.label, c, 0, "implied c4 = " + fmt(c));
}

template <class Real>
std::vector<CheckResult> check_regulator_theorem(const CurveAnalysis<Real>& a, int box = 20,
                                                 std::optional<long double>* c10 = nullptr) {
  std::vector<CheckResult> out;
  const int m = a.rank;
  if (m == 0) {
    out.push_back(make_report("minkowski", a.label, 1, 1, "rank 0: regulator 1, check skipped"));
    return out;
  }
  const auto mins = successive_minima(a.basis.gram, box);
  long double prod = 1;
  for (const auto& q : mins.squared) prod *= static_cast<long double>(q);
  const long double reg = static_cast<long double>(a.basis.regulator);
  const long double lhs = std::pow(static_cast<long double>(m), m / 2.0L) * reg;
  std::string note = "prod lambda_i^2 vs m^(m/2) Reg; " + std::string(mins.exact ? "exact" : "box-limited") +
                     " box " + std::to_string(mins.box);
  out.push_back(make_check("minkowski", a.label, lhs, prod, note));
  const long double c = std::pow(reg, 2.0L / m) / std::max(1.0L, hf_plus(a));
  if (c10) *c10 = c;
  out.push_back(make_report("reg-height.c10", a.label, c, 0, "implied c10 = " + fmt(c)));
  return out;
}

/// Local-decomposition heights of the generators against the doubling oracle.
template <class Real>
std::vector<CheckResult> check_height_crosscheck(const CurveAnalysis<Real>& a, long double tol) {
  std::vector<CheckResult> out;
  for (std::size_t i = 0; i < a.generators.size(); ++i) {
    const auto o = doubling_height<Real>(a.curve, a.generators[i], Real(tol));
    const long double other = o.torsion ? 0.0L : static_cast<long double>(o.value);
    const long double diff = std::fabs(static_cast<long double>(a.heights[i]) - other);
    out.push_back(make_check("height-crosscheck", a.label + ":" + to_string(a.generators[i]), 2 * tol, diff,
                             "local " + fmt(static_cast<long double>(a.heights[i]), 12) + ", doubling " +
                                 fmt(other, 12) + " (n = " + std::to_string(o.doublings) + ")"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Analytic estimates

/// sum_{n>=1} log(1 + exp(-sqrt(3) pi n)).
inline long double eta_corner_series() {
  const long double a = std::sqrt(3.0L) * std::acos(-1.0L);
  long double s = 0;
  for (int n = 1; n < 100; ++n) {
    const long double t = std::log1p(std::exp(-a * n));
    s += t;
    if (t < 1e-30L) break;
  }
  return s;
}

/// 100 reduced points: i, the corner exp(i pi/3), and 98 pseudo-random ones.
template <class Real = long double>
std::vector<Tau<Real>> sample_reduced_taus(unsigned seed = 20240601u) {
  using std::sqrt;
  std::vector<Tau<Real>> out;
  out.emplace_back(Real(0), Real(1));
  out.emplace_back(Real(0.5), sqrt(Real(3)) / Real(2));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-0.5, 0.5), lift(0.0, 2.0);
  while (out.size() < 100) {
    const double x = re(rng);
    const double y = std::sqrt(1.0 - x * x) + lift(rng);
    out.emplace_back(Real(x), Real(y));
  }
  return out;
}

template <class Real = long double>
std::vector<CheckResult> check_analytic_estimates() {
  using std::abs;
  using std::log;
  std::vector<CheckResult> out;
  const long double s = eta_corner_series();
  out.push_back(make_check("analytic.series", "sum log(1+exp(-sqrt3 pi n))", 0.005L, s, "series = " + fmt(s, 8)));
  long double worst = std::numeric_limits<long double>::infinity();
  std::string at;
  for (const auto& tau : sample_reduced_taus<Real>()) {
    const auto d = discriminant_series(tau);
    const long double v = static_cast<long double>(-(log(abs(d.value())) + Real(6) * log(Real(2) * tau.im())));
    if (v < worst) {
      worst = v;
      at = fmt(static_cast<long double>(tau.re()), 6) + "+" + fmt(static_cast<long double>(tau.im()), 6) + "i";
    }
  }
  out.push_back(make_check("analytic.nonneg", "(100 reduced tau)", worst, 0, "minimum at tau = " + at));
  return out;
}

// ---------------------------------------------------------------------------
// Northcott scan

struct NorthcottReport {
  long double bound = 0;
  std::vector<std::pair<std::string, long double>> fields;  // non-CM, R_K <= B
  std::vector<std::pair<std::string, long double>> curves;  // rank >= 1, Reg <= B
  long double min_curve_regulator = std::numeric_limits<long double>::infinity();
};

inline std::vector<CheckResult> northcott_rows(const NorthcottReport& n) {
  auto list = [](const auto& v) {
    std::string s;
    for (const auto& [l, x] : v) s += (s.empty() ? "" : " ") + l + "=" + fmt(x, 8);
    return s.empty() ? std::string("none") : s;
  };
  const std::string obj = "B=" + fmt(n.bound);
  return {make_report("northcott.curves", obj, static_cast<long double>(n.curves.size()), n.bound,
                      "positive-rank curves with Reg <= B: " + list(n.curves) +
                          "; smallest Reg " + fmt(n.min_curve_regulator, 8)),
          make_report("northcott.fields", obj, static_cast<long double>(n.fields.size()), n.bound,
                      "non-CM fields with R_K <= B: " + list(n.fields))};
}

// ---------------------------------------------------------------------------
// Whole-corpus run

struct LedgerOptions {
  HeightOptions height{};
  long double crosscheck_tol = 1e-6L;
  long double northcott_bound = 2.0L;
  int minima_box = 20;
  std::vector<std::string> only;  // families or full ids; empty = everything
};

inline bool selected(const LedgerOptions& opt, const CheckResult& r) {
  if (opt.only.empty()) return true;
  for (const auto& s : opt.only)
    if (s == r.check_id || s == r.family()) return true;
  return false;
}

inline void sort_rows(std::vector<CheckResult>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const CheckResult& a, const CheckResult& b) {
    if (a.check_id != b.check_id) return a.check_id < b.check_id;
    return a.object < b.object;
  });
}

namespace detail {

template <class Real>
struct FieldOutcome {
  std::vector<CheckResult> rows;
  std::optional<long double> c3;
  std::optional<std::pair<std::string, long double>> northcott;
};

template <class Real>
struct CurveOutcome {
  std::vector<CheckResult> rows;
  std::optional<long double> c4, c10, reg;
};

inline CheckResult load_failure(const std::string& label, const std::exception& e) {
  return make_check("corpus.load", label, 0, 1, e.what());
}

template <class Real>
FieldOutcome<Real> run_field(const Corpus& corpus, const FieldEntry& e) {
  FieldOutcome<Real> out;
  try {
    auto rec = build_field_record<Real>(e);
    for (auto& r : check_hermite_minkowski(rec.field)) out.rows.push_back(std::move(r));
    const Real reg = record_regulator(rec);
    out.rows.push_back(check_friedman(rec.field, reg));
    if (unit_rank(rec.field) >= 1) out.rows.push_back(check_regulator_forms(rec));
    out.rows.push_back(report_silverman_friedman(rec, reg, &out.c3));
    bool cm = false;
    if (rec.subfield) {
      auto sub = build_field_record<Real>(*corpus.field(*rec.subfield));
      const Real sreg = record_regulator(sub);
      out.rows.push_back(check_friedman_skoruppa(rec.field, reg, sub.field, sreg));
      auto cmrow = check_cm(rec, sub);
      cm = cmrow.verdict != Verdict::ReportOnly;
      out.rows.push_back(std::move(cmrow));
    } else {
      // totally imaginary quadratic fields are CM over Q
      cm = rec.field.degree == 2 && rec.field.r1 == 0;
    }
    if (!cm) out.northcott = std::make_pair(e.label, static_cast<long double>(reg));
  } catch (const std::exception& ex) {
    out.rows.push_back(load_failure(e.label, ex));
  }
  return out;
}

template <class Real>
CurveOutcome<Real> run_curve(const CurveEntry& e, const LedgerOptions& opt) {
  CurveOutcome<Real> out;
  try {
    auto a = analyze_curve<Real>(e, opt.height);
    out.rows.push_back(check_bost(a));
    out.rows.push_back(check_semistable_height_bound(a));
    out.rows.push_back(check_general_height_bound(a));
    for (auto& r : check_injectivity_theorem(a)) out.rows.push_back(std::move(r));
    out.rows.push_back(check_rank_bound(a));
    out.rows.push_back(report_lang_silverman(a, &out.c4));
    for (auto& r : check_regulator_theorem(a, opt.minima_box, &out.c10)) out.rows.push_back(std::move(r));
    CheckResult probe{"height-crosscheck", e.label};
    if (selected(opt, probe))
      for (auto& r : check_height_crosscheck(a, opt.crosscheck_tol)) out.rows.push_back(std::move(r));
    if (a.rank >= 1) out.reg = static_cast<long double>(a.basis.regulator);
  } catch (const std::exception& ex) {
    out.rows.push_back(load_failure(e.label, ex));
  }
  return out;
}

}  // namespace detail

/// All checks over a corpus, sorted by (check id, object).
template <class Real = long double>
std::vector<CheckResult> run_ledger(const Corpus& corpus, const LedgerOptions& opt = {}) {
  std::vector<std::future<detail::FieldOutcome<Real>>> ff;
  std::vector<std::future<detail::CurveOutcome<Real>>> cf;
  for (const auto& f : corpus.fields)
    ff.push_back(std::async(std::launch::async, [&corpus, &f] { return detail::run_field<Real>(corpus, f); }));
  for (const auto& c : corpus.curves)
    cf.push_back(std::async(std::launch::async, [&c, &opt] { return detail::run_curve<Real>(c, opt); }));

  std::vector<CheckResult> rows = check_analytic_estimates<Real>();
  NorthcottReport nc;
  nc.bound = opt.northcott_bound;
  std::optional<long double> min_c3, min_c4, min_c10;
  auto take_min = [](std::optional<long double>& acc, const std::optional<long double>& v) {
    if (v && (!acc || *v < *acc)) acc = v;
  };
  for (std::size_t i = 0; i < ff.size(); ++i) {
    auto o = ff[i].get();
    rows.insert(rows.end(), o.rows.begin(), o.rows.end());
    take_min(min_c3, o.c3);
    if (o.northcott && o.northcott->second <= nc.bound) nc.fields.push_back(*o.northcott);
  }
  for (std::size_t i = 0; i < cf.size(); ++i) {
    auto o = cf[i].get();
    rows.insert(rows.end(), o.rows.begin(), o.rows.end());
    take_min(min_c4, o.c4);
    take_min(min_c10, o.c10);
    if (o.reg) {
      nc.min_curve_regulator = std::min(nc.min_curve_regulator, *o.reg);
      if (*o.reg <= nc.bound) nc.curves.push_back({corpus.curves[i].label, *o.reg});
    }
  }
  if (min_c3) rows.push_back(make_report("silverman-friedman", "(corpus)", *min_c3, 0, "minimum implied c3"));
  if (min_c4) rows.push_back(make_report("lang-silverman", "(corpus)", *min_c4, 0, "minimum implied c4"));
  if (min_c10) rows.push_back(make_report("reg-height.c10", "(corpus)", *min_c10, 0, "minimum implied c10"));
  for (auto& r : northcott_rows(nc)) rows.push_back(std::move(r));

  std::vector<CheckResult> kept;
  for (auto& r : rows)
    if (selected(opt, r)) kept.push_back(std::move(r));
  sort_rows(kept);
  return kept;
}

inline bool any_failure(const std::vector<CheckResult>& rows) {
  for (const auto& r : rows)
    if (r.verdict == Verdict::Fail) return true;
  return false;
}

}  // namespace arinv
