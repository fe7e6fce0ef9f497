#pragma once

// Line-oriented corpus of field and curve records.
//
//   field Q_sqrt2
//   poly = -2 0 1
//   units = 1 1
//
//   curve 37a
//   a = 0 0 1 -1 0
//   rank = 1
//   gens = 0,0

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arinv/ellcurve.hpp"
#include "arinv/numfield.hpp"

namespace arinv {

struct FieldEntry {
  std::string label;
  IntPolynomial poly;
  std::optional<Integer> disc;
  std::optional<int> w;
  std::optional<std::vector<std::vector<Rational>>> units;
  std::optional<std::string> subfield;
  std::optional<int> r0;

  bool operator==(const FieldEntry& o) const {
    return label == o.label && poly.coefficients() == o.poly.coefficients() && disc == o.disc && w == o.w &&
           units == o.units && subfield == o.subfield && r0 == o.r0;
  }
};

struct CurveEntry {
  std::string label;
  std::array<Rational, 5> a;
  int rank = 0;
  std::vector<Point> gens;

  bool operator==(const CurveEntry&) const = default;
  CurveRecord record() const { return {label, a, rank, gens}; }
};

struct Corpus {
  std::vector<FieldEntry> fields;
  std::vector<CurveEntry> curves;

  const FieldEntry* field(const std::string& label) const {
    for (const auto& f : fields)
      if (f.label == label) return &f;
    return nullptr;
  }
  const CurveEntry* curve(const std::string& label) const {
    for (const auto& c : curves)
      if (c.label == label) return &c;
    return nullptr;
  }
  bool operator==(const Corpus&) const = default;
};

namespace detail {

inline std::string trim_ws(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim_ws(cur));
  return out;
}

inline std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline Rational rational_at(const std::string& s, std::size_t line) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    parse_fail(line, "bad rational '" + s + "'");
  }
}

inline Integer integer_at(const std::string& s, std::size_t line) {
  Rational q = rational_at(s, line);
  if (!is_integral(q)) parse_fail(line, "expected an integer, got '" + s + "'");
  return num(q);
}

inline int small_int_at(const std::string& s, std::size_t line) {
  Integer n = integer_at(s, line);
  if (abs_int(n) > 1000000) parse_fail(line, "integer out of range '" + s + "'");
  return static_cast<int>(n.convert_to<long>());
}

struct RawRecord {
  std::string kind, label;
  std::size_t line = 0;
  std::vector<std::pair<std::string, std::pair<std::string, std::size_t>>> keys;
};

}  // namespace detail

inline Corpus parse_corpus_text(const std::string& text) {
  using namespace detail;
  std::vector<RawRecord> raws;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool open = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    line = trim_ws(line);
    if (trim_ws(raw).empty()) {
      open = false;
      continue;
    }
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      auto w = words(line);
      if (w.size() != 2 || (w[0] != "field" && w[0] != "curve"))
        parse_fail(lineno, "expected 'field <label>' or 'curve <label>'");
      raws.push_back({w[0], w[1], lineno, {}});
      open = true;
      continue;
    }
    if (!open) parse_fail(lineno, "key outside of a record");
    std::string key = trim_ws(line.substr(0, eq));
    std::string value = trim_ws(line.substr(eq + 1));
    for (const auto& k : raws.back().keys)
      if (k.first == key) parse_fail(lineno, "repeated key '" + key + "'");
    raws.back().keys.push_back({key, {value, lineno}});
  }

  Corpus corpus;
  std::set<std::string> field_labels, curve_labels;
  for (const auto& r : raws) {
    auto find = [&](const std::string& k) -> const std::pair<std::string, std::size_t>* {
      for (const auto& kv : r.keys)
        if (kv.first == k) return &kv.second;
      return nullptr;
    };
    auto require = [&](const std::string& k) {
      auto v = find(k);
      if (!v) parse_fail(r.line, r.kind + " " + r.label + ": missing key '" + k + "'");
      return v;
    };
    const std::set<std::string> allowed =
        r.kind == "field" ? std::set<std::string>{"poly", "disc", "w", "units", "subfield", "r0"}
                          : std::set<std::string>{"a", "rank", "gens"};
    for (const auto& kv : r.keys)
      if (!allowed.count(kv.first)) parse_fail(kv.second.second, "unknown key '" + kv.first + "'");

    if (r.kind == "field") {
      if (!field_labels.insert(r.label).second)
        throw Error(ErrorKind::DuplicateLabel, "field label '" + r.label + "' appears twice");
      FieldEntry f;
      f.label = r.label;
      auto poly = require("poly");
      std::vector<Integer> coeffs;
      for (const auto& w : words(poly->first)) coeffs.push_back(integer_at(w, poly->second));
      if (coeffs.size() < 2) parse_fail(poly->second, "poly needs degree >= 1");
      f.poly = IntPolynomial(std::move(coeffs));
      if (auto v = find("disc")) f.disc = integer_at(v->first, v->second);
      if (auto v = find("w")) f.w = small_int_at(v->first, v->second);
      if (auto v = find("r0")) f.r0 = small_int_at(v->first, v->second);
      if (auto v = find("subfield")) f.subfield = v->first;
      if (auto v = find("units")) {
        std::vector<std::vector<Rational>> us;
        if (!v->first.empty())
          for (const auto& part : split(v->first, ';')) {
            std::vector<Rational> u;
            for (const auto& w : words(part)) u.push_back(rational_at(w, v->second));
            if (u.empty()) parse_fail(v->second, "empty unit");
            us.push_back(std::move(u));
          }
        f.units = std::move(us);
      }
      corpus.fields.push_back(std::move(f));
    } else {
      if (!curve_labels.insert(r.label).second)
        throw Error(ErrorKind::DuplicateLabel, "curve label '" + r.label + "' appears twice");
      CurveEntry c;
      c.label = r.label;
      auto a = require("a");
      auto ws = words(a->first);
      if (ws.size() != 5) parse_fail(a->second, "'a' needs five coefficients a1 a2 a3 a4 a6");
      for (int i = 0; i < 5; ++i) c.a[i] = rational_at(ws[i], a->second);
      auto rank = require("rank");
      c.rank = small_int_at(rank->first, rank->second);
      if (c.rank < 0) parse_fail(rank->second, "rank must be nonnegative");
      if (auto v = find("gens"); v && !v->first.empty())
        for (const auto& part : split(v->first, ';')) {
          auto xy = split(part, ',');
          if (xy.size() != 2) parse_fail(v->second, "generator must be 'x,y'");
          c.gens.push_back(Point::affine(rational_at(xy[0], v->second), rational_at(xy[1], v->second)));
        }
      corpus.curves.push_back(std::move(c));
    }
  }
  for (const auto& f : corpus.fields)
    if (f.subfield && !field_labels.count(*f.subfield))
      throw Error(ErrorKind::DanglingSubfieldRef, f.label + " refers to unknown subfield '" + *f.subfield + "'");
  return corpus;
}

inline Corpus parse_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read corpus '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus_text(ss.str());
}

inline std::string emit_curve(const CurveEntry& c) {
  std::string s = "curve " + c.label + "\na =";
  for (const auto& x : c.a) s += " " + to_string(x);
  s += "\nrank = " + std::to_string(c.rank) + "\n";
  if (!c.gens.empty()) {
    s += "gens =";
    for (std::size_t i = 0; i < c.gens.size(); ++i)
      s += (i ? " ; " : " ") + to_string(c.gens[i].x) + "," + to_string(c.gens[i].y);
    s += "\n";
  }
  return s;
}

inline std::string emit_field(const FieldEntry& f) {
  std::string s = "field " + f.label + "\npoly =";
  for (const auto& c : f.poly.coefficients()) s += " " + c.str();
  s += "\n";
  if (f.disc) s += "disc = " + f.disc->str() + "\n";
  if (f.w) s += "w = " + std::to_string(*f.w) + "\n";
  if (f.units) {
    s += "units =";
    for (std::size_t i = 0; i < f.units->size(); ++i) {
      if (i) s += " ;";
      for (const auto& q : (*f.units)[i]) s += " " + to_string(q);
    }
    s += "\n";
  }
  if (f.subfield) s += "subfield = " + *f.subfield + "\n";
  if (f.r0) s += "r0 = " + std::to_string(*f.r0) + "\n";
  return s;
}

inline std::string emit_corpus(const Corpus& c) {
  std::string s;
  for (const auto& f : c.fields) s += (s.empty() ? "" : "\n") + emit_field(f);
  for (const auto& e : c.curves) s += (s.empty() ? "" : "\n") + emit_curve(e);
  return s;
}

/// The number field of an entry. Quadratic x^2 - m gets its discriminant and
/// roots of unity computed; other fields need `disc` unless d = 1.
template <class Real = long double>
FieldRecord<Real> build_field_record(const FieldEntry& e) {
  const auto& c = e.poly.coefficients();
  FieldRecord<Real> rec;
  const bool pure_quadratic = e.poly.degree() == 2 && c[1] == 0 && c[2] == 1;
  if (pure_quadratic && is_squarefree(Integer(-c[0])) && -c[0] != 1) {
    const long long m = (-c[0]).convert_to<long long>();
    rec.field = quadratic_field<Real>(m, e.label);
    if (e.disc && *e.disc != *rec.field.discriminant)
      throw Error(ErrorKind::InvalidField, e.label + ": supplied disc differs from " + rec.field.discriminant->str());
    if (e.w && *e.w != rec.field.roots_of_unity)
      throw Error(ErrorKind::InvalidField, e.label + ": supplied w differs from " +
                                               std::to_string(rec.field.roots_of_unity));
  } else {
    std::optional<Integer> disc = e.disc;
    if (!disc && e.poly.degree() == 1) disc = Integer(1);
    rec.field = make_number_field<Real>(e.label, e.poly, disc, e.w.value_or(2));
  }
  const int r = unit_rank(rec.field);
  if (e.units) {
    std::vector<AlgebraicElement> us;
    for (const auto& u : *e.units) {
      if (static_cast<int>(u.size()) > rec.field.degree)
        throw Error(ErrorKind::InvalidField, e.label + ": unit has more coefficients than the degree");
      AlgebraicElement a{u};
      a.coefficients.resize(rec.field.degree, Rational(0));
      us.push_back(std::move(a));
    }
    rec.units = make_unit_system(rec.field, std::move(us));
  } else if (r == 0) {
    rec.units = make_unit_system(rec.field, {});
  } else if (pure_quadratic) {
    auto [a, b] = pell_fundamental_solution(Integer(-c[0])).power_basis();
    rec.units = make_unit_system(rec.field, {AlgebraicElement{{a, b}}});
  }
  rec.subfield = e.subfield;
  rec.r0 = e.r0;
  return rec;
}

}  // namespace arinv
