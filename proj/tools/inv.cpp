// inv: number field and elliptic curve invariants, and the inequality ledger.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <CLI11.hpp>

#include "arinv/corpus.hpp"
#include "arinv/height.hpp"
#include "arinv/ledger.hpp"
#include "arinv/report.hpp"

#ifndef ARINV_DEFAULT_CORPUS
#define ARINV_DEFAULT_CORPUS "data/corpus.txt"
#endif

namespace {

using namespace arinv;
namespace mp = boost::multiprecision;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class Real>
std::string show(const Real& x, int digits = 12) {
  return fmt(static_cast<long double>(x), digits);
}

template <class Real>
int cmd_field(const Corpus& corpus, const std::string& label) {
  const FieldEntry* e = corpus.field(label);
  if (!e) throw Error(ErrorKind::UnknownLabel, "no field labelled '" + label + "'");
  auto rec = build_field_record<Real>(*e);
  const auto& K = rec.field;
  std::cout << "field " << K.label << "\n";
  std::cout << "degree: " << K.degree << "\n";
  std::cout << "signature: (" << K.r1 << ", " << K.r2 << ")\n";
  std::cout << "discriminant: " << (K.discriminant ? K.discriminant->str() : std::string("not supplied")) << "\n";
  std::cout << "roots of unity: " << K.roots_of_unity << "\n";
  std::cout << "unit rank: " << unit_rank(K) << "\n";
  std::cout << "regulator: " << show(record_regulator(rec)) << "\n";
  if (rec.subfield) {
    auto sub = build_field_record<Real>(*corpus.field(*rec.subfield));
    auto v = verify_cm(rec, sub);
    std::cout << "CM over " << *rec.subfield << ": " << (v.is_cm ? "yes" : "no") << ", ratio " << show(v.ratio);
    if (v.s) std::cout << ", s = " << *v.s;
    std::cout << "\n";
  } else {
    std::cout << "CM: " << (K.degree == 2 && K.r1 == 0 ? "yes (imaginary quadratic)" : "no certificate") << "\n";
  }
  return 0;
}

template <class Real>
int cmd_curve(const Corpus& corpus, const std::string& label, HeightOptions hopt) {
  const CurveEntry* e = corpus.curve(label);
  if (!e) throw Error(ErrorKind::UnknownLabel, "no curve labelled '" + label + "'");
  auto a = analyze_curve<Real>(*e, hopt);
  const auto& M = a.minimal.curve;
  std::cout << "curve " << a.label << "\n";
  std::cout << "input model: " << to_string(a.curve) << "\n";
  std::cout << "minimal model: " << to_string(M) << "\n";
  std::cout << "minimal discriminant: " << to_string(M.discriminant()) << "\n";
  std::cout << "j: " << to_string(M.j()) << "\n";
  std::cout << "bad primes:";
  if (a.reduction.primes.empty()) std::cout << " none";
  for (const auto& bp : a.reduction.primes)
    std::cout << " " << bp.p.str() << "("
              << (bp.kind == ReductionKind::Multiplicative ? "multiplicative" : "additive") << ", "
              << (bp.stable ? "stable" : "unstable") << ")";
  std::cout << "\n";
  std::cout << "N0: " << a.reduction.n0.str() << "  N_st: " << a.reduction.n_stable.str()
            << "  N_uns: " << a.reduction.n_unstable.str() << "\n";
  std::cout << "semistable: " << (a.reduction.semistable ? "true" : "false") << "\n";
  const auto& tau = a.faltings.tau.value;
  std::cout << "tau: " << show(tau.re()) << " + " << show(tau.im()) << "i\n";
  std::cout << "rho: " << show(injectivity_diameter(a.faltings.tau)) << "\n";
  std::cout << "h_F+: " << show(a.faltings.value) << "\n";
  std::cout << "rank: " << a.rank << "\n";
  for (std::size_t i = 0; i < a.generators.size(); ++i)
    std::cout << "  P" << i + 1 << " = " << to_string(a.generators[i]) << "  h_x = " << show(a.heights[i]) << "\n";
  std::cout << "Reg: " << show(a.basis.regulator) << "\n";
  std::cout << "# " << kHeightNormalization << "\n";
  return 0;
}

template <class Real>
int cmd_verify(const Corpus& corpus, const LedgerOptions& opt, ReportFormat format, int bits,
               const std::string& out_path) {
  auto rows = run_ledger<Real>(corpus, opt);
  ReportHeader header;
  header.precision_bits = bits;
  const std::string text = render(format, header, rows);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + out_path + "'");
    out << text;
  }
  return any_failure(rows) ? 1 : 0;
}

using Float34 = mp::number<mp::cpp_bin_float<34>>;

template <class Real>
int mantissa_bits() {
  return std::numeric_limits<Real>::digits;
}

// Smallest supported working precision covering the request.
template <class F>
int with_precision(int bits, F&& f) {
  if (bits <= mantissa_bits<long double>()) return f(static_cast<long double*>(nullptr), mantissa_bits<long double>());
  if (bits <= mantissa_bits<Float34>()) return f(static_cast<Float34*>(nullptr), mantissa_bits<Float34>());
  if (bits <= mantissa_bits<mp::cpp_bin_float_50>())
    return f(static_cast<mp::cpp_bin_float_50*>(nullptr), mantissa_bits<mp::cpp_bin_float_50>());
  if (bits <= mantissa_bits<mp::cpp_bin_float_100>())
    return f(static_cast<mp::cpp_bin_float_100*>(nullptr), mantissa_bits<mp::cpp_bin_float_100>());
  throw UsageError("--precision above " + std::to_string(mantissa_bits<mp::cpp_bin_float_100>()) +
                   " bits is not supported");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic invariants of number fields and elliptic curves"};
  app.require_subcommand(1);
  std::string corpus_path = ARINV_DEFAULT_CORPUS;
  int bits = 64;
  long double tol = 1e-6L;

  auto* field = app.add_subcommand("field", "invariants of a corpus number field");
  std::string field_label;
  field->add_option("label", field_label)->required();
  field->add_option("--corpus", corpus_path, "corpus file");
  field->add_option("--precision", bits, "working precision in bits");

  auto* curve = app.add_subcommand("curve", "invariants of a corpus elliptic curve");
  std::string curve_label;
  curve->add_option("label", curve_label)->required();
  curve->add_option("--corpus", corpus_path, "corpus file");
  curve->add_option("--precision", bits, "working precision in bits");
  curve->add_option("--tol", tol, "height tolerance");

  auto* verify = app.add_subcommand("verify", "run every ledger check over the corpus");
  std::string checks, format = "text", out_path;
  long double northcott = 2.0L;
  verify->add_option("--corpus", corpus_path, "corpus file");
  verify->add_option("--checks", checks, "comma-separated check families or ids");
  verify->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  verify->add_option("--out", out_path, "write the report here instead of stdout");
  verify->add_option("--tol", tol, "height tolerance (also the cross-check tolerance)");
  verify->add_option("--precision", bits, "working precision in bits");
  verify->add_option("--northcott", northcott, "bound B of the Northcott scan");

  auto* family = app.add_subcommand("family", "emit corpus records for a curve family");
  std::string family_name;
  long long pmax = 0;
  family->add_option("name", family_name)->required()->check(CLI::IsMember({"ep"}));
  family->add_option("--pmax", pmax, "largest prime")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (bits < 1) throw UsageError("--precision must be positive");
    if (!(tol > 0)) throw UsageError("--tol must be positive");
    if (*family) {
      bool first = true;
      for (const auto& r : ep_family(pmax)) {
        CurveEntry c{r.label, r.a, r.rank, r.generators};
        std::cout << (first ? "" : "\n") << emit_curve(c);
        first = false;
      }
      return 0;
    }
    const Corpus corpus = parse_corpus(corpus_path);
    HeightOptions hopt;
    hopt.tol = tol;
    if (*field)
      return with_precision(bits, [&](auto* tag, int) { return cmd_field<std::remove_pointer_t<decltype(tag)>>(corpus, field_label); });
    if (*curve)
      return with_precision(bits, [&](auto* tag, int) {
        return cmd_curve<std::remove_pointer_t<decltype(tag)>>(corpus, curve_label, hopt);
      });
    LedgerOptions opt;
    opt.height = hopt;
    opt.crosscheck_tol = tol;
    opt.northcott_bound = northcott;
    if (!checks.empty())
      for (const auto& c : detail::split(checks, ','))
        if (!c.empty()) opt.only.push_back(c);
    const ReportFormat f = format == "csv" ? ReportFormat::Csv : format == "json" ? ReportFormat::Json : ReportFormat::Text;
    return with_precision(bits, [&](auto* tag, int used) {
      return cmd_verify<std::remove_pointer_t<decltype(tag)>>(corpus, opt, f, used, out_path);
    });
  } catch (const UsageError& e) {
    std::cerr << "inv: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "inv: " << e.what() << "\n";
    const auto k = e.kind();
    const bool usage = k == ErrorKind::ParseError || k == ErrorKind::UnknownLabel || k == ErrorKind::DuplicateLabel ||
                       k == ErrorKind::DanglingSubfieldRef;
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "inv: " << e.what() << "\n";
    return 1;
  }
}
