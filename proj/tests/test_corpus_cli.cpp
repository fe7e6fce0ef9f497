#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "arinv/corpus.hpp"
#include "arinv/report.hpp"

using namespace arinv;
namespace fs = std::filesystem;

namespace {

const char* kSample = R"(# two records
field Q_sqrt2
poly = -2 0 1
units = 1 1

curve 37a
a = 0 0 1 -1 0
rank = 1
gens = 0,0
)";

ErrorKind parse_error_kind(const std::string& text) {
  try {
    parse_corpus_text(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

std::string parse_error_message(const std::string& text) {
  try {
    parse_corpus_text(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "arinv-tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(INV_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Corpus, ParsesSample) {
  Corpus c = parse_corpus_text(kSample);
  ASSERT_EQ(c.fields.size(), 1u);
  ASSERT_EQ(c.curves.size(), 1u);
  EXPECT_EQ(c.fields[0].label, "Q_sqrt2");
  EXPECT_EQ(c.fields[0].poly, (IntPolynomial{-2, 0, 1}));
  ASSERT_TRUE(c.fields[0].units.has_value());
  EXPECT_EQ((*c.fields[0].units)[0], (std::vector<Rational>{1, 1}));
  EXPECT_EQ(c.curves[0].rank, 1);
  EXPECT_EQ(c.curves[0].gens[0], Point::affine(0, 0));
  EXPECT_NE(c.curve("37a"), nullptr);
  EXPECT_EQ(c.curve("11a"), nullptr);
}

TEST(Corpus, CommentLinesDoNotCloseRecords) {
  Corpus c = parse_corpus_text("curve E\na = 0 0 1 -1 0\n# note\nrank = 0\n");
  EXPECT_EQ(c.curves[0].rank, 0);
}

TEST(Corpus, RationalGenerators) {
  Corpus c = parse_corpus_text("curve E\na = 0 0 1 -1 0\nrank = 1\ngens = 1/4,-5/8\n");
  EXPECT_EQ(c.curves[0].gens[0], Point::affine(Rational(1, 4), Rational(-5, 8)));
}

TEST(Corpus, Errors) {
  EXPECT_EQ(parse_error_kind("field K\npoly = -2 0 1\ncolour = red\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("field K\npoly = -2 0 1\npoly = -3 0 1\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("poly = -2 0 1\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("field K\npoly = -2 0 1\n\nw = 2\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("surface S\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("curve E\nrank = 0\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("curve E\na = 0 0 1 -1\nrank = 0\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("curve E\na = 0 0 1 -1 0\nrank = -1\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("curve E\na = 0 0 1 -1 0\nrank = 1\ngens = 0\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("field K\npoly = -2 0 x\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("field K\npoly = 0 1\n\nfield K\npoly = 0 1\n"), ErrorKind::DuplicateLabel);
  EXPECT_EQ(parse_error_kind("curve E\na = 0 0 1 -1 0\nrank = 0\n\ncurve E\na = 0 0 1 -1 0\nrank = 0\n"),
            ErrorKind::DuplicateLabel);
  EXPECT_EQ(parse_error_kind("field K\npoly = -2 0 1\nsubfield = Q\n"), ErrorKind::DanglingSubfieldRef);
}

TEST(Corpus, ErrorsCarryLineNumbers) {
  EXPECT_NE(parse_error_message("field K\npoly = -2 0 1\n\n\ncolour = red\n").find("line 5"), std::string::npos);
}

TEST(Corpus, SameLabelAcrossKindsIsAllowed) {
  Corpus c = parse_corpus_text("field X\npoly = 0 1\n\ncurve X\na = 0 0 1 -1 0\nrank = 0\n");
  EXPECT_EQ(c.fields.size(), 1u);
  EXPECT_EQ(c.curves.size(), 1u);
}

TEST(Corpus, RoundTrip) {
  Corpus c = parse_corpus(ARINV_DEFAULT_CORPUS);
  const std::string text = emit_corpus(c);
  EXPECT_EQ(parse_corpus_text(text), c);
  EXPECT_EQ(emit_corpus(parse_corpus_text(text)), text);
}

TEST(Corpus, BundledRecordsBuild) {
  Corpus c = parse_corpus(ARINV_DEFAULT_CORPUS);
  EXPECT_GE(c.fields.size(), 12u);
  for (const auto& f : c.fields) {
    auto rec = build_field_record<long double>(f);
    EXPECT_GT(record_regulator(rec), 0.0L) << f.label;
  }
  for (const auto& e : c.curves) {
    const WeierstrassCurve E(e.a);
    for (const auto& P : e.gens) EXPECT_TRUE(on_curve(E, P)) << e.label;
  }
}

TEST(Corpus, SuppliedInvariantsAreValidated) {
  EXPECT_THROW(build_field_record<long double>(parse_corpus_text("field K\npoly = -2 0 1\ndisc = 5\n").fields[0]),
               Error);
  EXPECT_THROW(build_field_record<long double>(parse_corpus_text("field K\npoly = -2 0 1\nunits = 3 1\n").fields[0]),
               Error);
}

TEST(Corpus, PellUnitsWhenOmitted) {
  auto rec = build_field_record<long double>(parse_corpus_text("field K\npoly = -5 0 1\n").fields[0]);
  EXPECT_NEAR(static_cast<double>(record_regulator(rec)), 0.4812118250596, 1e-12);
}

TEST(Report, CsvShape) {
  std::vector<CheckResult> rows{make_check("a", "x,y", 1, 0, "say \"hi\""), make_report("b", "z", 0, 0, "")};
  const std::string csv = render_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "check_id,object,lhs,rhs,margin,verdict,note");
  EXPECT_NE(csv.find("\"x,y\""), std::string::npos);
  EXPECT_NE(csv.find("\"say \"\"hi\"\"\""), std::string::npos);
  EXPECT_NE(csv.find("report-only"), std::string::npos);
}

TEST(Report, JsonParses) {
  std::vector<CheckResult> rows{make_check("a", "x", 1, 0), make_check("b", "y", 0, 1)};
  auto j = nlohmann::json::parse(render_json(ReportHeader{}, rows));
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][1]["verdict"], "fail");
  EXPECT_EQ(j["precision_bits"], 64);
  EXPECT_EQ(j["normalization"], kHeightNormalization);
}

TEST(Report, TextSummary) {
  std::vector<CheckResult> rows{make_check("a", "x", 1, 0), make_check("b", "y", 0, 1)};
  const std::string t = render_text(ReportHeader{}, rows);
  EXPECT_NE(t.find("# 1 pass, 1 fail, 0 report-only"), std::string::npos);
  EXPECT_EQ(t.rfind("# inv ", 0), 0u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("verify"), 0);
  EXPECT_EQ(run("field Q_zeta5"), 0);
  EXPECT_EQ(run("curve 389a"), 0);
  EXPECT_EQ(run("family ep --pmax 100"), 0);
  EXPECT_EQ(run("curve nosuch"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("verify --format yaml"), 2);
  EXPECT_EQ(run("verify --precision 100000"), 2);
  EXPECT_EQ(run("verify --corpus /nonexistent/corpus.txt"), 2);

  const auto bad = scratch("bad.txt");
  write_file(bad, "curve bad\na = 0 1 1 -2 0\nrank = 2\ngens = 0,0\n");
  EXPECT_EQ(run("verify --corpus " + bad.string()), 1);
  const auto broken = scratch("broken.txt");
  write_file(broken, "curve bad\nweird = 1\n");
  EXPECT_EQ(run("verify --corpus " + broken.string()), 2);
}

TEST(Cli, FamilyOutputParses) {
  const auto out = scratch("family.txt");
  const std::string cmd = std::string(INV_BINARY) + " family ep --pmax 100 > " + out.string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  Corpus c = parse_corpus_text(read_file(out));
  EXPECT_EQ(c.curves.size(), 4u);
}

TEST(Cli, VerifyIsDeterministic) {
  const auto a = scratch("a.csv"), b = scratch("b.csv");
  ASSERT_EQ(run("verify --format csv --out " + a.string()), 0);
  ASSERT_EQ(run("verify --format csv --out " + b.string()), 0);
  const std::string x = read_file(a), y = read_file(b);
  EXPECT_FALSE(x.empty());
  EXPECT_EQ(x, y);
}

TEST(Cli, ChecksFilter) {
  const auto out = scratch("filter.csv");
  ASSERT_EQ(run("verify --format csv --checks bost,friedman --out " + out.string()), 0);
  std::istringstream in(read_file(out));
  std::string line;
  std::getline(in, line);
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    EXPECT_TRUE(line.rfind("bost,", 0) == 0 || line.rfind("friedman,", 0) == 0) << line;
  }
  EXPECT_GT(n, 10);
}
