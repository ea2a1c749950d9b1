#include "qstokes/report_io.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "qstokes/suites.hpp"
#include "test_util.hpp"

using namespace qstokes;

namespace {

ScaledComplex random_value(std::mt19937_64& g) {
  const int kind = static_cast<int>(test::uniform(g, 0, 5));
  const cplx m(test::uniform(g, -1, 1), test::uniform(g, -1, 1));
  switch (kind) {
    case 0: return ScaledComplex();
    case 1: return ScaledComplex(cplx(m.real(), 0.0));
    case 2: return ScaledComplex::from_parts(m, static_cast<std::int64_t>(test::uniform(g, -9000, 9000)));
    case 3: return ScaledComplex::from_parts(cplx(0.0, m.imag()), -1070);
    default: return ScaledComplex(m * 1e5);
  }
}

CheckReport random_report(std::mt19937_64& g) {
  CheckReport r;
  r.check = "check/with,comma \"quoted\"";
  r.inputs = {{"q", random_value(g)}, {"odd;label=x:y%", random_value(g)}};
  r.lhs = random_value(g);
  r.rhs = random_value(g);
  r.rel_err = test::uniform(g, 0, 1) < 0.1 ? std::numeric_limits<double>::infinity() : test::uniform(g, 0, 1e-3);
  r.tol = 1e-8;
  r.passed = r.rel_err <= r.tol;
  r.diagnostics = {{"error:Kind: message; with separators", random_value(g)}};
  return r;
}

}  // namespace

TEST(ReportIO, ComponentStrings) {
  EXPECT_EQ(detail::format_component(0.75, 2), "3");
  EXPECT_EQ(detail::format_component(0.0, 0), "0");
  const std::string big = detail::format_component(0.5, 5001);
  EXPECT_NE(big.find("e+1505"), std::string::npos) << big;
  const ScaledComplex back = detail::parse_component(big, false);
  EXPECT_EQ(back.exp2(), 5001);
  EXPECT_NEAR(back.mantissa().real(), 0.5, 1e-15);
  EXPECT_THROW(detail::parse_component("1.0e+abc", false), Error);
  EXPECT_THROW(detail::parse_component("", false), Error);
}

TEST(ReportIO, JsonFieldsAndOrder) {
  CheckReport r = make_report("watson", ScaledComplex(cplx(1.5, -2)), ScaledComplex(cplx(1.5, -2)), 1e-8,
                              {{"x", ScaledComplex(cplx(0.5, 0.25))}});
  const std::string line = to_json_line(r);
  EXPECT_EQ(line,
            R"({"check":"watson","inputs":[{"label":"x","re":"0.5","im":"0.25"}],"lhs":{"re":"1.5","im":"-2"},)"
            R"("rhs":{"re":"1.5","im":"-2"},"rel_err":0.0,"tol":1e-08,"passed":true,"diagnostics":[]})");
}

TEST(ReportIO, CsvHeaderIsFixed) {
  std::ostringstream os;
  write_reports(os, {}, Format::csv);
  EXPECT_EQ(os.str(), std::string(kCsvHeader) + "\n");
}

TEST(ReportIO, JsonAndCsvRoundTripsAgreeProperty) {
  auto g = test::rng(41);
  std::vector<CheckReport> reports;
  for (int i = 0; i < 200; ++i) reports.push_back(random_report(g));
  std::ostringstream js, cs;
  write_reports(js, reports, Format::json);
  write_reports(cs, reports, Format::csv);
  std::istringstream jin(js.str()), cin(cs.str());
  const auto from_json = read_reports(jin, Format::json);
  const auto from_csv = read_reports(cin, Format::csv);
  ASSERT_EQ(from_json.size(), reports.size());
  ASSERT_EQ(from_csv.size(), reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    EXPECT_EQ(from_json[i], from_csv[i]) << i;
    EXPECT_EQ(from_json[i].check, reports[i].check);
    EXPECT_EQ(from_json[i].inputs[1].label, reports[i].inputs[1].label);
    EXPECT_EQ(from_json[i].passed, reports[i].passed);
    EXPECT_LE(relative_difference(from_json[i].lhs, reports[i].lhs), 1e-15);
    EXPECT_LE(relative_difference(from_json[i].inputs[0].value, reports[i].inputs[0].value), 1e-15);
    EXPECT_LE(relative_difference(from_json[i].diagnostics[0].value, reports[i].diagnostics[0].value), 1e-15);
  }
}

TEST(ReportIO, InRangeValuesAreExact) {
  auto g = test::rng(43);
  for (int i = 0; i < 500; ++i) {
    const cplx z(test::uniform(g, -1e6, 1e6), std::ldexp(test::uniform(g, -1, 1), static_cast<int>(test::uniform(g, -1020, 1000))));
    const ScaledComplex s(z);
    EXPECT_TRUE(detail::parse_complex(detail::format_re(s), detail::format_im(s)) == s);
  }
}

TEST(ReportIO, SuiteOutputIsDeterministic) {
  SuiteOptions o;
  o.samples = 5;
  std::ostringstream a, b;
  write_reports(a, verify_main(o), Format::json);
  write_reports(b, verify_main(o), Format::json);
  EXPECT_EQ(a.str(), b.str());
  std::istringstream in(a.str());
  const auto back = read_reports(in, Format::json);
  std::ostringstream c;
  write_reports(c, back, Format::json);
  EXPECT_EQ(c.str(), a.str());
}

TEST(ReportIO, MalformedInput) {
  std::istringstream bad_json("{\"check\": 1}\n");
  EXPECT_THROW(read_reports(bad_json, Format::json), Error);
  std::istringstream bad_header("a,b\n");
  EXPECT_THROW(read_reports(bad_header, Format::csv), Error);
  std::istringstream short_row(std::string(kCsvHeader) + "\nx,y\n");
  EXPECT_THROW(read_reports(short_row, Format::csv), Error);
  EXPECT_THROW(parse_format("xml"), Error);
}

TEST(ReportIO, ReportHelpers) {
  const CheckReport pass = make_scalar_report("r", 1e-9, 1e-7);
  const CheckReport fail = make_scalar_report("r", 1e-5, 1e-7);
  EXPECT_TRUE(pass.passed);
  EXPECT_FALSE(fail.passed);
  EXPECT_FALSE(all_passed({pass, fail}));
  EXPECT_EQ(max_rel_err({pass, fail}), 1e-5);
  EXPECT_EQ(to_text_line(pass).rfind("PASS r", 0), 0u);
}
