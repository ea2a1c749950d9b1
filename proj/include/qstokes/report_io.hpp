#pragma once

/**
 * @file report_io.hpp
 * @brief JSON-lines, CSV and plain-text serialization of CheckReport.
 *
 * Complex values are written as {"re": "...", "im": "..."} with each
 * component as a decimal string. Components representable as normal binary64
 * use "%.17g" and read back exactly; others use a mantissa in [1, 10) with an
 * explicit exponent ("3.1415926535897931e+1234") and read back to within a
 * few units in the 17th digit. Both formats parse through the same component
 * reader, so a report read back from JSON equals the same report read back
 * from CSV.
 */

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qstokes/error.hpp"
#include "qstokes/report.hpp"

namespace qstokes {

enum class Format { json, csv, text };

inline Format parse_format(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw Error(ErrorKind::invalid_argument, "unknown format '" + std::string(s) + "' (expected json, csv or text)");
}

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Decimal string of m * 2^e for a real mantissa m.
inline std::string format_component(double m, std::int64_t e) {
  if (m == 0.0) return std::signbit(m) ? "-0" : "0";
  if (!std::isfinite(m)) return format_double(m);
  if (e > -1000 && e < 1000) {
    const double v = std::ldexp(m, static_cast<int>(e));
    if (std::isnormal(v)) return format_double(v);
  }
  const long double l10 = std::log10(std::fabs(static_cast<long double>(m))) +
                          static_cast<long double>(e) * 0.30102999566398119521373889472449302677L;
  long double E = std::floor(l10);
  long double M = std::pow(10.0L, l10 - E);
  if (M >= 10.0L) {
    M /= 10.0L;
    E += 1.0L;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%.16Lfe%+lld", m < 0 ? "-" : "", M, static_cast<long long>(E));
  return buf;
}

inline ScaledComplex parse_component(const std::string& s, bool imaginary) {
  auto fail = [&] { return Error(ErrorKind::invalid_argument, "malformed decimal component '" + s + "'"); };
  if (s.empty()) throw fail();
  const std::size_t epos = s.find_first_of("eE");
  long long exp10 = 0;
  if (epos != std::string::npos) {
    char* end = nullptr;
    exp10 = std::strtoll(s.c_str() + epos + 1, &end, 10);
    if (*end != '\0' || end == s.c_str() + epos + 1) throw fail();
  }
  auto as_part = [imaginary](double v) { return ScaledComplex(imaginary ? cplx(0.0, v) : cplx(v, 0.0)); };
  {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (*end != '\0' || end == s.c_str()) throw fail();
    if (std::isnormal(v) || (v == 0.0 && exp10 > -300) || (!std::isfinite(v) && exp10 < 300)) return as_part(v);
  }
  const std::string mant = s.substr(0, epos);
  char* end = nullptr;
  const long double M = std::strtold(mant.c_str(), &end);
  if (*end != '\0' || end == mant.c_str()) throw fail();
  if (M == 0.0L) return as_part(0.0);
  const long double l2 = std::log2(std::fabs(M)) + static_cast<long double>(exp10) * 3.32192809488736234787031942948939018L;
  const long double e2 = std::floor(l2);
  const double frac = static_cast<double>(std::exp2(l2 - e2)) * (M < 0 ? -1.0 : 1.0);
  return ScaledComplex::from_parts(imaginary ? cplx(0.0, frac) : cplx(frac, 0.0), static_cast<std::int64_t>(e2));
}

inline std::string format_re(const ScaledComplex& z) { return format_component(z.mantissa().real(), z.exp2()); }
inline std::string format_im(const ScaledComplex& z) { return format_component(z.mantissa().imag(), z.exp2()); }

/// Rebuilds the shared-exponent form directly; ScaledComplex addition would
/// drop a component more than 2^64 below the other.
inline ScaledComplex parse_complex(const std::string& re, const std::string& im) {
  const ScaledComplex r = parse_component(re, false), i = parse_component(im, true);
  if (r.is_zero()) return i;
  if (i.is_zero()) return r;
  const std::int64_t e = std::max(r.exp2(), i.exp2());
  auto shift = [e](double m, std::int64_t from) {
    return e - from > 2000 ? 0.0 : std::ldexp(m, static_cast<int>(from - e));
  };
  return ScaledComplex::from_parts({shift(r.mantissa().real(), r.exp2()), shift(i.mantissa().imag(), i.exp2())}, e);
}

inline double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw Error(ErrorKind::invalid_argument, "malformed number '" + s + "'");
  return v;
}

using ojson = nlohmann::ordered_json;

inline ojson complex_json(const ScaledComplex& z) { return ojson{{"re", format_re(z)}, {"im", format_im(z)}}; }

inline ScaledComplex complex_from_json(const ojson& j) {
  return parse_complex(j.at("re").get<std::string>(), j.at("im").get<std::string>());
}

inline ojson number_json(double v) { return std::isfinite(v) ? ojson(v) : ojson(format_double(v)); }

inline double number_from_json(const ojson& j) {
  return j.is_string() ? parse_double(j.get<std::string>()) : j.get<double>();
}

inline ojson labeled_json(const std::vector<LabeledValue>& values) {
  ojson arr = ojson::array();
  for (const auto& v : values) {
    arr.push_back(ojson{{"label", v.label}, {"re", format_re(v.value)}, {"im", format_im(v.value)}});
  }
  return arr;
}

inline std::vector<LabeledValue> labeled_from_json(const ojson& arr) {
  std::vector<LabeledValue> out;
  for (const auto& v : arr) out.push_back({v.at("label").get<std::string>(), complex_from_json(v)});
  return out;
}

// CSV cells holding label lists: "label=re:im;label=re:im", labels percent-escaped.
inline std::string escape_label(std::string_view s) {
  std::string out;
  for (const char c : s) {
    if (c == '%' || c == ';' || c == '=' || c == ':') {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", static_cast<unsigned char>(c));
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

inline std::string unescape_label(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      out += static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

inline std::string labeled_cell(const std::vector<LabeledValue>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += escape_label(values[i].label) + '=' + format_re(values[i].value) + ':' + format_im(values[i].value);
  }
  return out;
}

inline std::vector<LabeledValue> labeled_from_cell(const std::string& cell) {
  std::vector<LabeledValue> out;
  if (cell.empty()) return out;
  std::size_t start = 0;
  while (start <= cell.size()) {
    std::size_t end = cell.find(';', start);
    if (end == std::string::npos) end = cell.size();
    const std::string item = cell.substr(start, end - start);
    const std::size_t eq = item.find('=');
    const std::size_t colon = item.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos) {
      throw Error(ErrorKind::invalid_argument, "malformed labeled value '" + item + "'");
    }
    out.push_back({unescape_label(item.substr(0, eq)),
                   parse_complex(item.substr(eq + 1, colon - eq - 1), item.substr(colon + 1))});
    start = end + 1;
  }
  return out;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  if (quoted) throw Error(ErrorKind::invalid_argument, "unterminated quoted CSV field");
  return cells;
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader = "check,inputs,lhs_re,lhs_im,rhs_re,rhs_im,rel_err,tol,passed,diagnostics";

inline std::string to_json_line(const CheckReport& r) {
  using detail::ojson;
  ojson j;
  j["check"] = r.check;
  j["inputs"] = detail::labeled_json(r.inputs);
  j["lhs"] = detail::complex_json(r.lhs);
  j["rhs"] = detail::complex_json(r.rhs);
  j["rel_err"] = detail::number_json(r.rel_err);
  j["tol"] = detail::number_json(r.tol);
  j["passed"] = r.passed;
  j["diagnostics"] = detail::labeled_json(r.diagnostics);
  return j.dump();
}

inline CheckReport from_json_line(const std::string& line) {
  try {
    const auto j = detail::ojson::parse(line);
    CheckReport r;
    r.check = j.at("check").get<std::string>();
    r.inputs = detail::labeled_from_json(j.at("inputs"));
    r.lhs = detail::complex_from_json(j.at("lhs"));
    r.rhs = detail::complex_from_json(j.at("rhs"));
    r.rel_err = detail::number_from_json(j.at("rel_err"));
    r.tol = detail::number_from_json(j.at("tol"));
    r.passed = j.at("passed").get<bool>();
    r.diagnostics = detail::labeled_from_json(j.at("diagnostics"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_argument, std::string("malformed JSON report: ") + e.what());
  }
}

inline std::string to_csv_row(const CheckReport& r) {
  using namespace detail;
  const std::vector<std::string> cells{csv_quote(r.check),       csv_quote(labeled_cell(r.inputs)),
                                       format_re(r.lhs),         format_im(r.lhs),
                                       format_re(r.rhs),         format_im(r.rhs),
                                       format_double(r.rel_err), format_double(r.tol),
                                       r.passed ? "true" : "false", csv_quote(labeled_cell(r.diagnostics))};
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

inline CheckReport from_csv_row(const std::string& line) {
  using namespace detail;
  const std::vector<std::string> c = csv_split(line);
  if (c.size() != 10) throw Error(ErrorKind::invalid_argument, "CSV report row must have 10 fields");
  if (c[8] != "true" && c[8] != "false") throw Error(ErrorKind::invalid_argument, "CSV passed field must be true/false");
  CheckReport r;
  r.check = c[0];
  r.inputs = labeled_from_cell(c[1]);
  r.lhs = parse_complex(c[2], c[3]);
  r.rhs = parse_complex(c[4], c[5]);
  r.rel_err = parse_double(c[6]);
  r.tol = parse_double(c[7]);
  r.passed = c[8] == "true";
  r.diagnostics = labeled_from_cell(c[9]);
  return r;
}

inline std::string to_text_line(const CheckReport& r) {
  std::string line = std::string(r.passed ? "PASS " : "FAIL ") + r.check + "  rel_err=" +
                     detail::format_double(r.rel_err) + "  tol=" + detail::format_double(r.tol);
  for (const auto& in : r.inputs) {
    line += "  " + in.label + "=" + detail::format_re(in.value);
    if (in.value.mantissa().imag() != 0.0) line += (in.value.mantissa().imag() < 0 ? "" : "+") + detail::format_im(in.value) + "i";
  }
  return line;
}

/// Writes reports in the given format; CSV always starts with the header.
inline void write_reports(std::ostream& os, const std::vector<CheckReport>& reports, Format f) {
  if (f == Format::csv) os << kCsvHeader << '\n';
  for (const auto& r : reports) {
    switch (f) {
      case Format::json: os << to_json_line(r) << '\n'; break;
      case Format::csv: os << to_csv_row(r) << '\n'; break;
      case Format::text: os << to_text_line(r) << '\n'; break;
    }
  }
}

/// Reads JSON-lines or CSV (with header) back into reports. Blank lines are skipped.
inline std::vector<CheckReport> read_reports(std::istream& is, Format f) {
  if (f == Format::text) throw Error(ErrorKind::invalid_argument, "text output is not machine-readable");
  std::vector<CheckReport> out;
  std::string line;
  bool header = f == Format::csv;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw Error(ErrorKind::invalid_argument, "unexpected CSV header");
      header = false;
      continue;
    }
    out.push_back(f == Format::json ? from_json_line(line) : from_csv_row(line));
  }
  return out;
}

}  // namespace qstokes
