// Acceptance suite: one PASS/FAIL line per criterion, then a total.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qstokes/suites.hpp"

using namespace qstokes;

namespace {

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0: none
  std::function<std::vector<CheckReport>()> run;
  std::function<std::string(const std::vector<CheckReport>&)> extra = {};  // empty string: ok
};

std::string tolerances(const std::vector<CheckReport>& rs) {
  double lo = 1e300, hi = 0.0;
  for (const auto& r : rs) lo = std::min(lo, r.tol), hi = std::max(hi, r.tol);
  char buf[64];
  if (lo == hi) std::snprintf(buf, sizeof buf, "%.0e", lo);
  else std::snprintf(buf, sizeof buf, "%.0e..%.0e", lo, hi);
  return buf;
}

}  // namespace

int main() {
  const SuiteOptions o;
  const std::vector<Criterion> criteria{
      {1, "theta triple-product equivalence", 5.0, [&] { return verify_triple_product(o); },
       [](const std::vector<CheckReport>& r) { return r.size() == 1000 ? "" : "expected 1000 samples"; }},
      {2, "Borel-Laplace round trip", 10.0, [&] { return verify_roundtrip(o); },
       [](const std::vector<CheckReport>& r) {
         for (const auto& x : r) {
           if (x.check == "roundtrip/one") return "";
         }
         return "unit identity missing";
       }},
      {3, "Slater three-term formula", 0.0, [&] { return verify_slater(o); }},
      {4, "degenerate Slater continuation", 0.0, [&] { return verify_lemma_ni(o); }},
      {5, "Watson two-term formula", 0.0, [&] { return verify_watson(o); }},
      {6, "3f1 connection formula", 30.0, [&] { return verify_main(o); },
       [](const std::vector<CheckReport>& r) { return r.size() == 25 ? "" : "expected 5 x 5 checks"; }},
      {7, "Stokes-coefficient ellipticity", 0.0, [&] { return verify_elliptic(o); }},
      {8, "q-difference equation residuals", 0.0, [&] { return verify_residual(o); }},
      {9, "formal coefficient recurrences", 0.0, [&] { return verify_recurrence(o); }},
      {10, "q -> 1 limits", 60.0, [&] { return verify_limits(o); },
       [](const std::vector<CheckReport>& r) {
         const CheckReport* last = nullptr;
         for (const auto& x : r) {
           if (x.check == "limit/f31") last = &x;
         }
         return last && last->rel_err <= 5e-2 ? "" : "final limit scan point above 5e-2";
       }},
  };

  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckReport> reports;
    std::string problem;
    try {
      reports = c.run();
    } catch (const std::exception& e) {
      problem = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    long failed = 0;
    for (const auto& r : reports) failed += r.passed ? 0 : 1;
    if (problem.empty() && failed) problem = std::to_string(failed) + " check(s) failed";
    if (problem.empty() && c.extra) problem = c.extra(reports);
    if (problem.empty() && c.time_limit_s > 0 && secs > c.time_limit_s) problem = "runtime limit exceeded";
    const bool ok = problem.empty();
    failures += ok ? 0 : 1;
    std::printf("%s  criterion %2d  %-34s checks=%-5zu max_rel_err=%.2e tol=%s time=%.2fs", ok ? "PASS" : "FAIL", c.id,
                c.name.c_str(), reports.size(), max_rel_err(reports), reports.empty() ? "-" : tolerances(reports).c_str(),
                secs);
    if (c.time_limit_s > 0) std::printf(" (limit %.0fs)", c.time_limit_s);
    if (!ok) std::printf("  [%s]", problem.c_str());
    std::printf("\n");
    if (!ok) {
      for (const auto& r : reports) {
        if (!r.passed) std::printf("      failed: %s rel_err=%.3e tol=%.1e\n", r.check.c_str(), r.rel_err, r.tol);
      }
    }
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool total_ok = total < 120.0;
  std::printf("%s  total  %d/%zu criteria passed, %.2fs (limit 120s)\n", failures == 0 && total_ok ? "PASS" : "FAIL",
              static_cast<int>(criteria.size()) - failures, criteria.size(), total);
  return failures == 0 && total_ok ? 0 : 1;
}
