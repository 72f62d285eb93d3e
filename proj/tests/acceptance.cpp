// Runs the benchmark suites and prints one verdict per acceptance criterion.
#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "app/suites.hpp"

namespace {

struct Criterion {
  int id;
  const char* suite;
  const char* title;
};

const Criterion kCriteria[] = {
    {1, "table1", "singularity-order convergence table"},
    {2, "williams", "Williams boundary value problem"},
    {3, "interface", "interface-crack oscillatory exponent"},
    {4, "edge-crack", "edge-crack bimaterial plate SIFs"},
    {5, "center-crack", "center-crack SIFs and T-stress"},
    {6, "strip", "bimaterial strip T-stress ratio"},
    {7, "properties", "property suite"},
    {8, "growth", "crack-growth qualitative behaviour"},
};

}  // namespace

int main() {
  xsbfem::app::SuiteOptions opts;
  opts.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int failed = 0;
  for (const Criterion& c : kCriteria) {
    std::vector<std::string> details;
    bool ok = true;
    try {
      const xsbfem::app::SuiteReport r = xsbfem::app::run_suite(c.suite, opts);
      for (const auto& chk : r.checks) {
        if (chk.informational || chk.pass()) continue;
        ok = false;
        char line[256];
        std::snprintf(line, sizeof line, "%s %s: got %.6g, expected %.6g, %s error %.3g > %.3g",
                      chk.case_name.c_str(), chk.quantity.c_str(), chk.value, chk.reference,
                      chk.absolute ? "absolute" : "relative", chk.error(), chk.tolerance);
        details.emplace_back(line);
      }
      for (const auto& e : r.errors) {
        ok = false;
        details.push_back("error: " + e);
      }
      if (r.checks.empty()) {
        ok = false;
        details.emplace_back("no checks ran");
      }
    } catch (const std::exception& e) {
      ok = false;
      details.push_back(std::string("error: ") + e.what());
    }
    std::printf("%s criterion %d (%s)\n", ok ? "PASS" : "FAIL", c.id, c.title);
    for (const auto& d : details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    failed += !ok;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(kCriteria)) - failed, std::size(kCriteria));
  return failed == 0 ? 0 : 1;
}
