// Runs every acceptance criterion once and prints one line per criterion.
// Exit status is nonzero when any criterion fails.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "heislac/runs.hpp"

using namespace heislac;

namespace {

double scalar_or(const ExperimentReport& r, const std::string& name, double fallback) {
  for (const auto& [k, v] : r.scalars)
    if (k == name) return v;
  return fallback;
}

double total_seconds(const ExperimentReport& r) {
  double s = scalar_or(r, "seconds", -1.0);
  if (s >= 0.0) return s;
  s = 0.0;
  for (const auto& [k, v] : r.scalars)
    if (k.rfind("seconds", 0) == 0) s += v;
  return s;
}

struct Criterion {
  int number;
  double budget_seconds;
  std::function<ExperimentReport()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {1, 120.0, [] { return dichotomy_report(); }},
      {2, 10.0, [] { return measure_decay_report(); }},
      {3, 60.0, [] { return envelope_report(); }},
      {4, 600.0, [] { return opnorm_report(OpNormCheckConfig::standard()); }},
      {5, 600.0, [] { return counterexample_report(CounterexampleRun{}); }},
      {6, 300.0, [] { return gft_report(); }},
      {7, 120.0, [] { return structural_report(); }},
  };
  int failed = 0;
  for (const auto& c : all) {
    ExperimentReport r = c.run();
    const double secs = total_seconds(r);
    r.clause("runtime", secs <= c.budget_seconds, fmt(secs) + " s of " + fmt(c.budget_seconds));
    const bool ok = r.passed();
    failed += !ok;
    std::printf("criterion %d: %s  %s  (%.1f s)\n", c.number, ok ? "PASS" : "FAIL", r.summary().c_str(), secs);
    for (const auto& cl : r.clauses)
      if (!cl.pass) std::printf("    failed clause: %s [%s]\n", cl.name.c_str(), cl.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
