// Acceptance suite: runs every top-level criterion at its stated scale and
// prints one PASS/FAIL line per criterion. Exits with the number of failures.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include "bispan/commands.hpp"
#include "bispan/suites.hpp"

using namespace bispan;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<SuiteReport()> run;
};

SuiteReport golden_cli_report() {
  SuiteReport rep;
  rep.name = "cli-goldens";
  const std::string fx = BISPAN_FIXTURE_DIR;
  struct Golden {
    std::vector<std::string> args;
    std::string expected;
  };
  const std::vector<Golden> goldens = {
      {{"compose", "--input", fx + "/bispans.json", "doubling", "squaring"}, "4*x^2\n"},
      {{"cosets", "--input", fx + "/s3.json", "--group", "S3", "H", "K", "L"},
       "rep\tstabilizer\torbit_size\n0\tC2\t3\n2\te\t6\n"},
      {{"norm", "--input", fx + "/c2.json", "--group", "C2", "e", "full", "--element", "2"},
       "2·[C2/C2] + 1·[C2/e]\n"},
      {{"eval", "--input", fx + "/bispans.json", "mixed", "--semiring", "tropical", "--at",
        "3,4"},
       "4\n"},
  };
  for (const auto& g : goldens) {
    std::ostringstream out1, err1, out2, err2;
    int c1 = run_cli(g.args, out1, err1);
    int c2 = run_cli(g.args, out2, err2);
    ++rep.cases;
    if (c1 != 0 || c2 != 0) {
      rep.fail({"golden command exited nonzero: " + g.args[0] + " (" + err1.str() + ")", {}, {}});
      return rep;
    }
    if (out1.str() != out2.str()) {
      rep.fail({"golden command is not byte-stable across runs: " + g.args[0], {}, {}});
      return rep;
    }
    if (out1.str() != g.expected) {
      rep.fail({"golden mismatch for " + g.args[0] + ": got \"" + out1.str() + "\"", {}, {}});
      return rep;
    }
  }
  return rep;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria;

  criteria.push_back({1, "distributivity universal property (carriers <= 3, probes <= 3)", [] {
                        SuiteParams p;
                        p.max_size = 3;
                        p.probe_bound = 3;
                        return suite_universal_property(p);
                      }});
  criteria.push_back({2, "section-count formula on 1000 random pairs (carriers <= 6)", [] {
                        SuiteParams p;
                        p.max_size = 6;
                        p.samples = 1000;
                        p.seed = 2;
                        return suite_section_count(p);
                      }});
  criteria.push_back({3, "bispan associativity (exhaustive <= 2, 500 random <= 4, FinSet and C2)",
                      [] {
                        SuiteParams p;
                        p.max_size = 4;
                        p.samples = 500;
                        p.seed = 3;
                        SuiteReport plain = suite_associativity(p);
                        if (!plain.pass) return plain;
                        SuiteParams pg = p;
                        pg.group = Group::cyclic(2);
                        SuiteReport g = suite_associativity(pg);
                        g.cases += plain.cases;
                        g.resampled += plain.resampled;
                        return g;
                      }});
  criteria.push_back({4, "oracle completeness (<= 3) and semiring functoriality", [] {
                        SuiteParams p;
                        p.max_size = 3;
                        p.samples = 2000;
                        p.seed = 4;
                        SuiteReport comp = suite_oracle_completeness(p);
                        if (!comp.pass) return comp;
                        SuiteReport fun = suite_functoriality(p);
                        fun.cases += comp.cases;
                        return fun;
                      }});
  criteria.push_back({5, "double-coset formula for C2, C3, C4, V4, S3", [] {
                        SuiteParams p;
                        return suite_double_coset(p);
                      }});
  criteria.push_back({6, "C2 Burnside norm closed form, n = 0..6, both routes", [] {
                        SuiteParams p;
                        p.max_size = 6;
                        return suite_norm(p);
                      }});
  criteria.push_back({7, "Tambara functoriality over the orbit sites of C2 and S3", [] {
                        SuiteParams p;
                        return suite_tambara_functoriality(p);
                      }});
  criteria.push_back({8, "finite-difference degree = max fibre size (carriers <= 5)", [] {
                        SuiteParams p;
                        p.max_size = 5;
                        return suite_degree(p);
                      }});
  criteria.push_back({9, "binomial splitting identity (fibres <= 4, nat and int probes)", [] {
                        SuiteParams p;
                        p.max_size = 4;
                        return suite_splitting(p);
                      }});
  criteria.push_back({10, "fold-distributivity structure (carriers <= 5)", [] {
                        SuiteParams p;
                        p.max_size = 5;
                        return suite_splitting(p);
                      }});
  criteria.push_back({11, "degree axioms and the coproduct block formula (FinSet <= 4, C2 <= 6)",
                      [] {
                        SuiteParams p;
                        p.max_size = 4;
                        SuiteReport plain = suite_degree_axioms(p);
                        if (!plain.pass) return plain;
                        SuiteParams pg;
                        pg.max_size = 6;
                        pg.group = Group::cyclic(2);
                        SuiteReport g = suite_degree_axioms(pg);
                        g.cases += plain.cases;
                        return g;
                      }});
  criteria.push_back({12, "pasted distributivity diagrams pass the checker (carriers <= 3)", [] {
                        SuiteParams p;
                        p.max_size = 3;
                        p.probe_bound = 3;
                        return suite_pasting(p);
                      }});
  criteria.push_back({13, "CLI goldens are byte-identical across runs", golden_cli_report});

  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep = c.run();
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    std::cout << (rep.pass ? "PASS" : "FAIL") << " " << std::setw(2) << c.number << ". "
              << c.title << " (cases=" << rep.cases;
    if (rep.resampled) std::cout << ", resampled=" << rep.resampled;
    std::cout << ", " << std::fixed << std::setprecision(1) << secs << "s)\n";
    if (!rep.pass) {
      ++failures;
      for (const auto& f : rep.failures) std::cout << "     " << f.description << "\n";
      if (!rep.note.empty()) std::cout << "     note: " << rep.note << "\n";
    }
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures;
}
