#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bispan/bispan.hpp"
#include "bispan/enumerate.hpp"
#include "bispan/eval.hpp"
#include "bispan/tambara.hpp"

namespace bispan {

struct SuiteFailure {
  std::string description;
  std::vector<std::pair<std::string, Mor>> mors;
  std::vector<std::pair<std::string, Bispan>> bispans;
};

struct SuiteReport {
  std::string name;
  bool pass = true;
  long long cases = 0;
  long long resampled = 0;
  std::string note;
  std::vector<SuiteFailure> failures;  // first counterexample only

  void fail(SuiteFailure f) {
    pass = false;
    if (failures.empty()) failures.push_back(std::move(f));
  }
};

struct SuiteParams {
  int max_size = 3;
  int probe_bound = 3;
  long long samples = 500;
  std::uint64_t seed = 1;
  GroupPtr group;  // null: plain finite sets
};

/// Exhaustive check of the distributivity universal property for all
/// composable (l, f) with carriers <= max_size, probes <= probe_bound.
SuiteReport suite_universal_property(const SuiteParams& p);

/// Section-count formula |w_k| = prod of l-fibre sizes over the f-fibre, on
/// `samples` random composable pairs with carriers <= max_size.
SuiteReport suite_section_count(const SuiteParams& p);

/// Bispan associativity up to isomorphism: exhaustive for carriers <= 2 plus
/// `samples` random triples with carriers <= max_size (triples whose
/// composites would materialize more than the size cap are redrawn and
/// counted in `resampled`).
SuiteReport suite_associativity(const SuiteParams& p);

/// Unit laws for bispan composition, exhaustive at small carriers.
SuiteReport suite_unit_laws(const SuiteParams& p);

/// Semiring functoriality of compiled circuits for all composable pairs with
/// carriers <= max_size, over nat, int, bool and tropical.
SuiteReport suite_functoriality(const SuiteParams& p);

/// The polynomial canonical form is a complete isomorphism invariant:
/// bucket-exhaustive at carriers <= max_size, with a brute-force bijection
/// search as the independent oracle at carriers <= 2.
SuiteReport suite_oracle_completeness(const SuiteParams& p);

/// Double-coset formula for every subgroup triple H, K <= L of the given
/// group (or of the standard five desk groups when none is given).
SuiteReport suite_double_coset(const SuiteParams& p);

/// C2 Burnside norm closed form against section enumeration and the marks
/// route, n = 0..6, plus norm multiplicativity samples.
SuiteReport suite_norm(const SuiteParams& p);

/// Measured finite-difference degree of pure-norm circuits equals the
/// maximal fibre size, all plain maps with carriers <= max_size.
SuiteReport suite_degree(const SuiteParams& p);

/// Degree-structure axioms (decomposition, base change, additivity) and the
/// fold/coproduct block formula, exhaustive over plain carriers <= max_size
/// or over G-sets of <= max_size elements (sources up to iso).
SuiteReport suite_degree_axioms(const SuiteParams& p);

/// Fold-distributivity structure (|w_z| = 2^fibre, |c_z| = 2^fibre - 2, no
/// degree-0 parts) and the binomial splitting identity over nat and int.
SuiteReport suite_splitting(const SuiteParams& p);

/// Pasted distributivity diagrams (both the L-composite and F-composite
/// pastings) pass the universal-property checker, carriers <= max_size.
SuiteReport suite_pasting(const SuiteParams& p);

/// Tambara functoriality over the orbit site of the given group: exhaustive
/// over iso classes of bispans whose four objects are orbits, all composable
/// pairs, compared on the full orbit basis.
SuiteReport suite_tambara_functoriality(const SuiteParams& p);

/// Brute-force bispan isomorphism search over all bijection pairs; the
/// independent oracle for completeness checks (exponential, tiny inputs
/// only).
bool bispan_iso_bruteforce(const Bispan& a, const Bispan& b);

/// Probe battery {0..top}^arity in lexicographic order, truncated.
std::vector<std::vector<long long>> probe_grid(int arity, int top, int limit);

}  // namespace bispan
