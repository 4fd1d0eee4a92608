#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bispan/context.hpp"

namespace bispan {

/// A bispan src <- E -> B -> tgt; the middle leg (multiplicative) carries the
/// F-flag, the right leg (additive) the L-flag.
struct Bispan {
  Obj src, tgt;
  Obj e, b;
  Mor p;  // E -> src
  Mor f;  // E -> B, F-class
  Mor l;  // B -> tgt, L-class
};

Bispan make_bispan(Mor p, Mor f, Mor l);
Bispan identity_bispan(const Obj& x);
/// The pure-norm bispan of p: dom(p) <-id- dom(p) -p-> cod(p) -id-> cod(p).
Bispan norm_bispan(const Mor& p);
/// The pure-transfer bispan of l: dom <-id- dom -id-> dom -l-> cod.
Bispan transfer_bispan(const Mor& l);
/// The pure-restriction bispan of s: cod <-s- dom -id-> dom -id-> dom.
Bispan restriction_bispan(const Mor& s);

/// Composite of b1 followed by b2, by the outer diagram of the composition
/// law: the pullback of l(b1) against p(b2), the distributivity diagram of
/// that pullback along f(b2), and two further pullbacks.
Bispan compose_bispans(const Bispan& b2, const Bispan& b1);
/// Same composite built in a different pullback order (for order-independence
/// tests); isomorphic but not identical carriers.
Bispan compose_bispans_alt(const Bispan& b2, const Bispan& b1);

/// Canonical form of a plain bispan: for each target point, the sorted
/// multiset over B-fibre elements of monomials (sorted multisets of p-values).
/// A complete isomorphism invariant over finite sets.
using BispanCanonicalForm = std::vector<std::vector<std::vector<int>>>;
BispanCanonicalForm bispan_canonical_form(const Bispan& a);

struct BispanIso {
  Mor e_map, b_map;
};

enum class SearchStatus { Found, None, Unknown };

struct BispanIsoResult {
  SearchStatus status = SearchStatus::None;
  std::optional<BispanIso> witness;
  explicit operator bool() const { return status == SearchStatus::Found; }
};

/// Isomorphism of bispans with the same boundary: canonical forms for plain
/// sets; bounded equivariant backtracking for G-sets (Unknown when the node
/// budget is exhausted).
BispanIsoResult bispan_isomorphic(const Bispan& a, const Bispan& b,
                                  long long node_budget = 2'000'000);

/// A 2-morphism of bispans: maps of the two middle objects with commuting
/// triangles and a cartesian middle square.
struct BispanMor {
  Bispan source, target;
  Mor e_map;  // E -> E'
  Mor b_map;  // B -> B'
};

struct BispanMorReport {
  bool pass = true;
  std::string detail;
};
BispanMorReport validate_bispan_mor(const BispanMor& m);

Bispan coproduct_bispans(const Bispan& a, const Bispan& b);

/// Pasting of distributivity diagrams along a composite in L
/// (lem. on composing the additive legs): builds the outer diagram for
/// (l2 . l1, f) from the diagrams for (l2, f) and for the pullback of l1.
struct PastedDistributivity {
  DistributivityDiagram first;   // for (l2, f)
  DistributivityDiagram second;  // for (l1', f')
  DistributivityDiagram outer;   // for (l2 . l1, f)
};
PastedDistributivity paste_distributivity(const Mor& l1, const Mor& l2, const Mor& f);

/// The companion pasting along a composite in F: the outer diagram for
/// (l, f2 . f1) from the diagrams for (l, f1) and (g1, f2).
PastedDistributivity paste_distributivity_f(const Mor& l, const Mor& f1, const Mor& f2);

/// The structure extracted from the distributivity diagram for
/// (nabla_x, p): w = y + c + y via the two sections, with the mixed part c,
/// its two evaluation/projection families and the map k: c -> y. Requires p
/// to have no empty fibre (otherwise the two sections coincide over the
/// offending point and the splitting does not exist).
struct FoldDistributivityData {
  Mor p;                      // x -> y
  DistributivityDiagram dd;   // for (nabla_x, p)
  Mor s0, s1;                 // y -> w, the all-left / all-right sections
  SubObj c;                   // mixed sections, as a sub-object of w
  Mor k;                      // c -> y
  SubObj c_l, c_r;            // sub-objects of the apex p*w
  Mor eps_l, eps_r;           // c_l -> x, c_r -> x
  Mor p_l, p_r;               // c_l -> c, c_r -> c
};

FoldDistributivityData fold_distributivity(const Mor& p);

}  // namespace bispan
