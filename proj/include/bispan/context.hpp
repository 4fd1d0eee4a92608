#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bispan/group.hpp"

namespace bispan {

/// An object of the ambient category: a finite carrier 0..size-1, optionally
/// equipped with a group action. A null action means a plain finite set; the
/// two concrete bispan triples (finite sets, finite G-sets) share all code
/// paths. Values are immutable once built.
struct Obj {
  int size = 0;
  GActionPtr action;  // null for plain finite sets

  bool is_gset() const { return action != nullptr; }
  const GroupPtr& group() const { return action->group(); }
  int act(int g, int i) const { return action ? action->apply(g, i) : i; }
};

bool same_obj(const Obj& a, const Obj& b);
bool same_ambient(const Obj& a, const Obj& b);

/// A morphism: total assignment dom -> cod, with cached membership flags for
/// the F- and L-classes. Both concrete instances have all-true flags; the
/// flags exist so the abstract contract (closure under composition and base
/// change, identities in both classes) is testable.
struct Mor {
  Obj dom, cod;
  std::vector<int> map;
  bool in_f = true;
  bool in_l = true;

  int operator()(int i) const { return map[i]; }
};

Mor make_mor(Obj dom, Obj cod, std::vector<int> map, bool in_f = true, bool in_l = true);
Mor identity_mor(const Obj& x);
Mor compose(const Mor& g, const Mor& f);  // g after f
bool same_mor(const Mor& a, const Mor& b);
bool is_equivariant(const Obj& dom, const Obj& cod, const std::vector<int>& map);

/// Canonical-order pullback square for f: x -> y, g: z -> y. The apex carrier
/// enumerates compatible pairs (a in x, b in z) lexicographically; proj_f is
/// the base change of f (lands in z), proj_g the base change of g (lands in
/// x). The struct also holds non-canonical cartesian squares produced by
/// pasting; is_cartesian checks the defining property element-wise.
struct PullbackSquare {
  Mor f, g;
  Obj apex;
  Mor proj_f;  // apex -> dom(g)
  Mor proj_g;  // apex -> dom(f)

  std::pair<int, int> pair_of(int e) const { return {proj_g.map[e], proj_f.map[e]}; }
  /// Index of the apex element over (a in dom f, b in dom g); -1 if none.
  int index_of(int a, int b) const;
};

PullbackSquare pullback(const Mor& f, const Mor& g);
bool is_cartesian(const PullbackSquare& sq);

struct Coproduct {
  Obj obj;
  Mor inl, inr;
};

Coproduct coproduct(const Obj& a, const Obj& b);
/// The canonical [u, v]: a + b -> c with components u, v.
Mor copair(const Coproduct& cp, const Mor& u, const Mor& v);
Mor fold_map(const Obj& x);  // nabla: x + x -> x over the canonical coproduct
Coproduct canonical_coproduct(const Obj& a, const Obj& b);

/// A sub-object spanned by the given carrier indices (must be action-stable
/// when the object carries one).
struct SubObj {
  Obj obj;
  Mor incl;
};
SubObj restrict_obj(const Obj& x, const std::vector<int>& indices);

/// Witness data for one dependent-product element: the target point it lies
/// over and the chosen value in dom(l) for each point of the f-fibre (in
/// carrier order).
struct SectionWitness {
  int base;
  std::vector<int> values;
};

/// The five-map distributivity diagram for l: x -> y (L-class) and
/// f: y -> z (F-class):
///
///       f*w ---f_tilde--> w
///     /  |                |
///   eps  |(pb)            g
///     v  v                v
///   x -l-> y -----f-----> z
///
/// pb is the cartesian square of g along f; eps evaluates a section at a
/// point. sections is a construction witness (empty for diagrams obtained by
/// pasting or base change).
struct DistributivityDiagram {
  Mor l, f;
  Obj w;
  Mor g;        // w -> z
  PullbackSquare pb;  // pullback of g along f; apex = f*w
  Mor eps;      // f*w -> x
  Mor f_tilde;  // f*w -> w
  std::vector<SectionWitness> sections;
};

/// Dependent product f_* l: for each z-point, the carrier of w enumerates all
/// sections of l over the f-fibre, lexicographically. For G-objects the action
/// on sections is (g . s)(y) = g . s(g^-1 . y).
DistributivityDiagram dependent_product(const Mor& l, const Mor& f);

struct UPReport {
  bool pass = true;
  long long probes = 0;
  std::string detail;  // first counterexample, empty when pass
};

/// Exhaustively verifies eq. (uni-prop-dis): for every probe phi: u -> z with
/// |u| <= probe_bound (equivariant probes when the ambient is a G-set
/// instance), the map Hom_/z(phi, g) -> Hom_/y(f*phi, l) is a bijection.
UPReport check_universal_property(const DistributivityDiagram& d, int probe_bound);

/// Base change of a distributivity diagram along zeta: z' -> z; the result is
/// again a distributivity diagram (pasting lemma for pullbacks).
DistributivityDiagram pullback_distributivity(const DistributivityDiagram& d, const Mor& zeta);

/// Componentwise coproduct of two distributivity diagrams.
DistributivityDiagram coproduct_distributivity(const DistributivityDiagram& a,
                                               const DistributivityDiagram& b);

/// Structure-preserving bijection between two objects of the same ambient
/// instance, if one exists. Plain sets compare cardinalities; G-sets compare
/// multisets of stabilizer conjugacy classes.
std::optional<Mor> are_isomorphic(const Obj& a, const Obj& b);

/// All maps a -> b over z (equivariant when the ambient has an action):
/// h with (b -> z) . h = (a -> z). Each map is returned as an assignment.
std::vector<std::vector<int>> homs_over(const Mor& a_to_z, const Mor& b_to_z);

/// All maps (equivariant when applicable) from a to b.
std::vector<std::vector<int>> all_maps(const Obj& a, const Obj& b);

Obj make_set(int n);
Obj make_gobj(GroupPtr group, std::vector<std::vector<int>> action_table);
Obj trivial_gobj(GroupPtr group, int n);  // trivial action on n points
Obj terminal_like(const Obj& x);          // one point, same ambient instance
Mor to_terminal(const Obj& x);

}  // namespace bispan
