#pragma once

#include <optional>
#include <vector>

#include "bispan/context.hpp"
#include "bispan/group.hpp"

namespace bispan {

/// One orbit of a G-set: carrier indices in discovery order, the smallest
/// index as representative, and the representative's stabilizer (an index
/// into the group's subgroup lattice).
struct Orbit {
  int rep = 0;
  std::vector<int> elems;
  int stabilizer = 0;
};

/// Orbits ordered by (stabilizer order descending, then representative):
/// fixed points first. Concatenating the orbit carriers recovers the G-set up
/// to the canonical reordering.
std::vector<Orbit> orbits_of(const Obj& x);

int stabilizer_of(const Obj& x, int point);

/// The coset space G/H with left translation action. Cosets are enumerated by
/// smallest member: coset 0 is H itself.
Obj coset_space(const GroupPtr& g, int subgroup);
/// Index of the coset containing the given group element.
int coset_of(const GroupPtr& g, int subgroup, int elem);

/// The canonical projection G/H -> G/K for H <= K.
Mor quotient_map(const GroupPtr& g, int h, int k);

struct DoubleCosetBlock {
  int representative;     // g in L
  int stabilizer;         // subgroup index of H n gKg^-1
  std::vector<int> orbit; // apex indices of the pullback orbit matched to g
};

/// The two sides of the double-coset formula: the pullback of
/// G/H -> G/L <- G/K computed by context::pullback, decomposed into orbits
/// matched to double cosets [g] in H\L/K with stabilizers H n gKg^-1.
struct DoubleCosetDecomposition {
  int h, k, l;
  PullbackSquare pullback_square;
  std::vector<DoubleCosetBlock> blocks;
};

DoubleCosetDecomposition double_coset_decomposition(const GroupPtr& g, int h, int k, int l);

/// Dependent product in finite G-sets; identical carrier enumeration to the
/// plain instance, with the conjugation action on sections.
DistributivityDiagram equivariant_dependent_product(const Mor& l, const Mor& f);

/// Equivariant bijection between two G-sets with the same ambient group, if
/// one exists (multisets of stabilizer conjugacy classes decide; the witness
/// is assembled orbit by orbit).
std::optional<Mor> gset_isomorphic(const Obj& a, const Obj& b);

/// All isomorphism classes of G-sets with at most max_size elements, as
/// disjoint unions of coset spaces (larger stabilizers first).
std::vector<Obj> gset_iso_classes(const GroupPtr& g, int max_size);

}  // namespace bispan
