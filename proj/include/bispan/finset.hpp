#pragma once

#include <cstddef>
#include <vector>

#include "bispan/context.hpp"

namespace bispan {

Mor make_map(const Obj& dom, const Obj& cod, std::vector<int> assignment);

/// The sub-object {x in dom(f) : f(x) = y}, in carrier order.
SubObj fiber(const Mor& f, int y);
std::vector<int> fiber_elems(const Mor& f, int y);
std::vector<std::vector<int>> fibers_of(const Mor& f);

/// One block of a degree decomposition: the part of the codomain where every
/// fibre has cardinality exactly `degree`, with the restricted map over it.
struct DegreeComponent {
  int degree = 0;
  SubObj part;      // y_n -> cod
  SubObj dom_part;  // x_n -> dom
  Mor restricted;   // x_n -> y_n, constant fibre size = degree
};

/// Partition of cod(f) by fibre cardinality; empty, disjoint-free blocks are
/// omitted. Components are sorted by degree. Works for both plain sets and
/// G-sets (the blocks are action-stable since the action permutes fibres).
struct DegreeDecomposition {
  Mor f;
  std::vector<DegreeComponent> components;
  int max_degree = -1;  // -1 for the map of empty sets

  const DegreeComponent* component(int degree) const;
};

DegreeDecomposition degree_decomposition(const Mor& f);

/// Decomposition of nabla . (f + g) computed directly and via the block
/// formula y_k = union over m+n=k of y_n^(f) x_y y_m^(g); throws if the two
/// routes disagree. Returns the direct decomposition together with the fold
/// map it decomposes.
struct FoldDegreeDecomposition {
  Mor fold;  // dom(f) + dom(g) -> cod
  DegreeDecomposition decomposition;
};

FoldDegreeDecomposition fold_degree_decomposition(const Mor& f, const Mor& g);

/// Complete isomorphism invariant of a plain finite set.
std::size_t canonical_form_object(const Obj& x);

}  // namespace bispan
