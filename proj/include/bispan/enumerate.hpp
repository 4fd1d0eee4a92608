#pragma once

#include <functional>
#include <random>
#include <vector>

#include "bispan/bispan.hpp"
#include "bispan/context.hpp"
#include "bispan/gset.hpp"

namespace bispan {

using Rng = std::mt19937_64;

/// All morphisms a -> b (equivariant when the objects carry actions).
std::vector<Mor> morphisms_between(const Obj& a, const Obj& b);

/// Plain objects of size 0..max.
std::vector<Obj> plain_objects_upto(int max);

/// Objects of the ambient instance: plain sizes, or G-set iso classes.
std::vector<Obj> objects_upto(const GroupPtr& g, int max);  // g may be null for plain sets

/// Representatives of equivariant maps into y up to precomposition with an
/// isomorphism of the source, with |dom| <= max_dom: one map per choice of
/// fibre iso class over each orbit of y. For plain y this is one map per
/// fibre-size vector.
std::vector<Mor> maps_into_upto_source_iso(const Obj& y, int max_dom);

/// Uniform-ish random data for property suites. Sizes are inclusive bounds.
Obj random_object(Rng& rng, const GroupPtr& g, int max_size);
Mor random_map(Rng& rng, const Obj& dom, const Obj& cod);
Bispan random_bispan(Rng& rng, const GroupPtr& g, const Obj& src, const Obj& tgt, int max_mid);

/// Estimated carrier of the composite's distributivity stage: the product of
/// fibre sizes that the dependent product materializes. Used by samplers to
/// redraw pathological triples.
long long predicted_composite_size(const Bispan& b2, const Bispan& b1);

}  // namespace bispan
