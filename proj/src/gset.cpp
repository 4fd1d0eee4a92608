#include "bispan/gset.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace bispan {

std::vector<Orbit> orbits_of(const Obj& x) {
  if (!x.is_gset()) throw std::invalid_argument("orbits_of: object has no action");
  const auto& grp = x.group();
  const int n = grp->order();
  std::vector<char> seen(x.size, 0);
  std::vector<Orbit> out;
  for (int i = 0; i < x.size; ++i) {
    if (seen[i]) continue;
    Orbit o;
    o.rep = i;
    std::vector<int> stab_elems;
    for (int g = 0; g < n; ++g) {
      int j = x.act(g, i);
      if (!seen[j]) {
        seen[j] = 1;
        o.elems.push_back(j);
      }
      if (j == i) stab_elems.push_back(g);
    }
    o.stabilizer = grp->subgroup_index([&] {
      std::uint64_t m = 0;
      for (int e : stab_elems) m |= 1ull << e;
      return m;
    }());
    if (o.stabilizer < 0) throw std::logic_error("stabilizer is not a subgroup");
    out.push_back(std::move(o));
  }
  std::stable_sort(out.begin(), out.end(), [&](const Orbit& a, const Orbit& b) {
    int oa = grp->subgroup_order(a.stabilizer), ob = grp->subgroup_order(b.stabilizer);
    return oa != ob ? oa > ob : a.rep < b.rep;
  });
  return out;
}

int stabilizer_of(const Obj& x, int point) {
  const auto& grp = x.group();
  std::uint64_t m = 0;
  for (int g = 0; g < grp->order(); ++g)
    if (x.act(g, point) == point) m |= 1ull << g;
  int s = grp->subgroup_index(m);
  if (s < 0) throw std::logic_error("stabilizer is not a subgroup");
  return s;
}

namespace {

std::vector<int> coset_reps(const GroupPtr& g, int subgroup) {
  const int n = g->order();
  std::vector<char> taken(n, 0);
  std::vector<int> reps;
  for (int a = 0; a < n; ++a) {
    if (taken[a]) continue;
    reps.push_back(a);
    for (int h : g->subgroup_elements(subgroup)) taken[g->mul(a, h)] = 1;
  }
  return reps;
}

}  // namespace

Obj coset_space(const GroupPtr& g, int subgroup) {
  const int n = g->order();
  auto reps = coset_reps(g, subgroup);
  std::vector<int> coset_idx(n, -1);
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (int h : g->subgroup_elements(subgroup)) coset_idx[g->mul(reps[c], h)] = static_cast<int>(c);
  std::vector<std::vector<int>> table(n, std::vector<int>(reps.size()));
  for (int a = 0; a < n; ++a)
    for (std::size_t c = 0; c < reps.size(); ++c) table[a][c] = coset_idx[g->mul(a, reps[c])];
  return make_gobj(g, std::move(table));
}

int coset_of(const GroupPtr& g, int subgroup, int elem) {
  auto reps = coset_reps(g, subgroup);
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (int h : g->subgroup_elements(subgroup))
      if (g->mul(reps[c], h) == elem) return static_cast<int>(c);
  throw std::logic_error("coset_of: element not found");
}

Mor quotient_map(const GroupPtr& g, int h, int k) {
  if (!g->subgroup_contains(k, h))
    throw std::invalid_argument("quotient_map: H is not contained in K");
  Obj gh = coset_space(g, h);
  Obj gk = coset_space(g, k);
  auto reps = coset_reps(g, h);
  std::vector<int> m(reps.size());
  for (std::size_t c = 0; c < reps.size(); ++c) m[c] = coset_of(g, k, reps[c]);
  return make_mor(std::move(gh), std::move(gk), std::move(m));
}

DoubleCosetDecomposition double_coset_decomposition(const GroupPtr& g, int h, int k, int l) {
  if (!g->subgroup_contains(l, h) || !g->subgroup_contains(l, k))
    throw std::invalid_argument("double_coset_decomposition: need H, K <= L");
  Mor qh = quotient_map(g, h, l);
  Mor qk = quotient_map(g, k, l);
  PullbackSquare sq = pullback(qh, qk);

  // double cosets HgK inside L, representative = smallest member
  std::vector<char> taken(g->order(), 0);
  std::vector<int> reps;
  for (int a : g->subgroup_elements(l)) {
    if (taken[a]) continue;
    reps.push_back(a);
    for (int x : g->subgroup_elements(h))
      for (int y : g->subgroup_elements(k)) taken[g->mul(g->mul(x, a), y)] = 1;
  }

  auto orbs = orbits_of(sq.apex);
  std::vector<int> orbit_of_elem(sq.apex.size, -1);
  for (std::size_t oi = 0; oi < orbs.size(); ++oi)
    for (int e : orbs[oi].elems) orbit_of_elem[e] = static_cast<int>(oi);

  DoubleCosetDecomposition out;
  out.h = h;
  out.k = k;
  out.l = l;
  std::vector<char> used(orbs.size(), 0);
  for (int rep : reps) {
    // the apex element (eH, repK)
    int a = coset_of(g, h, g->identity());
    int b = coset_of(g, k, rep);
    int e = sq.index_of(a, b);
    if (e < 0) throw std::logic_error("double coset representative missing from pullback");
    int oi = orbit_of_elem[e];
    if (used[oi]) throw std::logic_error("two double cosets matched one orbit");
    used[oi] = 1;
    DoubleCosetBlock blk;
    blk.representative = rep;
    blk.stabilizer = g->intersect_subgroups(h, g->conjugate_subgroup(k, rep));
    blk.orbit = orbs[oi].elems;
    out.blocks.push_back(std::move(blk));
  }
  for (char u : used)
    if (!u) throw std::logic_error("orbit of the pullback not matched to a double coset");
  out.pullback_square = std::move(sq);
  return out;
}

DistributivityDiagram equivariant_dependent_product(const Mor& l, const Mor& f) {
  if (!l.dom.is_gset() || !f.dom.is_gset())
    throw std::invalid_argument("equivariant_dependent_product: inputs must be G-sets");
  if (l.dom.group() != f.dom.group())
    throw std::invalid_argument("equivariant_dependent_product: ambient group mismatch");
  return dependent_product(l, f);
}

std::optional<Mor> gset_isomorphic(const Obj& a, const Obj& b) {
  if (!a.is_gset() || !b.is_gset() || a.group() != b.group()) return std::nullopt;
  const auto& grp = a.group();
  if (a.size != b.size) return std::nullopt;
  auto oa = orbits_of(a);
  auto ob = orbits_of(b);
  if (oa.size() != ob.size()) return std::nullopt;
  // multiset comparison by stabilizer conjugacy class
  auto key = [&](const std::vector<Orbit>& os) {
    std::vector<int> ks;
    for (const auto& o : os) ks.push_back(grp->subgroup_class(o.stabilizer));
    std::sort(ks.begin(), ks.end());
    return ks;
  };
  if (key(oa) != key(ob)) return std::nullopt;

  // match orbits greedily within each class
  std::vector<int> matched(ob.size(), -1);
  std::vector<char> used(ob.size(), 0);
  for (std::size_t i = 0; i < oa.size(); ++i) {
    for (std::size_t j = 0; j < ob.size(); ++j) {
      if (used[j]) continue;
      if (grp->subgroup_class(oa[i].stabilizer) == grp->subgroup_class(ob[j].stabilizer)) {
        matched[i] = static_cast<int>(j);
        used[j] = 1;
        break;
      }
    }
  }
  std::vector<int> iso(a.size, -1);
  for (std::size_t i = 0; i < oa.size(); ++i) {
    const Orbit& src = oa[i];
    const Orbit& dst = ob[matched[i]];
    auto c = grp->conjugator(src.stabilizer, dst.stabilizer);
    if (!c) return std::nullopt;
    // y0 = c^-1 . rep_b has the same stabilizer as rep_a; t . rep_a -> t . y0
    int y0 = b.act(grp->inv(*c), dst.rep);
    for (int g = 0; g < grp->order(); ++g) iso[a.act(g, src.rep)] = b.act(g, y0);
  }
  for (int v : iso)
    if (v < 0) return std::nullopt;
  Mor m{a, b, std::move(iso), true, true};
  if (!is_equivariant(a, b, m.map)) throw std::logic_error("constructed iso is not equivariant");
  return m;
}

std::vector<Obj> gset_iso_classes(const GroupPtr& g, int max_size) {
  // orbit types, larger stabilizers first (smaller orbits first)
  std::vector<int> types;
  for (int c = 0; c < g->class_count(); ++c) types.push_back(g->class_representative(c));
  std::sort(types.begin(), types.end(),
            [&](int s, int t) { return g->subgroup_order(s) > g->subgroup_order(t); });

  std::vector<Obj> out;
  std::vector<int> counts(types.size(), 0);
  auto orbit_size = [&](std::size_t t) { return g->order() / g->subgroup_order(types[t]); };

  std::function<void(std::size_t, int)> rec = [&](std::size_t t, int budget) {
    if (t == types.size()) {
      Obj acc = trivial_gobj(g, 0);
      for (std::size_t i = 0; i < types.size(); ++i)
        for (int c = 0; c < counts[i]; ++c) acc = coproduct(acc, coset_space(g, types[i])).obj;
      out.push_back(acc);
      return;
    }
    for (int c = 0; c * orbit_size(t) <= budget; ++c) {
      counts[t] = c;
      rec(t + 1, budget - c * orbit_size(t));
    }
    counts[t] = 0;
  };
  rec(0, max_size);
  std::sort(out.begin(), out.end(), [](const Obj& a, const Obj& b) { return a.size < b.size; });
  return out;
}

}  // namespace bispan
