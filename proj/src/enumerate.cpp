#include "bispan/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bispan {

std::vector<Mor> morphisms_between(const Obj& a, const Obj& b) {
  std::vector<Mor> out;
  for (auto& m : all_maps(a, b)) out.push_back(Mor{a, b, std::move(m), true, true});
  return out;
}

std::vector<Obj> plain_objects_upto(int max) {
  std::vector<Obj> out;
  for (int s = 0; s <= max; ++s) out.push_back(make_set(s));
  return out;
}

std::vector<Obj> objects_upto(const GroupPtr& g, int max) {
  if (!g) return plain_objects_upto(max);
  return gset_iso_classes(g, max);
}

namespace {

// subgroup classes of S (a subgroup of g) up to S-conjugacy, as ambient
// subgroup indices, largest first
std::vector<int> subgroup_classes_within(const GroupPtr& g, int s_idx) {
  std::vector<int> reps;
  std::vector<char> seen(g->subgroup_count(), 0);
  for (int t = 0; t < g->subgroup_count(); ++t) {
    if (seen[t] || !g->subgroup_contains(s_idx, t)) continue;
    reps.push_back(t);
    for (int a : g->subgroup_elements(s_idx)) seen[g->conjugate_subgroup(t, a)] = 1;
  }
  std::sort(reps.begin(), reps.end(),
            [&](int a, int b) { return g->subgroup_order(a) > g->subgroup_order(b); });
  return reps;
}

// the G-map G/J -> y sending aJ to a . pt, for J contained in Stab(pt)
Mor orbit_over_point(const GroupPtr& g, int j_idx, const Obj& y, int pt) {
  Obj piece = coset_space(g, j_idx);
  std::vector<char> taken(g->order(), 0);
  std::vector<int> m;
  for (int a = 0; a < g->order(); ++a) {
    if (taken[a]) continue;
    m.push_back(y.act(a, pt));
    for (int h : g->subgroup_elements(j_idx)) taken[g->mul(a, h)] = 1;
  }
  return make_mor(piece, y, std::move(m));
}

}  // namespace

std::vector<Mor> maps_into_upto_source_iso(const Obj& y, int max_dom) {
  std::vector<Mor> out;
  if (!y.is_gset()) {
    // one representative per fibre-size vector
    std::vector<int> sizes(y.size, 0);
    std::function<void(int, int)> rec = [&](int j, int budget) {
      if (j == y.size) {
        std::vector<int> assignment;
        for (int t = 0; t < y.size; ++t)
          for (int c = 0; c < sizes[t]; ++c) assignment.push_back(t);
        Obj dom = make_set(static_cast<int>(assignment.size()));
        out.push_back(Mor{dom, y, std::move(assignment), true, true});
        return;
      }
      for (int c = 0; c <= budget; ++c) {
        sizes[j] = c;
        rec(j + 1, budget - c);
      }
      sizes[j] = 0;
    };
    rec(0, max_dom);
    return out;
  }

  const auto& g = y.group();
  auto orbs = orbits_of(y);
  // per orbit: available fibre orbit-types (ambient subgroup indices J <= Stab)
  std::vector<std::vector<int>> types(orbs.size());
  for (std::size_t oi = 0; oi < orbs.size(); ++oi)
    types[oi] = subgroup_classes_within(g, orbs[oi].stabilizer);

  // choose a multiset of (orbit, type) pairs within the size budget
  struct Slot {
    int orbit, type;
    int cost;
  };
  std::vector<Slot> slots;
  for (std::size_t oi = 0; oi < orbs.size(); ++oi)
    for (int j : types[oi]) slots.push_back({static_cast<int>(oi), j, g->order() / g->subgroup_order(j)});

  std::vector<int> counts(slots.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t si, int budget) {
    if (si == slots.size()) {
      Obj dom = trivial_gobj(g, 0);
      std::vector<int> assignment;
      for (std::size_t t = 0; t < slots.size(); ++t) {
        for (int c = 0; c < counts[t]; ++c) {
          Mor piece = orbit_over_point(g, slots[t].type, y, orbs[slots[t].orbit].rep);
          auto cp = coproduct(dom, piece.dom);
          std::vector<int> merged(cp.obj.size);
          for (int i = 0; i < dom.size; ++i) merged[cp.inl.map[i]] = assignment[i];
          for (int i = 0; i < piece.dom.size; ++i) merged[cp.inr.map[i]] = piece.map[i];
          dom = cp.obj;
          assignment = std::move(merged);
        }
      }
      out.push_back(make_mor(dom, y, std::move(assignment)));
      return;
    }
    for (int c = 0; c * slots[si].cost <= budget; ++c) {
      counts[si] = c;
      rec(si + 1, budget - c * slots[si].cost);
    }
    counts[si] = 0;
  };
  rec(0, max_dom);
  return out;
}

Obj random_object(Rng& rng, const GroupPtr& g, int max_size) {
  if (!g) {
    std::uniform_int_distribution<int> d(0, max_size);
    return make_set(d(rng));
  }
  auto classes = gset_iso_classes(g, max_size);
  std::uniform_int_distribution<std::size_t> d(0, classes.size() - 1);
  return classes[d(rng)];
}

Mor random_map(Rng& rng, const Obj& dom, const Obj& cod) {
  if (!dom.is_gset()) {
    if (dom.size > 0 && cod.size == 0)
      throw std::invalid_argument("random_map: no map from nonempty set to empty set");
    std::vector<int> m(dom.size);
    if (cod.size > 0) {
      std::uniform_int_distribution<int> d(0, cod.size - 1);
      for (auto& v : m) v = d(rng);
    }
    return Mor{dom, cod, std::move(m), true, true};
  }
  const auto& g = dom.group();
  auto orbs = orbits_of(dom);
  std::vector<int> m(dom.size, -1);
  for (const auto& o : orbs) {
    // valid images of the representative: points fixed by its stabilizer
    std::vector<int> cands;
    for (int pt = 0; pt < cod.size; ++pt) {
      bool ok = true;
      for (int s : g->subgroup_elements(o.stabilizer))
        if (cod.act(s, pt) != pt) {
          ok = false;
          break;
        }
      if (ok) cands.push_back(pt);
    }
    if (cands.empty()) throw std::invalid_argument("random_map: no equivariant map exists");
    std::uniform_int_distribution<std::size_t> d(0, cands.size() - 1);
    int img = cands[d(rng)];
    for (int a = 0; a < g->order(); ++a) m[dom.act(a, o.rep)] = cod.act(a, img);
  }
  return make_mor(dom, cod, std::move(m));
}

Bispan random_bispan(Rng& rng, const GroupPtr& g, const Obj& src, const Obj& tgt, int max_mid) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    Obj e = random_object(rng, g, max_mid);
    Obj b = random_object(rng, g, max_mid);
    try {
      Mor p = random_map(rng, e, src);
      Mor f = random_map(rng, e, b);
      Mor l = random_map(rng, b, tgt);
      return make_bispan(std::move(p), std::move(f), std::move(l));
    } catch (const std::invalid_argument&) {
      continue;  // e.g. nonempty E over empty src; redraw the middles
    }
  }
  throw std::runtime_error("random_bispan: could not draw a bispan for these boundaries");
}

long long predicted_composite_size(const Bispan& b2, const Bispan& b1) {
  // fibres of pi over F2 have the size of the corresponding l(b1)-fibre;
  // the dependent product over a point of C2 multiplies them along the
  // q-fibre
  std::vector<long long> l_fibre(b1.tgt.size, 0);
  for (int bb = 0; bb < b1.b.size; ++bb) ++l_fibre[b1.l.map[bb]];
  std::vector<std::vector<int>> q_fibre(b2.b.size);
  for (int e = 0; e < b2.e.size; ++e) q_fibre[b2.f.map[e]].push_back(e);
  long long total = 0;
  for (int c = 0; c < b2.b.size; ++c) {
    long long prod = 1;
    for (int e : q_fibre[c]) {
      prod *= std::max<long long>(1, l_fibre[b2.p.map[e]]);
      if (prod > (1ll << 40)) return prod;
    }
    total += prod;
    if (total > (1ll << 40)) return total;
  }
  return total;
}

}  // namespace bispan
