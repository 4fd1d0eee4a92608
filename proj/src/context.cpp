#include "bispan/context.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "bispan/gset.hpp"

namespace bispan {

namespace {

int pos_in_fiber_of(const std::vector<int>& fiber, int elem) {
  auto it = std::lower_bound(fiber.begin(), fiber.end(), elem);
  return static_cast<int>(it - fiber.begin());
}

}  // namespace

bool same_obj(const Obj& a, const Obj& b) {
  if (a.size != b.size) return false;
  if (!a.action && !b.action) return true;
  if (!a.action || !b.action) return false;
  return a.action == b.action || *a.action == *b.action;
}

bool same_ambient(const Obj& a, const Obj& b) {
  if (!a.action && !b.action) return true;
  if (!a.action || !b.action) return false;
  return a.action->group() == b.action->group();
}

bool is_equivariant(const Obj& dom, const Obj& cod, const std::vector<int>& map) {
  if (!dom.is_gset()) return true;
  const int n = dom.group()->order();
  for (int g = 0; g < n; ++g)
    for (int i = 0; i < dom.size; ++i)
      if (map[dom.act(g, i)] != cod.act(g, map[i])) return false;
  return true;
}

Mor make_mor(Obj dom, Obj cod, std::vector<int> map, bool in_f, bool in_l) {
  if (static_cast<int>(map.size()) != dom.size)
    throw std::invalid_argument("assignment must be total on the domain");
  for (int v : map)
    if (v < 0 || v >= cod.size) throw std::invalid_argument("assignment lands outside the codomain");
  if (!same_ambient(dom, cod))
    throw std::invalid_argument("domain and codomain live in different ambient instances");
  if (!is_equivariant(dom, cod, map))
    throw std::invalid_argument("assignment is not equivariant");
  return Mor{std::move(dom), std::move(cod), std::move(map), in_f, in_l};
}

Mor identity_mor(const Obj& x) {
  std::vector<int> m(x.size);
  std::iota(m.begin(), m.end(), 0);
  return Mor{x, x, std::move(m), true, true};
}

Mor compose(const Mor& g, const Mor& f) {
  if (!same_obj(f.cod, g.dom))
    throw std::invalid_argument("compose: codomain/domain mismatch");
  std::vector<int> m(f.dom.size);
  for (int i = 0; i < f.dom.size; ++i) m[i] = g.map[f.map[i]];
  return Mor{f.dom, g.cod, std::move(m), f.in_f && g.in_f, f.in_l && g.in_l};
}

bool same_mor(const Mor& a, const Mor& b) {
  return same_obj(a.dom, b.dom) && same_obj(a.cod, b.cod) && a.map == b.map;
}

int PullbackSquare::index_of(int a, int b) const {
  for (int e = 0; e < apex.size; ++e)
    if (proj_g.map[e] == a && proj_f.map[e] == b) return e;
  return -1;
}

PullbackSquare pullback(const Mor& f, const Mor& g) {
  if (!same_obj(f.cod, g.cod)) throw std::invalid_argument("pullback: codomain mismatch");
  std::vector<int> pf, pg;
  // bucket dom(g) by value so apex enumeration is linear-ish
  std::vector<std::vector<int>> by_val(f.cod.size);
  for (int b = 0; b < g.dom.size; ++b) by_val[g.map[b]].push_back(b);
  for (int a = 0; a < f.dom.size; ++a)
    for (int b : by_val[f.map[a]]) {
      pg.push_back(a);
      pf.push_back(b);
    }
  Obj apex;
  apex.size = static_cast<int>(pf.size());
  if (f.dom.is_gset()) {
    const auto& grp = f.dom.group();
    const int n = grp->order();
    std::unordered_map<long long, int> index;
    index.reserve(pf.size() * 2);
    for (int e = 0; e < apex.size; ++e)
      index.emplace(static_cast<long long>(pg[e]) * g.dom.size + pf[e], e);
    std::vector<std::vector<int>> table(n, std::vector<int>(apex.size));
    for (int gg = 0; gg < n; ++gg)
      for (int e = 0; e < apex.size; ++e) {
        long long key =
            static_cast<long long>(f.dom.act(gg, pg[e])) * g.dom.size + g.dom.act(gg, pf[e]);
        table[gg][e] = index.at(key);
      }
    apex.action = std::make_shared<const GAction>(grp, std::move(table));
  }
  Mor proj_f{apex, g.dom, std::move(pf), f.in_f, f.in_l};
  Mor proj_g{apex, f.dom, std::move(pg), g.in_f, g.in_l};
  return PullbackSquare{f, g, apex, std::move(proj_f), std::move(proj_g)};
}

bool is_cartesian(const PullbackSquare& sq) {
  if (!same_obj(sq.f.cod, sq.g.cod)) return false;
  if (!same_obj(sq.proj_f.dom, sq.apex) || !same_obj(sq.proj_g.dom, sq.apex)) return false;
  if (!same_obj(sq.proj_f.cod, sq.g.dom) || !same_obj(sq.proj_g.cod, sq.f.dom)) return false;
  // commutes, pairing injective, and hits every compatible pair
  std::map<std::pair<int, int>, int> seen;
  for (int e = 0; e < sq.apex.size; ++e) {
    int a = sq.proj_g.map[e], b = sq.proj_f.map[e];
    if (sq.f.map[a] != sq.g.map[b]) return false;
    if (!seen.emplace(std::make_pair(a, b), e).second) return false;
  }
  long long compatible = 0;
  for (int a = 0; a < sq.f.dom.size; ++a)
    for (int b = 0; b < sq.g.dom.size; ++b)
      if (sq.f.map[a] == sq.g.map[b]) ++compatible;
  return compatible == sq.apex.size;
}

Coproduct coproduct(const Obj& a, const Obj& b) {
  if (!same_ambient(a, b))
    throw std::invalid_argument("coproduct: different ambient instances");
  Obj obj;
  obj.size = a.size + b.size;
  if (a.is_gset()) {
    const auto& grp = a.group();
    const int n = grp->order();
    std::vector<std::vector<int>> table(n, std::vector<int>(obj.size));
    for (int g = 0; g < n; ++g) {
      for (int i = 0; i < a.size; ++i) table[g][i] = a.act(g, i);
      for (int i = 0; i < b.size; ++i) table[g][a.size + i] = a.size + b.act(g, i);
    }
    obj.action = std::make_shared<const GAction>(grp, std::move(table));
  }
  std::vector<int> li(a.size), ri(b.size);
  std::iota(li.begin(), li.end(), 0);
  std::iota(ri.begin(), ri.end(), a.size);
  return Coproduct{obj, Mor{a, obj, std::move(li), true, true},
                   Mor{b, obj, std::move(ri), true, true}};
}

Coproduct canonical_coproduct(const Obj& a, const Obj& b) { return coproduct(a, b); }

Mor copair(const Coproduct& cp, const Mor& u, const Mor& v) {
  if (!same_obj(u.cod, v.cod)) throw std::invalid_argument("copair: codomain mismatch");
  if (!same_obj(u.dom, cp.inl.dom) || !same_obj(v.dom, cp.inr.dom))
    throw std::invalid_argument("copair: component domain mismatch");
  std::vector<int> m(cp.obj.size);
  for (int i = 0; i < u.dom.size; ++i) m[cp.inl.map[i]] = u.map[i];
  for (int i = 0; i < v.dom.size; ++i) m[cp.inr.map[i]] = v.map[i];
  return Mor{cp.obj, u.cod, std::move(m), u.in_f && v.in_f, u.in_l && v.in_l};
}

Mor fold_map(const Obj& x) {
  auto cp = coproduct(x, x);
  return copair(cp, identity_mor(x), identity_mor(x));
}

SubObj restrict_obj(const Obj& x, const std::vector<int>& indices) {
  std::vector<int> back(x.size, -1);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    int i = indices[k];
    if (i < 0 || i >= x.size || back[i] >= 0)
      throw std::invalid_argument("restrict_obj: bad index list");
    back[i] = static_cast<int>(k);
  }
  Obj part;
  part.size = static_cast<int>(indices.size());
  if (x.is_gset()) {
    const auto& grp = x.group();
    const int n = grp->order();
    std::vector<std::vector<int>> table(n, std::vector<int>(part.size));
    for (int g = 0; g < n; ++g)
      for (int k = 0; k < part.size; ++k) {
        int img = x.act(g, indices[k]);
        if (back[img] < 0)
          throw std::invalid_argument("restrict_obj: index set is not action-stable");
        table[g][k] = back[img];
      }
    part.action = std::make_shared<const GAction>(grp, std::move(table));
  }
  std::vector<int> incl(indices.begin(), indices.end());
  return SubObj{part, Mor{part, x, std::move(incl), true, true}};
}

DistributivityDiagram dependent_product(const Mor& l, const Mor& f) {
  if (!l.in_l) throw std::invalid_argument("dependent_product: l lacks the L-flag");
  if (!f.in_f) throw std::invalid_argument("dependent_product: f lacks the F-flag");
  if (!same_obj(l.cod, f.dom))
    throw std::invalid_argument("dependent_product: l and f are not composable");
  const Obj& x = l.dom;
  const Obj& y = f.dom;
  const Obj& z = f.cod;

  std::vector<std::vector<int>> f_fiber(z.size), l_fiber(y.size);
  for (int j = 0; j < y.size; ++j) f_fiber[f.map[j]].push_back(j);
  for (int i = 0; i < x.size; ++i) l_fiber[l.map[i]].push_back(i);
  std::vector<int> pos_in_lfiber(x.size);
  for (int j = 0; j < y.size; ++j)
    for (std::size_t t = 0; t < l_fiber[j].size(); ++t)
      pos_in_lfiber[l_fiber[j][t]] = static_cast<int>(t);

  // sections over each z-point, lexicographic (first fibre position most
  // significant, values in carrier order)
  std::vector<SectionWitness> sections;
  std::vector<int> g_map;
  std::vector<long long> offset(z.size + 1, 0);
  for (int k = 0; k < z.size; ++k) {
    offset[k] = static_cast<long long>(sections.size());
    const auto& fib = f_fiber[k];
    bool possible = true;
    for (int j : fib)
      if (l_fiber[j].empty()) possible = false;
    if (!possible) {
      continue;
    }
    std::vector<std::size_t> digit(fib.size(), 0);
    while (true) {
      SectionWitness s;
      s.base = k;
      s.values.resize(fib.size());
      for (std::size_t t = 0; t < fib.size(); ++t) s.values[t] = l_fiber[fib[t]][digit[t]];
      sections.push_back(std::move(s));
      g_map.push_back(k);
      if (fib.empty()) break;
      int t = static_cast<int>(fib.size()) - 1;
      while (t >= 0) {
        if (++digit[t] < l_fiber[fib[t]].size()) break;
        digit[t] = 0;
        --t;
      }
      if (t < 0) break;
    }
  }
  offset[z.size] = static_cast<long long>(sections.size());
  for (int k = z.size - 1; k >= 0; --k)
    if (offset[k] > offset[k + 1]) offset[k] = offset[k + 1];

  Obj w;
  w.size = static_cast<int>(sections.size());
  auto section_index = [&](int k, const std::vector<int>& values) -> int {
    const auto& fib = f_fiber[k];
    long long idx = offset[k];
    long long stride = 1;
    for (int t = static_cast<int>(fib.size()) - 1; t >= 0; --t) {
      idx += pos_in_lfiber[values[t]] * stride;
      stride *= static_cast<long long>(l_fiber[fib[t]].size());
    }
    return static_cast<int>(idx);
  };
  if (x.is_gset()) {
    const auto& grp = x.group();
    const int n = grp->order();
    std::vector<std::vector<int>> table(n, std::vector<int>(w.size));
    for (int g = 0; g < n; ++g) {
      int gi = grp->inv(g);
      for (int e = 0; e < w.size; ++e) {
        const auto& s = sections[e];
        int k2 = z.act(g, s.base);
        const auto& fib2 = f_fiber[k2];
        std::vector<int> vals(fib2.size());
        for (std::size_t t = 0; t < fib2.size(); ++t) {
          int pre = y.act(gi, fib2[t]);
          int t0 = pos_in_fiber_of(f_fiber[s.base], pre);
          vals[t] = x.act(g, s.values[t0]);
        }
        table[g][e] = section_index(k2, vals);
      }
    }
    w.action = std::make_shared<const GAction>(grp, std::move(table));
  }

  Mor g{w, z, std::move(g_map), l.in_f && f.in_f, l.in_l};
  PullbackSquare pb = pullback(g, f);  // apex pairs (section, y-point)
  std::vector<int> eps_map(pb.apex.size);
  for (int e = 0; e < pb.apex.size; ++e) {
    const auto& s = sections[pb.proj_g.map[e]];
    int ypt = pb.proj_f.map[e];
    eps_map[e] = s.values[pos_in_fiber_of(f_fiber[s.base], ypt)];
  }
  bool full = l.in_f && l.in_l && f.in_f && f.in_l;
  Mor eps{pb.apex, x, std::move(eps_map), full, full};
  Mor f_tilde = pb.proj_g;  // apex -> w, base change of f
  return DistributivityDiagram{l, f, w, g, std::move(pb), std::move(eps), std::move(f_tilde),
                               std::move(sections)};
}

std::vector<std::vector<int>> homs_over(const Mor& a_to_z, const Mor& b_to_z) {
  if (!same_obj(a_to_z.cod, b_to_z.cod)) throw std::invalid_argument("homs_over: base mismatch");
  const Obj& A = a_to_z.dom;
  const Obj& B = b_to_z.dom;
  std::vector<std::vector<int>> by_val(b_to_z.cod.size);
  for (int b = 0; b < B.size; ++b) by_val[b_to_z.map[b]].push_back(b);

  std::vector<std::vector<int>> out;
  if (!A.is_gset()) {
    std::vector<std::vector<int>> cand(A.size);
    for (int a = 0; a < A.size; ++a) {
      cand[a] = by_val[a_to_z.map[a]];
      if (cand[a].empty()) return out;
    }
    std::vector<std::size_t> digit(A.size, 0);
    while (true) {
      std::vector<int> h(A.size);
      for (int a = 0; a < A.size; ++a) h[a] = cand[a][digit[a]];
      out.push_back(std::move(h));
      int t = A.size - 1;
      while (t >= 0) {
        if (++digit[t] < cand[t].size()) break;
        digit[t] = 0;
        --t;
      }
      if (t < 0) break;
    }
    return out;
  }

  const auto& grp = A.group();
  const int n = grp->order();
  auto orbs = orbits_of(A);
  // candidates per orbit representative: compatible over z and fixed by the
  // representative's stabilizer
  std::vector<std::vector<int>> cand(orbs.size());
  for (std::size_t oi = 0; oi < orbs.size(); ++oi) {
    int r = orbs[oi].rep;
    for (int b : by_val[a_to_z.map[r]]) {
      bool ok = true;
      for (int g : grp->subgroup_elements(orbs[oi].stabilizer))
        if (B.act(g, b) != b) {
          ok = false;
          break;
        }
      if (ok) cand[oi].push_back(b);
    }
    if (cand[oi].empty()) return out;
  }
  std::vector<std::size_t> digit(orbs.size(), 0);
  while (true) {
    std::vector<int> h(A.size, -1);
    for (std::size_t oi = 0; oi < orbs.size(); ++oi) {
      int r = orbs[oi].rep, b0 = cand[oi][digit[oi]];
      for (int g = 0; g < n; ++g) h[A.act(g, r)] = B.act(g, b0);
    }
    out.push_back(std::move(h));
    int t = static_cast<int>(orbs.size()) - 1;
    while (t >= 0) {
      if (++digit[t] < cand[t].size()) break;
      digit[t] = 0;
      --t;
    }
    if (t < 0) break;
  }
  if (out.empty() && orbs.empty()) out.push_back({});
  return out;
}

std::vector<std::vector<int>> all_maps(const Obj& a, const Obj& b) {
  Obj pt = terminal_like(a);
  return homs_over(to_terminal(a), to_terminal(b));
}

UPReport check_universal_property(const DistributivityDiagram& d, int probe_bound) {
  UPReport rep;
  const Obj& y = d.f.dom;
  const Obj& z = d.f.cod;

  // sanity of the diagram data itself
  if (!is_cartesian(d.pb) || !same_obj(d.pb.f.dom, d.w) || !same_mor(d.pb.g, d.f)) {
    rep.pass = false;
    rep.detail = "diagram square is not a cartesian square of g along f";
    return rep;
  }
  for (int e = 0; e < d.pb.apex.size; ++e)
    if (d.l.map[d.eps.map[e]] != d.pb.proj_f.map[e]) {
      rep.pass = false;
      rep.detail = "eps is not a map over y";
      return rep;
    }

  std::vector<Obj> probes;
  if (!z.is_gset()) {
    for (int s = 0; s <= probe_bound; ++s) probes.push_back(make_set(s));
  } else {
    probes = gset_iso_classes(z.group(), probe_bound);
  }

  for (const auto& u : probes) {
    for (const auto& phi_map : all_maps(u, z)) {
      ++rep.probes;
      Mor phi = Mor{u, z, phi_map, true, true};
      auto homs_wz = homs_over(phi, d.g);
      PullbackSquare fphi = pullback(phi, d.f);  // apex = u x_z y, over y via proj_f
      Mor over_y{fphi.apex, y, fphi.proj_f.map, true, true};
      auto homs_xl = homs_over(over_y, d.l);
      // transport each h through eps and compare
      std::map<std::vector<int>, int> seen;
      for (const auto& h : homs_wz) {
        std::vector<int> t(fphi.apex.size);
        for (int e = 0; e < fphi.apex.size; ++e) {
          int upt = fphi.proj_g.map[e], ypt = fphi.proj_f.map[e];
          int idx = d.pb.index_of(h[upt], ypt);
          if (idx < 0) {
            rep.pass = false;
            rep.detail = "transported map leaves the pullback square";
            return rep;
          }
          t[e] = d.eps.map[idx];
        }
        if (seen.emplace(t, 1).second == false) {
          rep.pass = false;
          rep.detail = "hom-set map is not injective at probe |u|=" + std::to_string(u.size);
          return rep;
        }
      }
      if (seen.size() != homs_xl.size()) {
        rep.pass = false;
        rep.detail = "hom-set map is not surjective at probe |u|=" + std::to_string(u.size) +
                     " (" + std::to_string(seen.size()) + " of " +
                     std::to_string(homs_xl.size()) + ")";
        return rep;
      }
      for (const auto& t : homs_xl)
        if (seen.find(t) == seen.end()) {
          rep.pass = false;
          rep.detail = "hom-set map misses a map over y at probe |u|=" + std::to_string(u.size);
          return rep;
        }
    }
  }
  return rep;
}

DistributivityDiagram pullback_distributivity(const DistributivityDiagram& d, const Mor& zeta) {
  if (!same_obj(zeta.cod, d.f.cod))
    throw std::invalid_argument("pullback_distributivity: zeta must land in z");
  PullbackSquare pw = pullback(d.g, zeta);   // (w, z') pairs; proj_f -> z', proj_g -> w
  PullbackSquare py = pullback(d.f, zeta);   // (y, z') pairs
  Mor eta = py.proj_g;                       // y' -> y
  PullbackSquare px = pullback(d.l, eta);    // (x, y') pairs
  Mor lp = px.proj_f;                        // x' -> y'
  Mor gp = pw.proj_f;                        // w' -> z'
  Mor fp = py.proj_f;                        // y' -> z'
  PullbackSquare sq = pullback(gp, fp);      // apex pairs (w', y')
  std::vector<int> eps_map(sq.apex.size);
  for (int e = 0; e < sq.apex.size; ++e) {
    int wp = sq.proj_g.map[e], yp = sq.proj_f.map[e];
    int idx = d.pb.index_of(pw.proj_g.map[wp], py.proj_g.map[yp]);
    if (idx < 0) throw std::logic_error("pullback_distributivity: incompatible pair");
    int xval = d.eps.map[idx];
    int xp = px.index_of(xval, yp);
    if (xp < 0) throw std::logic_error("pullback_distributivity: missing x' element");
    eps_map[e] = xp;
  }
  Mor eps{sq.apex, px.apex, std::move(eps_map), d.eps.in_f, d.eps.in_l};
  Mor f_tilde = sq.proj_g;
  return DistributivityDiagram{lp, fp, pw.apex, gp, std::move(sq), std::move(eps),
                               std::move(f_tilde), {}};
}

DistributivityDiagram coproduct_distributivity(const DistributivityDiagram& a,
                                               const DistributivityDiagram& b) {
  auto cx = coproduct(a.l.dom, b.l.dom);
  auto cy = coproduct(a.f.dom, b.f.dom);
  auto cz = coproduct(a.f.cod, b.f.cod);
  auto cw = coproduct(a.w, b.w);
  auto capex = coproduct(a.pb.apex, b.pb.apex);
  Mor l = copair(cx, compose(cy.inl, a.l), compose(cy.inr, b.l));
  Mor f = copair(cy, compose(cz.inl, a.f), compose(cz.inr, b.f));
  Mor g = copair(cw, compose(cz.inl, a.g), compose(cz.inr, b.g));
  Mor proj_f = copair(capex, compose(cy.inl, a.pb.proj_f), compose(cy.inr, b.pb.proj_f));
  Mor proj_g = copair(capex, compose(cw.inl, a.pb.proj_g), compose(cw.inr, b.pb.proj_g));
  Mor eps = copair(capex, compose(cx.inl, a.eps), compose(cx.inr, b.eps));
  Mor f_tilde = proj_g;
  PullbackSquare sq{g, f, capex.obj, proj_f, proj_g};
  return DistributivityDiagram{std::move(l), std::move(f), cw.obj, std::move(g), std::move(sq),
                               std::move(eps), std::move(f_tilde), {}};
}

std::optional<Mor> are_isomorphic(const Obj& a, const Obj& b) {
  if (!same_ambient(a, b)) return std::nullopt;
  if (a.is_gset()) return gset_isomorphic(a, b);
  if (a.size != b.size) return std::nullopt;
  std::vector<int> m(a.size);
  std::iota(m.begin(), m.end(), 0);
  return Mor{a, b, std::move(m), true, true};
}

Obj make_set(int n) {
  if (n < 0) throw std::invalid_argument("negative carrier size");
  return Obj{n, nullptr};
}

Obj make_gobj(GroupPtr group, std::vector<std::vector<int>> action_table) {
  Obj o;
  auto act = std::make_shared<const GAction>(std::move(group), std::move(action_table));
  o.size = act->size();
  o.action = act;
  return o;
}

Obj trivial_gobj(GroupPtr group, int n) {
  std::vector<int> row(n);
  std::iota(row.begin(), row.end(), 0);
  std::vector<std::vector<int>> table(group->order(), row);
  return make_gobj(std::move(group), std::move(table));
}

Obj terminal_like(const Obj& x) {
  if (!x.is_gset()) return make_set(1);
  return trivial_gobj(x.group(), 1);
}

Mor to_terminal(const Obj& x) {
  return Mor{x, terminal_like(x), std::vector<int>(x.size, 0), true, true};
}

}  // namespace bispan
