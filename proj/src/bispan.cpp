#include "bispan/bispan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "bispan/finset.hpp"
#include "bispan/gset.hpp"

namespace bispan {

Bispan make_bispan(Mor p, Mor f, Mor l) {
  if (!same_obj(p.dom, f.dom)) throw std::invalid_argument("bispan: p and f must share E");
  if (!same_obj(f.cod, l.dom)) throw std::invalid_argument("bispan: f and l must share B");
  if (!f.in_f) throw std::invalid_argument("bispan: middle leg lacks the F-flag");
  if (!l.in_l) throw std::invalid_argument("bispan: right leg lacks the L-flag");
  return Bispan{p.cod, l.cod, p.dom, l.dom, std::move(p), std::move(f), std::move(l)};
}

Bispan identity_bispan(const Obj& x) {
  return make_bispan(identity_mor(x), identity_mor(x), identity_mor(x));
}

Bispan norm_bispan(const Mor& p) {
  return make_bispan(identity_mor(p.dom), p, identity_mor(p.cod));
}

Bispan transfer_bispan(const Mor& l) {
  return make_bispan(identity_mor(l.dom), identity_mor(l.dom), l);
}

Bispan restriction_bispan(const Mor& s) {
  return make_bispan(s, identity_mor(s.dom), identity_mor(s.dom));
}

Bispan compose_bispans(const Bispan& b2, const Bispan& b1) {
  if (!same_obj(b1.tgt, b2.src)) throw std::invalid_argument("compose_bispans: boundary mismatch");
  PullbackSquare pb1 = pullback(b1.l, b2.p);         // pairs (B1, F2); proj_f -> F2 is pi
  DistributivityDiagram dd = dependent_product(pb1.proj_f, b2.f);
  PullbackSquare pb2 = pullback(b1.f, pb1.proj_g);   // pairs (E1, B1xF2)
  PullbackSquare pb3 = pullback(pb2.proj_f, dd.eps); // pairs (Y, X)
  Mor p = compose(b1.p, compose(pb2.proj_g, pb3.proj_g));
  Mor f = compose(dd.f_tilde, pb3.proj_f);
  Mor l = compose(b2.l, dd.g);
  return make_bispan(std::move(p), std::move(f), std::move(l));
}

Bispan compose_bispans_alt(const Bispan& b2, const Bispan& b1) {
  if (!same_obj(b1.tgt, b2.src)) throw std::invalid_argument("compose_bispans: boundary mismatch");
  PullbackSquare pb1 = pullback(b2.p, b1.l);         // pairs (F2, B1); proj_f -> B1
  Mor pi = pb1.proj_g;                               // -> F2, base change of b1.l
  DistributivityDiagram dd = dependent_product(pi, b2.f);
  PullbackSquare pb2 = pullback(pb1.proj_f, b1.f);   // pairs (F2xB1, E1)
  PullbackSquare pb3 = pullback(dd.eps, pb2.proj_g); // pairs (X, Y)
  Mor p = compose(b1.p, compose(pb2.proj_f, pb3.proj_f));
  Mor f = compose(dd.f_tilde, pb3.proj_g);
  Mor l = compose(b2.l, dd.g);
  return make_bispan(std::move(p), std::move(f), std::move(l));
}

BispanCanonicalForm bispan_canonical_form(const Bispan& a) {
  std::vector<std::vector<int>> monomial(a.b.size);
  for (int e = 0; e < a.e.size; ++e) monomial[a.f.map[e]].push_back(a.p.map[e]);
  for (auto& m : monomial) std::sort(m.begin(), m.end());
  BispanCanonicalForm out(a.tgt.size);
  for (int b = 0; b < a.b.size; ++b) out[a.l.map[b]].push_back(monomial[b]);
  for (auto& part : out) std::sort(part.begin(), part.end());
  return out;
}

namespace {

BispanIsoResult plain_bispan_iso(const Bispan& a, const Bispan& b) {
  BispanIsoResult out;
  if (bispan_canonical_form(a) != bispan_canonical_form(b)) {
    out.status = SearchStatus::None;
    return out;
  }
  // bucket B-elements of both sides by (target point, monomial); match in order
  auto keyed_b = [](const Bispan& s) {
    std::vector<std::vector<int>> monomial(s.b.size);
    for (int e = 0; e < s.e.size; ++e) monomial[s.f.map[e]].push_back(s.p.map[e]);
    for (auto& m : monomial) std::sort(m.begin(), m.end());
    std::vector<std::pair<std::pair<int, std::vector<int>>, int>> k;
    for (int bb = 0; bb < s.b.size; ++bb) k.push_back({{s.l.map[bb], monomial[bb]}, bb});
    std::sort(k.begin(), k.end());
    return k;
  };
  auto ka = keyed_b(a), kb = keyed_b(b);
  std::vector<int> bmap(a.b.size);
  for (std::size_t i = 0; i < ka.size(); ++i) bmap[ka[i].second] = kb[i].second;

  // within each matched B-pair, match fibre elements sorted by p-value
  std::vector<std::vector<int>> fib_a(a.b.size), fib_b(b.b.size);
  for (int e = 0; e < a.e.size; ++e) fib_a[a.f.map[e]].push_back(e);
  for (int e = 0; e < b.e.size; ++e) fib_b[b.f.map[e]].push_back(e);
  auto by_p = [](const Mor& p) {
    return [&p](int x, int y) { return std::make_pair(p.map[x], x) < std::make_pair(p.map[y], y); };
  };
  std::vector<int> emap(a.e.size);
  for (int bb = 0; bb < a.b.size; ++bb) {
    auto fa = fib_a[bb];
    auto fb = fib_b[bmap[bb]];
    std::sort(fa.begin(), fa.end(), by_p(a.p));
    std::sort(fb.begin(), fb.end(), by_p(b.p));
    for (std::size_t t = 0; t < fa.size(); ++t) emap[fa[t]] = fb[t];
  }
  out.status = SearchStatus::Found;
  out.witness = BispanIso{Mor{a.e, b.e, std::move(emap), true, true},
                          Mor{a.b, b.b, std::move(bmap), true, true}};
  return out;
}

struct GsetIsoSearch {
  const Bispan& a;
  const Bispan& b;
  long long budget;
  long long nodes = 0;
  std::vector<Orbit> ob_a, ob_b, oe_a, oe_b;
  std::vector<int> orbit_of_bb, orbit_of_be;
  std::vector<int> b_assign, e_assign;
  std::vector<char> b_used, e_used;
  std::vector<int> bmap;

  GsetIsoSearch(const Bispan& a_, const Bispan& b_, long long budget_)
      : a(a_), b(b_), budget(budget_) {
    ob_a = orbits_of(a.b);
    ob_b = orbits_of(b.b);
    oe_a = orbits_of(a.e);
    oe_b = orbits_of(b.e);
    orbit_of_bb.assign(b.b.size, -1);
    for (std::size_t j = 0; j < ob_b.size(); ++j)
      for (int e : ob_b[j].elems) orbit_of_bb[e] = static_cast<int>(j);
    orbit_of_be.assign(b.e.size, -1);
    for (std::size_t j = 0; j < oe_b.size(); ++j)
      for (int e : oe_b[j].elems) orbit_of_be[e] = static_cast<int>(j);
    b_assign.assign(ob_a.size(), -1);
    e_assign.assign(oe_a.size(), -1);
    b_used.assign(ob_b.size(), 0);
    e_used.assign(oe_b.size(), 0);
  }

  bool out_of_budget() const { return nodes > budget; }

  std::optional<BispanIso> run() {
    if (ob_a.size() != ob_b.size() || oe_a.size() != oe_b.size()) return std::nullopt;
    if (search_b(0)) {
      const auto& grp = a.b.group();
      const int n = grp->order();
      bmap.assign(a.b.size, -1);
      for (std::size_t t = 0; t < ob_a.size(); ++t)
        for (int g = 0; g < n; ++g) bmap[a.b.act(g, ob_a[t].rep)] = b.b.act(g, b_assign[t]);
      std::vector<int> emap(a.e.size, -1);
      for (std::size_t t = 0; t < oe_a.size(); ++t)
        for (int g = 0; g < n; ++g) emap[a.e.act(g, oe_a[t].rep)] = b.e.act(g, e_assign[t]);
      return BispanIso{Mor{a.e, b.e, std::move(emap), true, true},
                       Mor{a.b, b.b, bmap, true, true}};
    }
    return std::nullopt;
  }

  bool search_b(std::size_t i) {
    if (out_of_budget()) return false;
    if (i == ob_a.size()) {
      const auto& grp = a.b.group();
      const int n = grp->order();
      bmap.assign(a.b.size, -1);
      for (std::size_t t = 0; t < ob_a.size(); ++t)
        for (int g = 0; g < n; ++g) bmap[a.b.act(g, ob_a[t].rep)] = b.b.act(g, b_assign[t]);
      return search_e(0);
    }
    int r = ob_a[i].rep;
    for (int cand = 0; cand < b.b.size; ++cand) {
      ++nodes;
      if (out_of_budget()) return false;
      if (b_used[orbit_of_bb[cand]]) continue;
      if (b.l.map[cand] != a.l.map[r]) continue;
      if (stabilizer_of(b.b, cand) != ob_a[i].stabilizer) continue;
      b_assign[i] = cand;
      b_used[orbit_of_bb[cand]] = 1;
      if (search_b(i + 1)) return true;
      b_used[orbit_of_bb[cand]] = 0;
    }
    return false;
  }

  bool search_e(std::size_t i) {
    if (out_of_budget()) return false;
    if (i == oe_a.size()) return true;
    int r = oe_a[i].rep;
    for (int cand = 0; cand < b.e.size; ++cand) {
      ++nodes;
      if (out_of_budget()) return false;
      if (e_used[orbit_of_be[cand]]) continue;
      if (b.p.map[cand] != a.p.map[r]) continue;
      if (b.f.map[cand] != bmap[a.f.map[r]]) continue;
      if (stabilizer_of(b.e, cand) != oe_a[i].stabilizer) continue;
      e_assign[i] = cand;
      e_used[orbit_of_be[cand]] = 1;
      if (search_e(i + 1)) return true;
      e_used[orbit_of_be[cand]] = 0;
    }
    return false;
  }
};

}  // namespace

BispanIsoResult bispan_isomorphic(const Bispan& a, const Bispan& b, long long node_budget) {
  BispanIsoResult out;
  if (!same_obj(a.src, b.src) || !same_obj(a.tgt, b.tgt)) return out;
  if (!a.e.is_gset()) return plain_bispan_iso(a, b);

  if (a.e.size != b.e.size || a.b.size != b.b.size) return out;
  if (bispan_canonical_form(a) != bispan_canonical_form(b)) return out;  // underlying invariant
  GsetIsoSearch search(a, b, node_budget);
  auto wit = search.run();
  if (search.out_of_budget()) {
    out.status = SearchStatus::Unknown;
    return out;
  }
  if (wit) {
    out.status = SearchStatus::Found;
    out.witness = std::move(wit);
  }
  return out;
}

BispanMorReport validate_bispan_mor(const BispanMor& m) {
  BispanMorReport rep;
  auto fail = [&](std::string why) {
    rep.pass = false;
    rep.detail = std::move(why);
    return rep;
  };
  if (!same_obj(m.source.src, m.target.src) || !same_obj(m.source.tgt, m.target.tgt))
    return fail("boundary mismatch");
  for (int e = 0; e < m.source.e.size; ++e)
    if (m.target.p.map[m.e_map.map[e]] != m.source.p.map[e])
      return fail("left triangle does not commute");
  for (int e = 0; e < m.source.e.size; ++e)
    if (m.target.f.map[m.e_map.map[e]] != m.b_map.map[m.source.f.map[e]])
      return fail("middle square does not commute");
  for (int bb = 0; bb < m.source.b.size; ++bb)
    if (m.target.l.map[m.b_map.map[bb]] != m.source.l.map[bb])
      return fail("right triangle does not commute");
  // middle square cartesian: E -> B x_{B'} E' must be a bijection
  std::map<std::pair<int, int>, int> hits;
  for (int e = 0; e < m.source.e.size; ++e) {
    auto key = std::make_pair(m.source.f.map[e], m.e_map.map[e]);
    if (!hits.emplace(key, e).second) return fail("middle square is not cartesian (not injective)");
  }
  long long compatible = 0;
  for (int bb = 0; bb < m.source.b.size; ++bb)
    for (int ee = 0; ee < m.target.e.size; ++ee)
      if (m.target.f.map[ee] == m.b_map.map[bb]) ++compatible;
  if (compatible != m.source.e.size)
    return fail("middle square is not cartesian (wrong size)");
  return rep;
}

Bispan coproduct_bispans(const Bispan& a, const Bispan& b) {
  auto ce = coproduct(a.e, b.e);
  auto cb = coproduct(a.b, b.b);
  auto cs = coproduct(a.src, b.src);
  auto ct = coproduct(a.tgt, b.tgt);
  Mor p = copair(ce, compose(cs.inl, a.p), compose(cs.inr, b.p));
  Mor f = copair(ce, compose(cb.inl, a.f), compose(cb.inr, b.f));
  Mor l = copair(cb, compose(ct.inl, a.l), compose(ct.inr, b.l));
  return make_bispan(std::move(p), std::move(f), std::move(l));
}

PastedDistributivity paste_distributivity(const Mor& l1, const Mor& l2, const Mor& f) {
  if (!same_obj(l1.cod, l2.dom) || !same_obj(l2.cod, f.dom))
    throw std::invalid_argument("paste_distributivity: maps are not composable");
  if (!l1.in_l || !l2.in_l) throw std::invalid_argument("paste_distributivity: L-flags missing");
  if (!f.in_f) throw std::invalid_argument("paste_distributivity: F-flag missing");

  DistributivityDiagram dd2 = dependent_product(l2, f);
  PullbackSquare pbx = pullback(l1, dd2.eps);  // pairs (x, A2); proj_f -> A2 = l1'
  DistributivityDiagram dd1 = dependent_product(pbx.proj_f, dd2.f_tilde);

  Mor l_out = compose(l2, l1);
  Mor g_out = compose(dd2.g, dd1.g);
  Mor proj_z = compose(dd2.pb.proj_f, dd1.pb.proj_f);
  PullbackSquare pb_out{g_out, f, dd1.pb.apex, std::move(proj_z), dd1.f_tilde};
  Mor eps_out = compose(pbx.proj_g, dd1.eps);
  DistributivityDiagram outer{l_out,          f,   dd1.w, g_out, std::move(pb_out),
                              std::move(eps_out), dd1.f_tilde, {}};
  return PastedDistributivity{std::move(dd2), std::move(dd1), std::move(outer)};
}

PastedDistributivity paste_distributivity_f(const Mor& l, const Mor& f1, const Mor& f2) {
  if (!same_obj(l.cod, f1.dom) || !same_obj(f1.cod, f2.dom))
    throw std::invalid_argument("paste_distributivity_f: maps are not composable");
  DistributivityDiagram dd1 = dependent_product(l, f1);
  DistributivityDiagram dd2 = dependent_product(dd1.g, f2);
  PullbackSquare pb3 = pullback(dd2.pb.proj_f, f1);  // pairs (A2, y); proj_g -> A2, proj_f -> y
  // transport through eps2 into A1
  std::vector<int> eps2p(pb3.apex.size);
  for (int e = 0; e < pb3.apex.size; ++e) {
    int a2 = pb3.proj_g.map[e], ypt = pb3.proj_f.map[e];
    int idx = dd1.pb.index_of(dd2.eps.map[a2], ypt);
    if (idx < 0) throw std::logic_error("paste_distributivity_f: incompatible pair");
    eps2p[e] = idx;
  }
  Mor eps2p_mor{pb3.apex, dd1.pb.apex, std::move(eps2p), dd2.eps.in_f, dd2.eps.in_l};
  Mor f_out = compose(f2, f1);
  Mor proj_w2 = compose(dd2.f_tilde, pb3.proj_g);
  PullbackSquare pb_out{dd2.g, f_out, pb3.apex, pb3.proj_f, std::move(proj_w2)};
  Mor eps_out = compose(dd1.eps, eps2p_mor);
  Mor f_tilde_out = pb_out.proj_g;
  DistributivityDiagram outer{l,        f_out,        dd2.w, dd2.g, std::move(pb_out),
                              std::move(eps_out), std::move(f_tilde_out), {}};
  return PastedDistributivity{std::move(dd1), std::move(dd2), std::move(outer)};
}

FoldDistributivityData fold_distributivity(const Mor& p) {
  if (!p.in_f) throw std::invalid_argument("fold_distributivity: p lacks the F-flag");
  auto fibs = fibers_of(p);
  for (int k = 0; k < p.cod.size; ++k)
    if (fibs[k].empty())
      throw std::invalid_argument(
          "fold_distributivity: p has an empty fibre over point " + std::to_string(k) +
          "; the section splitting w = y + c + y requires every fibre nonempty");

  const Obj& x = p.dom;
  auto cpx = coproduct(x, x);
  Mor nabla = copair(cpx, identity_mor(x), identity_mor(x));
  DistributivityDiagram dd = dependent_product(nabla, p);

  // locate the all-left / all-right sections over each point of y
  std::vector<int> s0(p.cod.size, -1), s1(p.cod.size, -1);
  for (int widx = 0; widx < dd.w.size; ++widx) {
    const auto& s = dd.sections[widx];
    bool all_left = true, all_right = true;
    for (std::size_t t = 0; t < s.values.size(); ++t) {
      if (s.values[t] != fibs[s.base][t]) all_left = false;
      if (s.values[t] != x.size + fibs[s.base][t]) all_right = false;
    }
    if (all_left) s0[s.base] = widx;
    if (all_right) s1[s.base] = widx;
  }
  for (int k = 0; k < p.cod.size; ++k) {
    if (s0[k] < 0 || s1[k] < 0) throw std::logic_error("fold_distributivity: missing section");
    if (s0[k] == s1[k]) throw std::logic_error("fold_distributivity: sections collide");
  }
  std::vector<char> is_outer(dd.w.size, 0);
  for (int k = 0; k < p.cod.size; ++k) is_outer[s0[k]] = is_outer[s1[k]] = 1;
  std::vector<int> c_idx;
  for (int widx = 0; widx < dd.w.size; ++widx)
    if (!is_outer[widx]) c_idx.push_back(widx);
  SubObj c = restrict_obj(dd.w, c_idx);
  Mor k_mor = compose(dd.g, c.incl);
  std::vector<int> pos_in_c(dd.w.size, -1);
  for (std::size_t t = 0; t < c_idx.size(); ++t) pos_in_c[c_idx[t]] = static_cast<int>(t);

  // split the part of the apex over c by the side eps lands in
  std::vector<int> cl_idx, cr_idx;
  for (int e = 0; e < dd.pb.apex.size; ++e) {
    int widx = dd.pb.proj_g.map[e];
    if (is_outer[widx]) continue;
    if (dd.eps.map[e] < x.size)
      cl_idx.push_back(e);
    else
      cr_idx.push_back(e);
  }
  SubObj cl = restrict_obj(dd.pb.apex, cl_idx);
  SubObj cr = restrict_obj(dd.pb.apex, cr_idx);
  auto proj_to = [&](const SubObj& part, bool left) {
    std::vector<int> ev(part.obj.size), pv(part.obj.size);
    for (int t = 0; t < part.obj.size; ++t) {
      int e = part.incl.map[t];
      ev[t] = left ? dd.eps.map[e] : dd.eps.map[e] - x.size;
      pv[t] = pos_in_c[dd.pb.proj_g.map[e]];
    }
    return std::make_pair(Mor{part.obj, x, std::move(ev), true, true},
                          Mor{part.obj, c.obj, std::move(pv), true, true});
  };
  auto [eps_l, p_l] = proj_to(cl, true);
  auto [eps_r, p_r] = proj_to(cr, false);

  Mor s0_mor{p.cod, dd.w, std::move(s0), true, true};
  Mor s1_mor{p.cod, dd.w, std::move(s1), true, true};
  return FoldDistributivityData{p,
                                std::move(dd),
                                std::move(s0_mor),
                                std::move(s1_mor),
                                std::move(c),
                                std::move(k_mor),
                                std::move(cl),
                                std::move(cr),
                                std::move(eps_l),
                                std::move(eps_r),
                                std::move(p_l),
                                std::move(p_r)};
}

}  // namespace bispan
