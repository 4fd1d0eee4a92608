#include "bispan/suites.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "bispan/finset.hpp"
#include "bispan/span.hpp"

namespace bispan {

namespace {

std::string mor_str(const Mor& m) {
  std::ostringstream os;
  os << m.dom.size << "->" << m.cod.size << " [";
  for (std::size_t i = 0; i < m.map.size(); ++i) os << (i ? "," : "") << m.map[i];
  os << "]";
  return os.str();
}

std::string bispan_str(const Bispan& b) {
  std::ostringstream os;
  os << "(" << b.src.size << " <- " << b.e.size << " -> " << b.b.size << " -> " << b.tgt.size
     << "; p=" << mor_str(b.p) << " f=" << mor_str(b.f) << " l=" << mor_str(b.l) << ")";
  return os.str();
}

/// All bispans between src and tgt with middle carriers bounded by max_mid.
std::vector<Bispan> bispans_between(const GroupPtr& g, const Obj& src, const Obj& tgt,
                                    int max_mid) {
  std::vector<Bispan> out;
  for (const auto& e : objects_upto(g, max_mid))
    for (const auto& b : objects_upto(g, max_mid))
      for (const auto& pm : all_maps(e, src))
        for (const auto& fm : all_maps(e, b))
          for (const auto& lm : all_maps(b, tgt))
            out.push_back(make_bispan(Mor{e, src, pm, true, true}, Mor{e, b, fm, true, true},
                                      Mor{b, tgt, lm, true, true}));
  return out;
}

bool isomorphic_ok(const Bispan& a, const Bispan& b) {
  auto res = bispan_isomorphic(a, b);
  return res.status == SearchStatus::Found;
}

}  // namespace

std::vector<std::vector<long long>> probe_grid(int arity, int top, int limit) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> v(arity, 0);
  while (static_cast<int>(out.size()) < limit) {
    out.push_back(v);
    int i = arity - 1;
    while (i >= 0 && v[i] == top) v[i--] = 0;
    if (i < 0) break;
    ++v[i];
  }
  return out;
}

bool bispan_iso_bruteforce(const Bispan& a, const Bispan& b) {
  if (a.e.size != b.e.size || a.b.size != b.b.size) return false;
  if (!same_obj(a.src, b.src) || !same_obj(a.tgt, b.tgt)) return false;
  std::vector<int> eperm(a.e.size), bperm(a.b.size);
  std::iota(eperm.begin(), eperm.end(), 0);
  do {
    std::iota(bperm.begin(), bperm.end(), 0);
    do {
      BispanMor m{a, b, Mor{a.e, b.e, eperm, true, true}, Mor{a.b, b.b, bperm, true, true}};
      if (a.e.is_gset() &&
          (!is_equivariant(a.e, b.e, eperm) || !is_equivariant(a.b, b.b, bperm)))
        continue;
      if (validate_bispan_mor(m).pass) return true;
    } while (std::next_permutation(bperm.begin(), bperm.end()));
  } while (std::next_permutation(eperm.begin(), eperm.end()));
  return false;
}

SuiteReport suite_universal_property(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "universal-property";
  auto objects = objects_upto(p.group, p.max_size);
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (const auto& z : objects)
        for (const auto& lm : all_maps(x, y))
          for (const auto& fm : all_maps(y, z)) {
            Mor l{x, y, lm, true, true};
            Mor f{y, z, fm, true, true};
            auto dd = dependent_product(l, f);
            auto up = check_universal_property(dd, p.probe_bound);
            ++rep.cases;
            if (!up.pass) {
              rep.fail({"universal property failed: " + up.detail + " for l=" + mor_str(l) +
                            " f=" + mor_str(f),
                        {{"l", l}, {"f", f}},
                        {}});
              return rep;
            }
          }
  return rep;
}

SuiteReport suite_section_count(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "section-count";
  Rng rng(p.seed);
  std::uniform_int_distribution<int> size_d(0, p.max_size);
  for (long long s = 0; s < p.samples; ++s) {
    Obj x = make_set(size_d(rng)), y = make_set(size_d(rng)), z = make_set(size_d(rng));
    if ((x.size > 0 && y.size == 0) || (y.size > 0 && z.size == 0)) {
      --s;
      continue;
    }
    Mor l = random_map(rng, x, y);
    Mor f = random_map(rng, y, z);
    auto dd = dependent_product(l, f);
    std::vector<long long> lf(y.size, 0), wk(z.size, 0);
    for (int i = 0; i < x.size; ++i) ++lf[l.map[i]];
    for (int e = 0; e < dd.w.size; ++e) ++wk[dd.g.map[e]];
    ++rep.cases;
    for (int k = 0; k < z.size; ++k) {
      long long expect = 1;
      for (int j = 0; j < y.size; ++j)
        if (f.map[j] == k) expect *= lf[j];
      if (expect != wk[k]) {
        rep.fail({"section count mismatch at point " + std::to_string(k) + ": expected " +
                      std::to_string(expect) + ", got " + std::to_string(wk[k]) +
                      " for l=" + mor_str(l) + " f=" + mor_str(f),
                  {{"l", l}, {"f", f}},
                  {}});
        return rep;
      }
    }
  }
  return rep;
}

SuiteReport suite_associativity(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "associativity";
  const long long size_cap = 100000;

  // exhaustive over carriers <= 2
  auto objects = objects_upto(p.group, 2);
  std::map<std::pair<int, int>, std::vector<Bispan>> by_boundary;
  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = 0; j < objects.size(); ++j) {
      auto key = std::make_pair(static_cast<int>(i), static_cast<int>(j));
      by_boundary[key] = bispans_between(p.group, objects[i], objects[j], 2);
    }
  const int nobj = static_cast<int>(objects.size());
  for (int i = 0; i < nobj; ++i)
    for (int j = 0; j < nobj; ++j)
      for (int k = 0; k < nobj; ++k)
        for (int l = 0; l < nobj; ++l) {
          const auto& bs1 = by_boundary[{i, j}];
          const auto& bs2 = by_boundary[{j, k}];
          const auto& bs3 = by_boundary[{k, l}];
          for (const auto& b1 : bs1)
            for (const auto& b2 : bs2) {
              Bispan c12 = compose_bispans(b2, b1);
              for (const auto& b3 : bs3) {
                Bispan left = compose_bispans(b3, c12);
                Bispan right = compose_bispans(compose_bispans(b3, b2), b1);
                ++rep.cases;
                if (!isomorphic_ok(left, right)) {
                  rep.fail({"associativity failed (exhaustive) for " + bispan_str(b1) + " ; " +
                                bispan_str(b2) + " ; " + bispan_str(b3),
                            {},
                            {{"b1", b1}, {"b2", b2}, {"b3", b3}}});
                  return rep;
                }
              }
            }
        }

  // random triples with carriers <= max_size
  Rng rng(p.seed);
  long long done = 0, attempts = 0;
  while (done < p.samples && attempts < p.samples * 200) {
    ++attempts;
    Obj oi = random_object(rng, p.group, p.max_size);
    Obj oj = random_object(rng, p.group, p.max_size);
    Obj ok = random_object(rng, p.group, p.max_size);
    Obj ol = random_object(rng, p.group, p.max_size);
    Bispan b1 = random_bispan(rng, p.group, oi, oj, p.max_size);
    Bispan b2 = random_bispan(rng, p.group, oj, ok, p.max_size);
    Bispan b3 = random_bispan(rng, p.group, ok, ol, p.max_size);
    if (predicted_composite_size(b2, b1) > size_cap ||
        predicted_composite_size(b3, b2) > size_cap) {
      ++rep.resampled;
      continue;
    }
    Bispan c12 = compose_bispans(b2, b1);
    if (predicted_composite_size(b3, c12) > size_cap) {
      ++rep.resampled;
      continue;
    }
    Bispan c23 = compose_bispans(b3, b2);
    if (predicted_composite_size(c23, b1) > size_cap) {
      ++rep.resampled;
      continue;
    }
    Bispan left = compose_bispans(b3, c12);
    Bispan right = compose_bispans(c23, b1);
    ++done;
    ++rep.cases;
    if (!isomorphic_ok(left, right)) {
      rep.fail({"associativity failed (random) for " + bispan_str(b1) + " ; " + bispan_str(b2) +
                    " ; " + bispan_str(b3),
                {},
                {{"b1", b1}, {"b2", b2}, {"b3", b3}}});
      return rep;
    }
  }
  if (done < p.samples) {
    rep.pass = false;
    rep.note = "sampler exhausted attempts before reaching the requested sample count";
  }
  return rep;
}

SuiteReport suite_unit_laws(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "unit-laws";
  auto objects = objects_upto(p.group, std::min(p.max_size, 2));
  for (const auto& src : objects)
    for (const auto& tgt : objects)
      for (const auto& b : bispans_between(p.group, src, tgt, 2)) {
        Bispan left = compose_bispans(identity_bispan(tgt), b);
        Bispan right = compose_bispans(b, identity_bispan(src));
        rep.cases += 2;
        if (!isomorphic_ok(left, b) || !isomorphic_ok(right, b)) {
          rep.fail({"unit law failed for " + bispan_str(b), {}, {{"b", b}}});
          return rep;
        }
      }
  return rep;
}

namespace {

template <class S>
bool functorial_over(const Bispan& b1, const Bispan& b2, const S& sr, int top, int limit,
                     std::string* why) {
  auto grid = probe_grid(b1.src.size, top, limit);
  std::vector<std::vector<typename S::value_type>> probes;
  probes.reserve(grid.size());
  for (const auto& v : grid) {
    std::vector<typename S::value_type> pv;
    pv.reserve(v.size());
    for (long long t : v) pv.push_back(sr.from_int(t));
    probes.push_back(std::move(pv));
  }
  auto r = check_functoriality(b1, b2, sr, probes);
  if (!r.pass && why) *why = r.detail;
  return r.pass;
}

}  // namespace

SuiteReport suite_functoriality(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "functoriality";
  auto run_pair = [&](const Bispan& b1, const Bispan& b2) -> bool {
    std::string why;
    bool ok = functorial_over(b1, b2, NatSemiring{}, 5, 200, &why) &&
              functorial_over(b1, b2, IntSemiring{}, 5, 200, &why) &&
              functorial_over(b1, b2, BoolSemiring{}, 1, 200, &why) &&
              functorial_over(b1, b2, TropicalSemiring{}, 5, 200, &why);
    ++rep.cases;
    if (!ok)
      rep.fail({"functoriality failed (" + why + ") for " + bispan_str(b1) + " ; " +
                    bispan_str(b2),
                {},
                {{"b1", b1}, {"b2", b2}}});
    return ok;
  };

  // exhaustive over carriers <= 2
  auto objects = objects_upto(p.group, 2);
  for (const auto& src : objects)
    for (const auto& mid : objects) {
      auto firsts = bispans_between(p.group, src, mid, 2);
      for (const auto& tgt : objects) {
        auto seconds = bispans_between(p.group, mid, tgt, 2);
        for (const auto& b1 : firsts)
          for (const auto& b2 : seconds)
            if (!run_pair(b1, b2)) return rep;
      }
    }

  // random pairs at carriers <= max_size
  Rng rng(p.seed);
  for (long long s = 0; s < p.samples; ++s) {
    Obj oi = random_object(rng, p.group, p.max_size);
    Obj oj = random_object(rng, p.group, p.max_size);
    Obj ok = random_object(rng, p.group, p.max_size);
    Bispan b1 = random_bispan(rng, p.group, oi, oj, p.max_size);
    Bispan b2 = random_bispan(rng, p.group, oj, ok, p.max_size);
    if (predicted_composite_size(b2, b1) > 100000) {
      ++rep.resampled;
      --s;
      continue;
    }
    if (!run_pair(b1, b2)) return rep;
  }
  return rep;
}

SuiteReport suite_oracle_completeness(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "oracle-completeness";

  // exhaustive cross-validation against brute force at carriers <= 2
  {
    auto objects = plain_objects_upto(2);
    for (const auto& src : objects)
      for (const auto& tgt : objects) {
        auto all = bispans_between(nullptr, src, tgt, 2);
        for (std::size_t i = 0; i < all.size(); ++i)
          for (std::size_t j = i; j < all.size(); ++j) {
            bool forms_equal = polynomial_oracle(all[i]) == polynomial_oracle(all[j]);
            bool brute = bispan_iso_bruteforce(all[i], all[j]);
            ++rep.cases;
            if (forms_equal != brute) {
              rep.fail({std::string("canonical form vs brute force disagree (") +
                            (forms_equal ? "equal forms, no iso" : "iso, distinct forms") +
                            ") for " + bispan_str(all[i]) + " ; " + bispan_str(all[j]),
                        {},
                        {{"a", all[i]}, {"b", all[j]}}});
              return rep;
            }
          }
      }
  }

  // bucket-exhaustive completeness at carriers <= max_size
  auto objects = plain_objects_upto(p.max_size);
  for (const auto& src : objects)
    for (const auto& tgt : objects) {
      auto all = bispans_between(nullptr, src, tgt, p.max_size);
      std::map<BispanCanonicalForm, std::size_t> rep_of_bucket;
      for (std::size_t i = 0; i < all.size(); ++i) {
        auto form = bispan_canonical_form(all[i]);
        auto [it, fresh] = rep_of_bucket.emplace(std::move(form), i);
        ++rep.cases;
        if (fresh) continue;
        auto res = bispan_isomorphic(all[it->second], all[i]);
        if (res.status != SearchStatus::Found) {
          rep.fail({"equal canonical forms but no isomorphism found for " +
                        bispan_str(all[it->second]) + " ; " + bispan_str(all[i]),
                    {},
                    {{"a", all[it->second]}, {"b", all[i]}}});
          return rep;
        }
        BispanMor m{all[it->second], all[i], res.witness->e_map, res.witness->b_map};
        auto val = validate_bispan_mor(m);
        bool bijective =
            std::set<int>(m.e_map.map.begin(), m.e_map.map.end()).size() == m.e_map.map.size() &&
            std::set<int>(m.b_map.map.begin(), m.b_map.map.end()).size() == m.b_map.map.size();
        if (!val.pass || !bijective) {
          rep.fail({"constructed isomorphism invalid (" + val.detail + ") for " +
                        bispan_str(all[it->second]) + " ; " + bispan_str(all[i]),
                    {},
                    {{"a", all[it->second]}, {"b", all[i]}}});
          return rep;
        }
      }
    }
  return rep;
}

SuiteReport suite_double_coset(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "double-coset";
  std::vector<GroupPtr> groups;
  if (p.group)
    groups.push_back(p.group);
  else
    groups = {Group::cyclic(2), Group::cyclic(3), Group::cyclic(4), Group::klein_four(),
              Group::symmetric(3)};
  for (const auto& g : groups) {
    for (int l = 0; l < g->subgroup_count(); ++l)
      for (int h = 0; h < g->subgroup_count(); ++h) {
        if (!g->subgroup_contains(l, h)) continue;
        for (int k = 0; k < g->subgroup_count(); ++k) {
          if (!g->subgroup_contains(l, k)) continue;
          auto dec = double_coset_decomposition(g, h, k, l);
          ++rep.cases;
          // blocks partition the apex
          std::vector<char> seen(dec.pullback_square.apex.size, 0);
          long long total = 0;
          bool bad = false;
          for (const auto& blk : dec.blocks) {
            total += static_cast<long long>(blk.orbit.size());
            for (int e : blk.orbit) {
              if (seen[e]) bad = true;
              seen[e] = 1;
            }
            auto part = restrict_obj(dec.pullback_square.apex, blk.orbit);
            if (!gset_isomorphic(part.obj, coset_space(g, blk.stabilizer))) bad = true;
          }
          if (total != dec.pullback_square.apex.size) bad = true;
          // whole-object comparison
          Obj rhs = trivial_gobj(g, 0);
          for (const auto& blk : dec.blocks) rhs = coproduct(rhs, coset_space(g, blk.stabilizer)).obj;
          if (!gset_isomorphic(dec.pullback_square.apex, rhs)) bad = true;
          if (bad) {
            rep.fail({"double-coset formula failed for " + g->name() + " with subgroup orders |H|=" +
                          std::to_string(g->subgroup_order(h)) + " |K|=" +
                          std::to_string(g->subgroup_order(k)) + " |L|=" +
                          std::to_string(g->subgroup_order(l)),
                      {},
                      {}});
            return rep;
          }
        }
      }
  }
  return rep;
}

SuiteReport suite_norm(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "norm";
  auto c2 = Group::cyclic(2);
  TambaraContext ctx(c2);
  int triv = c2->trivial_subgroup();
  int full = c2->full_subgroup();
  Obj base1 = coset_space(c2, triv);
  Mor q = quotient_map(c2, triv, full);

  for (long long n = 0; n <= std::max<long long>(6, p.max_size); ++n) {
    BurnsideElement x = ctx.zero(base1);
    x.counts[0][0] = n;
    BurnsideElement got = ctx.norm(x, q);
    BurnsideElement oracle = ctx.norm_materialized(x, q);
    BurnsideElement closed = ctx.zero(q.cod);
    closed.counts[0][0] = n;                    // n . [C2/C2]
    closed.counts[0][1] = n * (n - 1) / 2;      // (n^2-n)/2 . [C2/e]
    rep.cases += 2;
    if (!ctx.equal(got, closed) || !ctx.equal(oracle, closed)) {
      rep.fail({"C2 norm mismatch at n=" + std::to_string(n) + ": marks=" + ctx.show(got) +
                    " sections=" + ctx.show(oracle) + " closed=" + ctx.show(closed),
                {},
                {}});
      return rep;
    }
  }

  // norm is multiplicative on samples; norm of the unit is the unit
  for (long long a = 0; a <= 3; ++a)
    for (long long b = 0; b <= 3; ++b) {
      BurnsideElement xa = ctx.zero(base1), xb = ctx.zero(base1);
      xa.counts[0][0] = a;
      xb.counts[0][0] = b;
      BurnsideElement lhs = ctx.norm(ctx.mul(xa, xb), q);
      BurnsideElement rhs = ctx.mul(ctx.norm(xa, q), ctx.norm(xb, q));
      ++rep.cases;
      if (!ctx.equal(lhs, rhs)) {
        rep.fail({"norm not multiplicative at a=" + std::to_string(a) + " b=" + std::to_string(b),
                  {},
                  {}});
        return rep;
      }
    }
  BurnsideElement unit = ctx.one(base1);
  ++rep.cases;
  if (!ctx.equal(ctx.norm(unit, q), ctx.one(q.cod))) {
    rep.fail({"norm of the unit is not the unit", {}, {}});
    return rep;
  }
  return rep;
}

SuiteReport suite_degree(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "degree";
  for (int dn = 0; dn <= p.max_size; ++dn)
    for (int cn = 0; cn <= p.max_size; ++cn) {
      Obj dom = make_set(dn), cod = make_set(cn);
      for (const auto& m : all_maps(dom, cod)) {
        Mor pm{dom, cod, m, true, true};
        std::vector<int> fib(cn, 0);
        for (int v : m) ++fib[v];
        int maxf = 0;
        for (int v : fib) maxf = std::max(maxf, v);
        auto meas = finite_difference_degree(compile(norm_bispan(pm)), maxf + 2);
        ++rep.cases;
        bool ok = meas.certified;
        for (int j = 0; j < cn && ok; ++j)
          if (meas.total[j] != fib[j]) ok = false;
        int overall = 0;
        for (int j = 0; j < cn; ++j) overall = std::max(overall, meas.total[j]);
        if (cn == 0) overall = 0;
        if (overall != maxf) ok = false;
        if (!ok) {
          rep.fail({"finite-difference degree mismatch for p=" + mor_str(pm) +
                        (meas.certified ? "" : " (" + meas.detail + ")"),
                    {{"p", pm}},
                    {}});
          return rep;
        }
      }
    }
  return rep;
}

SuiteReport suite_degree_axioms(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "degree-axioms";
  const GroupPtr& g = p.group;
  auto codomains = objects_upto(g, p.max_size);
  for (const auto& y : codomains) {
    auto maps_in = maps_into_upto_source_iso(y, p.max_size);
    // axioms per map
    for (const auto& f : maps_in) {
      auto dec = degree_decomposition(f);
      ++rep.cases;
      // (1) the parts partition the codomain with constant fibre size
      std::vector<char> covered(y.size, 0);
      long long weighted = 0;
      bool bad = false;
      for (const auto& comp : dec.components) {
        for (int t = 0; t < comp.part.obj.size; ++t) {
          int j = comp.part.incl.map[t];
          if (covered[j]) bad = true;
          covered[j] = 1;
        }
        auto rfib = fibers_of(comp.restricted);
        for (const auto& fb : rfib)
          if (static_cast<int>(fb.size()) != comp.degree) bad = true;
        weighted += static_cast<long long>(comp.degree) * comp.part.obj.size;
      }
      for (char c : covered)
        if (!c) bad = true;
      // sum of n.|y_n| counts the domain
      if (weighted != f.dom.size) bad = true;
      // (2) degree-0 components have empty domain part
      if (const auto* c0 = dec.component(0))
        if (c0->dom_part.obj.size != 0) bad = true;
      if (bad) {
        rep.fail({"degree decomposition axioms (1)/(2) failed for f=" + mor_str(f), {{"f", f}}, {}});
        return rep;
      }
      // (3) stability under base change, probes |w| <= 3
      for (const auto& w : objects_upto(g, std::min(3, p.probe_bound))) {
        for (const auto& wm : all_maps(w, y)) {
          Mor zeta{w, y, wm, true, true};
          PullbackSquare sq = pullback(f, zeta);
          auto pulled = degree_decomposition(sq.proj_f);  // w x_y x -> w
          ++rep.cases;
          // the degree of each w-point must match the degree of its image
          std::vector<int> deg_of_y(y.size, -1), deg_of_w(w.size, -2);
          for (const auto& comp : dec.components)
            for (int t = 0; t < comp.part.obj.size; ++t) deg_of_y[comp.part.incl.map[t]] = comp.degree;
          for (const auto& comp : pulled.components)
            for (int t = 0; t < comp.part.obj.size; ++t) deg_of_w[comp.part.incl.map[t]] = comp.degree;
          bool ok = true;
          for (int i = 0; i < w.size; ++i)
            if (deg_of_w[i] != deg_of_y[wm[i]]) ok = false;
          if (!ok) {
            rep.fail({"degree not stable under base change for f=" + mor_str(f) +
                          " along " + mor_str(zeta),
                      {{"f", f}, {"zeta", zeta}},
                      {}});
            return rep;
          }
        }
      }
    }
    // (4) + block formula: pairs with a joint source budget
    for (const auto& f : maps_in)
      for (const auto& gm : maps_in) {
        if (f.dom.size + gm.dom.size > p.max_size) continue;
        ++rep.cases;
        try {
          auto fold = fold_degree_decomposition(f, gm);
          auto df = degree_decomposition(f);
          auto dg = degree_decomposition(gm);
          // constant-degree additivity
          if (df.components.size() == 1 && dg.components.size() == 1 && y.size > 0) {
            int expect = df.components[0].degree + dg.components[0].degree;
            if (fold.decomposition.components.size() != 1 ||
                fold.decomposition.components[0].degree != expect)
              throw std::logic_error("constant-degree additivity failed");
          }
        } catch (const std::exception& ex) {
          rep.fail({std::string("fold/degree failure: ") + ex.what() + " for f=" + mor_str(f) +
                        " g=" + mor_str(gm),
                    {{"f", f}, {"g", gm}},
                    {}});
          return rep;
        }
      }
  }

  // dependent products of constant-fibre maps have fibre size n^m
  if (!g) {
    for (int n = 0; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m)
        for (int base = 1; base <= 2; ++base) {
          Obj z = make_set(base), y = make_set(base * m), x = make_set(base * m * n);
          std::vector<int> fm(y.size), lm(x.size);
          for (int j = 0; j < y.size; ++j) fm[j] = j / m;
          for (int i = 0; i < x.size; ++i) lm[i] = i / n;
          Mor f{y, z, fm, true, true};
          Mor l{x, y, lm, true, true};
          auto dd = dependent_product(l, f);
          std::vector<long long> wk(z.size, 0);
          for (int e = 0; e < dd.w.size; ++e) ++wk[dd.g.map[e]];
          long long expect = 1;
          for (int t = 0; t < m; ++t) expect *= n;
          ++rep.cases;
          for (long long v : wk)
            if (v != expect) {
              rep.fail({"dependent product fibre size " + std::to_string(v) + " != n^m = " +
                            std::to_string(expect),
                        {{"l", l}, {"f", f}},
                        {}});
              return rep;
            }
        }
  }
  return rep;
}

SuiteReport suite_splitting(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "splitting";
  for (int cn = 0; cn <= std::min(p.max_size, 4); ++cn)
    for (int dn = cn; dn <= p.max_size; ++dn) {
      Obj dom = make_set(dn), cod = make_set(cn);
      for (const auto& m : all_maps(dom, cod)) {
        std::vector<int> fib(cn, 0);
        for (int v : m) ++fib[v];
        bool surj = true;
        for (int v : fib)
          if (v == 0) surj = false;
        if (!surj) continue;
        Mor pm{dom, cod, m, true, true};
        auto fd = fold_distributivity(pm);
        ++rep.cases;
        // |w_z| = 2^{fibre}, |c_z| = 2^{fibre} - 2
        std::vector<long long> wz(cn, 0), cz(cn, 0);
        for (int e = 0; e < fd.dd.w.size; ++e) ++wz[fd.dd.g.map[e]];
        for (int t = 0; t < fd.c.obj.size; ++t) ++cz[fd.k.map[t]];
        for (int k = 0; k < cn; ++k) {
          long long pw = 1ll << fib[k];
          if (wz[k] != pw || cz[k] != pw - 2) {
            rep.fail({"section counts wrong over point " + std::to_string(k) + " for p=" +
                          mor_str(pm),
                      {{"p", pm}},
                      {}});
            return rep;
          }
        }
        // no degree-0 part in the two projections
        for (const Mor* proj : {&fd.p_l, &fd.p_r}) {
          auto dec = degree_decomposition(*proj);
          if (const auto* c0 = dec.component(0)) {
            if (c0->part.obj.size > 0) {
              rep.fail({"projection acquired a degree-0 part for p=" + mor_str(pm), {{"p", pm}}, {}});
              return rep;
            }
          }
        }
        // binomial splitting over nat and int
        if (cn <= 4 && dn <= 4) {
          auto grid = probe_grid(2 * dn, 4, 200);
          std::vector<std::pair<std::vector<BigInt>, std::vector<BigInt>>> probes;
          for (const auto& v : grid) {
            std::vector<BigInt> ev(v.begin(), v.begin() + dn), fv(v.begin() + dn, v.end());
            probes.push_back({std::move(ev), std::move(fv)});
          }
          auto rn = check_binomial_splitting(fd, NatSemiring{}, probes);
          auto ri = check_binomial_splitting(fd, IntSemiring{}, probes);
          rep.cases += rn.probes + ri.probes;
          if (!rn.pass || !ri.pass) {
            rep.fail({"binomial splitting failed for p=" + mor_str(pm) + ": " +
                          (rn.pass ? ri.detail : rn.detail),
                      {{"p", pm}},
                      {}});
            return rep;
          }
        }
      }
    }
  return rep;
}

SuiteReport suite_pasting(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "pasting";
  auto objects = objects_upto(p.group, p.max_size);
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (const auto& z : objects)
        for (const auto& w : objects)
          for (const auto& l1m : all_maps(x, y))
            for (const auto& l2m : all_maps(y, z))
              for (const auto& fm : all_maps(z, w)) {
                Mor l1{x, y, l1m, true, true};
                Mor l2{y, z, l2m, true, true};
                Mor f{z, w, fm, true, true};
                auto pasted = paste_distributivity(l1, l2, f);
                auto up = check_universal_property(pasted.outer, p.probe_bound);
                ++rep.cases;
                if (!up.pass) {
                  rep.fail({"pasted diagram failed the universal property: " + up.detail +
                                " for l1=" + mor_str(l1) + " l2=" + mor_str(l2) + " f=" +
                                mor_str(f),
                            {{"l1", l1}, {"l2", l2}, {"f", f}},
                            {}});
                  return rep;
                }
                auto pasted_f = paste_distributivity_f(l1, l2, f);
                auto up2 = check_universal_property(pasted_f.outer, p.probe_bound);
                ++rep.cases;
                if (!up2.pass) {
                  rep.fail({"F-composite pasted diagram failed: " + up2.detail + " for l=" +
                                mor_str(l1) + " f1=" + mor_str(l2) + " f2=" + mor_str(f),
                            {{"l", l1}, {"f1", l2}, {"f2", f}},
                            {}});
                  return rep;
                }
              }
  return rep;
}

SuiteReport suite_tambara_functoriality(const SuiteParams& p) {
  SuiteReport rep;
  rep.name = "tambara-functoriality";
  std::vector<GroupPtr> groups;
  if (p.group)
    groups.push_back(p.group);
  else
    groups = {Group::cyclic(2), Group::symmetric(3)};

  for (const auto& g : groups) {
    TambaraContext ctx(g);
    // orbit objects, one per subgroup conjugacy class
    std::vector<Obj> orbits;
    for (int c = 0; c < g->class_count(); ++c)
      orbits.push_back(coset_space(g, g->class_representative(c)));
    const int no = static_cast<int>(orbits.size());

    // all bispans with orbit corners, deduplicated up to isomorphism
    std::map<std::pair<int, int>, std::vector<Bispan>> reps;
    for (int si = 0; si < no; ++si)
      for (int ti = 0; ti < no; ++ti) {
        std::vector<Bispan> rs;
        for (int ei = 0; ei < no; ++ei)
          for (int bi = 0; bi < no; ++bi)
            for (const auto& pm : all_maps(orbits[ei], orbits[si]))
              for (const auto& fm : all_maps(orbits[ei], orbits[bi]))
                for (const auto& lm : all_maps(orbits[bi], orbits[ti])) {
                  Bispan cand = make_bispan(Mor{orbits[ei], orbits[si], pm, true, true},
                                            Mor{orbits[ei], orbits[bi], fm, true, true},
                                            Mor{orbits[bi], orbits[ti], lm, true, true});
                  bool fresh = true;
                  for (const auto& r : rs)
                    if (bispan_isomorphic(r, cand).status == SearchStatus::Found) {
                      fresh = false;
                      break;
                    }
                  if (fresh) rs.push_back(std::move(cand));
                }
        reps[{si, ti}] = std::move(rs);
      }

    for (int si = 0; si < no; ++si)
      for (int mi = 0; mi < no; ++mi)
        for (int ti = 0; ti < no; ++ti) {
          const auto& firsts = reps[{si, mi}];
          const auto& seconds = reps[{mi, ti}];
          for (const auto& b1 : firsts)
            for (const auto& b2 : seconds) {
              Bispan comp = compose_bispans(b2, b1);
              int stab = orbits_of(orbits[si]).front().stabilizer;
              int nclasses = ctx.class_positions(stab);
              for (int pos = 0; pos < nclasses; ++pos) {
                BurnsideElement basis = ctx.basis(orbits[si], 0, pos);
                BurnsideElement lhs = ctx.evaluate_bispan(comp, basis);
                BurnsideElement rhs = ctx.evaluate_bispan(b2, ctx.evaluate_bispan(b1, basis));
                ++rep.cases;
                if (!ctx.equal(lhs, rhs)) {
                  rep.fail({"Tambara functoriality failed over " + g->name() + " at basis " +
                                ctx.basis_name(stab, pos) + ": composite=" + ctx.show(lhs) +
                                " vs staged=" + ctx.show(rhs),
                            {},
                            {{"b1", b1}, {"b2", b2}}});
                  return rep;
                }
              }
            }
        }
  }
  return rep;
}

}  // namespace bispan
