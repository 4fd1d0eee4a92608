#include "bispan/span.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "bispan/gset.hpp"

namespace bispan {

Span make_span(Mor back, Mor fwd) {
  if (!same_obj(back.dom, fwd.dom)) throw std::invalid_argument("span legs must share the apex");
  if (!fwd.in_f) throw std::invalid_argument("span forward leg must carry the F-flag");
  return Span{back.cod, fwd.cod, back.dom, std::move(back), std::move(fwd)};
}

Span identity_span(const Obj& x) { return make_span(identity_mor(x), identity_mor(x)); }

Span embed_backward(const Mor& f) { return make_span(f, identity_mor(f.dom)); }

Span embed_forward(const Mor& f) {
  if (!f.in_f) throw std::invalid_argument("embed_forward: morphism lacks the F-flag");
  return make_span(identity_mor(f.dom), f);
}

Span compose_spans(const Span& s2, const Span& s1) {
  if (!same_obj(s1.tgt, s2.src)) throw std::invalid_argument("compose_spans: boundary mismatch");
  PullbackSquare sq = pullback(s1.fwd, s2.back);  // pairs (apex1 pt, apex2 pt)
  Mor back = compose(s1.back, sq.proj_g);
  Mor fwd = compose(s2.fwd, sq.proj_f);
  return make_span(std::move(back), std::move(fwd));
}

bool validate_span_mor(const SpanMor& m, std::string* why) {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  if (!same_obj(m.source.src, m.target.src) || !same_obj(m.source.tgt, m.target.tgt))
    return fail("boundary mismatch");
  if (!same_obj(m.mediating.dom, m.source.apex) || !same_obj(m.mediating.cod, m.target.apex))
    return fail("mediating map has wrong endpoints");
  for (int e = 0; e < m.source.apex.size; ++e) {
    if (m.target.back.map[m.mediating.map[e]] != m.source.back.map[e])
      return fail("back triangle does not commute");
    if (m.target.fwd.map[m.mediating.map[e]] != m.source.fwd.map[e])
      return fail("forward triangle does not commute");
  }
  return true;
}

SpanMor identity_span_mor(const Span& s) { return SpanMor{s, s, identity_mor(s.apex)}; }

SpanMor spanmor_vcompose(const SpanMor& m2, const SpanMor& m1) {
  if (!same_obj(m1.target.apex, m2.source.apex) || !same_mor(m1.target.back, m2.source.back) ||
      !same_mor(m1.target.fwd, m2.source.fwd))
    throw std::invalid_argument("spanmor_vcompose: middle spans differ");
  return SpanMor{m1.source, m2.target, compose(m2.mediating, m1.mediating)};
}

SpanMor whisker_left(const Span& s, const SpanMor& m) {
  Span src = compose_spans(s, m.source);
  Span tgt = compose_spans(s, m.target);
  PullbackSquare sq_s = pullback(m.source.fwd, s.back);
  PullbackSquare sq_t = pullback(m.target.fwd, s.back);
  std::vector<int> med(src.apex.size);
  for (int e = 0; e < src.apex.size; ++e) {
    int idx = sq_t.index_of(m.mediating.map[sq_s.proj_g.map[e]], sq_s.proj_f.map[e]);
    if (idx < 0) throw std::logic_error("whisker_left: image leaves the pullback");
    med[e] = idx;
  }
  return SpanMor{std::move(src), std::move(tgt),
                 Mor{sq_s.apex, sq_t.apex, std::move(med), true, true}};
}

SpanMor whisker_right(const SpanMor& m, const Span& s) {
  Span src = compose_spans(m.source, s);
  Span tgt = compose_spans(m.target, s);
  PullbackSquare sq_s = pullback(s.fwd, m.source.back);
  PullbackSquare sq_t = pullback(s.fwd, m.target.back);
  std::vector<int> med(src.apex.size);
  for (int e = 0; e < src.apex.size; ++e) {
    int idx = sq_t.index_of(sq_s.proj_g.map[e], m.mediating.map[sq_s.proj_f.map[e]]);
    if (idx < 0) throw std::logic_error("whisker_right: image leaves the pullback");
    med[e] = idx;
  }
  return SpanMor{std::move(src), std::move(tgt),
                 Mor{sq_s.apex, sq_t.apex, std::move(med), true, true}};
}

SpanMor adjunction_unit(const Mor& f) {
  if (!f.in_f) throw std::invalid_argument("adjunction_unit: morphism lacks the F-flag");
  Span src = identity_span(f.dom);
  Span tgt = compose_spans(embed_backward(f), embed_forward(f));  // x <- x x_y x -> x
  PullbackSquare sq = pullback(f, f);
  std::vector<int> med(f.dom.size);
  for (int a = 0; a < f.dom.size; ++a) {
    int idx = sq.index_of(a, a);
    if (idx < 0) throw std::logic_error("adjunction_unit: missing diagonal element");
    med[a] = idx;
  }
  SpanMor out{std::move(src), std::move(tgt), Mor{f.dom, sq.apex, std::move(med), true, true}};
  std::string why;
  if (!validate_span_mor(out, &why)) throw std::logic_error("adjunction_unit: " + why);
  return out;
}

SpanMor adjunction_counit(const Mor& f) {
  if (!f.in_f) throw std::invalid_argument("adjunction_counit: morphism lacks the F-flag");
  Span src = compose_spans(embed_forward(f), embed_backward(f));  // y <- x' -> y, x' ~ x
  Span tgt = identity_span(f.cod);
  std::vector<int> med(src.apex.size);
  for (int e = 0; e < src.apex.size; ++e) med[e] = src.back.map[e];
  Mor mediating{src.apex, tgt.apex, std::move(med), true, true};
  SpanMor out{std::move(src), std::move(tgt), std::move(mediating)};
  std::string why;
  if (!validate_span_mor(out, &why)) throw std::logic_error("adjunction_counit: " + why);
  return out;
}

std::vector<std::vector<int>> counting_matrix(const Span& s) {
  std::vector<std::vector<int>> m(s.src.size, std::vector<int>(s.tgt.size, 0));
  for (int e = 0; e < s.apex.size; ++e) ++m[s.back.map[e]][s.fwd.map[e]];
  return m;
}

namespace {

std::optional<SpanMor> plain_span_iso(const Span& a, const Span& b) {
  if (a.apex.size != b.apex.size) return std::nullopt;
  auto keyed = [](const Span& s) {
    std::vector<std::pair<std::pair<int, int>, int>> k;
    for (int e = 0; e < s.apex.size; ++e)
      k.push_back({{s.back.map[e], s.fwd.map[e]}, e});
    std::sort(k.begin(), k.end());
    return k;
  };
  auto ka = keyed(a), kb = keyed(b);
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (ka[i].first != kb[i].first) return std::nullopt;
  std::vector<int> med(a.apex.size);
  for (std::size_t i = 0; i < ka.size(); ++i) med[ka[i].second] = kb[i].second;
  return SpanMor{a, b, Mor{a.apex, b.apex, std::move(med), true, true}};
}

std::optional<SpanMor> gset_span_iso(const Span& a, const Span& b) {
  if (a.apex.size != b.apex.size) return std::nullopt;
  const auto& grp = a.apex.group();
  auto oa = orbits_of(a.apex);
  auto ob = orbits_of(b.apex);
  if (oa.size() != ob.size()) return std::nullopt;
  const int n = grp->order();

  std::vector<int> orbit_of_b(b.apex.size, -1);
  for (std::size_t j = 0; j < ob.size(); ++j)
    for (int e : ob[j].elems) orbit_of_b[e] = static_cast<int>(j);

  std::vector<int> assignment(oa.size(), -1);  // orbit i -> image of its rep
  std::vector<char> orbit_used(ob.size(), 0);

  std::function<std::optional<std::vector<int>>(std::size_t)> rec =
      [&](std::size_t i) -> std::optional<std::vector<int>> {
    if (i == oa.size()) {
      std::vector<int> med(a.apex.size, -1);
      for (std::size_t t = 0; t < oa.size(); ++t)
        for (int g = 0; g < n; ++g) med[a.apex.act(g, oa[t].rep)] = b.apex.act(g, assignment[t]);
      return med;
    }
    int r = oa[i].rep;
    for (int cand = 0; cand < b.apex.size; ++cand) {
      if (orbit_used[orbit_of_b[cand]]) continue;
      if (b.back.map[cand] != a.back.map[r] || b.fwd.map[cand] != a.fwd.map[r]) continue;
      if (stabilizer_of(b.apex, cand) != oa[i].stabilizer) continue;
      assignment[i] = cand;
      orbit_used[orbit_of_b[cand]] = 1;
      auto res = rec(i + 1);
      orbit_used[orbit_of_b[cand]] = 0;
      if (res) return res;
    }
    return std::nullopt;
  };
  auto med = rec(0);
  if (!med) return std::nullopt;
  SpanMor out{a, b, Mor{a.apex, b.apex, std::move(*med), true, true}};
  std::string why;
  if (!validate_span_mor(out, &why)) return std::nullopt;
  return out;
}

}  // namespace

std::optional<SpanMor> span_isomorphic(const Span& a, const Span& b) {
  if (!same_obj(a.src, b.src) || !same_obj(a.tgt, b.tgt)) return std::nullopt;
  if (a.apex.is_gset()) return gset_span_iso(a, b);
  return plain_span_iso(a, b);
}

SpanSquareFF pullback_FF(const Mor& f, const Mor& g) {
  if (!same_obj(f.cod, g.cod)) throw std::invalid_argument("pullback_FF: codomain mismatch");
  PullbackSquare sq = pullback(f, g);
  SpanSquareFF out;
  out.f_span = embed_forward(f);
  out.g_span = embed_forward(g);
  out.vertex = sq.apex;
  out.to_a = embed_forward(sq.proj_g);  // d => dom(f)
  out.to_b = embed_forward(sq.proj_f);  // d => dom(g)
  return out;
}

SpanSquareBF pullback_BF(const Mor& f, const Mor& g) {
  if (!same_obj(g.cod, f.dom)) throw std::invalid_argument("pullback_BF: g must land in dom(f)");
  if (!f.in_f) throw std::invalid_argument("pullback_BF: f lacks the F-flag");
  DistributivityDiagram dd = dependent_product(g, f);
  SpanSquareBF out;
  out.f_span = embed_backward(f);
  out.g_span = embed_forward(g);
  out.vertex = dd.w;
  out.to_c = make_span(identity_mor(dd.w), dd.g);             // w => cod(f)
  out.to_a = make_span(dd.f_tilde, dd.eps);                   // w <=(f~)= apex =(eps)=> dom(g)
  out.diagram = std::move(dd);
  return out;
}

TerminalityReport verify_ff_pullback_terminal(const SpanSquareFF& sq, int probe_bound) {
  TerminalityReport rep;
  const Mor& f = sq.f_span.fwd;
  const Mor& g = sq.g_span.fwd;
  const Obj& A = sq.f_span.src;
  const Obj& B = sq.g_span.src;

  std::vector<Obj> sizes;
  if (!A.is_gset())
    for (int s = 0; s <= probe_bound; ++s) sizes.push_back(make_set(s));
  else
    sizes = gset_iso_classes(A.group(), probe_bound);

  auto spans_between = [&](const Obj& zz, const Obj& tt, int apex_bound) {
    std::vector<Span> out;
    std::vector<Obj> apexes;
    if (!zz.is_gset())
      for (int s = 0; s <= apex_bound; ++s) apexes.push_back(make_set(s));
    else
      apexes = gset_iso_classes(zz.group(), apex_bound);
    for (const auto& ap : apexes)
      for (const auto& bk : all_maps(ap, zz))
        for (const auto& fw : all_maps(ap, tt))
          out.push_back(make_span(Mor{ap, zz, bk, true, true}, Mor{ap, tt, fw, true, true}));
    return out;
  };

  for (const auto& z : sizes) {
    auto sxs = spans_between(z, A, probe_bound);
    auto sys = spans_between(z, B, probe_bound);
    for (const auto& sx : sxs) {
      for (const auto& sy : sys) {
        if (sx.apex.size != sy.apex.size) continue;
        // enumerate identification witnesses: bijections of probe apexes over
        // z compatible with the two legs into c
        std::vector<int> phi(sx.apex.size);
        std::iota(phi.begin(), phi.end(), 0);
        do {
          bool witness = true;
          for (int e = 0; e < sx.apex.size && witness; ++e) {
            if (sy.back.map[phi[e]] != sx.back.map[e]) witness = false;
            if (witness && f.map[sx.fwd.map[e]] != g.map[sy.fwd.map[phi[e]]]) witness = false;
          }
          if (sx.apex.is_gset() && witness && !is_equivariant(sx.apex, sy.apex, phi))
            witness = false;
          if (!witness) continue;
          ++rep.probes;
          // the mediator normalized along the probe apex exists and is unique
          // iff every pair (sx.fwd(e), sy.fwd(phi(e))) hits exactly one vertex
          // element
          for (int e = 0; e < sx.apex.size; ++e) {
            int hits = 0;
            for (int d = 0; d < sq.vertex.size; ++d)
              if (sq.to_a.fwd.map[d] == sx.fwd.map[e] && sq.to_b.fwd.map[d] == sy.fwd.map[phi[e]])
                ++hits;
            if (hits != 1) {
              rep.pass = false;
              rep.detail = "probe |z|=" + std::to_string(z.size) + " element " +
                           std::to_string(e) + " has " + std::to_string(hits) +
                           " vertex matches (expected 1)";
              return rep;
            }
          }
        } while (std::next_permutation(phi.begin(), phi.end()));
      }
    }
  }
  return rep;
}

}  // namespace bispan
