#include "bispan/tambara.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bispan {

namespace {

std::uint64_t mask_of_elems(const std::vector<int>& elems) {
  std::uint64_t m = 0;
  for (int e : elems) m |= 1ull << e;
  return m;
}

}  // namespace

TambaraContext::TambaraContext(GroupPtr g) : group_(std::move(g)) {
  if (!group_) throw std::invalid_argument("TambaraContext needs a group");
}

BurnsideElement TambaraContext::from_base(const Obj& base) {
  if (!base.is_gset() || base.group() != group_)
    throw std::invalid_argument("value base must be a G-set for this context's group");
  BurnsideElement v;
  v.base = base;
  v.orbits = orbits_of(base);
  v.locate.assign(base.size, {-1, -1});
  const int n = group_->order();
  for (std::size_t oi = 0; oi < v.orbits.size(); ++oi) {
    int rep = v.orbits[oi].rep;
    for (int g = 0; g < n; ++g) {
      int pt = base.act(g, rep);
      if (v.locate[pt].first < 0) v.locate[pt] = {static_cast<int>(oi), g};
    }
  }
  v.counts.resize(v.orbits.size());
  for (std::size_t oi = 0; oi < v.orbits.size(); ++oi)
    v.counts[oi].assign(local(v.orbits[oi].stabilizer).class_order.size(), 0);
  return v;
}

BurnsideElement TambaraContext::zero(const Obj& base) { return from_base(base); }

BurnsideElement TambaraContext::one(const Obj& base) {
  BurnsideElement v = from_base(base);
  for (std::size_t oi = 0; oi < v.orbits.size(); ++oi) {
    // the identity map contributes one fixed point of full stabilizer per orbit
    v.counts[oi][0] = 1;
  }
  return v;
}

BurnsideElement TambaraContext::basis(const Obj& base, int orbit_index, int class_position) {
  BurnsideElement v = from_base(base);
  v.counts.at(orbit_index).at(class_position) = 1;
  return v;
}

int TambaraContext::class_positions(int subgroup_index) {
  return static_cast<int>(local(subgroup_index).class_order.size());
}

const TambaraContext::Local& TambaraContext::local(int subgroup_index) {
  auto it = locals_.find(subgroup_index);
  if (it != locals_.end()) return it->second;

  Local loc;
  loc.subgroup = subgroup_index;
  loc.embed = group_->subgroup_elements(subgroup_index);
  const int m = static_cast<int>(loc.embed.size());
  std::vector<int> back(group_->order(), -1);
  for (int i = 0; i < m; ++i) back[loc.embed[i]] = i;
  std::vector<std::vector<int>> mul(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int prod = group_->mul(loc.embed[a], loc.embed[b]);
      if (back[prod] < 0) throw std::logic_error("subgroup is not closed");
      mul[a][b] = back[prod];
    }
  loc.local_group = Group::from_table(std::move(mul), group_->subgroup_name(subgroup_index));

  const auto& lg = loc.local_group;
  loc.class_order.resize(lg->class_count());
  std::iota(loc.class_order.begin(), loc.class_order.end(), 0);
  std::sort(loc.class_order.begin(), loc.class_order.end(), [&](int a, int b) {
    int oa = lg->subgroup_order(lg->class_representative(a));
    int ob = lg->subgroup_order(lg->class_representative(b));
    if (oa != ob) return oa > ob;
    return lg->subgroup_mask(lg->class_representative(a)) <
           lg->subgroup_mask(lg->class_representative(b));
  });
  loc.position.assign(lg->class_count(), -1);
  for (std::size_t p = 0; p < loc.class_order.size(); ++p) loc.position[loc.class_order[p]] = static_cast<int>(p);

  const int nc = static_cast<int>(loc.class_order.size());
  loc.marks.assign(nc, std::vector<BigInt>(nc, 0));
  for (int pj = 0; pj < nc; ++pj) {
    int kj = lg->class_representative(loc.class_order[pj]);
    Obj cs = coset_space(lg, kj);
    for (int pu = 0; pu < nc; ++pu) {
      int ku = lg->class_representative(loc.class_order[pu]);
      int fixed = 0;
      for (int pt = 0; pt < cs.size; ++pt) {
        bool fix = true;
        for (int u : lg->subgroup_elements(ku))
          if (cs.act(u, pt) != pt) {
            fix = false;
            break;
          }
        if (fix) ++fixed;
      }
      loc.marks[pu][pj] = fixed;
    }
  }
  return locals_.emplace(subgroup_index, std::move(loc)).first->second;
}

int TambaraContext::local_subgroup_position(const Local& loc, std::uint64_t ambient_mask) {
  std::uint64_t local_mask = 0;
  for (std::size_t i = 0; i < loc.embed.size(); ++i)
    if (ambient_mask >> loc.embed[i] & 1) local_mask |= 1ull << i;
  int idx = loc.local_group->subgroup_index(local_mask);
  if (idx < 0) throw std::logic_error("ambient mask does not restrict to a local subgroup");
  return loc.position[loc.local_group->subgroup_class(idx)];
}

std::vector<BigInt> TambaraContext::invert_marks(const Local& loc,
                                                 const std::vector<BigInt>& marks_vec) {
  const int nc = static_cast<int>(loc.class_order.size());
  std::vector<BigInt> counts(nc, 0);
  for (int i = 0; i < nc; ++i) {
    BigInt rest = marks_vec[i];
    for (int j = 0; j < i; ++j) rest -= counts[j] * loc.marks[i][j];
    if (loc.marks[i][i] == 0) throw std::logic_error("mark matrix has zero diagonal");
    BigInt q = rest / loc.marks[i][i];
    if (q * loc.marks[i][i] != rest)
      throw std::logic_error("mark inversion is not integral; marks vector is inconsistent");
    counts[i] = q;
  }
  return counts;
}

BurnsideElement TambaraContext::decompose(const Mor& t) {
  BurnsideElement v = from_base(t.cod);
  for (std::size_t oi = 0; oi < v.orbits.size(); ++oi) {
    int rep = v.orbits[oi].rep;
    const Local& loc = local(v.orbits[oi].stabilizer);
    std::uint64_t stab_mask = group_->subgroup_mask(v.orbits[oi].stabilizer);
    // fibre over rep as an S-set: decompose into S-orbits directly
    std::vector<int> fib;
    for (int e = 0; e < t.dom.size; ++e)
      if (t.map[e] == rep) fib.push_back(e);
    std::vector<char> seen(t.dom.size, 0);
    for (int e : fib) {
      if (seen[e]) continue;
      std::uint64_t stab_e = 0;
      for (int s : loc.embed) {
        int img = t.dom.act(s, e);
        seen[img] = 1;
        if (img == e) stab_e |= 1ull << s;
      }
      (void)stab_mask;
      v.counts[oi][local_subgroup_position(loc, stab_e)] += 1;
    }
  }
  return v;
}

Mor TambaraContext::represent(const BurnsideElement& v) {
  Obj total = trivial_gobj(group_, 0);
  std::vector<int> structure;
  Obj acc = total;
  std::vector<int> acc_map;
  for (std::size_t oi = 0; oi < v.orbits.size(); ++oi) {
    const Local& loc = local(v.orbits[oi].stabilizer);
    int rep = v.orbits[oi].rep;
    for (std::size_t pos = 0; pos < v.counts[oi].size(); ++pos) {
      const BigInt& cnt = v.counts[oi][pos];
      if (cnt < 0) throw std::invalid_argument("represent: negative multiplicity");
      if (cnt > 4096) throw std::invalid_argument("represent: multiplicity too large to materialize");
      long long c = cnt.convert_to<long long>();
      if (c == 0) continue;
      // the orbit type [S/K] over this base orbit lifts to G/K -> orbit
      int kj_local = loc.local_group->class_representative(loc.class_order[pos]);
      std::vector<int> k_elems;
      for (int le : loc.local_group->subgroup_elements(kj_local)) k_elems.push_back(loc.embed[le]);
      int k_amb = group_->subgroup_index(mask_of_elems(k_elems));
      if (k_amb < 0) throw std::logic_error("lifted subgroup missing from the lattice");
      Obj piece = coset_space(group_, k_amb);
      // coset a K -> a . rep
      std::vector<char> taken(group_->order(), 0);
      std::vector<int> piece_map;
      for (int a = 0; a < group_->order(); ++a) {
        if (taken[a]) continue;
        piece_map.push_back(v.base.act(a, rep));
        for (int h : group_->subgroup_elements(k_amb)) taken[group_->mul(a, h)] = 1;
      }
      for (long long copy = 0; copy < c; ++copy) {
        auto cp = coproduct(acc, piece);
        std::vector<int> new_map(cp.obj.size);
        for (int i = 0; i < acc.size; ++i) new_map[cp.inl.map[i]] = acc_map[i];
        for (int i = 0; i < piece.size; ++i) new_map[cp.inr.map[i]] = piece_map[i];
        acc = cp.obj;
        acc_map = std::move(new_map);
      }
    }
  }
  return make_mor(acc, v.base, std::move(acc_map));
}

bool TambaraContext::equal(const BurnsideElement& a, const BurnsideElement& b) {
  return same_obj(a.base, b.base) && a.counts == b.counts;
}

BurnsideElement TambaraContext::add(const BurnsideElement& a, const BurnsideElement& b) {
  if (!same_obj(a.base, b.base)) throw std::invalid_argument("add: bases differ");
  BurnsideElement out = a;
  for (std::size_t oi = 0; oi < out.counts.size(); ++oi)
    for (std::size_t p = 0; p < out.counts[oi].size(); ++p) out.counts[oi][p] += b.counts[oi][p];
  return out;
}

const std::vector<BigInt>& TambaraContext::basis_product(int subgroup_index, int pos_a,
                                                         int pos_b) {
  auto key = std::make_tuple(subgroup_index, pos_a, pos_b);
  auto it = product_cache_.find(key);
  if (it != product_cache_.end()) return it->second;
  const Local& loc = local(subgroup_index);
  const auto& lg = loc.local_group;
  int sa = lg->class_representative(loc.class_order[pos_a]);
  int sb = lg->class_representative(loc.class_order[pos_b]);
  // [S/A].[S/B] = sum over A\S/B of [S/(A n gBg^-1)]
  std::vector<BigInt> counts(loc.class_order.size(), 0);
  std::vector<char> taken(lg->order(), 0);
  for (int g = 0; g < lg->order(); ++g) {
    if (taken[g]) continue;
    for (int x : lg->subgroup_elements(sa))
      for (int y : lg->subgroup_elements(sb)) taken[lg->mul(lg->mul(x, g), y)] = 1;
    int stab = lg->intersect_subgroups(sa, lg->conjugate_subgroup(sb, g));
    counts[loc.position[lg->subgroup_class(stab)]] += 1;
  }
  return product_cache_.emplace(key, std::move(counts)).first->second;
}

BurnsideElement TambaraContext::mul(const BurnsideElement& a, const BurnsideElement& b) {
  if (!same_obj(a.base, b.base)) throw std::invalid_argument("mul: bases differ");
  BurnsideElement out = zero(a.base);
  for (std::size_t oi = 0; oi < out.orbits.size(); ++oi) {
    int sg = out.orbits[oi].stabilizer;
    const int nc = static_cast<int>(out.counts[oi].size());
    for (int pa = 0; pa < nc; ++pa) {
      if (a.counts[oi][pa] == 0) continue;
      for (int pb = 0; pb < nc; ++pb) {
        if (b.counts[oi][pb] == 0) continue;
        const auto& prod = basis_product(sg, pa, pb);
        BigInt scale = a.counts[oi][pa] * b.counts[oi][pb];
        for (int p = 0; p < nc; ++p) out.counts[oi][p] += scale * prod[p];
      }
    }
  }
  return out;
}

BigInt TambaraContext::fixed_count(const BurnsideElement& x, int point, std::uint64_t witness_mask) {
  auto [oi, t] = x.locate[point];
  const Orbit& orb = x.orbits[oi];
  const Local& loc = local(orb.stabilizer);
  // translate the witness into the representative's stabilizer: W' = t^-1 W t
  std::uint64_t translated = 0;
  int ti = group_->inv(t);
  for (int w = 0; w < group_->order(); ++w)
    if (witness_mask >> w & 1) translated |= 1ull << group_->mul(group_->mul(ti, w), t);
  int wpos = local_subgroup_position(loc, translated);
  BigInt acc = 0;
  for (std::size_t pj = 0; pj < x.counts[oi].size(); ++pj)
    acc += x.counts[oi][pj] * loc.marks[wpos][pj];
  return acc;
}

BurnsideElement TambaraContext::restriction(const BurnsideElement& x, const Mor& q) {
  if (!same_obj(q.cod, x.base)) throw std::invalid_argument("restriction: map must land in the base");
  BurnsideElement out = from_base(q.dom);
  for (std::size_t oi = 0; oi < out.orbits.size(); ++oi) {
    int r1 = out.orbits[oi].rep;
    const Local& loc1 = local(out.orbits[oi].stabilizer);
    std::uint64_t s1_mask = group_->subgroup_mask(out.orbits[oi].stabilizer);
    int image = q.map[r1];
    auto [oi2, t] = x.locate[image];
    const Orbit& orb2 = x.orbits[oi2];
    const Local& loc2 = local(orb2.stabilizer);
    // the value's fibre over `image` is of type [S2^t / J^t]; restrict to S1
    for (std::size_t pj = 0; pj < x.counts[oi2].size(); ++pj) {
      const BigInt& cnt = x.counts[oi2][pj];
      if (cnt == 0) continue;
      int kj_local = loc2.local_group->class_representative(loc2.class_order[pj]);
      std::vector<int> j_elems;
      for (int le : loc2.local_group->subgroup_elements(kj_local))
        j_elems.push_back(group_->mul(group_->mul(t, loc2.embed[le]), group_->inv(t)));
      // S1 \ S2^t / J^t, ambient-level double cosets
      std::vector<int> w_elems;
      for (int e : loc2.embed)
        w_elems.push_back(group_->mul(group_->mul(t, e), group_->inv(t)));
      std::sort(w_elems.begin(), w_elems.end());
      std::vector<char> taken(group_->order(), 0);
      for (int a : w_elems) {
        if (taken[a]) continue;
        for (int s1e = 0; s1e < group_->order(); ++s1e) {
          if (!(s1_mask >> s1e & 1)) continue;
          for (int je : j_elems) taken[group_->mul(group_->mul(s1e, a), je)] = 1;
        }
        // stabilizer S1 n a J^t a^-1
        std::uint64_t stab = 0;
        int ai = group_->inv(a);
        for (int je : j_elems) {
          int conj = group_->mul(group_->mul(a, je), ai);
          if (s1_mask >> conj & 1) stab |= 1ull << conj;
        }
        out.counts[oi][local_subgroup_position(loc1, stab)] += cnt;
      }
    }
  }
  return out;
}

BurnsideElement TambaraContext::additive_transfer(const BurnsideElement& x, const Mor& l) {
  if (!same_obj(l.dom, x.base))
    throw std::invalid_argument("additive_transfer: map must start at the base");
  BurnsideElement out = from_base(l.cod);
  for (std::size_t oi = 0; oi < x.orbits.size(); ++oi) {
    int r1 = x.orbits[oi].rep;
    const Local& loc1 = local(x.orbits[oi].stabilizer);
    int image = l.map[r1];
    auto [oi2, t] = out.locate[image];
    const Local& loc2 = local(out.orbits[oi2].stabilizer);
    int ti = group_->inv(t);
    for (std::size_t pj = 0; pj < x.counts[oi].size(); ++pj) {
      const BigInt& cnt = x.counts[oi][pj];
      if (cnt == 0) continue;
      int kj_local = loc1.local_group->class_representative(loc1.class_order[pj]);
      // [G/J] over the image orbit: type J' = t^-1 J t inside S2
      std::vector<int> j_elems;
      for (int le : loc1.local_group->subgroup_elements(kj_local))
        j_elems.push_back(group_->mul(group_->mul(ti, loc1.embed[le]), t));
      out.counts[oi2][local_subgroup_position(loc2, mask_of_elems(j_elems))] += cnt;
    }
  }
  return out;
}

BurnsideElement TambaraContext::norm(const BurnsideElement& x, const Mor& f) {
  if (!same_obj(f.dom, x.base)) throw std::invalid_argument("norm: map must start at the base");
  BurnsideElement out = from_base(f.cod);
  for (std::size_t oi = 0; oi < out.orbits.size(); ++oi) {
    int d = out.orbits[oi].rep;
    const Local& loc = local(out.orbits[oi].stabilizer);
    std::vector<int> fibre;
    for (int e = 0; e < x.base.size; ++e)
      if (f.map[e] == d) fibre.push_back(e);
    const int nc = static_cast<int>(loc.class_order.size());
    std::vector<BigInt> marks_vec(nc, 0);
    for (int pu = 0; pu < nc; ++pu) {
      int ku_local = loc.local_group->class_representative(loc.class_order[pu]);
      std::vector<int> u_elems;
      for (int le : loc.local_group->subgroup_elements(ku_local)) u_elems.push_back(loc.embed[le]);
      // orbits of U on the fibre; product of fixed counts at suborbit reps
      BigInt mark = 1;
      std::vector<char> seen(x.base.size, 0);
      for (int e : fibre) {
        if (seen[e]) continue;
        std::uint64_t stab_u = 0;
        for (int u : u_elems) {
          int img = x.base.act(u, e);
          seen[img] = 1;
          if (img == e) stab_u |= 1ull << u;
        }
        mark *= fixed_count(x, e, stab_u);
        if (mark == 0) break;
      }
      marks_vec[pu] = mark;
    }
    out.counts[oi] = invert_marks(loc, marks_vec);
  }
  return out;
}

BurnsideElement TambaraContext::norm_materialized(const BurnsideElement& x, const Mor& f) {
  Mor t = represent(x);
  DistributivityDiagram dd = dependent_product(t, f);
  return decompose(dd.g);
}

BurnsideElement TambaraContext::evaluate_bispan(const Bispan& b, const BurnsideElement& x) {
  if (!same_obj(b.src, x.base)) throw std::invalid_argument("evaluate_bispan: value not over src");
  return additive_transfer(norm(restriction(x, b.p), b.f), b.l);
}

BurnsideElement TambaraContext::evaluate_bispan_materialized(const Bispan& b,
                                                             const BurnsideElement& x) {
  Mor t = represent(x);
  PullbackSquare sq = pullback(b.p, t);  // pairs (E, T), proj_g -> E
  DistributivityDiagram dd = dependent_product(sq.proj_g, b.f);
  return decompose(compose(b.l, dd.g));
}

std::string TambaraContext::basis_name(int subgroup_index, int class_position) {
  const Local& loc = local(subgroup_index);
  const auto& lg = loc.local_group;
  int k = lg->class_representative(loc.class_order[class_position]);
  return "[" + group_->subgroup_name(subgroup_index) + "/" + lg->subgroup_name(k) + "]";
}

std::string TambaraContext::show(const BurnsideElement& v) {
  std::ostringstream os;
  bool first_orbit = true;
  for (std::size_t oi = 0; oi < v.orbits.size(); ++oi) {
    if (!first_orbit) os << " | ";
    first_orbit = false;
    bool first = true;
    bool any = false;
    for (std::size_t p = 0; p < v.counts[oi].size(); ++p) {
      if (v.counts[oi][p] == 0) continue;
      if (!first) os << " + ";
      first = false;
      any = true;
      os << v.counts[oi][p].str() << "·" << basis_name(v.orbits[oi].stabilizer, static_cast<int>(p));
    }
    if (!any) os << "0";
  }
  if (v.orbits.empty()) os << "0";
  return os.str();
}

BurnsideTable TambaraContext::burnside_table(int subgroup_index) {
  BurnsideTable out;
  out.subgroup = subgroup_index;
  const Local& loc = local(subgroup_index);
  const int nc = static_cast<int>(loc.class_order.size());
  for (int p = 0; p < nc; ++p) out.basis_names.push_back(basis_name(subgroup_index, p));
  out.mul.assign(nc, std::vector<std::vector<BigInt>>(nc));
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j) out.mul[i][j] = basis_product(subgroup_index, i, j);
  return out;
}

}  // namespace bispan
