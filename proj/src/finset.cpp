#include "bispan/finset.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bispan {

Mor make_map(const Obj& dom, const Obj& cod, std::vector<int> assignment) {
  return make_mor(dom, cod, std::move(assignment));
}

std::vector<int> fiber_elems(const Mor& f, int y) {
  if (y < 0 || y >= f.cod.size) throw std::invalid_argument("fiber: point not in the codomain");
  std::vector<int> out;
  for (int i = 0; i < f.dom.size; ++i)
    if (f.map[i] == y) out.push_back(i);
  return out;
}

SubObj fiber(const Mor& f, int y) { return restrict_obj(f.dom, fiber_elems(f, y)); }

std::vector<std::vector<int>> fibers_of(const Mor& f) {
  std::vector<std::vector<int>> out(f.cod.size);
  for (int i = 0; i < f.dom.size; ++i) out[f.map[i]].push_back(i);
  return out;
}

const DegreeComponent* DegreeDecomposition::component(int degree) const {
  for (const auto& c : components)
    if (c.degree == degree) return &c;
  return nullptr;
}

DegreeDecomposition degree_decomposition(const Mor& f) {
  auto fibs = fibers_of(f);
  std::map<int, std::vector<int>> by_degree;  // degree -> codomain indices
  for (int j = 0; j < f.cod.size; ++j) by_degree[static_cast<int>(fibs[j].size())].push_back(j);

  DegreeDecomposition out;
  out.f = f;
  for (auto& [deg, cod_part] : by_degree) {
    DegreeComponent c;
    c.degree = deg;
    c.part = restrict_obj(f.cod, cod_part);
    std::vector<int> dom_part;
    for (int j : cod_part) dom_part.insert(dom_part.end(), fibs[j].begin(), fibs[j].end());
    std::sort(dom_part.begin(), dom_part.end());
    c.dom_part = restrict_obj(f.dom, dom_part);
    std::vector<int> pos_in_part(f.cod.size, -1);
    for (std::size_t t = 0; t < cod_part.size(); ++t) pos_in_part[cod_part[t]] = static_cast<int>(t);
    std::vector<int> rmap(dom_part.size());
    for (std::size_t t = 0; t < dom_part.size(); ++t) rmap[t] = pos_in_part[f.map[dom_part[t]]];
    c.restricted = Mor{c.dom_part.obj, c.part.obj, std::move(rmap), f.in_f, f.in_l};
    out.components.push_back(std::move(c));
    out.max_degree = std::max(out.max_degree, deg);
  }
  if (f.cod.size == 0) out.max_degree = -1;
  return out;
}

FoldDegreeDecomposition fold_degree_decomposition(const Mor& f, const Mor& g) {
  if (!same_obj(f.cod, g.cod))
    throw std::invalid_argument("fold_degree_decomposition: codomain mismatch");
  auto cp = coproduct(f.dom, g.dom);
  Mor fold = copair(cp, f, g);
  DegreeDecomposition direct = degree_decomposition(fold);

  // block formula: the degree-k part of the codomain is the union over
  // m + n = k of y_mn = { j : |f^-1(j)| = n and |g^-1(j)| = m }
  auto ffib = fibers_of(f);
  auto gfib = fibers_of(g);
  std::map<int, std::vector<int>> formula;  // k -> codomain indices, ascending
  for (int j = 0; j < f.cod.size; ++j) {
    int k = static_cast<int>(ffib[j].size() + gfib[j].size());
    formula[k].push_back(j);
  }
  std::map<int, std::vector<int>> direct_parts;
  for (const auto& c : direct.components) direct_parts[c.degree] = c.part.incl.map;
  if (direct_parts.size() != formula.size())
    throw std::logic_error("fold_degree_decomposition: block count mismatch");
  for (const auto& [k, part] : formula) {
    auto it = direct_parts.find(k);
    if (it == direct_parts.end() || it->second != part)
      throw std::logic_error("fold_degree_decomposition: block formula disagrees at degree " +
                             std::to_string(k));
  }
  return FoldDegreeDecomposition{std::move(fold), std::move(direct)};
}

std::size_t canonical_form_object(const Obj& x) {
  if (x.is_gset())
    throw std::invalid_argument("canonical_form_object: cardinality is complete only for plain sets");
  return static_cast<std::size_t>(x.size);
}

}  // namespace bispan
