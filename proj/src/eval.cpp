#include "bispan/eval.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bispan {

namespace {

// compare monomials (sorted index multisets) by their exponent vectors,
// lexicographically
struct MonomialLess {
  int arity;
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> ea(arity, 0), eb(arity, 0);
    for (int i : a) ++ea[i];
    for (int i : b) ++eb[i];
    return ea < eb;
  }
};

}  // namespace

SemiringCircuit compile(const Bispan& b) {
  SemiringCircuit c;
  c.src_arity = b.src.size;
  c.tgt_arity = b.tgt.size;
  std::vector<std::vector<int>> monomial(b.b.size);
  for (int e = 0; e < b.e.size; ++e) monomial[b.f.map[e]].push_back(b.p.map[e]);
  for (auto& m : monomial) std::sort(m.begin(), m.end());
  c.monomials.assign(c.tgt_arity, {});
  for (int bb = 0; bb < b.b.size; ++bb) c.monomials[b.l.map[bb]].push_back(monomial[bb]);
  for (auto& part : c.monomials)
    std::sort(part.begin(), part.end(), MonomialLess{c.src_arity});
  return c;
}

SemiringCircuit identity_circuit(int arity) {
  SemiringCircuit c;
  c.src_arity = c.tgt_arity = arity;
  c.monomials.assign(arity, {});
  for (int i = 0; i < arity; ++i) c.monomials[i].push_back({i});
  return c;
}

PolyTuple polynomial_oracle(const Bispan& b) {
  PolySemiring sr{b.src.size};
  std::vector<Poly> vars;
  for (int i = 0; i < b.src.size; ++i) vars.push_back(Poly::variable(b.src.size, i));
  return evaluate(compile(b), sr, vars);
}

PolyTuple substitute_tuple(const PolyTuple& outer, const PolyTuple& inner) {
  PolyTuple out;
  out.reserve(outer.size());
  for (const auto& p : outer) out.push_back(p.substitute(inner));
  return out;
}

FamilyOverX eval_polyfunctor(const Bispan& b, const FamilyOverX& t) {
  if (!same_obj(t.structure.cod, b.src))
    throw std::invalid_argument("eval_polyfunctor: family must live over src(b)");
  if (b.src.is_gset())
    throw std::invalid_argument("eval_polyfunctor: plain bispans only");
  std::vector<std::vector<int>> t_fiber(b.src.size);
  for (int s = 0; s < t.total.size; ++s) t_fiber[t.structure.map[s]].push_back(s);
  std::vector<std::vector<int>> e_fiber(b.b.size);
  for (int e = 0; e < b.e.size; ++e) e_fiber[b.f.map[e]].push_back(e);

  std::vector<int> struct_map;
  for (int bb = 0; bb < b.b.size; ++bb) {
    const auto& fib = e_fiber[bb];
    bool possible = true;
    for (int e : fib)
      if (t_fiber[b.p.map[e]].empty()) possible = false;
    if (!possible) continue;
    std::vector<std::size_t> digit(fib.size(), 0);
    while (true) {
      struct_map.push_back(b.l.map[bb]);
      if (fib.empty()) break;
      int k = static_cast<int>(fib.size()) - 1;
      while (k >= 0) {
        if (++digit[k] < t_fiber[b.p.map[fib[k]]].size()) break;
        digit[k] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }
  Obj total = make_set(static_cast<int>(struct_map.size()));
  return FamilyOverX{total, Mor{total, b.tgt, std::move(struct_map), true, true}};
}

DegreeMeasurement finite_difference_degree(const SemiringCircuit& c, int bound) {
  DegreeMeasurement out;
  if (bound < 1) throw std::invalid_argument("finite_difference_degree: bound must be >= 1");
  const int k = c.src_arity;
  const int side = bound + 1;
  double cells = 1;
  for (int i = 0; i < k; ++i) cells *= side;
  if (cells > 1 << 22)
    throw std::invalid_argument("finite_difference_degree: grid too large");
  const long long ncells = static_cast<long long>(cells);

  std::vector<long long> strides(k, 1);
  for (int i = k - 2; i >= 0; --i) strides[i] = strides[i + 1] * side;

  out.total.assign(c.tgt_arity, -1);
  out.per_var.assign(c.tgt_arity, std::vector<int>(k, -1));
  for (int j = 0; j < c.tgt_arity; ++j) {
    std::vector<BigInt> grid(ncells);
    std::vector<BigInt> point(k);
    for (long long cell = 0; cell < ncells; ++cell) {
      long long rest = cell;
      for (int i = 0; i < k; ++i) {
        point[i] = rest / strides[i];
        rest %= strides[i];
      }
      BigInt acc = 0;
      for (const auto& mono : c.monomials[j]) {
        BigInt prod = 1;
        for (int i : mono) prod *= point[i];
        acc += prod;
      }
      grid[cell] = std::move(acc);
    }
    // Newton transform along each axis in place
    for (int axis = 0; axis < k; ++axis) {
      for (long long base = 0; base < ncells; ++base) {
        long long coord = base / strides[axis] % side;
        if (coord != 0) continue;
        for (int pass = 1; pass < side; ++pass)
          for (int pos = side - 1; pos >= pass; --pos)
            grid[base + pos * strides[axis]] -=
                grid[base + static_cast<long long>(pos - 1) * strides[axis]];
      }
    }
    int deg = -1;
    std::vector<int> pv(k, -1);
    for (long long cell = 0; cell < ncells; ++cell) {
      if (grid[cell] == 0) continue;
      long long rest = cell;
      int total = 0;
      for (int i = 0; i < k; ++i) {
        int e = static_cast<int>(rest / strides[i]);
        rest %= strides[i];
        total += e;
        pv[i] = std::max(pv[i], e);
      }
      deg = std::max(deg, total);
    }
    out.total[j] = deg;
    out.per_var[j] = pv;
    if (deg + 1 > bound) {
      out.certified = false;
      out.detail = "bound " + std::to_string(bound) + " too small to certify degree " +
                   std::to_string(deg) + " at target " + std::to_string(j) +
                   "; need bound >= degree + 1";
    }
  }
  return out;
}

}  // namespace bispan
