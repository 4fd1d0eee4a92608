#pragma once

#include <string>
#include <vector>

#include "bispan/bispan.hpp"
#include "bispan/semiring.hpp"

namespace bispan {

/// The sum-of-products program compiled from a bispan: for each target index,
/// a list of monomials (sorted multisets of source indices), the list itself
/// sorted by exponent vector. Evaluation over a commutative semiring realizes
/// the additive-leg sum of multiplicative-leg products of restricted inputs;
/// the empty sum is zero and the empty product is one.
struct SemiringCircuit {
  int src_arity = 0;
  int tgt_arity = 0;
  std::vector<std::vector<std::vector<int>>> monomials;

  bool operator==(const SemiringCircuit& o) const {
    return src_arity == o.src_arity && tgt_arity == o.tgt_arity && monomials == o.monomials;
  }
};

/// G-set bispans compile through their underlying sets.
SemiringCircuit compile(const Bispan& b);
SemiringCircuit identity_circuit(int arity);

template <class S>
std::vector<typename S::value_type> evaluate(const SemiringCircuit& c, const S& sr,
                                             const std::vector<typename S::value_type>& input) {
  if (static_cast<int>(input.size()) != c.src_arity)
    throw std::invalid_argument("evaluate: input arity mismatch");
  std::vector<typename S::value_type> out;
  out.reserve(c.tgt_arity);
  for (int j = 0; j < c.tgt_arity; ++j) {
    auto acc = sr.zero();
    for (const auto& mono : c.monomials[j]) {
      auto prod = sr.one();
      for (int i : mono) prod = sr.mul(prod, input[i]);
      acc = sr.add(acc, prod);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

struct FunctorialityReport {
  bool pass = true;
  long long probes = 0;
  std::string detail;
};

/// evaluate(compile(b2 . b1)) == evaluate(compile(b2)) . evaluate(compile(b1))
/// on every probe vector, exactly.
template <class S>
FunctorialityReport check_functoriality(const Bispan& b1, const Bispan& b2, const S& sr,
                                        const std::vector<std::vector<typename S::value_type>>& probes) {
  FunctorialityReport rep;
  Bispan comp = compose_bispans(b2, b1);
  SemiringCircuit c1 = compile(b1), c2 = compile(b2), cc = compile(comp);
  for (const auto& v : probes) {
    ++rep.probes;
    auto lhs = evaluate(cc, sr, v);
    auto rhs = evaluate(c2, sr, evaluate(c1, sr, v));
    if (lhs.size() != rhs.size()) {
      rep.pass = false;
      rep.detail = "arity mismatch between the two routes";
      return rep;
    }
    for (std::size_t j = 0; j < lhs.size(); ++j)
      if (!sr.eq(lhs[j], rhs[j])) {
        rep.pass = false;
        rep.detail = "values disagree at target index " + std::to_string(j) + " over " + sr.name();
        return rep;
      }
  }
  return rep;
}

/// The canonical polynomial tuple of a plain bispan (symbolic evaluation in
/// the polynomial semiring); composition corresponds to substitution.
PolyTuple polynomial_oracle(const Bispan& b);
/// Substitution outer(inner): outer has one variable per entry of inner.
PolyTuple substitute_tuple(const PolyTuple& outer, const PolyTuple& inner);

/// An object of the slice over X at desk scale: a finite total set with a
/// structure map to X.
struct FamilyOverX {
  Obj total;
  Mor structure;  // total -> X
};

/// The set-level polynomial functor of a plain bispan: over each target
/// point, pairs (B-fibre element, section of the family over its E-fibre
/// through p).
FamilyOverX eval_polyfunctor(const Bispan& b, const FamilyOverX& t);

struct DegreeMeasurement {
  bool certified = true;
  std::string detail;             // set when not certified
  std::vector<int> total;          // per target index, -1 for the zero map
  std::vector<std::vector<int>> per_var;
};

/// Iterated finite differences over the integer grid {0..bound}^arity: the
/// full Newton-coefficient transform per target index. Certification needs
/// bound >= measured degree + 1 per variable and in total.
DegreeMeasurement finite_difference_degree(const SemiringCircuit& c, int bound);

struct SplittingReport {
  bool pass = true;
  long long probes = 0;
  std::string detail;
};

/// The three-term identity p_ox(E + F) = p_ox(E) + k_plus fold_ox(...) +
/// p_ox(F), checked as semiring values on probe vector pairs through the
/// fold-distributivity data.
template <class S>
SplittingReport check_binomial_splitting(const FoldDistributivityData& d, const S& sr,
                                         const std::vector<std::pair<std::vector<typename S::value_type>,
                                                                     std::vector<typename S::value_type>>>& probes) {
  SplittingReport rep;
  const Mor& p = d.p;
  auto fibs_p = std::vector<std::vector<int>>(p.cod.size);
  for (int i = 0; i < p.dom.size; ++i) fibs_p[p.map[i]].push_back(i);
  const int csize = d.c.obj.size;
  // fibres of p_l, p_r over each c-point
  std::vector<std::vector<int>> lfib(csize), rfib(csize);
  for (int t = 0; t < d.p_l.dom.size; ++t) lfib[d.p_l.map[t]].push_back(t);
  for (int t = 0; t < d.p_r.dom.size; ++t) rfib[d.p_r.map[t]].push_back(t);

  for (const auto& [ev, fv] : probes) {
    if (static_cast<int>(ev.size()) != p.dom.size || static_cast<int>(fv.size()) != p.dom.size)
      throw std::invalid_argument("check_binomial_splitting: probe arity mismatch");
    ++rep.probes;
    for (int y = 0; y < p.cod.size; ++y) {
      auto lhs = sr.one();
      auto prod_e = sr.one();
      auto prod_f = sr.one();
      for (int i : fibs_p[y]) {
        lhs = sr.mul(lhs, sr.add(ev[i], fv[i]));
        prod_e = sr.mul(prod_e, ev[i]);
        prod_f = sr.mul(prod_f, fv[i]);
      }
      auto middle = sr.zero();
      for (int cpt = 0; cpt < csize; ++cpt) {
        if (d.k.map[cpt] != y) continue;
        auto term = sr.one();
        for (int t : lfib[cpt]) term = sr.mul(term, ev[d.eps_l.map[t]]);
        for (int t : rfib[cpt]) term = sr.mul(term, fv[d.eps_r.map[t]]);
        middle = sr.add(middle, term);
      }
      auto rhs = sr.add(sr.add(prod_e, middle), prod_f);
      if (!sr.eq(lhs, rhs)) {
        rep.pass = false;
        rep.detail = "splitting identity fails over target point " + std::to_string(y);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace bispan
