#include <doctest.h>

#include "bispan/enumerate.hpp"
#include "bispan/eval.hpp"
#include "bispan/finset.hpp"

using namespace bispan;

namespace {

Mor plain_map(int dn, int cn, std::vector<int> m) {
  return make_mor(make_set(dn), make_set(cn), std::move(m));
}

Bispan mixed_bispan() {
  // 1 <- {a,b,c} -> {u,v} -> 1 with p = [0,0,1] over I = {0,1}: r0^2 + r1
  Mor p = plain_map(3, 2, {0, 0, 1});
  Mor f = plain_map(3, 2, {0, 0, 1});
  Mor l = plain_map(2, 1, {0, 0});
  return make_bispan(p, f, l);
}

Bispan squaring() {
  Mor p = plain_map(2, 1, {0, 0});
  Mor f = plain_map(2, 1, {0, 0});
  Mor l = identity_mor(make_set(1));
  return make_bispan(p, f, l);
}

Bispan doubling() {
  Mor p = plain_map(2, 1, {0, 0});
  Mor f = identity_mor(make_set(2));
  Mor l = plain_map(2, 1, {0, 0});
  return make_bispan(p, f, l);
}

}  // namespace

TEST_CASE("compile") {
  SUBCASE("identity bispan is the projection circuit") {
    auto c = compile(identity_bispan(make_set(3)));
    CHECK(c == identity_circuit(3));
  }
  SUBCASE("mixed monomials") {
    auto c = compile(mixed_bispan());
    REQUIRE(c.tgt_arity == 1);
    REQUIRE(c.monomials[0].size() == 2);
    CHECK(c.monomials[0][0] == std::vector<int>{1});     // r1 (exponent vector (0,1))
    CHECK(c.monomials[0][1] == std::vector<int>{0, 0});  // r0^2
  }
  SUBCASE("squaring") {
    auto p = polynomial_oracle(squaring());
    CHECK(p[0].to_string() == "x^2");
  }
}

TEST_CASE("evaluate over the concrete semirings") {
  auto c = compile(mixed_bispan());
  SUBCASE("naturals") {
    auto v = evaluate(c, NatSemiring{}, {BigInt(3), BigInt(4)});
    REQUIRE(v.size() == 1);
    CHECK(v[0] == 13);
  }
  SUBCASE("tropical") {
    TropicalSemiring tr;
    auto v = evaluate(c, tr, {Trop::of(3), Trop::of(4)});
    CHECK(v[0] == Trop::of(4));  // min(3+3, 4)
    auto w = evaluate(c, tr, {Trop::infinity(), Trop::of(7)});
    CHECK(w[0] == Trop::of(7));
  }
  SUBCASE("boolean saturation") {
    BoolSemiring bs;
    for (const auto& b : {mixed_bispan(), squaring(), doubling()}) {
      auto cc = compile(b);
      std::vector<bool> ones(cc.src_arity, true);
      auto v = evaluate(cc, bs, ones);
      std::vector<std::vector<int>> lfib(b.tgt.size);
      for (int bb = 0; bb < b.b.size; ++bb) lfib[b.l.map[bb]].push_back(bb);
      for (int j = 0; j < cc.tgt_arity; ++j) CHECK(v[j] == !lfib[j].empty());
    }
  }
  SUBCASE("empty sum and empty product") {
    Bispan zero = make_bispan(plain_map(0, 1, {}), plain_map(0, 0, {}), plain_map(0, 1, {}));
    auto v0 = evaluate(compile(zero), NatSemiring{}, {BigInt(5)});
    CHECK(v0[0] == 0);
    Bispan one = make_bispan(plain_map(0, 1, {}), plain_map(0, 1, {}), identity_mor(make_set(1)));
    auto v1 = evaluate(compile(one), NatSemiring{}, {BigInt(5)});
    CHECK(v1[0] == 1);
  }
  CHECK_THROWS_AS(evaluate(c, NatSemiring{}, {BigInt(1)}), std::invalid_argument);
}

TEST_CASE("functoriality on the doubling/squaring pair") {
  std::vector<std::vector<BigInt>> probes;
  for (int r = 0; r <= 5; ++r) probes.push_back({BigInt(r)});
  auto rep = check_functoriality(doubling(), squaring(), NatSemiring{}, probes);
  CHECK(rep.pass);
  auto poly = polynomial_oracle(compose_bispans(squaring(), doubling()));
  CHECK(poly[0].to_string() == "4*x^2");
}

TEST_CASE("polynomial oracle and substitution") {
  CHECK(polynomial_oracle(identity_bispan(make_set(2)))[0].to_string() == "x0");
  CHECK(polynomial_oracle(identity_bispan(make_set(2)))[1].to_string() == "x1");
  auto outer = polynomial_oracle(squaring());
  auto inner = polynomial_oracle(doubling());
  auto subst = substitute_tuple(outer, inner);
  CHECK(subst[0].to_string() == "4*x^2");
}

TEST_CASE("oracle soundness: composite polynomials are substitutions") {
  Rng rng(17);
  for (int t = 0; t < 300; ++t) {
    Obj a = random_object(rng, nullptr, 3), b = make_set(1 + t % 3), c = make_set(1 + (t / 2) % 3);
    Bispan b1 = random_bispan(rng, nullptr, a, b, 3);
    Bispan b2 = random_bispan(rng, nullptr, b, c, 3);
    auto direct = polynomial_oracle(compose_bispans(b2, b1));
    auto sub = substitute_tuple(polynomial_oracle(b2), polynomial_oracle(b1));
    CHECK(direct == sub);
  }
}

TEST_CASE("the distributivity relation holds symbolically") {
  // v_ox u_plus = h_plus v~_ox eps^* as polynomial tuples, carriers <= 4
  for (int i = 0; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 3; ++k) {
        Obj oi = make_set(i), oj = make_set(j), ok = make_set(k);
        for (const auto& um : all_maps(oi, oj))
          for (const auto& vm : all_maps(oj, ok)) {
            Mor u{oi, oj, um, true, true};
            Mor v{oj, ok, vm, true, true};
            Bispan lhs = compose_bispans(norm_bispan(v), transfer_bispan(u));
            auto dd = dependent_product(u, v);
            Bispan rhs = make_bispan(dd.eps, dd.f_tilde, dd.g);
            CHECK(polynomial_oracle(lhs) == polynomial_oracle(rhs));
          }
      }
}

TEST_CASE("set-level polynomial functor evaluation") {
  SUBCASE("identity returns the family") {
    Obj x = make_set(2);
    FamilyOverX t{make_set(5), plain_map(5, 2, {0, 0, 0, 1, 1})};
    auto out = eval_polyfunctor(identity_bispan(x), t);
    CHECK(out.total.size == 5);
    std::vector<int> fib(2, 0);
    for (int s = 0; s < out.total.size; ++s) ++fib[out.structure.map[s]];
    CHECK(fib == std::vector<int>{3, 2});
  }
  SUBCASE("squaring counts squared sections") {
    FamilyOverX t{make_set(3), plain_map(3, 1, {0, 0, 0})};
    auto out = eval_polyfunctor(squaring(), t);
    CHECK(out.total.size == 9);
  }
  SUBCASE("empty fibre kills the target") {
    Bispan b = mixed_bispan();
    FamilyOverX t{make_set(2), plain_map(2, 2, {0, 0})};  // empty fibre over source 1
    auto out = eval_polyfunctor(b, t);
    // r0^2 + r1 at (2, 0) = 4
    CHECK(out.total.size == 4);
  }
  SUBCASE("cardinality bridge against the polynomial oracle") {
    Rng rng(23);
    for (int t = 0; t < 200; ++t) {
      Obj src = make_set(1 + t % 3), tgt = make_set(1 + (t / 5) % 3);
      Bispan b = random_bispan(rng, nullptr, src, tgt, 3);
      int total = t % 5;
      Obj tot = make_set(total);
      Mor structure = total > 0 ? random_map(rng, tot, src) : Mor{tot, src, {}, true, true};
      FamilyOverX fam{tot, structure};
      auto out = eval_polyfunctor(b, fam);
      std::vector<BigInt> sizes(src.size, 0);
      for (int s = 0; s < tot.size; ++s) ++sizes[structure.map[s]];
      auto poly = polynomial_oracle(b);
      std::vector<BigInt> per_target(tgt.size, 0);
      for (int s = 0; s < out.total.size; ++s) ++per_target[out.structure.map[s]];
      for (int j = 0; j < tgt.size; ++j) CHECK(per_target[j] == poly[j].eval_at(sizes));
    }
  }
}

TEST_CASE("finite difference degrees") {
  SUBCASE("r^3 from the norm of 3 -> 1") {
    Mor p = plain_map(3, 1, {0, 0, 0});
    auto meas = finite_difference_degree(compile(norm_bispan(p)), 5);
    CHECK(meas.certified);
    CHECK(meas.total[0] == 3);
  }
  SUBCASE("constants have degree 0") {
    Bispan one = make_bispan(plain_map(0, 1, {}), plain_map(0, 1, {}), identity_mor(make_set(1)));
    auto meas = finite_difference_degree(compile(one), 2);
    CHECK(meas.certified);
    CHECK(meas.total[0] == 0);
  }
  SUBCASE("mixed degrees per variable") {
    auto meas = finite_difference_degree(compile(mixed_bispan()), 4);
    CHECK(meas.certified);
    CHECK(meas.total[0] == 2);
    CHECK(meas.per_var[0] == std::vector<int>{2, 1});
  }
  SUBCASE("too small a bound is reported, not silently wrong") {
    Mor p = plain_map(3, 1, {0, 0, 0});
    auto meas = finite_difference_degree(compile(norm_bispan(p)), 3);
    CHECK_FALSE(meas.certified);
    CHECK(meas.detail.find("bound") != std::string::npos);
  }
}

TEST_CASE("binomial splitting identity") {
  Mor p = plain_map(2, 1, {0, 0});
  auto fd = fold_distributivity(p);
  SUBCASE("(e+f)^2 via the two mixed sections") {
    std::vector<std::pair<std::vector<BigInt>, std::vector<BigInt>>> probes;
    for (int e = 0; e <= 3; ++e)
      for (int f = 0; f <= 3; ++f)
        probes.push_back({{BigInt(e), BigInt(e)}, {BigInt(f), BigInt(f)}});
    CHECK(check_binomial_splitting(fd, NatSemiring{}, probes).pass);
  }
  SUBCASE("zero F collapses to the plain product") {
    std::vector<std::pair<std::vector<BigInt>, std::vector<BigInt>>> probes{
        {{BigInt(2), BigInt(3)}, {BigInt(0), BigInt(0)}}};
    CHECK(check_binomial_splitting(fd, NatSemiring{}, probes).pass);
  }
  SUBCASE("fibre of size 3 has six cross terms") {
    Mor p3 = plain_map(3, 1, {0, 0, 0});
    auto fd3 = fold_distributivity(p3);
    CHECK(fd3.c.obj.size == 6);
    std::vector<std::pair<std::vector<BigInt>, std::vector<BigInt>>> probes;
    for (int e = 0; e <= 2; ++e)
      for (int f = 0; f <= 2; ++f)
        probes.push_back({std::vector<BigInt>(3, BigInt(e)), std::vector<BigInt>(3, BigInt(f))});
    CHECK(check_binomial_splitting(fd3, IntSemiring{}, probes).pass);
  }
}

TEST_CASE("semiring axioms spot checks") {
  CHECK(check_semiring_axioms(NatSemiring{}, {BigInt(0), BigInt(1), BigInt(2), BigInt(7)}));
  CHECK(check_semiring_axioms(IntSemiring{}, {BigInt(-3), BigInt(0), BigInt(2)}));
  CHECK(check_semiring_axioms(BoolSemiring{}, {false, true}));
  CHECK(check_semiring_axioms(TropicalSemiring{},
                              {Trop::infinity(), Trop::of(0), Trop::of(2), Trop::of(-1)}));
  PolySemiring ps{2};
  CHECK(check_semiring_axioms(
      ps, {ps.zero(), ps.one(), Poly::variable(2, 0), Poly::variable(2, 1)}));
}

TEST_CASE("poly printing is canonical") {
  Poly p = Poly::variable(2, 0) * Poly::variable(2, 0) + Poly::variable(2, 1) +
           Poly::constant(2, 3);
  CHECK(p.to_string() == "x0^2 + x1 + 3");
  Poly q = Poly::constant(1, 4) * Poly::variable(1, 0) * Poly::variable(1, 0);
  CHECK(q.to_string() == "4*x^2");
  CHECK(Poly(3).to_string() == "0");
}
