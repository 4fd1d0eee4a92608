#include <doctest.h>

#include "bispan/bispan.hpp"
#include "bispan/enumerate.hpp"
#include "bispan/eval.hpp"
#include "bispan/finset.hpp"
#include "bispan/gset.hpp"

using namespace bispan;

namespace {

Mor plain_map(int dn, int cn, std::vector<int> m) {
  return make_mor(make_set(dn), make_set(cn), std::move(m));
}

Bispan doubling() {
  // 1 <- 2 -> 2 -> 1 evaluates to 2r
  Mor p = plain_map(2, 1, {0, 0});
  Mor f = identity_mor(make_set(2));
  Mor l = plain_map(2, 1, {0, 0});
  return make_bispan(p, f, l);
}

Bispan squaring() {
  // 1 <- 2 -> 1 -> 1 evaluates to r^2
  Mor p = plain_map(2, 1, {0, 0});
  Mor f = plain_map(2, 1, {0, 0});
  Mor l = identity_mor(make_set(1));
  return make_bispan(p, f, l);
}

}  // namespace

TEST_CASE("composition realizes substitution of polynomials") {
  Bispan comp = compose_bispans(squaring(), doubling());
  CHECK(comp.e.size == 8);
  CHECK(comp.b.size == 4);
  // all f-fibres of the composite have size 2
  std::vector<int> fib(comp.b.size, 0);
  for (int e = 0; e < comp.e.size; ++e) ++fib[comp.f.map[e]];
  for (int v : fib) CHECK(v == 2);
  auto poly = polynomial_oracle(comp);
  REQUIRE(poly.size() == 1);
  CHECK(poly[0].to_string() == "4*x^2");
}

TEST_CASE("unit laws and empty middles") {
  Bispan d = doubling();
  CHECK(bispan_isomorphic(compose_bispans(identity_bispan(d.tgt), d), d).status ==
        SearchStatus::Found);
  CHECK(bispan_isomorphic(compose_bispans(d, identity_bispan(d.src)), d).status ==
        SearchStatus::Found);

  // E = empty: the composite evaluates to the constant determined by b2 at 0
  Mor p0 = plain_map(0, 1, {});
  Mor f0 = plain_map(0, 2, {});
  Mor l0 = plain_map(2, 1, {0, 0});
  Bispan b1 = make_bispan(p0, f0, l0);  // polynomial: 0 + 0 = two empty-monomial-free points
  Bispan b2 = squaring();
  auto poly_comp = polynomial_oracle(compose_bispans(b2, b1));
  auto expected = substitute_tuple(polynomial_oracle(b2), polynomial_oracle(b1));
  CHECK(poly_comp == expected);

  // the empty bispan over a point evaluates to the constant 0,
  // E = empty, B = point evaluates to the constant 1
  Bispan zero = make_bispan(plain_map(0, 1, {}), plain_map(0, 0, {}), plain_map(0, 1, {}));
  CHECK(polynomial_oracle(zero)[0].is_zero());
  Bispan one = make_bispan(plain_map(0, 1, {}), plain_map(0, 1, {}), identity_mor(make_set(1)));
  CHECK(polynomial_oracle(one)[0].to_string() == "1");
}

TEST_CASE("composition order independence") {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    Obj a = random_object(rng, nullptr, 3), b = make_set(1 + t % 3), c = make_set(1 + (t / 3) % 3);
    Bispan b1 = random_bispan(rng, nullptr, a, b, 3);
    Bispan b2 = random_bispan(rng, nullptr, b, c, 3);
    Bispan first = compose_bispans(b2, b1);
    Bispan second = compose_bispans_alt(b2, b1);
    CHECK(bispan_isomorphic(first, second).status == SearchStatus::Found);
  }
  auto c2 = Group::cyclic(2);
  for (int t = 0; t < 100; ++t) {
    Obj a = random_object(rng, c2, 3), b = random_object(rng, c2, 3);
    if (b.size == 0) continue;
    Obj c = random_object(rng, c2, 3);
    try {
      Bispan b1 = random_bispan(rng, c2, a, b, 3);
      Bispan b2 = random_bispan(rng, c2, b, c, 3);
      Bispan first = compose_bispans(b2, b1);
      Bispan second = compose_bispans_alt(b2, b1);
      CHECK(bispan_isomorphic(first, second).status == SearchStatus::Found);
    } catch (const std::exception&) {
      continue;  // some random boundaries admit no equivariant maps
    }
  }
}

TEST_CASE("bispan isomorphism") {
  SUBCASE("self and scrambled copies") {
    Bispan d = doubling();
    CHECK(bispan_isomorphic(d, d).status == SearchStatus::Found);
    // scramble E and B labels of the squaring-composite
    Bispan comp = compose_bispans(squaring(), doubling());
    std::vector<int> eperm(comp.e.size), bperm(comp.b.size);
    std::iota(eperm.begin(), eperm.end(), 0);
    std::iota(bperm.begin(), bperm.end(), 0);
    std::mt19937_64 rng(3);
    std::shuffle(eperm.begin(), eperm.end(), rng);
    std::shuffle(bperm.begin(), bperm.end(), rng);
    std::vector<int> pm(comp.e.size), fm(comp.e.size), lm(comp.b.size);
    for (int e = 0; e < comp.e.size; ++e) {
      pm[eperm[e]] = comp.p.map[e];
      fm[eperm[e]] = bperm[comp.f.map[e]];
    }
    for (int b = 0; b < comp.b.size; ++b) lm[bperm[b]] = comp.l.map[b];
    Bispan scrambled = make_bispan(Mor{comp.e, comp.src, pm, true, true},
                                   Mor{comp.e, comp.b, fm, true, true},
                                   Mor{comp.b, comp.tgt, lm, true, true});
    auto res = bispan_isomorphic(comp, scrambled);
    REQUIRE(res.status == SearchStatus::Found);
    BispanMor wit{comp, scrambled, res.witness->e_map, res.witness->b_map};
    CHECK(validate_bispan_mor(wit).pass);
  }
  SUBCASE("r^2 vs 2r differ") {
    CHECK(bispan_isomorphic(squaring(), doubling()).status == SearchStatus::None);
  }
  SUBCASE("G-set bispans distinguished by the action") {
    auto c2 = Group::cyclic(2);
    Obj pt = trivial_gobj(c2, 1);
    Obj reg = coset_space(c2, c2->trivial_subgroup());
    Obj fix2 = trivial_gobj(c2, 2);
    Mor preg = make_mor(reg, pt, {0, 0});
    Mor pfix = make_mor(fix2, pt, {0, 0});
    Bispan breg = make_bispan(preg, identity_mor(reg), preg);
    Bispan bfix = make_bispan(pfix, identity_mor(fix2), pfix);
    // same underlying polynomial (2r) but not equivariantly isomorphic
    CHECK(bispan_canonical_form(breg) == bispan_canonical_form(bfix));
    CHECK(bispan_isomorphic(breg, bfix).status == SearchStatus::None);
    CHECK(bispan_isomorphic(breg, breg).status == SearchStatus::Found);
  }
}

TEST_CASE("validate_bispan_mor") {
  Bispan d = doubling();
  BispanMor idm{d, d, identity_mor(d.e), identity_mor(d.b)};
  CHECK(validate_bispan_mor(idm).pass);

  // commuting but non-cartesian middle square: E=2 over B=1 against E'=1 over B'=1
  Bispan a = squaring();  // E = 2, B = 1
  Bispan b = make_bispan(plain_map(1, 1, {0}), plain_map(1, 1, {0}), identity_mor(make_set(1)));
  BispanMor bad{a, b, plain_map(2, 1, {0, 0}), plain_map(1, 1, {0})};
  auto rep = validate_bispan_mor(bad);
  CHECK_FALSE(rep.pass);
  CHECK(rep.detail.find("cartesian") != std::string::npos);

  // broken left triangle
  Obj two = make_set(2);
  Mor p2 = plain_map(2, 2, {0, 1});
  Bispan c = make_bispan(p2, identity_mor(two), plain_map(2, 1, {0, 0}));
  BispanMor broken{c, c, plain_map(2, 2, {1, 0}), identity_mor(two)};
  auto rep2 = validate_bispan_mor(broken);
  CHECK_FALSE(rep2.pass);
  CHECK(rep2.detail.find("triangle") != std::string::npos);
}

TEST_CASE("coproducts of bispans") {
  Bispan d = doubling(), s = squaring();
  Bispan cp = coproduct_bispans(d, s);
  auto poly = polynomial_oracle(cp);
  REQUIRE(poly.size() == 2);
  // disjoint variables: first target reads 2*x0, second x1^2
  CHECK(poly[0].to_string() == "2*x0");
  CHECK(poly[1].to_string() == "x1^2");

  Bispan empty = make_bispan(plain_map(0, 0, {}), plain_map(0, 0, {}), plain_map(0, 0, {}));
  Bispan unit_test = coproduct_bispans(d, empty);
  CHECK(bispan_isomorphic(unit_test, d).status == SearchStatus::Found);

  Obj x = make_set(2), y = make_set(1);
  Bispan idx = identity_bispan(x), idy = identity_bispan(y);
  Bispan idcp = coproduct_bispans(idx, idy);
  CHECK(bispan_isomorphic(idcp, identity_bispan(coproduct(x, y).obj)).status ==
        SearchStatus::Found);
}

TEST_CASE("pasting distributivity diagrams") {
  SUBCASE("identity l1 reduces to the single diagram") {
    Mor l1 = identity_mor(make_set(3));
    Mor l2 = plain_map(3, 2, {0, 0, 1});
    Mor f = plain_map(2, 1, {0, 0});
    auto pasted = paste_distributivity(l1, l2, f);
    auto direct = dependent_product(l2, f);
    CHECK(pasted.outer.w.size == direct.w.size);
    CHECK(check_universal_property(pasted.outer, 3).pass);
  }
  SUBCASE("identity f makes w the domain") {
    Mor l1 = plain_map(2, 1, {0, 0});
    Mor l2 = plain_map(1, 1, {0});
    Mor f = identity_mor(make_set(1));
    auto pasted = paste_distributivity(l1, l2, f);
    CHECK(pasted.outer.w.size == 2);
    CHECK(check_universal_property(pasted.outer, 3).pass);
  }
  SUBCASE("doubly-exponential section count") {
    // l1, l2 with fibres of size 2 over a 2-point base, f: 2 -> 1
    Mor l1 = plain_map(8, 4, {0, 0, 1, 1, 2, 2, 3, 3});
    Mor l2 = plain_map(4, 2, {0, 0, 1, 1});
    Mor f = plain_map(2, 1, {0, 0});
    auto pasted = paste_distributivity(l1, l2, f);
    CHECK(pasted.outer.w.size == 16);
    auto direct = dependent_product(compose(l2, l1), f);
    CHECK(direct.w.size == 16);
    CHECK(check_universal_property(pasted.outer, 2).pass);
  }
  SUBCASE("F-composite pasting") {
    Mor l = plain_map(4, 2, {0, 0, 1, 1});
    Mor f1 = plain_map(2, 2, {0, 1});
    Mor f2 = plain_map(2, 1, {0, 0});
    auto pasted = paste_distributivity_f(l, f1, f2);
    auto direct = dependent_product(l, compose(f2, f1));
    CHECK(pasted.outer.w.size == direct.w.size);
    CHECK(check_universal_property(pasted.outer, 3).pass);
  }
}

TEST_CASE("fold distributivity") {
  SUBCASE("fibre size 2") {
    Mor p = plain_map(2, 1, {0, 0});
    auto fd = fold_distributivity(p);
    CHECK(fd.dd.w.size == 4);
    CHECK(fd.c.obj.size == 2);
    // both projections are bijections c_{L/R} -> c
    CHECK(fd.p_l.dom.size == 2);
    CHECK(fd.p_r.dom.size == 2);
    auto decl = degree_decomposition(fd.p_l);
    REQUIRE(decl.components.size() == 1);
    CHECK(decl.components[0].degree == 1);
  }
  SUBCASE("fibre size 1 has empty c") {
    Mor p = identity_mor(make_set(3));
    auto fd = fold_distributivity(p);
    CHECK(fd.c.obj.size == 0);
  }
  SUBCASE("fibre size 3") {
    Mor p = plain_map(3, 1, {0, 0, 0});
    auto fd = fold_distributivity(p);
    CHECK(fd.c.obj.size == 6);
    auto decl = degree_decomposition(fd.p_l);
    std::vector<int> degs;
    for (const auto& c : decl.components) degs.push_back(c.degree);
    CHECK(degs == std::vector<int>{1, 2});
    CHECK(decl.component(0) == nullptr);
  }
  SUBCASE("empty fibre is rejected") {
    Mor p = plain_map(2, 3, {0, 2});
    CHECK_THROWS_AS(fold_distributivity(p), std::invalid_argument);
  }
  SUBCASE("the underlying diagram passes the universal property") {
    Mor p = plain_map(3, 2, {0, 0, 1});
    auto fd = fold_distributivity(p);
    CHECK(check_universal_property(fd.dd, 2).pass);
  }
}
