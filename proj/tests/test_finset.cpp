#include <doctest.h>

#include <set>

#include "bispan/finset.hpp"

using namespace bispan;

namespace {

Mor plain_map(int dn, int cn, std::vector<int> m) {
  return make_mor(make_set(dn), make_set(cn), std::move(m));
}

}  // namespace

TEST_CASE("fibers") {
  Mor f = plain_map(5, 3, {0, 0, 2, 2, 2});
  CHECK(fiber_elems(f, 2) == std::vector<int>{2, 3, 4});
  CHECK(fiber_elems(f, 1).empty());
  CHECK(fiber(f, 0).obj.size == 2);
  CHECK_THROWS_AS(fiber_elems(f, 3), std::invalid_argument);
  Mor id = identity_mor(make_set(4));
  for (int y = 0; y < 4; ++y) CHECK(fiber_elems(id, y).size() == 1);
}

TEST_CASE("degree decomposition") {
  SUBCASE("mixed fibre sizes") {
    Mor f = plain_map(5, 3, {0, 0, 2, 2, 2});
    auto dec = degree_decomposition(f);
    REQUIRE(dec.components.size() == 3);
    CHECK(dec.component(0)->part.incl.map == std::vector<int>{1});
    CHECK(dec.component(2)->part.incl.map == std::vector<int>{0});
    CHECK(dec.component(3)->part.incl.map == std::vector<int>{2});
    CHECK(dec.max_degree == 3);
    // counting through the decomposition
    long long total = 0;
    for (const auto& c : dec.components)
      total += static_cast<long long>(c.degree) * c.part.obj.size;
    CHECK(total == 5);
  }
  SUBCASE("identity is pure degree 1") {
    auto dec = degree_decomposition(identity_mor(make_set(4)));
    REQUIRE(dec.components.size() == 1);
    CHECK(dec.components[0].degree == 1);
    CHECK(dec.components[0].part.obj.size == 4);
  }
  SUBCASE("empty domain is pure degree 0") {
    auto dec = degree_decomposition(plain_map(0, 3, {}));
    REQUIRE(dec.components.size() == 1);
    CHECK(dec.components[0].degree == 0);
    CHECK(dec.components[0].part.obj.size == 3);
  }
}

TEST_CASE("degree-1 plain maps are exactly the bijections") {
  for (int dn = 0; dn <= 4; ++dn)
    for (int cn = 0; cn <= 4; ++cn) {
      Obj dom = make_set(dn), cod = make_set(cn);
      for (const auto& m : all_maps(dom, cod)) {
        Mor f{dom, cod, m, true, true};
        auto dec = degree_decomposition(f);
        bool pure_deg1 = dec.components.size() == (cn == 0 ? 0u : 1u) &&
                         (cn == 0 || dec.components[0].degree == 1);
        std::set<int> image(m.begin(), m.end());
        bool bijective = dn == cn && static_cast<int>(image.size()) == cn;
        CHECK(pure_deg1 == bijective);
      }
    }
}

TEST_CASE("fold degree decomposition") {
  SUBCASE("constant degrees add") {
    Mor f = plain_map(1, 1, {0});          // degree 1
    Mor g = plain_map(2, 1, {0, 0});       // degree 2
    auto fold = fold_degree_decomposition(f, g);
    REQUIRE(fold.decomposition.components.size() == 1);
    CHECK(fold.decomposition.components[0].degree == 3);
  }
  SUBCASE("empty g is the unit") {
    Mor f = plain_map(3, 2, {0, 0, 1});
    Mor g = plain_map(0, 2, {});
    auto fold = fold_degree_decomposition(f, g);
    auto plain = degree_decomposition(f);
    REQUIRE(fold.decomposition.components.size() == plain.components.size());
    for (std::size_t i = 0; i < plain.components.size(); ++i) {
      CHECK(fold.decomposition.components[i].degree == plain.components[i].degree);
      CHECK(fold.decomposition.components[i].part.incl.map == plain.components[i].part.incl.map);
    }
  }
  SUBCASE("mixed degrees split differently") {
    // f has degrees (1, 2) over y, g has (2, 1); the fold is constant 3
    Mor f = plain_map(3, 2, {0, 1, 1});
    Mor g = plain_map(3, 2, {0, 0, 1});
    auto fold = fold_degree_decomposition(f, g);
    REQUIRE(fold.decomposition.components.size() == 1);
    CHECK(fold.decomposition.components[0].degree == 3);
    CHECK(fold.decomposition.components[0].part.obj.size == 2);
  }
  SUBCASE("four distinct block degrees") {
    // y of size 2: point 0 carries (f:1, g:1) -> 2, point 1 carries (f:2, g:2) -> 4
    Mor f = plain_map(3, 2, {0, 1, 1});
    Mor g = plain_map(3, 2, {0, 1, 1});
    auto fold = fold_degree_decomposition(f, g);
    REQUIRE(fold.decomposition.components.size() == 2);
    CHECK(fold.decomposition.components[0].degree == 2);
    CHECK(fold.decomposition.components[1].degree == 4);
  }
  CHECK_THROWS_AS(fold_degree_decomposition(plain_map(1, 1, {0}), plain_map(1, 2, {0})),
                  std::invalid_argument);
}

TEST_CASE("canonical form of plain objects") {
  CHECK(canonical_form_object(make_set(0)) == 0);
  CHECK(canonical_form_object(make_set(5)) == 5);
  CHECK(canonical_form_object(coproduct(make_set(2), make_set(3)).obj) == 5);
}
