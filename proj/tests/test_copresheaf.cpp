#include "catsharp/copresheaf.hpp"

#include "catsharp/corpus.hpp"
#include "doctest.h"

using namespace catsharp;

TEST_CASE("terminal and representable copresheaves pass the checker") {
  for (const auto& [name, k] : corpus_categories()) {
    CAPTURE(name);
    Comonoid c = from_category(k);
    CHECK(check_copresheaf(terminal_copresheaf(c)).ok());
    for (int o = 0; o < c.n_objects(); ++o)
      CHECK(check_copresheaf(representable(c, o)).ok());
  }
}

TEST_CASE("a corrupted action fails the checker") {
  Comonoid c = from_category(cyclic_monoid(2));
  Copresheaf x = representable(c, 0);
  // break functoriality: the generator acts as a constant, so its square
  // cannot act as the identity
  std::vector<FinSet> at = {x.at(0)};
  std::vector<std::vector<std::vector<int>>> act = {{{0, 1}, {1, 1}}};
  Copresheaf bad(c, std::move(at), std::move(act));
  CHECK(!check_copresheaf(bad).ok());
}

TEST_CASE("representables on the chain") {
  Comonoid c = from_category(walking_arrow_category());
  Copresheaf r0 = representable(c, 0);
  // at object 0: {id0}; at object 1: {f01}
  CHECK(r0.at(0).size() == 1);
  CHECK(r0.at(1).size() == 1);
  Copresheaf r1 = representable(c, 1);
  CHECK(r1.at(0).size() == 0);
  CHECK(r1.at(1).size() == 1);
  // discrete base: indicator copresheaf
  Comonoid d3 = discrete(FinSet::range("a", 3));
  Copresheaf ind = representable(d3, 1);
  CHECK(ind.at(0).size() == 0);
  CHECK(ind.at(1).size() == 1);
  CHECK(ind.at(2).size() == 0);
  // the parallel pair at v: one vertex, no edges
  Comonoid g = from_category(parallel_pair_category());
  Copresheaf rv = representable(g, 1);
  CHECK(rv.at(0).size() == 0);  // no edges
  CHECK(rv.at(1).size() == 1);  // one vertex
}

TEST_CASE("Yoneda: morphisms out of a representable are elements") {
  for (const auto& [name, k] : corpus_categories()) {
    CAPTURE(name);
    Comonoid c = from_category(k);
    Rng rng(5);
    Copresheaf x = random_copresheaf(c, rng);
    for (int o = 0; o < c.n_objects(); ++o) {
      auto homs = enumerate_copresheaf_morphisms(representable(c, o), x);
      CHECK(homs.size() == static_cast<std::size_t>(x.at(o).size()));
    }
  }
}

TEST_CASE("morphisms into the terminal and out of the empty copresheaf") {
  Comonoid c = from_category(chain_category(2));
  Rng rng(9);
  Copresheaf x = random_copresheaf(c, rng);
  CHECK(enumerate_copresheaf_morphisms(x, terminal_copresheaf(c)).size() == 1);
  CHECK(enumerate_copresheaf_morphisms(empty_copresheaf(c), x).size() == 1);
}

TEST_CASE("products of copresheaves") {
  Comonoid c = from_category(cyclic_monoid(3));
  Rng rng(21);
  Copresheaf x = random_copresheaf(c, rng);
  Copresheaf y = random_copresheaf(c, rng);
  Copresheaf xy = product_copresheaf(x, y);
  CHECK(check_copresheaf(xy).ok());
  CHECK(xy.at(0).size() == x.at(0).size() * y.at(0).size());
  // unit law
  Copresheaf xt = product_copresheaf(x, terminal_copresheaf(c));
  auto iso = find_copresheaf_iso(xt, x);
  CHECK(iso.has_value());
}

TEST_CASE("elements category of the terminal copresheaf is the base") {
  for (const auto& [name, k] : corpus_categories()) {
    CAPTURE(name);
    Comonoid c = from_category(k);
    auto res = elements_category(terminal_copresheaf(c));
    CHECK(check_category(res.cat).ok());
    CHECK(check_functor(res.projection).ok());
    auto iso = find_category_iso(res.cat, k);
    CHECK(iso.has_value());
  }
}

TEST_CASE("elements category of a representable is the coslice") {
  // walking arrow at 0: objects = {id0, f01}, one non-identity morphism
  Comonoid c = from_category(walking_arrow_category());
  auto res = elements_category(representable(c, 0));
  CHECK(res.cat.n_objects() == 2);
  CHECK(res.cat.n_morphisms() == 3);
  // direct coslice construction: objects are morphisms out of 0, morphisms
  // are commuting triangles, here exactly one non-identity
  CHECK(check_category(res.cat).ok());
  // empty copresheaf gives the empty category
  auto res0 = elements_category(empty_copresheaf(c));
  CHECK(res0.cat.n_objects() == 0);
}

TEST_CASE("colimit over elements: constant assignment over connected base") {
  Comonoid c = from_category(walking_arrow_category());
  Copresheaf x = terminal_copresheaf(c);
  // constant two-point assignment with identity transports: the colimit over
  // the connected category of elements is one copy
  FinSet two = FinSet::range("s", 2);
  std::vector<std::vector<FinSet>> assign = {{two}, {two}};
  std::vector<std::vector<std::vector<FinFn>>> transport(2);
  for (int o = 0; o < 2; ++o) {
    transport[o].resize(c.hom(o).size());
    for (int f = 0; f < c.hom(o).size(); ++f)
      transport[o][f] = {FinFn::identity(two)};
  }
  auto res = colimit_over_elements(x, assign, transport);
  CHECK(res.classes.size() == 2);
  CHECK(res.class_of(0, 0, Label::atom("s0")) ==
        res.class_of(1, 0, Label::atom("s0")));
}

TEST_CASE("colimit over a discrete base is a disjoint union") {
  Comonoid c = discrete(FinSet::range("a", 2));
  Copresheaf x = terminal_copresheaf(c);
  FinSet one = FinSet::range("t", 1);
  std::vector<std::vector<FinSet>> assign = {{one}, {one}};
  std::vector<std::vector<std::vector<FinFn>>> transport(2);
  for (int o = 0; o < 2; ++o) transport[o] = {{FinFn::identity(one)}};
  auto res = colimit_over_elements(x, assign, transport);
  CHECK(res.classes.size() == 2);
}

TEST_CASE("colimit of representable-shaped data reproduces evaluation") {
  // co-Yoneda: colim over elements of representable(C) of X at the element's
  // object equals X_C
  Comonoid c = from_category(chain_category(2));
  Rng rng(33);
  Copresheaf x = random_copresheaf(c, rng);
  for (int C = 0; C < c.n_objects(); ++C) {
    Copresheaf rep = representable(c, C);
    std::vector<std::vector<FinSet>> assign(c.n_objects());
    std::vector<std::vector<std::vector<FinFn>>> transport(c.n_objects());
    for (int o = 0; o < c.n_objects(); ++o) {
      assign[o].resize(rep.at(o).size());
      for (int e = 0; e < rep.at(o).size(); ++e) assign[o][e] = x.at(o);
      transport[o].resize(c.hom(o).size());
      for (int f = 0; f < c.hom(o).size(); ++f) {
        transport[o][f].resize(rep.at(o).size());
        int d = c.cod(o, f);
        for (int e = 0; e < rep.at(o).size(); ++e) {
          std::vector<int> t(x.at(o).size());
          for (int s = 0; s < x.at(o).size(); ++s) t[s] = x.act(o, f, s);
          transport[o][f][e] = FinFn(x.at(o), x.at(d), std::move(t));
        }
      }
    }
    auto res = colimit_over_elements(rep, assign, transport);
    CHECK(res.classes.size() == x.at(C).size());
  }
}

TEST_CASE("naturality enumeration with propagation: parallel pair graphs") {
  // graphs: copresheaves on the parallel pair; count graph homomorphisms
  Comonoid g = from_category(parallel_pair_category());
  // a 2-cycle graph: vertices u0 u1, edges e0: u0->u1, e1: u1->u0
  std::vector<FinSet> at = {FinSet::range("e", 2), FinSet::range("u", 2)};
  std::vector<std::vector<std::vector<int>>> act(2);
  act[0] = {{0, 1}, {0, 1}, {1, 0}};  // ide, s, t
  act[1] = {{0, 1}};                  // idv
  Copresheaf cyc(g, at, act);
  REQUIRE(check_copresheaf(cyc).ok());
  // homs cyc -> cyc: the two rotations
  auto homs = enumerate_copresheaf_morphisms(cyc, cyc);
  CHECK(homs.size() == 2);
}
