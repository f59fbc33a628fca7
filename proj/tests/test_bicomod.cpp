#include "catsharp/bicomod.hpp"

#include "catsharp/corpus.hpp"
#include "doctest.h"

using namespace catsharp;

namespace {

Comonoid arrow() { return from_category(walking_arrow_category()); }
Comonoid chain2c() { return from_category(chain_category(2)); }
Comonoid z2() { return from_category(cyclic_monoid(2)); }

}  // namespace

TEST_CASE("identity bicomodules of the corpus pass all laws") {
  for (const auto& [name, k] : corpus_categories()) {
    CAPTURE(name);
    Bicomodule b = identity_bicomodule(from_category(k));
    CheckReport r = check_bicomodule(b);
    CHECK(r.ok());
  }
}

TEST_CASE("a copresheaf is a (c,0)-bicomodule and round trips") {
  Comonoid c = chain2c();
  Copresheaf x = representable(c, 0);
  Bicomodule b = copresheaf_to_bicomodule(x);
  CHECK(check_bicomodule(b).ok());
  Copresheaf back = bicomodule_to_copresheaf(b);
  CHECK(back.total_elements() == x.total_elements());
  for (int o = 0; o < c.n_objects(); ++o)
    for (int f = 0; f < c.hom(o).size(); ++f)
      for (int e = 0; e < x.at(o).size(); ++e)
        CHECK(back.act(o, f, e) == x.act(o, f, e));
}

TEST_CASE("corrupting the right action is caught") {
  Comonoid c = z2();
  Bicomodule b = identity_bicomodule(c);
  // swap the right action of the two morphisms at the unique object
  Bicomodule bad = Bicomodule::make(
      c, c, b.carrier(), {0}, {{0, 0}}, {{{0, 1}, {1, 0}}}, {{0, 0}},
      {{{1, 0}, {0, 1}}});
  CHECK(!check_bicomodule(bad).ok());
}

TEST_CASE("unit laws of composition via the unitors") {
  for (const auto& name : {"walking_arrow", "z3", "chain2"}) {
    CAPTURE(name);
    FinCategory k;
    for (const auto& [n, cat] : corpus_categories())
      if (n == name) k = cat;
    Comonoid c = from_category(k);
    Bicomodule idc = identity_bicomodule(c);
    Bicomodule p = idc;  // the identity bicomodule as a (c,c)-bicomodule
    ComposeResult pid = compose_bicomodules(p, idc);
    ComposeResult idp = compose_bicomodules(idc, p);
    BicomoduleMorphism ru = right_unitor(pid, p);
    BicomoduleMorphism ru_inv = right_unitor_inv(pid, p);
    BicomoduleMorphism lu = left_unitor(idp, p);
    BicomoduleMorphism lu_inv = left_unitor_inv(idp, p);
    CHECK(check_bicomodule_morphism(ru).ok());
    CHECK(check_bicomodule_morphism(ru_inv).ok());
    CHECK(check_bicomodule_morphism(lu).ok());
    CHECK(check_bicomodule_morphism(lu_inv).ok());
    CHECK(ru_inv.underlying.then(ru.underlying) ==
          PolyMorphism::identity(p.carrier()));
    CHECK(lu_inv.underlying.then(lu.underlying) ==
          PolyMorphism::identity(p.carrier()));
    CHECK(ru.underlying.is_iso());
    CHECK(lu.underlying.is_iso());
  }
}

TEST_CASE("composition agrees with the polynomial-level equalizer oracle") {
  // corpus identity bicomodules against themselves
  for (const auto& name : {"walking_arrow", "z2", "discrete2"}) {
    CAPTURE(name);
    FinCategory k;
    for (const auto& [n, cat] : corpus_categories())
      if (n == name) k = cat;
    Comonoid c = from_category(k);
    Bicomodule idc = identity_bicomodule(c);
    ComposeResult fast = compose_bicomodules(idc, idc);
    Bicomodule oracle = compose_oracle(idc, idc);
    CHECK(check_bicomodule(fast.b).ok());
    CHECK(check_bicomodule(oracle).ok());
    auto iso = find_bicomodule_iso(fast.b, oracle);
    CHECK(iso.has_value());
  }
}

TEST_CASE("composition agrees with the oracle on seeded micro-instances") {
  std::vector<std::pair<Comonoid, Comonoid>> base_pairs = {
      {arrow(), z2()},
      {discrete(FinSet::range("a", 2)), arrow()},
      {z2(), discrete(FinSet::range("b", 2))},
  };
  Rng rng(41);
  int done = 0;
  for (auto& [c, d] : base_pairs) {
    for (int rep = 0; rep < 3; ++rep) {
      Comonoid e = rep == 0 ? c : d;
      Bicomodule p = random_bicomodule(c, d, rng, 1, 1);
      Bicomodule q = random_bicomodule(d, e, rng, 1, 1);
      REQUIRE(check_bicomodule(p).ok());
      REQUIRE(check_bicomodule(q).ok());
      ComposeResult fast = compose_bicomodules(p, q);
      CHECK(check_bicomodule(fast.b).ok());
      Bicomodule oracle = compose_oracle(p, q);
      CHECK(check_bicomodule(oracle).ok());
      auto iso = find_bicomodule_iso(fast.b, oracle);
      CHECK(iso.has_value());
      ++done;
    }
  }
  CHECK(done == 9);
}

TEST_CASE("associativity of composition holds via the canonical associator") {
  Rng rng(7);
  Comonoid c = arrow();
  Comonoid d = z2();
  Bicomodule p = random_bicomodule(c, d, rng, 2, 2);
  Bicomodule q = random_bicomodule(d, d, rng, 2, 2);
  Bicomodule r = random_bicomodule(d, c, rng, 2, 2);
  ComposeResult pq = compose_bicomodules(p, q);
  ComposeResult pq_r = compose_bicomodules(pq.b, r);
  ComposeResult qr = compose_bicomodules(q, r);
  ComposeResult p_qr = compose_bicomodules(p, qr.b);
  BicomoduleMorphism a = assoc_bicomodules(pq, pq_r, qr, p_qr);
  CHECK(check_bicomodule_morphism(a).ok());
  CHECK(a.underlying.is_iso());
}

TEST_CASE("prafunctor of the identity bicomodule is the identity") {
  Comonoid c = chain2c();
  Bicomodule idc = identity_bicomodule(c);
  Rng rng(3);
  Copresheaf x = random_copresheaf(c, rng);
  Copresheaf fx = evaluate_prafunctor(idc, x);
  auto iso = find_copresheaf_iso(fx, x);
  CHECK(iso.has_value());
}

TEST_CASE("prafunctor evaluation matches composition with the copresheaf") {
  Rng rng(11);
  Comonoid c = arrow();
  Comonoid d = z2();
  Bicomodule p = random_bicomodule(c, d, rng, 2, 2);
  Copresheaf x = random_copresheaf(d, rng);
  Copresheaf via_hom = evaluate_prafunctor(p, x);
  ComposeResult via_comp = compose_bicomodules(p, copresheaf_to_bicomodule(x));
  Copresheaf via_comp_cop = bicomodule_to_copresheaf(via_comp.b);
  auto iso = find_copresheaf_iso(via_hom, via_comp_cop);
  CHECK(iso.has_value());
}

TEST_CASE("prafunctor composition coherence") {
  Rng rng(13);
  Comonoid c = arrow();
  Comonoid d = discrete(FinSet::range("a", 2));
  Bicomodule p = random_bicomodule(c, d, rng, 2, 2);
  Bicomodule q = random_bicomodule(d, d, rng, 2, 2);
  Copresheaf x = random_copresheaf(d, rng);
  Copresheaf nested = evaluate_prafunctor(p, evaluate_prafunctor(q, x));
  ComposeResult pq = compose_bicomodules(p, q);
  Copresheaf direct = evaluate_prafunctor(pq.b, x);
  auto iso = find_copresheaf_iso(nested, direct);
  CHECK(iso.has_value());
}

TEST_CASE("external product prafunctor is the pointwise product") {
  Comonoid c = arrow();
  Comonoid d = z2();
  Bicomodule ext = external_product_bicomodule(c, d);
  CHECK(check_bicomodule(ext).ok());
  Rng rng(17);
  Copresheaf x = random_copresheaf(c, rng);
  Copresheaf y = random_copresheaf(d, rng);
  // assemble (x, y) as a copresheaf on c + d
  const Comonoid& sum_base = ext.right();
  std::vector<FinSet> at(sum_base.n_objects());
  std::vector<std::vector<std::vector<int>>> act(sum_base.n_objects());
  for (int o = 0; o < c.n_objects(); ++o) {
    at[o] = x.at(o);
    act[o].resize(c.hom(o).size());
    for (int f = 0; f < c.hom(o).size(); ++f) {
      act[o][f].resize(x.at(o).size());
      for (int e = 0; e < x.at(o).size(); ++e) act[o][f][e] = x.act(o, f, e);
    }
  }
  for (int o = 0; o < d.n_objects(); ++o) {
    int z = c.n_objects() + o;
    at[z] = y.at(o);
    act[z].resize(d.hom(o).size());
    for (int f = 0; f < d.hom(o).size(); ++f) {
      act[z][f].resize(y.at(o).size());
      for (int e = 0; e < y.at(o).size(); ++e) act[z][f][e] = y.act(o, f, e);
    }
  }
  Copresheaf xy(sum_base, std::move(at), std::move(act));
  REQUIRE(check_copresheaf(xy).ok());
  Copresheaf box = evaluate_prafunctor(ext, xy);
  // (x box y)_{C,D} = X_C x Y_D
  for (int C = 0; C < c.n_objects(); ++C)
    for (int D = 0; D < d.n_objects(); ++D) {
      int obj = C * d.n_objects() + D;
      CHECK(box.at(obj).size() == x.at(C).size() * y.at(D).size());
    }
}

TEST_CASE("coclosure against the identity is the original bicomodule") {
  Rng rng(19);
  Comonoid c = arrow();
  Comonoid d = z2();
  Bicomodule p = random_bicomodule(c, d, rng, 2, 2);
  CoclosureResult cocl = coclosure(p, identity_bicomodule(d));
  CHECK(check_bicomodule(cocl.b).ok());
  auto iso = find_bicomodule_iso(cocl.b, p);
  CHECK(iso.has_value());
}

TEST_CASE("coclosure of a copresheaf has its elements as positions") {
  Rng rng(23);
  Comonoid d = arrow();
  Copresheaf x = random_copresheaf(d, rng);
  Bicomodule xb = copresheaf_to_bicomodule(x);  // (d, 0)
  Bicomodule q = random_bicomodule(z2(), zero_comonoid(), rng, 2, 1);
  CoclosureResult cocl = coclosure(xb, q);
  CHECK(cocl.b.npos() == x.total_elements());
  CHECK(check_bicomodule(cocl.b).ok());
}

TEST_CASE("coclosure unit is a valid morphism of bicomodules") {
  Rng rng(29);
  Comonoid c = arrow();
  Comonoid d = discrete(FinSet::range("a", 2));
  Comonoid e = z2();
  Bicomodule p = random_bicomodule(c, e, rng, 2, 2);
  Bicomodule q = random_bicomodule(d, e, rng, 2, 2);
  CoclosureResult cocl = coclosure(p, q);
  REQUIRE(check_bicomodule(cocl.b).ok());
  ComposeResult cocl_q = compose_bicomodules(cocl.b, q);
  BicomoduleMorphism unit = coclosure_unit(p, q, cocl, cocl_q);
  CHECK(check_bicomodule_morphism(unit).ok());
}

TEST_CASE("coclosure universal property on micro-instances") {
  Rng rng(31);
  Comonoid c = discrete(FinSet::range("c", 1));
  Comonoid d = discrete(FinSet::range("d", 2));
  Comonoid e = z2();
  int passes = 0;
  for (int rep = 0; rep < 4; ++rep) {
    Bicomodule p = random_bicomodule(c, e, rng, 1, 2);
    Bicomodule q = random_bicomodule(d, e, rng, 1, 2);
    Bicomodule r = random_bicomodule(c, d, rng, 1, 2);
    CheckReport rep2 = coclosure_universal_check(p, q, r);
    CHECK(rep2.ok());
    if (rep2.ok()) ++passes;
  }
  CHECK(passes == 4);
  // r = <p|q>: identities correspond through the unit
  Bicomodule p = random_bicomodule(c, e, rng, 1, 2);
  Bicomodule q = random_bicomodule(d, e, rng, 1, 2);
  CoclosureResult cocl = coclosure(p, q);
  CheckReport rep3 = coclosure_universal_check(p, q, cocl.b);
  CHECK(rep3.ok());
  // empty p: both sides are singletons
  Copresheaf none = empty_copresheaf(c);
  Bicomodule p0 = copresheaf_to_bicomodule(none);
  // make p0 a (c,e)-bicomodule: empty positions vacuously
  Bicomodule p0e = Bicomodule::make(c, e, Polynomial::zero(), {}, {}, {}, {}, {});
  Bicomodule r0 = random_bicomodule(c, d, rng, 1, 1);
  Bicomodule q0 = random_bicomodule(d, e, rng, 1, 1);
  CheckReport rep4 = coclosure_universal_check(p0e, q0, r0);
  CHECK(rep4.ok());
}

TEST_CASE("tensor_over unit acts as a unit and satisfies the laws") {
  Rng rng(37);
  Comonoid c = arrow();
  Comonoid d = z2();
  Bicomodule p = random_bicomodule(c, d, rng, 2, 2);
  Bicomodule unit = tensor_over_unit(c, d);
  CHECK(check_bicomodule(unit).ok());
  Bicomodule pu = tensor_over(p, unit);
  CHECK(check_bicomodule(pu).ok());
  auto iso = find_bicomodule_iso(pu, p);
  CHECK(iso.has_value());
  // over discrete bases the tensor is the fiberwise dirichlet product
  Comonoid da = discrete(FinSet::range("a", 2));
  Comonoid db = discrete(FinSet::range("b", 1));
  Bicomodule s = random_bicomodule(da, db, rng, 2, 2);
  Bicomodule t = random_bicomodule(da, db, rng, 2, 2);
  Bicomodule st = tensor_over(s, t);
  CHECK(check_bicomodule(st).ok());
  // position count: pairs with equal grade
  int expect = 0;
  for (int i = 0; i < s.npos(); ++i)
    for (int j = 0; j < t.npos(); ++j)
      if (s.pos_grade(i) == t.pos_grade(j)) ++expect;
  CHECK(st.npos() == expect);
}

TEST_CASE("span round trips") {
  Comonoid a = discrete(FinSet::range("a", 2));
  Comonoid b = discrete(FinSet::range("b", 3));
  Rng rng(43);
  Bicomodule p = random_bicomodule(a, b, rng, 2, 2);
  SpanDiagram s = to_span(p);
  Bicomodule back = span_to_bicomodule(s);
  CHECK(check_bicomodule(back).ok());
  auto iso = find_bicomodule_iso(p, back);
  CHECK(iso.has_value());
  // identity of Ay: A = mid = top
  Bicomodule ida = identity_bicomodule(a);
  SpanDiagram sa = to_span(ida);
  CHECK(sa.mid.size() == 2);
  CHECK(sa.top.size() == 2);
}

TEST_CASE("the span of a category and its dagger") {
  Comonoid c = chain2c();
  Bicomodule cb = identity_bicomodule(c);
  (void)cb;
  // right-adjoint form: to_a is the identity
  // dagger swaps as printed and double application returns the same span
  SpanDiagram s{FinSet::range("x", 2),
                FinSet::range("m", 3),
                FinSet::range("t", 2),
                FinSet::range("t", 2),
                FinFn(FinSet::range("m", 3), FinSet::range("x", 2), {0, 1, 1}),
                FinFn(FinSet::range("m", 3), FinSet::range("t", 2), {0, 0, 1}),
                FinFn::identity(FinSet::range("t", 2))};
  SpanDiagram d1 = dagger(s);
  CHECK(d1.to_top == FinFn::identity(d1.mid));  // left-adjoint form
  SpanDiagram d2 = dagger(d1);
  // back to a right-adjoint form representing the same span
  CHECK(d2.to_a == FinFn::identity(d2.top));
  CHECK(d2.mid.size() == s.mid.size());
  // legs agree up to the mid identification
  for (int m = 0; m < s.mid.size(); ++m) {
    CHECK(d2.to_b(m) == s.to_b(m));
    CHECK(d2.to_top(m) == s.to_top(m));
  }
}

TEST_CASE("vee over B = 1 counts products of direction sets") {
  Comonoid a = discrete(FinSet::range("a", 1));
  Comonoid b = discrete(FinSet::range("b", 1));
  Rng rng(47);
  Bicomodule p = random_bicomodule(a, b, rng, 3, 2);
  Bicomodule pv = vee(p);
  CHECK(check_bicomodule(pv).ok());
  std::size_t expect = 1;
  for (int i = 0; i < p.npos(); ++i) expect *= p.ndirs(i);
  CHECK(static_cast<std::size_t>(pv.npos()) == expect);
}

TEST_CASE("vee of a left-adjoint span is the printed diagram") {
  // left adjoint: A <-f C = C -g> A
  FinSet A = FinSet::range("a", 2);
  FinSet C = FinSet::range("c", 3);
  SpanDiagram left{A, C, C, A,
                   FinFn(C, A, {0, 1, 0}),  // f
                   FinFn::identity(C),
                   FinFn(C, A, {1, 1, 0})};  // g
  Bicomodule p = span_to_bicomodule(left);
  Bicomodule pv = vee(p);
  SpanDiagram sv = to_span(pv);
  // expected: A <-f C -g> A = A: positions A (one section per object), mid C
  CHECK(sv.top.size() == 2);
  CHECK(sv.mid.size() == 3);
  // direction gradings carry f, position gradings g... positions of pv are
  // graded by their object; directions graded by the f-leg
  for (int m = 0; m < sv.mid.size(); ++m) {
    int c_idx = -1;
    // mid label of pv is the position label of p, i.e. an element of C
    for (int t = 0; t < C.size(); ++t)
      if (sv.mid.at(m).parts().size() > 0) break;
    (void)c_idx;
  }
  // the dual of the dual of a linear span is isomorphic to the original
  Bicomodule pvv = vee(pv);
  auto iso = find_bicomodule_iso(pvv, p);
  CHECK(iso.has_value());
}

TEST_CASE("opposites via spans match the direct construction on the corpus") {
  for (const auto& [name, k] : corpus_categories()) {
    CAPTURE(name);
    Comonoid c = from_category(k);
    // discrete: equal to itself; all: the function validates internally
    Bicomodule op = opposite_via_spans(c);
    CHECK(check_bicomodule(op).ok());
  }
}

TEST_CASE("enumerate_bicomodule_morphisms finds identities") {
  Comonoid c = arrow();
  Bicomodule idc = identity_bicomodule(c);
  auto homs = enumerate_bicomodule_morphisms(idc, idc);
  bool has_id = false;
  for (const auto& h : homs)
    if (h.underlying == PolyMorphism::identity(idc.carrier())) has_id = true;
  CHECK(has_id);
  for (const auto& h : homs) CHECK(check_bicomodule_morphism(h).ok());
}
