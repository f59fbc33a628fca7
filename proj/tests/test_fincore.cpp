#include "catsharp/fincore.hpp"

#include <map>
#include <set>

#include "doctest.h"

using namespace catsharp;

namespace {

// independent oracle: equivalence closure by iterated relation expansion
std::map<std::string, std::set<std::string>> closure_oracle(
    const FinSet& s, const std::vector<std::pair<Label, Label>>& pairs) {
  std::map<std::string, std::set<std::string>> cls;
  for (const auto& l : s.labels()) cls[l.str()] = {l.str()};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : pairs) {
      auto& ca = cls[a.str()];
      auto& cb = cls[b.str()];
      if (ca != cb) {
        std::set<std::string> merged;
        merged.insert(ca.begin(), ca.end());
        merged.insert(cb.begin(), cb.end());
        for (const auto& m : merged) cls[m] = merged;
        changed = true;
      }
    }
  }
  return cls;
}

}  // namespace

TEST_CASE("labels compare structurally and print canonically") {
  Label a = Label::atom("a");
  Label t = Label::pair(a, Label::num(3));
  CHECK(a == Label::atom("a"));
  CHECK(t == Label::pair(Label::atom("a"), Label::atom("3")));
  CHECK(t.str() == "(a,3)");
  CHECK(a < t);  // atoms order before tuples
}

TEST_CASE("finite sets reject duplicates and keep order") {
  FinSet s = FinSet::atoms({"x", "y", "z"});
  CHECK(s.size() == 3);
  CHECK(s.index_of(Label::atom("y")) == 1);
  CHECK_THROWS_AS(FinSet::atoms({"x", "x"}), InputError);
  CHECK_THROWS_AS(s.index_of(Label::atom("w")), InputError);
}

TEST_CASE("quotient merges one pair") {
  FinSet s = FinSet::atoms({"a", "b", "c"});
  auto q = quotient(s, {{Label::atom("a"), Label::atom("b")}});
  CHECK(q.classes.size() == 2);
  CHECK(q.classes.at(0) == Label::atom("a"));
  CHECK(q.classes.at(1) == Label::atom("c"));
  CHECK(q.projection.apply(Label::atom("b")) == Label::atom("a"));
  CHECK(q.projection.apply(Label::atom("c")) == Label::atom("c"));
}

TEST_CASE("quotient by the empty relation is the identity") {
  FinSet s = FinSet::atoms({"a"});
  auto q = quotient(s, {});
  CHECK(q.classes == s);
  CHECK(q.projection == FinFn::identity(s));
}

TEST_CASE("quotient takes the transitive closure") {
  FinSet s = FinSet::atoms({"a", "b", "c"});
  std::vector<std::pair<Label, Label>> pairs = {
      {Label::atom("a"), Label::atom("b")}, {Label::atom("b"), Label::atom("c")}};
  auto q = quotient(s, pairs);
  auto oracle = closure_oracle(s, pairs);
  CHECK(q.classes.size() == 1);
  CHECK(oracle["a"].size() == 3);
  CHECK_THROWS_AS(quotient(s, {{Label::atom("a"), Label::atom("zz")}}), InputError);
}

TEST_CASE("quotient agrees with the closure oracle on random relations") {
  FinSet s = FinSet::atoms({"a", "b", "c", "d", "e"});
  // a few fixed relation patterns
  std::vector<std::vector<std::pair<Label, Label>>> cases = {
      {},
      {{Label::atom("a"), Label::atom("a")}},
      {{Label::atom("e"), Label::atom("a")}, {Label::atom("b"), Label::atom("d")}},
      {{Label::atom("a"), Label::atom("b")},
       {Label::atom("c"), Label::atom("d")},
       {Label::atom("b"), Label::atom("c")}},
  };
  for (const auto& pairs : cases) {
    auto q = quotient(s, pairs);
    auto oracle = closure_oracle(s, pairs);
    std::set<std::set<std::string>> oracle_classes;
    for (auto& [k, v] : oracle) oracle_classes.insert(v);
    CHECK(q.classes.size() == static_cast<int>(oracle_classes.size()));
    for (int i = 0; i < s.size(); ++i)
      for (int j = 0; j < s.size(); ++j) {
        bool same = q.projection(i) == q.projection(j);
        bool oracle_same = oracle[s.at(i).str()].count(s.at(j).str()) > 0;
        CHECK(same == oracle_same);
      }
  }
}

TEST_CASE("quotient is idempotent") {
  FinSet s = FinSet::atoms({"a", "b", "c", "d"});
  std::vector<std::pair<Label, Label>> pairs = {
      {Label::atom("a"), Label::atom("c")}, {Label::atom("b"), Label::atom("d")}};
  auto q1 = quotient(s, pairs);
  auto q2 = quotient(q1.classes, {{Label::atom("a"), Label::atom("a")}});
  CHECK(q2.classes == q1.classes);
}

TEST_CASE("function enumeration counts |b|^|a|") {
  for (int na = 0; na <= 4; ++na)
    for (int nb = 0; nb <= 4; ++nb) {
      FinSet a = FinSet::range("a", na);
      FinSet b = FinSet::range("b", nb);
      auto fns = enumerate_functions(a, b);
      std::size_t expect = 1;
      if (na > 0 && nb == 0)
        expect = 0;
      else
        for (int i = 0; i < na; ++i) expect *= nb;
      CHECK(fns.size() == expect);
    }
}

TEST_CASE("enumerated functions are distinct and ordered") {
  FinSet a = FinSet::range("a", 2);
  FinSet b = FinSet::range("b", 3);
  auto fns = enumerate_functions(a, b);
  REQUIRE(fns.size() == 9);
  CHECK(fns.front().table() == std::vector<int>{0, 0});
  CHECK(fns.back().table() == std::vector<int>{2, 2});
  for (std::size_t i = 1; i < fns.size(); ++i)
    CHECK(fns[i - 1].table() < fns[i].table());
}

TEST_CASE("enumeration budget raises a resource error") {
  FinSet a = FinSet::range("a", 10);
  FinSet b = FinSet::range("b", 10);
  CHECK_THROWS_AS(enumerate_functions(a, b, 100), ResourceError);
}

TEST_CASE("pullback along the identity is the graph of f") {
  FinSet a = FinSet::atoms({"x", "y"});
  FinSet z = FinSet::atoms({"0", "1"});
  FinFn f(a, z, {0, 1});
  auto pb = pullback(f, FinFn::identity(z));
  CHECK(pb.apex.size() == 2);
  CHECK(pb.to_left.is_bijective());
}

TEST_CASE("pullback of constants is the full product") {
  FinSet a = FinSet::range("a", 2);
  FinSet b = FinSet::range("b", 3);
  FinSet z = FinSet::atoms({"pt", "other"});
  FinFn f = FinFn::constant(a, z, Label::atom("pt"));
  FinFn g = FinFn::constant(b, z, Label::atom("pt"));
  auto pb = pullback(f, g);
  CHECK(pb.apex.size() == 6);
}

TEST_CASE("pullback of id against a 3-to-2 function has 3 pairs") {
  FinSet two = FinSet::range("x", 2);
  FinSet three = FinSet::atoms({"p", "q", "r"});
  FinFn f = FinFn::identity(two);
  FinFn g(three, two, {0, 0, 1});
  auto pb = pullback(f, g);
  // oracle: enumerate all pairs
  int count = 0;
  for (int x = 0; x < two.size(); ++x)
    for (int y = 0; y < three.size(); ++y)
      if (f(x) == g(y)) ++count;
  CHECK(pb.apex.size() == count);
  CHECK(count == 3);
  CHECK_THROWS_AS(pullback(f, FinFn::identity(three)), InputError);
}

TEST_CASE("function composition and inverses") {
  FinSet a = FinSet::range("a", 3);
  FinSet b = FinSet::range("b", 3);
  FinFn f(a, b, {2, 0, 1});
  CHECK(f.is_bijective());
  CHECK(f.then(f.inverse()) == FinFn::identity(a));
  CHECK(f.inverse().then(f) == FinFn::identity(b));
}
