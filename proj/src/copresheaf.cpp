#include "catsharp/copresheaf.hpp"

#include <algorithm>
#include <numeric>

namespace catsharp {

Copresheaf::Copresheaf(Comonoid base, std::vector<FinSet> at,
                       std::vector<std::vector<std::vector<int>>> act)
    : base_(std::move(base)), at_(std::move(at)), act_(std::move(act)) {
  int n = base_.n_objects();
  if (static_cast<int>(at_.size()) != n || static_cast<int>(act_.size()) != n)
    throw InputError("copresheaf tables do not match base objects");
  for (int c = 0; c < n; ++c) {
    if (static_cast<int>(act_[c].size()) != base_.hom(c).size())
      throw InputError("copresheaf action missing morphisms at object " +
                       base_.carrier().positions().at(c).str());
    for (int f = 0; f < base_.hom(c).size(); ++f) {
      if (static_cast<int>(act_[c][f].size()) != at_[c].size())
        throw InputError("copresheaf action row size mismatch");
      int d = base_.cod(c, f);
      for (int v : act_[c][f])
        if (v < 0 || v >= at_[d].size())
          throw InputError("copresheaf action value out of range");
    }
  }
  offset_.resize(n + 1, 0);
  for (int c = 0; c < n; ++c) offset_[c + 1] = offset_[c] + at_[c].size();
}

int Copresheaf::total_elements() const { return offset_.empty() ? 0 : offset_.back(); }

FinSet Copresheaf::elements() const {
  std::vector<Label> ls;
  for (int c = 0; c < n_objects(); ++c)
    for (const auto& x : at_[c].labels())
      ls.push_back(Label::pair(base_.carrier().positions().at(c), x));
  return FinSet::of(std::move(ls));
}

std::pair<int, int> Copresheaf::element_at(int global) const {
  for (int c = 0; c < n_objects(); ++c)
    if (global < offset_[c + 1]) return {c, global - offset_[c]};
  throw InputError("element index out of range");
}

int Copresheaf::global_index(int c, int x) const { return offset_[c] + x; }

bool Copresheaf::operator==(const Copresheaf& o) const {
  return base_ == o.base_ && at_ == o.at_ && act_ == o.act_;
}

CheckReport check_copresheaf(const Copresheaf& x) {
  CheckReport r;
  const Comonoid& b = x.base();
  for (int c = 0; c < b.n_objects(); ++c) {
    for (int e = 0; e < x.at(c).size(); ++e) {
      ++r.checked;
      if (x.act(c, b.ident(c), e) != e)
        r.fail("identity action moves " + x.at(c).at(e).str() + " at object " +
               b.carrier().positions().at(c).str());
    }
    for (int f = 0; f < b.hom(c).size(); ++f) {
      int d = b.cod(c, f);
      for (int g = 0; g < b.hom(d).size(); ++g) {
        int fg = b.comp2(c, f, g);
        if (fg < 0) {
          ++r.skipped;
          continue;
        }
        for (int e = 0; e < x.at(c).size(); ++e) {
          ++r.checked;
          if (x.act(c, fg, e) != x.act(d, g, x.act(c, f, e)))
            r.fail("functoriality fails for " + b.hom(c).at(f).str() + ";" +
                   b.hom(d).at(g).str() + " on " + x.at(c).at(e).str());
        }
      }
    }
  }
  return r;
}

Copresheaf representable(const Comonoid& c, int obj) {
  if (obj < 0 || obj >= c.n_objects()) throw InputError("representable: unknown object");
  int n = c.n_objects();
  std::vector<FinSet> at(n);
  std::vector<std::vector<int>> members(n);  // morphism indices out of obj
  for (int f = 0; f < c.hom(obj).size(); ++f) members[c.cod(obj, f)].push_back(f);
  for (int d = 0; d < n; ++d) {
    std::vector<Label> ls;
    for (int f : members[d]) ls.push_back(c.hom(obj).at(f));
    at[d] = FinSet::of(std::move(ls));
  }
  auto local_index = [&](int d, int f) {
    for (std::size_t t = 0; t < members[d].size(); ++t)
      if (members[d][t] == f) return static_cast<int>(t);
    throw std::logic_error("representable: morphism not found");
  };
  std::vector<std::vector<std::vector<int>>> act(n);
  for (int d = 0; d < n; ++d) {
    act[d].resize(c.hom(d).size());
    for (int g = 0; g < c.hom(d).size(); ++g) {
      int e = c.cod(d, g);
      act[d][g].resize(at[d].size());
      for (std::size_t t = 0; t < members[d].size(); ++t) {
        int fg = c.comp2(obj, members[d][t], g);
        if (fg < 0) throw InputError("representable over a truncated comonoid");
        act[d][g][t] = local_index(e, fg);
      }
    }
  }
  return Copresheaf(c, std::move(at), std::move(act));
}

Copresheaf terminal_copresheaf(const Comonoid& c) {
  int n = c.n_objects();
  std::vector<FinSet> at(n, FinSet::of({Label::atom("*")}));
  std::vector<std::vector<std::vector<int>>> act(n);
  for (int d = 0; d < n; ++d) act[d].assign(c.hom(d).size(), std::vector<int>{0});
  return Copresheaf(c, std::move(at), std::move(act));
}

Copresheaf empty_copresheaf(const Comonoid& c) {
  int n = c.n_objects();
  std::vector<FinSet> at(n);
  std::vector<std::vector<std::vector<int>>> act(n);
  for (int d = 0; d < n; ++d) act[d].assign(c.hom(d).size(), std::vector<int>{});
  return Copresheaf(c, std::move(at), std::move(act));
}

Copresheaf product_copresheaf(const Copresheaf& x, const Copresheaf& y) {
  if (!(x.base() == y.base())) throw InputError("product of copresheaves: base mismatch");
  const Comonoid& b = x.base();
  int n = b.n_objects();
  std::vector<FinSet> at(n);
  std::vector<std::vector<std::vector<int>>> act(n);
  for (int c = 0; c < n; ++c) {
    std::vector<Label> ls;
    for (const auto& a : x.at(c).labels())
      for (const auto& d : y.at(c).labels()) ls.push_back(Label::pair(a, d));
    at[c] = FinSet::of(std::move(ls));
  }
  for (int c = 0; c < n; ++c) {
    act[c].resize(b.hom(c).size());
    for (int f = 0; f < b.hom(c).size(); ++f) {
      act[c][f].resize(x.at(c).size() * y.at(c).size());
      for (int a = 0; a < x.at(c).size(); ++a)
        for (int d = 0; d < y.at(c).size(); ++d)
          act[c][f][a * y.at(c).size() + d] =
              x.act(c, f, a) * y.at(b.cod(c, f)).size() + y.act(c, f, d);
    }
  }
  return Copresheaf(b, std::move(at), std::move(act));
}

CheckReport check_copresheaf_morphism(const Copresheaf& x, const Copresheaf& y,
                                      const CopresheafMorphism& m) {
  CheckReport r;
  const Comonoid& b = x.base();
  if (static_cast<int>(m.comp.size()) != b.n_objects()) {
    r.fail("morphism component count mismatch");
    return r;
  }
  for (int c = 0; c < b.n_objects(); ++c) {
    if (static_cast<int>(m.comp[c].size()) != x.at(c).size()) {
      r.fail("morphism component size mismatch at object " +
             b.carrier().positions().at(c).str());
      return r;
    }
    for (int f = 0; f < b.hom(c).size(); ++f) {
      int d = b.cod(c, f);
      for (int e = 0; e < x.at(c).size(); ++e) {
        ++r.checked;
        if (m.comp[d][x.act(c, f, e)] != y.act(c, f, m.comp[c][e]))
          r.fail("naturality fails at " + b.hom(c).at(f).str());
      }
    }
  }
  return r;
}

namespace {

// backtracking with unit propagation: assigning an element forces all of its
// restrictions along the base morphisms
struct NatEnumerator {
  const Copresheaf& x;
  const Copresheaf& y;
  std::size_t budget;
  std::vector<int> assign;  // global x-element -> global y-element (-1 unset)
  std::vector<CopresheafMorphism> out;
  std::size_t nodes = 0;
  bool single = false;
  bool bijective = false;
  std::vector<std::vector<char>> used;  // injectivity pruning

  bool propagate(int ge, int gy, std::vector<int>& trail) {
    std::vector<std::pair<int, int>> stack{{ge, gy}};
    while (!stack.empty()) {
      auto [e, v] = stack.back();
      stack.pop_back();
      if (assign[e] != -1) {
        if (assign[e] != v) return false;
        continue;
      }
      auto [c, lx] = x.element_at(e);
      auto [cy, ly] = y.element_at(v);
      if (cy != c) return false;
      if (bijective) {
        if (used[c][ly]) return false;
        used[c][ly] = 1;
      }
      assign[e] = v;
      trail.push_back(e);
      for (int f = 0; f < x.base().hom(c).size(); ++f) {
        int d = x.base().cod(c, f);
        stack.emplace_back(x.global_index(d, x.act(c, f, lx)),
                           y.global_index(d, y.act(c, f, ly)));
      }
    }
    return true;
  }

  void unwind(std::vector<int>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      int e = trail.back();
      trail.pop_back();
      if (bijective) {
        auto [cy, ly] = y.element_at(assign[e]);
        used[cy][ly] = 0;
      }
      assign[e] = -1;
    }
  }

  bool bijective_ok() const {
    for (int c = 0; c < x.base().n_objects(); ++c) {
      if (x.at(c).size() != y.at(c).size()) return false;
      std::vector<char> seen(y.at(c).size(), 0);
      for (int e = 0; e < x.at(c).size(); ++e) {
        auto [cy, ly] = y.element_at(assign[x.global_index(c, e)]);
        (void)cy;
        if (seen[ly]) return false;
        seen[ly] = 1;
      }
    }
    return true;
  }

  void search(int next, std::vector<int>& trail) {
    if (single && !out.empty()) return;
    if (++nodes > budget)
      throw ResourceError("copresheaf morphism enumeration exceeded budget " +
                          std::to_string(budget));
    int total = x.total_elements();
    while (next < total && assign[next] != -1) ++next;
    if (next == total) {
      if (bijective && !bijective_ok()) return;
      CopresheafMorphism m;
      m.comp.resize(x.base().n_objects());
      for (int c = 0; c < x.base().n_objects(); ++c) {
        m.comp[c].resize(x.at(c).size());
        for (int e = 0; e < x.at(c).size(); ++e) {
          auto [cy, ly] = y.element_at(assign[x.global_index(c, e)]);
          (void)cy;
          m.comp[c][e] = ly;
        }
      }
      out.push_back(std::move(m));
      return;
    }
    auto [c, lx] = x.element_at(next);
    (void)lx;
    for (int w = 0; w < y.at(c).size(); ++w) {
      std::size_t mark = trail.size();
      if (propagate(next, y.global_index(c, w), trail)) search(next, trail);
      unwind(trail, mark);
      if (single && !out.empty()) return;
    }
  }
};

}  // namespace

std::vector<CopresheafMorphism> enumerate_copresheaf_morphisms(const Copresheaf& x,
                                                               const Copresheaf& y,
                                                               std::size_t budget) {
  if (!(x.base() == y.base()))
    throw InputError("copresheaf morphisms: base categories differ");
  NatEnumerator en{x, y, budget, std::vector<int>(x.total_elements(), -1), {}, 0,
                   false, false, {}};
  std::vector<int> trail;
  en.search(0, trail);
  return std::move(en.out);
}

std::optional<CopresheafMorphism> find_copresheaf_iso(const Copresheaf& x,
                                                      const Copresheaf& y,
                                                      std::size_t budget) {
  if (!(x.base() == y.base())) return std::nullopt;
  for (int c = 0; c < x.base().n_objects(); ++c)
    if (x.at(c).size() != y.at(c).size()) return std::nullopt;
  NatEnumerator en{x, y, budget, std::vector<int>(x.total_elements(), -1), {}, 0,
                   true, true, {}};
  en.used.resize(x.base().n_objects());
  for (int c = 0; c < x.base().n_objects(); ++c)
    en.used[c].assign(y.at(c).size(), 0);
  std::vector<int> trail;
  try {
    en.search(0, trail);
  } catch (const ResourceError&) {
    return std::nullopt;
  }
  if (en.out.empty()) return std::nullopt;
  return en.out.front();
}

CopresheafMorphism identity_copresheaf_morphism(const Copresheaf& x) {
  CopresheafMorphism m;
  m.comp.resize(x.n_objects());
  for (int c = 0; c < x.n_objects(); ++c) {
    m.comp[c].resize(x.at(c).size());
    std::iota(m.comp[c].begin(), m.comp[c].end(), 0);
  }
  return m;
}

CopresheafMorphism compose_copresheaf_morphisms(const Copresheaf& x,
                                                const CopresheafMorphism& f,
                                                const CopresheafMorphism& g) {
  CopresheafMorphism m;
  m.comp.resize(x.n_objects());
  for (int c = 0; c < x.n_objects(); ++c) {
    m.comp[c].resize(x.at(c).size());
    for (int e = 0; e < x.at(c).size(); ++e) m.comp[c][e] = g.comp[c][f.comp[c][e]];
  }
  return m;
}

ElementsCategoryResult elements_category(const Copresheaf& x) {
  const Comonoid& b = x.base();
  FinCategory k;
  std::vector<Label> objs;
  std::vector<std::pair<int, int>> obj_data;  // (base object, element)
  for (int c = 0; c < b.n_objects(); ++c)
    for (int e = 0; e < x.at(c).size(); ++e) {
      objs.push_back(Label::pair(b.carrier().positions().at(c), x.at(c).at(e)));
      obj_data.emplace_back(c, e);
    }
  k.objects = FinSet::of(std::move(objs));
  int n = k.objects.size();
  k.hom.resize(n);
  k.cod.resize(n);
  k.ident.resize(n);
  k.comp.resize(n);
  for (int z = 0; z < n; ++z) {
    auto [c, e] = obj_data[z];
    k.hom[z] = b.hom(c);
    k.ident[z] = b.ident(c);
    k.cod[z].resize(k.hom[z].size());
    for (int f = 0; f < k.hom[z].size(); ++f)
      k.cod[z][f] = x.global_index(b.cod(c, f), x.act(c, f, e));
    k.comp[z].resize(k.hom[z].size());
    for (int f = 0; f < k.hom[z].size(); ++f) {
      int d = b.cod(c, f);
      k.comp[z][f].resize(b.hom(d).size());
      for (int g = 0; g < b.hom(d).size(); ++g) k.comp[z][f][g] = b.comp2(c, f, g);
    }
  }
  FunctorData proj;
  proj.src = k;
  proj.dst = to_category(b);
  proj.obj.resize(n);
  proj.mor.resize(n);
  for (int z = 0; z < n; ++z) {
    proj.obj[z] = obj_data[z].first;
    proj.mor[z].resize(k.hom[z].size());
    std::iota(proj.mor[z].begin(), proj.mor[z].end(), 0);
  }
  return {std::move(k), std::move(proj)};
}

ColimitResult colimit_over_elements(
    const Copresheaf& x, const std::vector<std::vector<FinSet>>& assign,
    const std::vector<std::vector<std::vector<FinFn>>>& transport) {
  const Comonoid& b = x.base();
  std::vector<Label> all;
  for (int c = 0; c < b.n_objects(); ++c)
    for (int e = 0; e < x.at(c).size(); ++e)
      for (const auto& s : assign[c][e].labels())
        all.push_back(Label::tup({b.carrier().positions().at(c), x.at(c).at(e), s}));
  FinSet total = FinSet::of(std::move(all));
  std::vector<std::pair<Label, Label>> rel;
  for (int c = 0; c < b.n_objects(); ++c)
    for (int f = 0; f < b.hom(c).size(); ++f) {
      int d = b.cod(c, f);
      for (int e = 0; e < x.at(c).size(); ++e) {
        int e2 = x.act(c, f, e);
        const FinFn& t = transport[c][f][e];
        for (int s = 0; s < assign[c][e].size(); ++s) {
          Label from = Label::tup(
              {b.carrier().positions().at(c), x.at(c).at(e), assign[c][e].at(s)});
          Label to = Label::tup({b.carrier().positions().at(d), x.at(d).at(e2),
                                 assign[d][e2].at(t(s))});
          rel.emplace_back(from, to);
        }
      }
    }
  auto quo = quotient(total, rel);
  FinFn proj = quo.projection;
  Copresheaf xc = x;
  Comonoid base = b;
  auto class_of = [total, proj, base, xc](int c, int e, const Label& s) {
    Label l = Label::tup({base.carrier().positions().at(c), xc.at(c).at(e), s});
    return proj(total.index_of(l));
  };
  return {quo.classes, class_of};
}

}  // namespace catsharp
