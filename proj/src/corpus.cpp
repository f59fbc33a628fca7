#include "catsharp/corpus.hpp"

#include "catsharp/bicomod.hpp"

#include <numeric>

namespace catsharp {

FinCategory terminal_category() {
  FinCategory k;
  k.objects = FinSet::atoms({"*"});
  k.hom = {FinSet::atoms({"id"})};
  k.cod = {{0}};
  k.ident = {0};
  k.comp = {{{0}}};
  return k;
}

FinCategory discrete_category(int n) {
  FinCategory k;
  k.objects = FinSet::range("a", n);
  k.hom.resize(n);
  k.cod.resize(n);
  k.ident.assign(n, 0);
  k.comp.resize(n);
  for (int i = 0; i < n; ++i) {
    k.hom[i] = FinSet::of({Label::atom("id" + std::to_string(i))});
    k.cod[i] = {i};
    k.comp[i] = {{0}};
  }
  return k;
}

FinCategory chain_category(int n) {
  // objects 0..n, a unique morphism i -> j for i <= j, named fij
  FinCategory k;
  k.objects = FinSet::range("", n + 1);
  k.hom.resize(n + 1);
  k.cod.resize(n + 1);
  k.ident.resize(n + 1);
  k.comp.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    std::vector<Label> h;
    for (int j = i; j <= n; ++j)
      h.push_back(Label::atom("f" + std::to_string(i) + std::to_string(j)));
    k.hom[i] = FinSet::of(std::move(h));
    k.ident[i] = 0;  // fii first
    k.cod[i].resize(k.hom[i].size());
    for (int j = i; j <= n; ++j) k.cod[i][j - i] = j;
    k.comp[i].resize(k.hom[i].size());
    for (int j = i; j <= n; ++j) {
      k.comp[i][j - i].resize(n - j + 1);
      for (int l = j; l <= n; ++l) k.comp[i][j - i][l - j] = l - i;
    }
  }
  return k;
}

FinCategory walking_arrow_category() { return chain_category(1); }

FinCategory cyclic_monoid(int m) {
  // one object, morphisms g0..g(m-1) with gi;gj = g((i+j) mod m)
  FinCategory k;
  k.objects = FinSet::atoms({"*"});
  std::vector<Label> h;
  for (int i = 0; i < m; ++i) h.push_back(Label::atom("g" + std::to_string(i)));
  k.hom = {FinSet::of(std::move(h))};
  k.cod = {std::vector<int>(m, 0)};
  k.ident = {0};
  k.comp.resize(1);
  k.comp[0].resize(m);
  for (int i = 0; i < m; ++i) {
    k.comp[0][i].resize(m);
    for (int j = 0; j < m; ++j) k.comp[0][i][j] = (i + j) % m;
  }
  return k;
}

FinCategory commuting_square_category() {
  return product_category(chain_category(1), chain_category(1));
}

FinCategory parallel_pair_category() {
  // objects e, v; morphisms out of e: ide, s, t (s,t: e -> v); out of v: idv
  FinCategory k;
  k.objects = FinSet::atoms({"e", "v"});
  k.hom = {FinSet::atoms({"ide", "s", "t"}), FinSet::atoms({"idv"})};
  k.cod = {{0, 1, 1}, {1}};
  k.ident = {0, 0};
  k.comp.resize(2);
  k.comp[0] = {{0, 1, 2}, {1}, {2}};  // ide;x = x, s;idv = s, t;idv = t
  k.comp[1] = {{0}};
  return k;
}

std::vector<std::pair<std::string, FinCategory>> corpus_categories() {
  return {
      {"terminal", terminal_category()},
      {"discrete2", discrete_category(2)},
      {"discrete3", discrete_category(3)},
      {"walking_arrow", walking_arrow_category()},
      {"chain2", chain_category(2)},
      {"chain3", chain_category(3)},
      {"z2", cyclic_monoid(2)},
      {"z3", cyclic_monoid(3)},
      {"square", commuting_square_category()},
      {"parallel_pair", parallel_pair_category()},
  };
}

std::uint64_t Rng::next() {
  s_ ^= s_ << 13;
  s_ ^= s_ >> 7;
  s_ ^= s_ << 17;
  return s_;
}

int Rng::below(int n) {
  ensure(n > 0, "Rng::below needs a positive bound");
  return static_cast<int>(next() % static_cast<std::uint64_t>(n));
}

namespace {

// free extension along a generating graph: used for chains and discrete bases
struct Generator {
  int obj;  // source object
  int mor;  // generating morphism index at obj
};

}  // namespace

Copresheaf random_copresheaf(const Comonoid& base, Rng& rng, int max_elems) {
  int n = base.n_objects();
  std::vector<FinSet> at(n);
  for (int c = 0; c < n; ++c)
    at[c] = FinSet::range("x" + std::to_string(c) + "_", 1 + rng.below(max_elems));

  std::vector<std::vector<std::vector<int>>> act(n);
  for (int c = 0; c < n; ++c) act[c].resize(base.hom(c).size());

  // Detect free-ish shapes: compute, for every non-identity morphism, whether
  // it is a generator (not a composite of two non-identities). For chains and
  // discrete categories every morphism is generated freely; for cyclic
  // monoids we instead pick a permutation of appropriate order.
  bool monoid = (n == 1) && base.hom(0).size() > 1;
  bool cyclic = monoid;
  if (cyclic) {
    int m = base.hom(0).size();
    // cyclic iff generated by g1 with gi = g1^i
    for (int i = 0; i < m && cyclic; ++i) {
      int p = base.ident(0);
      for (int t = 0; t < i; ++t) p = base.comp2(0, p, 1 % m);
      if (p != i) cyclic = false;
    }
    if (cyclic) {
      int m_ord = m;
      int sz = at[0].size();
      // random permutation with sigma^m = id: build from cycles whose length
      // divides m; simplest robust choice: product of fixed points and one
      // cycle of a length dividing m
      std::vector<int> perm(sz);
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<int> lens;
      for (int l = 1; l <= sz; ++l)
        if (m_ord % l == 0) lens.push_back(l);
      int l = lens[rng.below(static_cast<int>(lens.size()))];
      // rotate the first l elements
      if (l > 1)
        for (int i = 0; i < l; ++i) perm[i] = (i + 1) % l;
      act[0].resize(m_ord);
      for (int i = 0; i < m_ord; ++i) {
        act[0][i].resize(sz);
        for (int x = 0; x < sz; ++x) {
          int v = x;
          for (int t = 0; t < i; ++t) v = perm[v];
          act[0][i][x] = v;
        }
      }
      return Copresheaf(base, std::move(at), std::move(act));
    }
  }

  // fall back to free generation: identify generators, assign random maps,
  // then extend to all morphisms by factoring through generators. This covers
  // chains, discrete bases, the walking arrow and the parallel pair.
  // Represent each morphism as id or (generator ; rest).
  // A generator is a non-identity morphism not expressible as a composite of
  // two non-identity morphisms.
  std::vector<std::vector<char>> is_gen(n);
  for (int c = 0; c < n; ++c) {
    is_gen[c].assign(base.hom(c).size(), 0);
    for (int f = 0; f < base.hom(c).size(); ++f) {
      if (f == base.ident(c)) continue;
      bool composite = false;
      for (int g = 0; g < base.hom(c).size() && !composite; ++g) {
        if (g == base.ident(c)) continue;
        int d = base.cod(c, g);
        for (int h = 0; h < base.hom(d).size(); ++h) {
          if (h == base.ident(d)) continue;
          if (base.comp2(c, g, h) == f) {
            composite = true;
            break;
          }
        }
      }
      is_gen[c][f] = composite ? 0 : 1;
    }
  }
  // random assignment on generators
  std::vector<std::vector<std::vector<int>>> gen_map(n);
  for (int c = 0; c < n; ++c) {
    gen_map[c].resize(base.hom(c).size());
    for (int f = 0; f < base.hom(c).size(); ++f)
      if (is_gen[c][f]) {
        int d = base.cod(c, f);
        gen_map[c][f].resize(at[c].size());
        for (int x = 0; x < at[c].size(); ++x)
          gen_map[c][f][x] = at[d].empty() ? 0 : rng.below(at[d].size());
      }
  }
  // extend: repeatedly factor f = g;h with g a generator
  std::function<std::vector<int>(int, int)> extend = [&](int c,
                                                         int f) -> std::vector<int> {
    if (f == base.ident(c)) {
      std::vector<int> idm(at[c].size());
      std::iota(idm.begin(), idm.end(), 0);
      return idm;
    }
    if (is_gen[c][f]) return gen_map[c][f];
    for (int g = 0; g < base.hom(c).size(); ++g) {
      if (g == base.ident(c) || !is_gen[c][g]) continue;
      int d = base.cod(c, g);
      for (int h = 0; h < base.hom(d).size(); ++h) {
        if (h == base.ident(d)) continue;
        if (base.comp2(c, g, h) == f) {
          std::vector<int> gm = gen_map[c][g];
          std::vector<int> hm = extend(d, h);
          std::vector<int> out(at[c].size());
          for (int x = 0; x < at[c].size(); ++x) out[x] = hm[gm[x]];
          return out;
        }
      }
    }
    throw std::logic_error("random_copresheaf: base is not freely generated");
  };
  for (int c = 0; c < n; ++c)
    for (int f = 0; f < base.hom(c).size(); ++f) act[c][f] = extend(c, f);
  Copresheaf out(base, std::move(at), std::move(act));
  CheckReport r = check_copresheaf(out);
  ensure(r.ok(), "random_copresheaf produced a non-functorial assignment");
  return out;
}

namespace {

// one block: positions from a c-copresheaf, a shared arity with identity
// transports along the left action
Bicomodule block_bicomodule(const Comonoid& c, const Comonoid& d,
                            const Copresheaf& positions, const Copresheaf& arity,
                            const std::string& tag) {
  int n = positions.total_elements();
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  Bicomodule arity_b = copresheaf_to_bicomodule(arity);
  // arity elements in bicomodule order: grouped by object
  int nd = arity.total_elements();
  std::vector<Label> dl;
  std::vector<int> dgrade;
  for (int o = 0; o < d.n_objects(); ++o)
    for (int e = 0; e < arity.at(o).size(); ++e) {
      dl.push_back(Label::tup({Label::atom(tag), d.carrier().positions().at(o),
                               arity.at(o).at(e)}));
      dgrade.push_back(o);
    }
  FinSet dir_set = FinSet::of(dl);
  for (int i = 0; i < n; ++i) {
    auto [o, e] = positions.element_at(i);
    pos.push_back(Label::tup({Label::atom(tag), c.carrier().positions().at(o),
                              positions.at(o).at(e)}));
    dirs.push_back(dir_set);
  }
  Polynomial carrier = Polynomial::make(FinSet::of(std::move(pos)), std::move(dirs));
  std::vector<int> pos_grade(n);
  std::vector<std::vector<int>> pos_act(n);
  std::vector<std::vector<std::vector<int>>> pos_tr(n);
  std::vector<std::vector<int>> dir_grade(n, dgrade);
  std::vector<std::vector<std::vector<int>>> dir_act(n);
  std::vector<int> id_tr(nd);
  std::iota(id_tr.begin(), id_tr.end(), 0);
  for (int i = 0; i < n; ++i) {
    auto [o, e] = positions.element_at(i);
    pos_grade[i] = o;
    pos_act[i].resize(c.hom(o).size());
    pos_tr[i].assign(c.hom(o).size(), id_tr);
    for (int a = 0; a < c.hom(o).size(); ++a)
      pos_act[i][a] =
          positions.global_index(c.cod(o, a), positions.act(o, a, e));
    dir_act[i].resize(nd);
    for (int v = 0; v < nd; ++v) {
      // local element of the arity copresheaf
      int obj = dgrade[v];
      int local = v;
      for (int o2 = 0; o2 < obj; ++o2) local -= arity.at(o2).size();
      dir_act[i][v].resize(d.hom(obj).size());
      for (int m = 0; m < d.hom(obj).size(); ++m) {
        int o2 = d.cod(obj, m);
        int e2 = arity.act(obj, m, local);
        int g = e2;
        for (int o3 = 0; o3 < o2; ++o3) g += arity.at(o3).size();
        dir_act[i][v][m] = g;
      }
    }
  }
  (void)arity_b;
  return Bicomodule::make(c, d, std::move(carrier), std::move(pos_grade),
                          std::move(pos_act), std::move(pos_tr),
                          std::move(dir_grade), std::move(dir_act));
}

}  // namespace

Bicomodule random_bicomodule(const Comonoid& c, const Comonoid& d, Rng& rng,
                             int max_positions, int max_dirs) {
  Copresheaf p1 = random_copresheaf(c, rng, max_positions);
  Copresheaf a1 = random_copresheaf(d, rng, max_dirs);
  Bicomodule b1 = block_bicomodule(c, d, p1, a1, "b0");
  if (max_positions < 2 || rng.below(2) == 0) return b1;
  Copresheaf p2 = random_copresheaf(c, rng, 1);
  Copresheaf a2 = random_copresheaf(d, rng, max_dirs > 1 ? 2 : 1);
  return sum_bicomodules(b1, block_bicomodule(c, d, p2, a2, "b1"));
}

}  // namespace catsharp
