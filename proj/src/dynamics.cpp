#include "catsharp/dynamics.hpp"

#include <numeric>

#include "catsharp/corpus.hpp"

namespace catsharp {

CheckReport check_handler(const ComonoidHandler& h, std::size_t budget) {
  CheckReport r;
  const Polynomial& s = h.s;
  const Polynomial& pc = h.c.carrier();
  const Polynomial& pd = h.d.carrier();
  if (!(h.phi.src() == compose(s, pd)) || !(h.phi.dst() == compose(pc, s))) {
    r.fail("handler structure map has the wrong endpoints");
    return r;
  }
  PolyMorphism ids = PolyMorphism::identity(s);
  PolyMorphism idc = PolyMorphism::identity(pc);
  PolyMorphism idd = PolyMorphism::identity(pd);
  // counit square
  PolyMorphism lhs = h.phi.then(compose_mor(h.c.counit(), ids)).then(lunit(s));
  PolyMorphism rhs = compose_mor(ids, h.d.counit()).then(runit(s));
  ++r.checked;
  if (!(lhs == rhs)) r.fail("handler counit square does not commute");
  // comultiplication square
  PolyMorphism left =
      h.phi.then(compose_mor(h.c.comult(budget), ids))
          .then(assoc_lr(pc, pc, s));
  PolyMorphism right = compose_mor(ids, h.d.comult(budget))
                           .then(assoc_rl(s, pd, pd))
                           .then(compose_mor(h.phi, idd))
                           .then(assoc_lr(pc, s, pd))
                           .then(compose_mor(idc, h.phi));
  ++r.checked;
  if (!(left == right)) r.fail("handler comultiplication square does not commute");
  return r;
}

ComonoidHandler identity_handler(const Comonoid& c) {
  // y◁c -> c -> c◁y through the unitors
  PolyMorphism phi = lunit(c.carrier()).then(runit_inv(c.carrier()));
  return {c, c, Polynomial::y(), phi};
}

ComonoidHandler handler_from_hom(const Comonoid& d, const Comonoid& c,
                                 const PolyMorphism& hom) {
  if (!(hom.src() == d.carrier()) || !(hom.dst() == c.carrier()))
    throw InputError("handler_from_hom: endpoints do not match the comonoids");
  Polynomial s = Polynomial::y();
  PolyMorphism phi = lunit(d.carrier()).then(hom).then(runit_inv(c.carrier()));
  return {c, d, s, phi};
}

ComonoidHandler constant_linear_handler(const Comonoid& c, const FinSet& states) {
  Polynomial s = Polynomial::linear(states);
  const Polynomial& pc = c.carrier();
  ComposeIndex sd = make_compose_index(s, pc);
  ComposeIndex cs = make_compose_index(pc, s);
  int nC = pc.npos();
  std::vector<int> on_pos(sd.pq.npos());
  std::vector<std::vector<int>> on_dir(sd.pq.npos());
  for (int si = 0; si < states.size(); ++si)
    for (int C = 0; C < nC; ++C) {
      int z = si * nC + C;
      int z2 = cs.pos_of(C, std::vector<int>(pc.dirs(C).size(), si));
      on_pos[z] = z2;
      // directions of c◁s at z2: pairs (a, star) ~ c[C]; of s◁c at z: (star,a)
      on_dir[z].resize(pc.dirs(C).size());
      std::iota(on_dir[z].begin(), on_dir[z].end(), 0);
    }
  return {c, c, s, PolyMorphism(sd.pq, cs.pq, std::move(on_pos), std::move(on_dir))};
}

ComonoidHandler compose_handlers(const ComonoidHandler& f,
                                 const ComonoidHandler& g) {
  if (!(f.d == g.c)) throw InputError("handler composition: middle bases differ");
  const Polynomial& s = f.s;
  const Polynomial& t = g.s;
  const Polynomial& pc = f.c.carrier();
  const Polynomial& pd = f.d.carrier();
  const Polynomial& pe = g.d.carrier();
  Polynomial st = compose(s, t);
  PolyMorphism chi = assoc_lr(s, t, pe)
                         .then(compose_mor(PolyMorphism::identity(s), g.phi))
                         .then(assoc_rl(s, pd, t))
                         .then(compose_mor(f.phi, PolyMorphism::identity(t)))
                         .then(assoc_lr(pc, s, t));
  return {f.c, g.d, st, chi};
}

Bicomodule handler_to_bicomodule(const ComonoidHandler& h) {
  const Polynomial& s = h.s;
  const Polynomial& pc = h.c.carrier();
  const Polynomial& pd = h.d.carrier();
  Polynomial carrier = compose(s, pd);
  PolyMorphism widen = compose_mor(PolyMorphism::identity(s), h.d.comult())
                           .then(assoc_rl(s, pd, pd));
  PolyMorphism rho = widen;  // s◁d -> (s◁d)◁d
  PolyMorphism lam =
      widen.then(compose_mor(h.phi, PolyMorphism::identity(pd)))
          .then(assoc_lr(pc, s, pd));
  return Bicomodule::from_coactions(h.c, h.d, carrier, lam, rho);
}

CheckReport check_handler_square(const ComonoidHandler& h,
                                 const ComonoidHandler& h2,
                                 const PolyMorphism& gamma) {
  CheckReport r;
  if (!(h.c == h2.c) || !(h.d == h2.d)) {
    r.fail("handler square: boundary comonoids differ");
    return r;
  }
  PolyMorphism lhs =
      compose_mor(gamma, PolyMorphism::identity(h.d.carrier())).then(h2.phi);
  PolyMorphism rhs =
      h.phi.then(compose_mor(PolyMorphism::identity(h.c.carrier()), gamma));
  ++r.checked;
  if (!(lhs == rhs)) r.fail("square does not commute with the structure maps");
  return r;
}

PolyMorphism square_to_bicomodule_map(const ComonoidHandler& h,
                                      const ComonoidHandler& h2,
                                      const PolyMorphism& gamma) {
  (void)h;
  return compose_mor(gamma, PolyMorphism::identity(h2.d.carrier()));
}

// ---- cofree tower ----

CofreeTower cofree_tower(const Polynomial& p, int depth) {
  CofreeTower t;
  t.p = p;
  t.depth = depth;
  t.level.push_back(Polynomial::y());
  for (int i = 0; i < depth; ++i) {
    Polynomial next = prod(Polynomial::y(), compose(p, t.level[i]));
    t.level.push_back(next);
    if (i == 0) {
      t.proj.push_back(proj_left(Polynomial::y(), compose(p, t.level[0])));
    } else {
      PolyMorphism inner = compose_mor(PolyMorphism::identity(p), t.proj[i - 1]);
      t.proj.push_back(prod_mor(PolyMorphism::identity(Polynomial::y()), inner));
    }
  }
  return t;
}

PolyMorphism tower_proj_to_zero(const CofreeTower& t, int i) {
  PolyMorphism out = PolyMorphism::identity(t.level[i]);
  for (int k = i - 1; k >= 0; --k) out = out.then(t.proj[k]);
  return out;
}

PolyMorphism tower_phi(const CofreeTower& t, int i1, int i2) {
  ensure(i1 + i2 <= t.depth, "tower_phi beyond the truncation depth");
  if (i1 == 0) return lunit_inv(t.level[i2]);
  if (i2 == 0) return runit_inv(t.level[i1]);
  int a = i1 - 1;
  int b = i2 - 1;
  const Polynomial& p = t.p;
  PolyMorphism idp = PolyMorphism::identity(p);
  PolyMorphism idy = PolyMorphism::identity(Polynomial::y());
  // step 1: unfold to y x (p ◁ (level a ◁ level(1+b)))
  PolyMorphism rec = tower_phi(t, a, 1 + b);
  PolyMorphism step1 = prod_mor(idy, compose_mor(idp, rec));
  // the counit-style route down to level(1+b)
  PolyMorphism inner = compose_mor(tower_proj_to_zero(t, a), t.proj[b])
                           .then(lunit(t.level[b]));
  PolyMorphism coh = prod_mor(idy, compose_mor(idp, inner));
  PolyMorphism f = coh.then(lunit_inv(t.level[1 + b]));
  // the second projection lands in (p ◁ level a) ◁ level(1+b)
  PolyMorphism g =
      proj_right(Polynomial::y(), compose(p, compose(t.level[a], t.level[1 + b])))
          .then(assoc_rl(p, t.level[a], t.level[1 + b]));
  PolyMorphism special =
      pairing_compose(f, g, Polynomial::y(), compose(p, t.level[a]), t.level[1 + b]);
  return step1.then(special);
}

EtaTower eta_tower(const Comonoid& c, int depth) {
  EtaTower out;
  out.tower = cofree_tower(c.carrier(), depth);
  out.eta.push_back(c.counit());
  PolyMorphism idc = PolyMorphism::identity(c.carrier());
  for (int i = 0; i < depth; ++i) {
    PolyMorphism step =
        pair_mor(c.counit(), c.comult().then(compose_mor(idc, out.eta[i])));
    out.eta.push_back(step);
  }
  return out;
}

// ---- lifted handlers ----

LiftedHandler lift_handler(const ElementaryHandler& h, const Comonoid& d,
                           int depth) {
  if (!(d.carrier() == h.q))
    throw InputError("lift_handler: the comonoid must structure the inner interface");
  LiftedHandler out{h, d, cofree_tower(h.p, depth), {}};
  const Polynomial& s = h.s;
  const Polynomial& pd = d.carrier();
  PolyMorphism ids = PolyMorphism::identity(s);
  PolyMorphism idp = PolyMorphism::identity(h.p);
  PolyMorphism idd = PolyMorphism::identity(pd);
  // level 0: discard the input and embed
  out.level.push_back(
      compose_mor(ids, d.counit()).then(runit(s)).then(lunit_inv(s)));
  for (int i = 0; i < depth; ++i) {
    PolyMorphism comp2 = compose_mor(ids, d.comult())
                             .then(assoc_rl(s, pd, pd))
                             .then(compose_mor(h.phi, idd))
                             .then(assoc_lr(h.p, s, pd))
                             .then(compose_mor(idp, out.level[i]))
                             .then(assoc_rl(h.p, out.tower.level[i], s));
    PolyMorphism comp1 = compose_mor(ids, d.counit()).then(runit(s)).then(lunit_inv(s));
    out.level.push_back(pairing_compose(comp1, comp2, Polynomial::y(),
                                        compose(h.p, out.tower.level[i]), s));
  }
  return out;
}

CheckReport check_lifted_handler(const LiftedHandler& lh) {
  CheckReport r;
  const Polynomial& s = lh.base.s;
  const Polynomial& pd = lh.d.carrier();
  PolyMorphism ids = PolyMorphism::identity(s);
  // round trip at level 1: project back to the underlying handler
  if (lh.tower.depth >= 1) {
    PolyMorphism down =
        proj_right(Polynomial::y(), compose(lh.base.p, Polynomial::y()))
            .then(runit(lh.base.p));
    PolyMorphism recovered = lh.level[1].then(compose_mor(down, ids));
    ++r.checked;
    if (!(recovered == lh.base.phi))
      r.fail("projecting the lift to level one does not recover the handler");
  }
  // counit compatibility at each level
  for (int i = 0; i <= lh.tower.depth; ++i) {
    PolyMorphism lhs = lh.level[i]
                           .then(compose_mor(tower_proj_to_zero(lh.tower, i), ids))
                           .then(lunit(s));
    PolyMorphism rhs = compose_mor(ids, lh.d.counit()).then(runit(s));
    ++r.checked;
    if (!(lhs == rhs))
      r.fail("lift counit compatibility fails at level " + std::to_string(i));
  }
  // comultiplication compatibility for small index pairs
  for (int i1 = 0; i1 <= lh.tower.depth; ++i1)
    for (int i2 = 0; i1 + i2 <= lh.tower.depth; ++i2) {
      PolyMorphism lhs =
          lh.level[i1 + i2]
              .then(compose_mor(tower_phi(lh.tower, i1, i2), ids))
              .then(assoc_lr(lh.tower.level[i1], lh.tower.level[i2], s));
      PolyMorphism rhs =
          compose_mor(ids, lh.d.comult())
              .then(assoc_rl(s, pd, pd))
              .then(compose_mor(lh.level[i1], PolyMorphism::identity(pd)))
              .then(assoc_lr(lh.tower.level[i1], s, pd))
              .then(compose_mor(PolyMorphism::identity(lh.tower.level[i1]),
                                lh.level[i2]));
      ++r.checked;
      if (!(lhs == rhs))
        r.fail("lift comultiplication compatibility fails at (" +
               std::to_string(i1) + "," + std::to_string(i2) + ")");
    }
  return r;
}

// ---- coalgebras ----

CheckReport check_coalgebra(const Coalgebra& c) {
  CheckReport r;
  if (static_cast<int>(c.wiring.size()) != c.states.size() ||
      static_cast<int>(c.cont.size()) != c.states.size()) {
    r.fail("coalgebra tables do not match the state set");
    return r;
  }
  for (int s = 0; s < c.states.size(); ++s) {
    if (!(c.wiring[s].src() == c.q) || !(c.wiring[s].dst() == c.p)) {
      r.fail("wiring endpoints wrong at state " + c.states.at(s).str());
      return r;
    }
    for (int i = 0; i < c.q.npos(); ++i) {
      ++r.checked;
      if (static_cast<int>(c.cont[s][i].size()) !=
          c.p.dirs(c.wiring[s].pos(i)).size())
        r.fail("continuation table sized wrongly at state " +
               c.states.at(s).str());
      for (int v : c.cont[s][i])
        if (v < 0 || v >= c.states.size())
          r.fail("continuation leaves the state set");
    }
  }
  return r;
}

ElementaryHandler coalgebra_to_handler(const Coalgebra& c) {
  Polynomial s = Polynomial::linear(c.states);
  ComposeIndex sq = make_compose_index(s, c.q);
  ComposeIndex ps = make_compose_index(c.p, s);
  std::vector<int> on_pos(sq.pq.npos());
  std::vector<std::vector<int>> on_dir(sq.pq.npos());
  for (int si = 0; si < c.states.size(); ++si)
    for (int i = 0; i < c.q.npos(); ++i) {
      int z = sq.pos_of(si, {i});
      int k = c.wiring[si].pos(i);
      on_pos[z] = ps.pos_of(k, c.cont[si][i]);
      on_dir[z].resize(c.p.dirs(k).size());
      for (int w = 0; w < c.p.dirs(k).size(); ++w)
        on_dir[z][w] = c.wiring[si].dir(i, w);
    }
  return {c.p, c.q, s,
          PolyMorphism(sq.pq, ps.pq, std::move(on_pos), std::move(on_dir))};
}

Coalgebra handler_to_coalgebra(const ElementaryHandler& h) {
  if (!h.s.is_linear())
    throw InputError("handler_to_coalgebra: carrier is not linear");
  FinSet states = h.s.positions();
  ComposeIndex sq = make_compose_index(h.s, h.q);
  ComposeIndex ps = make_compose_index(h.p, h.s);
  ensure(h.phi.src() == sq.pq && h.phi.dst() == ps.pq,
         "handler structure map endpoints unexpected");
  Coalgebra out;
  out.p = h.p;
  out.q = h.q;
  out.states = states;
  out.wiring.reserve(states.size());
  out.cont.resize(states.size());
  for (int si = 0; si < states.size(); ++si) {
    std::vector<int> on_pos(h.q.npos());
    std::vector<std::vector<int>> on_dir(h.q.npos());
    out.cont[si].resize(h.q.npos());
    for (int i = 0; i < h.q.npos(); ++i) {
      int z = sq.pos_of(si, {i});
      auto [k, table] = ps.decode(h.phi.pos(z));
      on_pos[i] = k;
      on_dir[i].resize(h.p.dirs(k).size());
      for (int w = 0; w < h.p.dirs(k).size(); ++w)
        on_dir[i][w] = h.phi.dir(z, w);
      out.cont[si][i] = table;
    }
    out.wiring.emplace_back(h.q, h.p, std::move(on_pos), std::move(on_dir));
  }
  return out;
}

BTree run_behavior_tree(const Coalgebra& c, const Comonoid& d, int state,
                        int dobj, int depth) {
  if (!(d.carrier() == c.q))
    throw InputError("run_behavior_tree: the comonoid must structure q");
  BTree node;
  node.state = state;
  if (depth == 0) return node;
  int k = c.wiring[state].pos(dobj);
  node.ppos = k;
  node.children.reserve(c.p.dirs(k).size());
  for (int w = 0; w < c.p.dirs(k).size(); ++w) {
    int m = c.wiring[state].dir(dobj, w);
    int next_obj = d.cod(dobj, m);
    node.children.push_back(
        run_behavior_tree(c, d, c.cont[state][dobj][w], next_obj, depth - 1));
  }
  return node;
}

TreePosition tree_to_position(const CofreeTower& t, const BTree& tree, int depth) {
  if (depth == 0) return {0, {tree.state}};
  ensure(tree.ppos >= 0, "tree too shallow for the requested depth");
  std::vector<int> child_pos(tree.children.size());
  std::vector<std::vector<int>> child_labels(tree.children.size());
  for (std::size_t w = 0; w < tree.children.size(); ++w) {
    TreePosition sub = tree_to_position(t, tree.children[w], depth - 1);
    child_pos[w] = sub.pos;
    child_labels[w] = std::move(sub.labels);
  }
  ComposeIndex inner = make_compose_index(t.p, t.level[depth - 1]);
  int zc = inner.pos_of(tree.ppos, child_pos);
  // level(depth) = y x (p ◁ level(depth-1)): position indexes match the
  // composite, directions are the root label then the children blocks
  TreePosition out;
  out.pos = zc;
  out.labels.push_back(tree.state);
  for (std::size_t w = 0; w < tree.children.size(); ++w)
    for (int v : child_labels[w]) out.labels.push_back(v);
  return out;
}

std::string render_tree(const Coalgebra& c, const Comonoid& d, const BTree& tree,
                        int indent) {
  std::string pad(2 * indent, ' ');
  std::string out = pad + "state " + c.states.at(tree.state).str();
  if (tree.ppos >= 0) out += " emits " + c.p.positions().at(tree.ppos).str();
  out += "\n";
  for (std::size_t w = 0; w < tree.children.size(); ++w) {
    out += pad + "- on " + c.p.dirs(tree.ppos).at(static_cast<int>(w)).str() +
           ":\n";
    out += render_tree(c, d, tree.children[w], indent + 1);
  }
  return out;
}

Coalgebra random_coalgebra(const Polynomial& p, const Polynomial& q,
                           const FinSet& states, std::uint64_t seed) {
  Rng rng(seed);
  auto homs = enumerate_morphisms(q, p);
  if (homs.empty()) throw InputError("no wirings exist between the interfaces");
  Coalgebra out;
  out.p = p;
  out.q = q;
  out.states = states;
  out.cont.resize(states.size());
  for (int s = 0; s < states.size(); ++s) {
    const PolyMorphism& w = homs[rng.below(static_cast<int>(homs.size()))];
    out.wiring.push_back(w);
    out.cont[s].resize(q.npos());
    for (int i = 0; i < q.npos(); ++i) {
      out.cont[s][i].resize(p.dirs(w.pos(i)).size());
      for (int v = 0; v < p.dirs(w.pos(i)).size(); ++v)
        out.cont[s][i][v] = rng.below(states.size());
    }
  }
  return out;
}

}  // namespace catsharp
