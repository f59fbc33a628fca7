#include "catsharp/polye.hpp"

#include <map>
#include <numeric>

namespace catsharp {

CheckReport check_copresheaf_polynomial(const CopresheafPolynomial& cp) {
  CheckReport r;
  r.merge(check_copresheaf(cp.total));
  r.merge(check_copresheaf(cp.parts));
  r.merge(check_copresheaf_morphism(cp.parts, cp.total, cp.proj));
  return r;
}

CopresheafPolynomial identity_cpoly(const Comonoid& a) {
  Copresheaf t = terminal_copresheaf(a);
  return {a, t, t, identity_copresheaf_morphism(t)};
}

CopresheafPolynomial product_cpoly(const CopresheafPolynomial& p,
                                   const CopresheafPolynomial& q) {
  if (!(p.base == q.base)) throw InputError("product of polynomials: base mismatch");
  Copresheaf total = product_copresheaf(p.total, q.total);
  Copresheaf parts = product_copresheaf(p.parts, q.parts);
  CopresheafMorphism proj;
  proj.comp.resize(p.base.n_objects());
  for (int o = 0; o < p.base.n_objects(); ++o) {
    proj.comp[o].resize(parts.at(o).size());
    int nq = q.parts.at(o).size();
    int nqt = q.total.at(o).size();
    for (int w1 = 0; w1 < p.parts.at(o).size(); ++w1)
      for (int w2 = 0; w2 < nq; ++w2)
        proj.comp[o][w1 * nq + w2] =
            p.proj.comp[o][w1] * nqt + q.proj.comp[o][w2];
  }
  return {p.base, std::move(total), std::move(parts), std::move(proj)};
}

namespace {

// directions of the embedding at (A, x): pairs (u out of A, parts element w
// over cod u with proj w = x.u), enumerated u-major
struct EmbedDir {
  int u;  // morphism index at A
  int w;  // parts element at cod u
};

std::vector<EmbedDir> embed_dirs(const CopresheafPolynomial& cp, int A, int x) {
  std::vector<EmbedDir> out;
  const Comonoid& a = cp.base;
  for (int u = 0; u < a.hom(A).size(); ++u) {
    int B = a.cod(A, u);
    int xu = cp.total.act(A, u, x);
    for (int w = 0; w < cp.parts.at(B).size(); ++w)
      if (cp.proj.comp[B][w] == xu) out.push_back({u, w});
  }
  return out;
}

}  // namespace

Bicomodule embed(const CopresheafPolynomial& cp) {
  const Comonoid& a = cp.base;
  int nobj = a.n_objects();
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  std::vector<std::pair<int, int>> pdata;
  std::vector<std::vector<EmbedDir>> ddata;
  std::map<std::pair<int, int>, int> pos_index;
  for (int A = 0; A < nobj; ++A)
    for (int x = 0; x < cp.total.at(A).size(); ++x) {
      pos_index[{A, x}] = static_cast<int>(pdata.size());
      pdata.emplace_back(A, x);
      pos.push_back(
          Label::pair(a.carrier().positions().at(A), cp.total.at(A).at(x)));
      auto dd = embed_dirs(cp, A, x);
      std::vector<Label> dl;
      for (const auto& d : dd)
        dl.push_back(Label::pair(a.hom(A).at(d.u),
                                 cp.parts.at(a.cod(A, d.u)).at(d.w)));
      dirs.push_back(FinSet::distinct(std::move(dl)));
      ddata.push_back(std::move(dd));
    }
  int n = static_cast<int>(pdata.size());
  Polynomial carrier = Polynomial::make(FinSet::distinct(std::move(pos)), dirs);
  auto dir_index = [&](int z, int u, int w) {
    for (std::size_t t = 0; t < ddata[z].size(); ++t)
      if (ddata[z][t].u == u && ddata[z][t].w == w) return static_cast<int>(t);
    throw std::logic_error("embed: direction lookup failed");
  };
  std::vector<int> pos_grade(n);
  std::vector<std::vector<int>> pos_act(n);
  std::vector<std::vector<std::vector<int>>> pos_tr(n);
  std::vector<std::vector<int>> dir_grade(n);
  std::vector<std::vector<std::vector<int>>> dir_act(n);
  for (int z = 0; z < n; ++z) {
    auto [A, x] = pdata[z];
    pos_grade[z] = A;
    pos_act[z].resize(a.hom(A).size());
    pos_tr[z].resize(a.hom(A).size());
    for (int v = 0; v < a.hom(A).size(); ++v) {
      int B = a.cod(A, v);
      int za = pos_index.at({B, cp.total.act(A, v, x)});
      pos_act[z][v] = za;
      pos_tr[z][v].resize(ddata[za].size());
      for (std::size_t t = 0; t < ddata[za].size(); ++t) {
        int vu = a.comp2(A, v, ddata[za][t].u);
        if (vu < 0) throw InputError("embed over a truncated base");
        pos_tr[z][v][t] = dir_index(z, vu, ddata[za][t].w);
      }
    }
    dir_grade[z].resize(ddata[z].size());
    dir_act[z].resize(ddata[z].size());
    for (std::size_t t = 0; t < ddata[z].size(); ++t) {
      int u = ddata[z][t].u;
      int w = ddata[z][t].w;
      int B = a.cod(A, u);
      dir_grade[z][t] = B;
      dir_act[z][t].resize(a.hom(B).size());
      for (int m = 0; m < a.hom(B).size(); ++m) {
        int um = a.comp2(A, u, m);
        if (um < 0) throw InputError("embed over a truncated base");
        dir_act[z][t][m] = dir_index(z, um, cp.parts.act(B, m, w));
      }
    }
  }
  return Bicomodule::make(a, a, std::move(carrier), std::move(pos_grade),
                          std::move(pos_act), std::move(pos_tr),
                          std::move(dir_grade), std::move(dir_act));
}

namespace {

// the pullback x* P_* for x an element of P at A, as a copresheaf on a
Copresheaf element_pullback(const CopresheafPolynomial& cp, int A, int x,
                            std::vector<std::vector<std::pair<int, int>>>* data) {
  const Comonoid& a = cp.base;
  int nobj = a.n_objects();
  std::vector<std::vector<std::pair<int, int>>> elems(nobj);  // (u, w)
  // elements over B: morphisms u: A -> B with a parts element over B lying
  // over x.u
  for (int u = 0; u < a.hom(A).size(); ++u) {
    int B = a.cod(A, u);
    int xu = cp.total.act(A, u, x);
    for (int w = 0; w < cp.parts.at(B).size(); ++w)
      if (cp.proj.comp[B][w] == xu) elems[B].emplace_back(u, w);
  }
  std::vector<FinSet> at(nobj);
  for (int B = 0; B < nobj; ++B) {
    std::vector<Label> ls;
    for (auto [u, w] : elems[B])
      ls.push_back(Label::pair(a.hom(A).at(u), cp.parts.at(B).at(w)));
    at[B] = FinSet::of(std::move(ls));
  }
  auto local = [&](int B, int u, int w) {
    for (std::size_t t = 0; t < elems[B].size(); ++t)
      if (elems[B][t] == std::make_pair(u, w)) return static_cast<int>(t);
    throw std::logic_error("element pullback lookup failed");
  };
  std::vector<std::vector<std::vector<int>>> act(nobj);
  for (int B = 0; B < nobj; ++B) {
    act[B].resize(a.hom(B).size());
    for (int m = 0; m < a.hom(B).size(); ++m) {
      act[B][m].resize(elems[B].size());
      for (std::size_t t = 0; t < elems[B].size(); ++t) {
        auto [u, w] = elems[B][t];
        int um = a.comp2(A, u, m);
        if (um < 0) throw InputError("pullback over a truncated base");
        act[B][m][t] = local(a.cod(B, m), um, cp.parts.act(B, m, w));
      }
    }
  }
  if (data) *data = elems;
  return Copresheaf(a, std::move(at), std::move(act));
}

}  // namespace

CopresheafPolynomial compose_in_E(const CopresheafPolynomial& p,
                                  const CopresheafPolynomial& q,
                                  std::size_t budget) {
  if (!(p.base == q.base)) throw InputError("compose_in_E: base mismatch");
  const Comonoid& a = p.base;
  int nobj = a.n_objects();
  // total: at A, pairs (x in P_A, section family s: x*P_* -> Q)
  struct TotalElt {
    int x;
    CopresheafMorphism s;
    std::vector<std::vector<std::pair<int, int>>> pb;  // pullback elements
  };
  std::vector<std::vector<TotalElt>> total_elts(nobj);
  for (int A = 0; A < nobj; ++A)
    for (int x = 0; x < p.total.at(A).size(); ++x) {
      std::vector<std::vector<std::pair<int, int>>> pbdata;
      Copresheaf pb = element_pullback(p, A, x, &pbdata);
      auto sections = enumerate_copresheaf_morphisms(pb, q.total, budget);
      for (auto& s : sections) total_elts[A].push_back({x, std::move(s), pbdata});
    }
  std::vector<FinSet> tat(nobj);
  for (int A = 0; A < nobj; ++A) {
    std::vector<Label> ls;
    for (const auto& e : total_elts[A]) {
      std::vector<Label> sl;
      for (int B = 0; B < nobj; ++B)
        for (std::size_t t = 0; t < e.pb[B].size(); ++t)
          sl.push_back(q.total.at(B).at(e.s.comp[B][t]));
      ls.push_back(Label::pair(p.total.at(A).at(e.x), Label::tup(std::move(sl))));
    }
    tat[A] = FinSet::of(std::move(ls));
  }
  // action on total elements
  auto find_total = [&](int A, int x, const std::vector<std::vector<int>>& sec) {
    for (std::size_t t = 0; t < total_elts[A].size(); ++t)
      if (total_elts[A][t].x == x && total_elts[A][t].s.comp == sec)
        return static_cast<int>(t);
    throw std::logic_error("composite total element lookup failed");
  };
  std::vector<std::vector<std::vector<int>>> tact(nobj);
  for (int A = 0; A < nobj; ++A) {
    tact[A].resize(a.hom(A).size());
    for (int v = 0; v < a.hom(A).size(); ++v) {
      int B2 = a.cod(A, v);
      tact[A][v].resize(total_elts[A].size());
      for (std::size_t t = 0; t < total_elts[A].size(); ++t) {
        const TotalElt& e = total_elts[A][t];
        int xv = p.total.act(A, v, e.x);
        // restricted section: on (u', w) at the pullback of xv, evaluate the
        // original section at (v;u', w)
        std::vector<std::vector<std::pair<int, int>>> pbv;
        element_pullback(p, B2, xv, &pbv);
        std::vector<std::vector<int>> sec(nobj);
        for (int B = 0; B < nobj; ++B) {
          sec[B].resize(pbv[B].size());
          for (std::size_t t2 = 0; t2 < pbv[B].size(); ++t2) {
            auto [u2, w2] = pbv[B][t2];
            int vu = a.comp2(A, v, u2);
            ensure(vu >= 0, "compose_in_E over a truncated base");
            // locate (vu, w2) in the pullback of x
            int found = -1;
            for (std::size_t t3 = 0; t3 < e.pb[B].size(); ++t3)
              if (e.pb[B][t3] == std::make_pair(vu, w2))
                found = static_cast<int>(t3);
            ensure(found >= 0, "restricted pullback element missing");
            sec[B][t2] = e.s.comp[B][found];
          }
        }
        tact[A][v][t] = find_total(B2, xv, sec);
      }
    }
  }
  Copresheaf total(a, tat, std::move(tact));
  // parts: triples (total element (x,s) at B, w in P_* over B with
  // proj w = x, wq in Q_* over B with q.proj(wq) = s(id, w))
  struct PartElt {
    int te;  // total element index at B
    int w;   // parts element of p
    int wq;  // parts element of q
  };
  std::vector<std::vector<PartElt>> part_elts(nobj);
  for (int B = 0; B < nobj; ++B)
    for (std::size_t te = 0; te < total_elts[B].size(); ++te) {
      const TotalElt& e = total_elts[B][te];
      for (int w = 0; w < p.parts.at(B).size(); ++w) {
        if (p.proj.comp[B][w] != e.x) continue;
        // the element (id_B, w) of the pullback
        int idb = a.ident(B);
        int loc = -1;
        for (std::size_t t3 = 0; t3 < e.pb[B].size(); ++t3)
          if (e.pb[B][t3] == std::make_pair(idb, w)) loc = static_cast<int>(t3);
        ensure(loc >= 0, "identity pullback element missing");
        int target = e.s.comp[B][loc];
        for (int wq = 0; wq < q.parts.at(B).size(); ++wq)
          if (q.proj.comp[B][wq] == target)
            part_elts[B].push_back({static_cast<int>(te), w, wq});
      }
    }
  std::vector<FinSet> pat(nobj);
  for (int B = 0; B < nobj; ++B) {
    std::vector<Label> ls;
    for (const auto& e : part_elts[B])
      ls.push_back(Label::tup({tat[B].at(e.te), p.parts.at(B).at(e.w),
                               q.parts.at(B).at(e.wq)}));
    pat[B] = FinSet::of(std::move(ls));
  }
  auto find_part = [&](int B, int te, int w, int wq) {
    for (std::size_t t = 0; t < part_elts[B].size(); ++t)
      if (part_elts[B][t].te == te && part_elts[B][t].w == w &&
          part_elts[B][t].wq == wq)
        return static_cast<int>(t);
    throw std::logic_error("composite part element lookup failed");
  };
  std::vector<std::vector<std::vector<int>>> pact(nobj);
  for (int B = 0; B < nobj; ++B) {
    pact[B].resize(a.hom(B).size());
    for (int m = 0; m < a.hom(B).size(); ++m) {
      int B2 = a.cod(B, m);
      pact[B][m].resize(part_elts[B].size());
      for (std::size_t t = 0; t < part_elts[B].size(); ++t) {
        const PartElt& e = part_elts[B][t];
        pact[B][m][t] = find_part(B2, total.act(B, m, e.te),
                                  p.parts.act(B, m, e.w), q.parts.act(B, m, e.wq));
      }
    }
  }
  Copresheaf parts(a, pat, std::move(pact));
  CopresheafMorphism proj;
  proj.comp.resize(nobj);
  for (int B = 0; B < nobj; ++B) {
    proj.comp[B].resize(part_elts[B].size());
    for (std::size_t t = 0; t < part_elts[B].size(); ++t)
      proj.comp[B][t] = part_elts[B][t].te;
  }
  return {a, std::move(total), std::move(parts), std::move(proj)};
}

CheckReport check_composition_preserved(const CopresheafPolynomial& p,
                                        const CopresheafPolynomial& q,
                                        std::size_t budget) {
  CheckReport r;
  CopresheafPolynomial pq = compose_in_E(p, q, budget);
  r.merge(check_copresheaf_polynomial(pq));
  if (!r.ok()) return r;
  Bicomodule lhs = embed(pq);
  ComposeResult rhs = compose_bicomodules(embed(p), embed(q), budget);
  ++r.checked;
  if (!find_bicomodule_iso(lhs, rhs.b, budget))
    r.fail("embedding does not preserve this composition up to isomorphism");
  return r;
}

LaxComparison lax_tensor_comparison(const CopresheafPolynomial& p,
                                    const CopresheafPolynomial& q,
                                    std::size_t budget) {
  (void)budget;
  const Comonoid& a = p.base;
  Bicomodule ep = embed(p);
  Bicomodule eq = embed(q);
  Bicomodule tensor = tensor_over(ep, eq);
  CopresheafPolynomial pqe = product_cpoly(p, q);
  Bicomodule target = embed(pqe);
  // positions: ((A,x1),(A,x2)) -> (A,(x1,x2)); recover indices through labels
  int nz = tensor.npos();
  std::vector<int> on_pos(nz);
  std::vector<std::vector<int>> on_dir(nz);
  for (int z = 0; z < nz; ++z) {
    const Label& zl = tensor.carrier().positions().at(z);
    const Label& al = zl.parts()[0].parts()[0];
    const Label& x1l = zl.parts()[0].parts()[1];
    const Label& x2l = zl.parts()[1].parts()[1];
    Label joint = Label::pair(al, Label::pair(x1l, x2l));
    int z2 = target.carrier().positions().index_of(joint);
    on_pos[z] = z2;
    on_dir[z].resize(target.ndirs(z2));
    for (int t = 0; t < target.ndirs(z2); ++t) {
      const Label& dl = target.carrier().dirs(z2).at(t);
      const Label& ul = dl.parts()[0];
      const Label& w1l = dl.parts()[1].parts()[0];
      const Label& w2l = dl.parts()[1].parts()[1];
      Label pairdir =
          Label::pair(Label::pair(ul, w1l), Label::pair(ul, w2l));
      on_dir[z][t] = tensor.carrier().dirs(z).index_of(pairdir);
    }
  }
  BicomoduleMorphism cmp{tensor, target,
                         PolyMorphism(tensor.carrier(), target.carrier(),
                                      std::move(on_pos), std::move(on_dir))};
  return {std::move(tensor), std::move(target), std::move(cmp)};
}

BicomoduleMorphism unit_comparison(const Comonoid& a) {
  Bicomodule unit = tensor_over_unit(a, a);
  Bicomodule target = embed(identity_cpoly(a));
  int n = a.n_objects();
  std::vector<int> on_pos(n);
  std::vector<std::vector<int>> on_dir(n);
  for (int A = 0; A < n; ++A) {
    on_pos[A] = A;  // both have one position per object in base order
    on_dir[A].resize(target.ndirs(A));
    for (int t = 0; t < target.ndirs(A); ++t)
      on_dir[A][t] = target.dir_grade(A, t);  // the codomain object
  }
  return {unit, target,
          PolyMorphism(unit.carrier(), target.carrier(), std::move(on_pos),
                       std::move(on_dir))};
}

long count_polye_homs(const CopresheafPolynomial& p, const CopresheafPolynomial& q,
                      std::size_t budget) {
  const Comonoid& a = p.base;
  int nobj = a.n_objects();
  long count = 0;
  auto fwds = enumerate_copresheaf_morphisms(p.total, q.total, budget);
  for (const auto& f : fwds) {
    // pullback P x_Q Q_*: pairs (x, wq) with f(x) = proj wq
    std::vector<std::vector<std::pair<int, int>>> elems(nobj);
    std::vector<FinSet> at(nobj);
    for (int B = 0; B < nobj; ++B) {
      std::vector<Label> ls;
      for (int x = 0; x < p.total.at(B).size(); ++x)
        for (int wq = 0; wq < q.parts.at(B).size(); ++wq)
          if (f.comp[B][x] == q.proj.comp[B][wq]) {
            elems[B].emplace_back(x, wq);
            ls.push_back(Label::pair(p.total.at(B).at(x), q.parts.at(B).at(wq)));
          }
      at[B] = FinSet::of(std::move(ls));
    }
    auto local = [&](int B, int x, int wq) {
      for (std::size_t t = 0; t < elems[B].size(); ++t)
        if (elems[B][t] == std::make_pair(x, wq)) return static_cast<int>(t);
      throw std::logic_error("hom pullback lookup failed");
    };
    std::vector<std::vector<std::vector<int>>> act(nobj);
    for (int B = 0; B < nobj; ++B) {
      act[B].resize(a.hom(B).size());
      for (int m = 0; m < a.hom(B).size(); ++m) {
        act[B][m].resize(elems[B].size());
        for (std::size_t t = 0; t < elems[B].size(); ++t) {
          auto [x, wq] = elems[B][t];
          act[B][m][t] = local(a.cod(B, m), p.total.act(B, m, x),
                               q.parts.act(B, m, wq));
        }
      }
    }
    Copresheaf pb(a, std::move(at), std::move(act));
    auto backs = enumerate_copresheaf_morphisms(pb, p.parts, budget);
    for (const auto& b : backs) {
      bool over_p = true;
      for (int B = 0; B < nobj && over_p; ++B)
        for (std::size_t t = 0; t < elems[B].size(); ++t)
          if (p.proj.comp[B][b.comp[B][t]] != elems[B][t].first) {
            over_p = false;
            break;
          }
      if (over_p) ++count;
    }
  }
  return count;
}

}  // namespace catsharp
