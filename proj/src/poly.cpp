#include "catsharp/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace catsharp {

namespace {

const Label kStar = Label::atom("*");
const Label kL = Label::atom("l");
const Label kR = Label::atom("r");

Label tag_l(const Label& x) { return Label::pair(kL, x); }
Label tag_r(const Label& x) { return Label::pair(kR, x); }

}  // namespace

Polynomial::Polynomial() = default;

Polynomial Polynomial::make(FinSet positions, std::vector<FinSet> dirs) {
  if (static_cast<int>(dirs.size()) != positions.size())
    throw InputError("polynomial: one direction set per position required");
  Polynomial p;
  p.positions_ = std::move(positions);
  p.dirs_ = std::move(dirs);
  return p;
}

Polynomial Polynomial::y() {
  return make(FinSet::of({kStar}), {FinSet::of({kStar})});
}

Polynomial Polynomial::zero() { return make(FinSet(), {}); }

Polynomial Polynomial::one() { return make(FinSet::of({kStar}), {FinSet()}); }

Polynomial Polynomial::linear(const FinSet& s) {
  std::vector<FinSet> dirs(s.size(), FinSet::of({kStar}));
  return make(s, std::move(dirs));
}

Polynomial Polynomial::pure_power(const FinSet& s) {
  return make(FinSet::of({kStar}), {s});
}

Polynomial Polynomial::monomials(const std::vector<int>& arities) {
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  for (std::size_t i = 0; i < arities.size(); ++i) {
    pos.push_back(Label::atom("p" + std::to_string(i)));
    dirs.push_back(FinSet::range("d" + std::to_string(i) + "_", arities[i]));
  }
  return make(FinSet::of(std::move(pos)), std::move(dirs));
}

const FinSet& Polynomial::dirs(int i) const {
  ensure(i >= 0 && i < npos(), "Polynomial::dirs out of range");
  return dirs_[i];
}

std::size_t Polynomial::total_dirs() const {
  std::size_t n = 0;
  for (const auto& d : dirs_) n += d.size();
  return n;
}

bool Polynomial::is_linear() const {
  for (const auto& d : dirs_)
    if (d.size() != 1) return false;
  return true;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (positions_ != o.positions_) return false;
  for (int i = 0; i < npos(); ++i)
    if (dirs_[i] != o.dirs_[i]) return false;
  return true;
}

std::string Polynomial::describe() const {
  std::map<int, int, std::greater<int>> by_arity;
  for (const auto& d : dirs_) by_arity[d.size()]++;
  if (by_arity.empty()) return "0";
  std::string out;
  for (auto [ar, count] : by_arity) {
    if (!out.empty()) out += " + ";
    if (ar == 0) {
      out += std::to_string(count);
      continue;
    }
    if (count > 1) out += std::to_string(count);
    out += (ar == 1) ? "y" : "y^" + std::to_string(ar);
  }
  return out;
}

PolyMorphism::PolyMorphism(Polynomial src, Polynomial dst, std::vector<int> on_pos,
                           std::vector<std::vector<int>> on_dir)
    : src_(std::move(src)),
      dst_(std::move(dst)),
      on_pos_(std::move(on_pos)),
      on_dir_(std::move(on_dir)) {
  if (static_cast<int>(on_pos_.size()) != src_.npos() ||
      on_dir_.size() != on_pos_.size())
    throw InputError("polynomial morphism: table sizes do not match source");
  for (int i = 0; i < src_.npos(); ++i) {
    if (on_pos_[i] < 0 || on_pos_[i] >= dst_.npos())
      throw InputError("polynomial morphism: position image out of range");
    const auto& dd = dst_.dirs(on_pos_[i]);
    if (static_cast<int>(on_dir_[i].size()) != dd.size())
      throw InputError("polynomial morphism: backward table size mismatch");
    for (int v : on_dir_[i])
      if (v < 0 || v >= src_.dirs(i).size())
        throw InputError("polynomial morphism: backward image out of range");
  }
}

PolyMorphism PolyMorphism::identity(const Polynomial& p) {
  std::vector<int> on_pos(p.npos());
  std::vector<std::vector<int>> on_dir(p.npos());
  for (int i = 0; i < p.npos(); ++i) {
    on_pos[i] = i;
    on_dir[i].resize(p.dirs(i).size());
    std::iota(on_dir[i].begin(), on_dir[i].end(), 0);
  }
  return PolyMorphism(p, p, std::move(on_pos), std::move(on_dir));
}

PolyMorphism PolyMorphism::then(const PolyMorphism& g) const {
  if (!(dst_ == g.src()))
    throw InputError("polynomial morphism composition: middle objects differ");
  std::vector<int> on_pos(src_.npos());
  std::vector<std::vector<int>> on_dir(src_.npos());
  for (int i = 0; i < src_.npos(); ++i) {
    int j = on_pos_[i];
    int k = g.pos(j);
    on_pos[i] = k;
    const auto& t = g.dst().dirs(k);
    on_dir[i].resize(t.size());
    for (int w = 0; w < t.size(); ++w) on_dir[i][w] = on_dir_[i][g.dir(j, w)];
  }
  return PolyMorphism(src_, g.dst(), std::move(on_pos), std::move(on_dir));
}

bool PolyMorphism::operator==(const PolyMorphism& o) const {
  return src_ == o.src_ && dst_ == o.dst_ && on_pos_ == o.on_pos_ &&
         on_dir_ == o.on_dir_;
}

bool PolyMorphism::is_cartesian() const {
  for (int i = 0; i < src_.npos(); ++i) {
    std::vector<char> seen(src_.dirs(i).size(), 0);
    if (static_cast<int>(on_dir_[i].size()) != src_.dirs(i).size()) return false;
    for (int v : on_dir_[i]) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

bool PolyMorphism::is_vertical() const {
  if (src_.npos() != dst_.npos()) return false;
  std::vector<char> seen(dst_.npos(), 0);
  for (int v : on_pos_) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool PolyMorphism::is_iso() const { return is_vertical() && is_cartesian(); }

PolyMorphism PolyMorphism::inverse() const {
  if (!is_iso()) throw InputError("inverse of a non-isomorphism");
  std::vector<int> on_pos(dst_.npos());
  std::vector<std::vector<int>> on_dir(dst_.npos());
  for (int i = 0; i < src_.npos(); ++i) {
    int j = on_pos_[i];
    on_pos[j] = i;
    on_dir[j].resize(src_.dirs(i).size());
    for (int k = 0; k < dst_.dirs(j).size(); ++k) on_dir[j][on_dir_[i][k]] = k;
  }
  return PolyMorphism(dst_, src_, std::move(on_pos), std::move(on_dir));
}

// ---- monoidal structures ----

Polynomial sum(const Polynomial& p, const Polynomial& q) {
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  for (int i = 0; i < p.npos(); ++i) {
    pos.push_back(tag_l(p.positions().at(i)));
    dirs.push_back(p.dirs(i));
  }
  for (int j = 0; j < q.npos(); ++j) {
    pos.push_back(tag_r(q.positions().at(j)));
    dirs.push_back(q.dirs(j));
  }
  return Polynomial::make(FinSet::distinct(std::move(pos)), std::move(dirs));
}

Polynomial prod(const Polynomial& p, const Polynomial& q) {
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  for (int i = 0; i < p.npos(); ++i)
    for (int j = 0; j < q.npos(); ++j) {
      pos.push_back(Label::pair(p.positions().at(i), q.positions().at(j)));
      std::vector<Label> d;
      for (const auto& x : p.dirs(i).labels()) d.push_back(tag_l(x));
      for (const auto& y : q.dirs(j).labels()) d.push_back(tag_r(y));
      dirs.push_back(FinSet::distinct(std::move(d)));
    }
  return Polynomial::make(FinSet::distinct(std::move(pos)), std::move(dirs));
}

Polynomial dirichlet(const Polynomial& p, const Polynomial& q) {
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  for (int i = 0; i < p.npos(); ++i)
    for (int j = 0; j < q.npos(); ++j) {
      pos.push_back(Label::pair(p.positions().at(i), q.positions().at(j)));
      std::vector<Label> d;
      for (const auto& x : p.dirs(i).labels())
        for (const auto& y : q.dirs(j).labels()) d.push_back(Label::pair(x, y));
      dirs.push_back(FinSet::distinct(std::move(d)));
    }
  return Polynomial::make(FinSet::distinct(std::move(pos)), std::move(dirs));
}

Polynomial compose(const Polynomial& p, const Polynomial& q) {
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  for (int i = 0; i < p.npos(); ++i) {
    const FinSet& pd = p.dirs(i);
    std::vector<int> j(pd.size(), 0);
    bool more = (q.npos() > 0) || pd.size() == 0;
    while (more) {
      std::vector<Label> jl;
      jl.reserve(pd.size());
      for (int t = 0; t < pd.size(); ++t) jl.push_back(q.positions().at(j[t]));
      pos.push_back(Label::pair(p.positions().at(i), Label::tup(std::move(jl))));
      std::vector<Label> d;
      for (int t = 0; t < pd.size(); ++t)
        for (const auto& v : q.dirs(j[t]).labels())
          d.push_back(Label::pair(pd.at(t), v));
      dirs.push_back(FinSet::distinct(std::move(d)));
      int t = pd.size() - 1;
      while (t >= 0 && j[t] == q.npos() - 1) j[t--] = 0;
      if (t < 0) break;
      ++j[t];
    }
  }
  return Polynomial::make(FinSet::distinct(std::move(pos)), std::move(dirs));
}

PolyMorphism sum_mor(const PolyMorphism& f, const PolyMorphism& g) {
  Polynomial src = sum(f.src(), g.src());
  Polynomial dst = sum(f.dst(), g.dst());
  std::vector<int> on_pos;
  std::vector<std::vector<int>> on_dir;
  for (int i = 0; i < f.src().npos(); ++i) {
    on_pos.push_back(f.pos(i));
    on_dir.push_back(f.dir_table()[i]);
  }
  for (int j = 0; j < g.src().npos(); ++j) {
    on_pos.push_back(f.dst().npos() + g.pos(j));
    on_dir.push_back(g.dir_table()[j]);
  }
  return PolyMorphism(src, dst, std::move(on_pos), std::move(on_dir));
}

namespace {

// shared by prod_mor / dirichlet_mor: positions are pairs in row-major order
PolyMorphism pairwise_mor(const PolyMorphism& f, const PolyMorphism& g,
                          Polynomial src, Polynomial dst, bool tensor) {
  std::vector<int> on_pos;
  std::vector<std::vector<int>> on_dir;
  for (int i = 0; i < f.src().npos(); ++i)
    for (int j = 0; j < g.src().npos(); ++j) {
      on_pos.push_back(f.pos(i) * g.dst().npos() + g.pos(j));
      std::vector<int> bk;
      int pn = f.dst().dirs(f.pos(i)).size();
      int qn = g.dst().dirs(g.pos(j)).size();
      if (tensor) {
        bk.reserve(pn * qn);
        int qs = g.src().dirs(j).size();
        for (int a = 0; a < pn; ++a)
          for (int b = 0; b < qn; ++b) bk.push_back(f.dir(i, a) * qs + g.dir(j, b));
      } else {
        bk.reserve(pn + qn);
        int ps = f.src().dirs(i).size();
        for (int a = 0; a < pn; ++a) bk.push_back(f.dir(i, a));
        for (int b = 0; b < qn; ++b) bk.push_back(ps + g.dir(j, b));
      }
      on_dir.push_back(std::move(bk));
    }
  return PolyMorphism(std::move(src), std::move(dst), std::move(on_pos),
                      std::move(on_dir));
}

}  // namespace

PolyMorphism prod_mor(const PolyMorphism& f, const PolyMorphism& g) {
  return pairwise_mor(f, g, prod(f.src(), g.src()), prod(f.dst(), g.dst()), false);
}

PolyMorphism dirichlet_mor(const PolyMorphism& f, const PolyMorphism& g) {
  return pairwise_mor(f, g, dirichlet(f.src(), g.src()), dirichlet(f.dst(), g.dst()),
                      true);
}

namespace {

}  // namespace

int ComposeIndex::pos_of(int i, const std::vector<int>& j) const {
  long long z = 0;
  for (int t = 0; t < static_cast<int>(j.size()); ++t) z = z * q.npos() + j[t];
  return static_cast<int>(block[i] + z);
}

std::pair<int, std::vector<int>> ComposeIndex::decode(long long z) const {
  int i = static_cast<int>(std::upper_bound(block.begin(), block.end(), z) -
                           block.begin()) -
          1;
  long long rem = z - block[i];
  int k = p.dirs(i).size();
  std::vector<int> j(k);
  for (int t = k - 1; t >= 0; --t) {
    j[t] = static_cast<int>(rem % q.npos());
    rem /= q.npos();
  }
  return {i, std::move(j)};
}

std::vector<int> ComposeIndex::dir_prefix(const std::vector<int>& j) const {
  std::vector<int> pre(j.size() + 1, 0);
  for (std::size_t t = 0; t < j.size(); ++t)
    pre[t + 1] = pre[t] + q.dirs(j[t]).size();
  return pre;
}

ComposeIndex make_compose_index(const Polynomial& p, const Polynomial& q,
                                Polynomial pq) {
  std::vector<long long> block(p.npos() + 1, 0);
  for (int i = 0; i < p.npos(); ++i) {
    long long sz = 1;
    if (p.dirs(i).size() > 0) {
      if (q.npos() == 0)
        sz = 0;
      else
        for (int t = 0; t < p.dirs(i).size(); ++t) sz *= q.npos();
    }
    block[i + 1] = block[i] + sz;
  }
  ensure(block[p.npos()] == pq.npos(), "compose index block layout mismatch");
  return ComposeIndex{p, q, std::move(pq), std::move(block)};
}

ComposeIndex make_compose_index(const Polynomial& p, const Polynomial& q) {
  return make_compose_index(p, q, compose(p, q));
}

PolyMorphism compose_mor(const PolyMorphism& f, const PolyMorphism& g) {
  return compose_mor(f, g, make_compose_index(f.src(), g.src()),
                     make_compose_index(f.dst(), g.dst()));
}

PolyMorphism compose_mor(const PolyMorphism& f, const PolyMorphism& g,
                         const ComposeIndex& sidx, const ComposeIndex& didx) {
  ensure(sidx.p == f.src() && sidx.q == g.src() && didx.p == f.dst() &&
             didx.q == g.dst(),
         "compose_mor: index factors do not match");
  const Polynomial& src = sidx.pq;
  const Polynomial& dst = didx.pq;
  std::vector<int> on_pos(src.npos());
  std::vector<std::vector<int>> on_dir(src.npos());
  for (int z = 0; z < src.npos(); ++z) {
    auto [i, j] = sidx.decode(z);
    int i2 = f.pos(i);
    std::vector<int> j2(f.dst().dirs(i2).size());
    for (int a = 0; a < static_cast<int>(j2.size()); ++a)
      j2[a] = g.pos(j[f.dir(i, a)]);
    int z2 = didx.pos_of(i2, j2);
    on_pos[z] = z2;
    std::vector<int> spre = sidx.dir_prefix(j);
    std::vector<int> bk;
    bk.reserve(dst.dirs(z2).size());
    for (int a = 0; a < f.dst().dirs(i2).size(); ++a) {
      int ia = f.dir(i, a);
      for (int b = 0; b < g.dst().dirs(j2[a]).size(); ++b)
        bk.push_back(spre[ia] + g.dir(j[ia], b));
    }
    on_dir[z] = std::move(bk);
  }
  return PolyMorphism(src, dst, std::move(on_pos), std::move(on_dir));
}

PolyMorphism inl(const Polynomial& p, const Polynomial& q) {
  Polynomial dst = sum(p, q);
  std::vector<int> on_pos(p.npos());
  std::vector<std::vector<int>> on_dir(p.npos());
  for (int i = 0; i < p.npos(); ++i) {
    on_pos[i] = i;
    on_dir[i].resize(p.dirs(i).size());
    std::iota(on_dir[i].begin(), on_dir[i].end(), 0);
  }
  return PolyMorphism(p, dst, std::move(on_pos), std::move(on_dir));
}

PolyMorphism inr(const Polynomial& p, const Polynomial& q) {
  Polynomial dst = sum(p, q);
  std::vector<int> on_pos(q.npos());
  std::vector<std::vector<int>> on_dir(q.npos());
  for (int j = 0; j < q.npos(); ++j) {
    on_pos[j] = p.npos() + j;
    on_dir[j].resize(q.dirs(j).size());
    std::iota(on_dir[j].begin(), on_dir[j].end(), 0);
  }
  return PolyMorphism(q, dst, std::move(on_pos), std::move(on_dir));
}

PolyMorphism copair(const PolyMorphism& f, const PolyMorphism& g) {
  if (!(f.dst() == g.dst())) throw InputError("copair: target mismatch");
  Polynomial src = sum(f.src(), g.src());
  std::vector<int> on_pos;
  std::vector<std::vector<int>> on_dir;
  for (int i = 0; i < f.src().npos(); ++i) {
    on_pos.push_back(f.pos(i));
    on_dir.push_back(f.dir_table()[i]);
  }
  for (int j = 0; j < g.src().npos(); ++j) {
    on_pos.push_back(g.pos(j));
    on_dir.push_back(g.dir_table()[j]);
  }
  return PolyMorphism(std::move(src), f.dst(), std::move(on_pos), std::move(on_dir));
}

PolyMorphism proj_left(const Polynomial& p, const Polynomial& q) {
  Polynomial src = prod(p, q);
  std::vector<int> on_pos(src.npos());
  std::vector<std::vector<int>> on_dir(src.npos());
  for (int i = 0; i < p.npos(); ++i)
    for (int j = 0; j < q.npos(); ++j) {
      int z = i * q.npos() + j;
      on_pos[z] = i;
      on_dir[z].resize(p.dirs(i).size());
      std::iota(on_dir[z].begin(), on_dir[z].end(), 0);  // left block comes first
    }
  return PolyMorphism(std::move(src), p, std::move(on_pos), std::move(on_dir));
}

PolyMorphism proj_right(const Polynomial& p, const Polynomial& q) {
  Polynomial src = prod(p, q);
  std::vector<int> on_pos(src.npos());
  std::vector<std::vector<int>> on_dir(src.npos());
  for (int i = 0; i < p.npos(); ++i)
    for (int j = 0; j < q.npos(); ++j) {
      int z = i * q.npos() + j;
      on_pos[z] = j;
      on_dir[z].resize(q.dirs(j).size());
      for (int b = 0; b < q.dirs(j).size(); ++b) on_dir[z][b] = p.dirs(i).size() + b;
    }
  return PolyMorphism(std::move(src), q, std::move(on_pos), std::move(on_dir));
}

PolyMorphism pair_mor(const PolyMorphism& f, const PolyMorphism& g) {
  if (!(f.src() == g.src())) throw InputError("pair_mor: source mismatch");
  Polynomial dst = prod(f.dst(), g.dst());
  const Polynomial& x = f.src();
  std::vector<int> on_pos(x.npos());
  std::vector<std::vector<int>> on_dir(x.npos());
  for (int i = 0; i < x.npos(); ++i) {
    int a = f.pos(i), b = g.pos(i);
    on_pos[i] = a * g.dst().npos() + b;
    int pn = f.dst().dirs(a).size(), qn = g.dst().dirs(b).size();
    on_dir[i].resize(pn + qn);
    for (int k = 0; k < pn; ++k) on_dir[i][k] = f.dir(i, k);
    for (int k = 0; k < qn; ++k) on_dir[i][pn + k] = g.dir(i, k);
  }
  return PolyMorphism(x, std::move(dst), std::move(on_pos), std::move(on_dir));
}

PolyMorphism to_one(const Polynomial& p) {
  return PolyMorphism(p, Polynomial::one(), std::vector<int>(p.npos(), 0),
                      std::vector<std::vector<int>>(p.npos()));
}

PolyMorphism from_zero(const Polynomial& p) {
  return PolyMorphism(Polynomial::zero(), p, {}, {});
}

PolyMorphism lunit(const Polynomial& p) {
  auto idx = make_compose_index(Polynomial::y(), p);
  const Polynomial& src = idx.pq;
  std::vector<int> on_pos(src.npos());
  std::vector<std::vector<int>> on_dir(src.npos());
  for (int z = 0; z < src.npos(); ++z) {
    auto [i, j] = idx.decode(z);
    (void)i;
    on_pos[z] = j[0];
    on_dir[z].resize(p.dirs(j[0]).size());
    std::iota(on_dir[z].begin(), on_dir[z].end(), 0);
  }
  return PolyMorphism(src, p, std::move(on_pos), std::move(on_dir));
}

PolyMorphism lunit_inv(const Polynomial& p) { return lunit(p).inverse(); }

PolyMorphism runit(const Polynomial& p) {
  auto idx = make_compose_index(p, Polynomial::y());
  const Polynomial& src = idx.pq;
  std::vector<int> on_pos(src.npos());
  std::vector<std::vector<int>> on_dir(src.npos());
  for (int z = 0; z < src.npos(); ++z) {
    auto [i, j] = idx.decode(z);
    (void)j;
    on_pos[z] = i;
    on_dir[z].resize(p.dirs(i).size());
    std::iota(on_dir[z].begin(), on_dir[z].end(), 0);
  }
  return PolyMorphism(src, p, std::move(on_pos), std::move(on_dir));
}

PolyMorphism runit_inv(const Polynomial& p) { return runit(p).inverse(); }

PolyMorphism assoc_lr(const Polynomial& p, const Polynomial& q, const Polynomial& r) {
  auto pq_idx = make_compose_index(p, q);
  auto src_idx = make_compose_index(pq_idx.pq, r);
  auto qr_idx = make_compose_index(q, r);
  auto dst_idx = make_compose_index(p, qr_idx.pq);
  return assoc_lr(pq_idx, src_idx, qr_idx, dst_idx);
}

PolyMorphism assoc_lr(const ComposeIndex& pq_idx, const ComposeIndex& src_idx,
                      const ComposeIndex& qr_idx, const ComposeIndex& dst_idx) {
  ensure(src_idx.p == pq_idx.pq && qr_idx.p == pq_idx.q &&
             src_idx.q == qr_idx.q && dst_idx.p == pq_idx.p &&
             dst_idx.q == qr_idx.pq,
         "assoc_lr: inconsistent compose indexes");
  const Polynomial& p = pq_idx.p;
  const Polynomial& q = pq_idx.q;
  const Polynomial& r = qr_idx.q;
  const Polynomial& src = src_idx.pq;
  const Polynomial& dst = dst_idx.pq;
  std::vector<int> on_pos(src.npos());
  std::vector<std::vector<int>> on_dir(src.npos());
  for (int z = 0; z < src.npos(); ++z) {
    auto [zpq, k] = src_idx.decode(z);  // k: dirs of p◁q at zpq -> r-positions
    auto [i, j] = pq_idx.decode(zpq);
    std::vector<int> pqpre = pq_idx.dir_prefix(j);
    // h: dirs of p at i -> positions of q◁r
    std::vector<int> h(p.dirs(i).size());
    for (int a = 0; a < p.dirs(i).size(); ++a) {
      std::vector<int> inner(q.dirs(j[a]).size());
      for (int b = 0; b < q.dirs(j[a]).size(); ++b) inner[b] = k[pqpre[a] + b];
      h[a] = qr_idx.pos_of(j[a], inner);
    }
    int z2 = dst_idx.pos_of(i, h);
    on_pos[z] = z2;
    // directions of src at z: for (a,b) over p◁q dirs, for c over r.dirs(k[ab]):
    // index = srcpre[ab] + c. dst at z2 walks a, then (b, c) in the same order.
    std::vector<int> srcpre = src_idx.dir_prefix(k);
    std::vector<int> bk;
    bk.reserve(dst.dirs(z2).size());
    for (int a = 0; a < p.dirs(i).size(); ++a)
      for (int b = 0; b < q.dirs(j[a]).size(); ++b) {
        int ab = pqpre[a] + b;
        for (int c = 0; c < r.dirs(k[ab]).size(); ++c) bk.push_back(srcpre[ab] + c);
      }
    on_dir[z] = std::move(bk);
  }
  return PolyMorphism(src, dst, std::move(on_pos), std::move(on_dir));
}

PolyMorphism assoc_rl(const Polynomial& p, const Polynomial& q, const Polynomial& r) {
  return assoc_lr(p, q, r).inverse();
}

PolyMorphism pairing_compose(const PolyMorphism& f, const PolyMorphism& g,
                             const Polynomial& a, const Polynomial& b,
                             const Polynomial& q) {
  if (!(f.src() == g.src())) throw InputError("pairing_compose: source mismatch");
  ensure(f.dst() == compose(a, q), "pairing_compose: f target is not a◁q");
  ensure(g.dst() == compose(b, q), "pairing_compose: g target is not b◁q");
  const Polynomial& x = f.src();
  Polynomial ab = prod(a, b);
  Polynomial dst = compose(ab, q);
  auto aq_idx = make_compose_index(a, q);
  auto bq_idx = make_compose_index(b, q);
  auto dst_idx = make_compose_index(ab, q);
  std::vector<int> on_pos(x.npos());
  std::vector<std::vector<int>> on_dir(x.npos());
  for (int z = 0; z < x.npos(); ++z) {
    auto [ia, ja] = aq_idx.decode(f.pos(z));
    auto [ib, jb] = bq_idx.decode(g.pos(z));
    int zab = ia * b.npos() + ib;
    std::vector<int> j;
    j.reserve(ja.size() + jb.size());
    for (int t : ja) j.push_back(t);
    for (int t : jb) j.push_back(t);
    int z2 = dst_idx.pos_of(zab, j);
    on_pos[z] = z2;
    const FinSet& dd = dst.dirs(z2);
    std::vector<int> bk(dd.size());
    int na = a.dirs(ia).size();
    for (int w = 0; w < dd.size(); ++w) {
      const Label& wl = dd.at(w);  // (d, v) with d from a-dirs+b-dirs (tagged l/r)
      int d = ab.dirs(zab).index_of(wl.parts()[0]);
      const Label& v = wl.parts()[1];
      if (d < na) {
        int src_dir = f.dst().dirs(f.pos(z)).index_of(
            Label::pair(a.dirs(ia).at(d), v));
        bk[w] = f.dir(z, src_dir);
      } else {
        int src_dir = g.dst().dirs(g.pos(z)).index_of(
            Label::pair(b.dirs(ib).at(d - na), v));
        bk[w] = g.dir(z, src_dir);
      }
    }
    on_dir[z] = std::move(bk);
  }
  return PolyMorphism(x, std::move(dst), std::move(on_pos), std::move(on_dir));
}

PolyMorphism duoidal_comparison(const Polynomial& p, const Polynomial& q,
                                const Polynomial& r, const Polynomial& s) {
  Polynomial pq = compose(p, q);
  Polynomial rs = compose(r, s);
  Polynomial src = dirichlet(pq, rs);
  Polynomial pr = dirichlet(p, r);
  Polynomial qs = dirichlet(q, s);
  Polynomial dst = compose(pr, qs);
  auto pq_idx = make_compose_index(p, q);
  auto rs_idx = make_compose_index(r, s);
  auto dst_idx = make_compose_index(pr, qs);
  std::vector<int> on_pos(src.npos());
  std::vector<std::vector<int>> on_dir(src.npos());
  for (int zp = 0; zp < pq.npos(); ++zp)
    for (int zr = 0; zr < rs.npos(); ++zr) {
      int z = zp * rs.npos() + zr;
      auto [i, J] = pq_idx.decode(zp);
      auto [k, L] = rs_idx.decode(zr);
      int zpr = i * r.npos() + k;
      // table over dirs of p x r at (i,k): pairs (a, c) row-major
      std::vector<int> M(p.dirs(i).size() * r.dirs(k).size());
      for (int a = 0; a < p.dirs(i).size(); ++a)
        for (int c = 0; c < r.dirs(k).size(); ++c)
          M[a * r.dirs(k).size() + c] = J[a] * s.npos() + L[c];
      int z2 = dst_idx.pos_of(zpr, M);
      on_pos[z] = z2;
      const FinSet& dd = dst.dirs(z2);
      std::vector<int> bk(dd.size());
      for (int w = 0; w < dd.size(); ++w) {
        const Label& wl = dd.at(w);  // ((a,c),(v,u))
        const Label& al = wl.parts()[0].parts()[0];
        const Label& cl = wl.parts()[0].parts()[1];
        const Label& vl = wl.parts()[1].parts()[0];
        const Label& ul = wl.parts()[1].parts()[1];
        Label left = Label::pair(al, vl);   // direction of p◁q at zp
        Label right = Label::pair(cl, ul);  // direction of r◁s at zr
        bk[w] = src.dirs(z).index_of(Label::pair(left, right));
      }
      on_dir[z] = std::move(bk);
    }
  return PolyMorphism(std::move(src), std::move(dst), std::move(on_pos),
                      std::move(on_dir));
}

IsoPair linear_iso_left(const FinSet& s, const Polynomial& p) {
  Polynomial sy = Polynomial::linear(s);
  Polynomial src = dirichlet(sy, p);
  Polynomial dst = compose(sy, p);
  auto idx = make_compose_index(sy, p);
  std::vector<int> on_pos(src.npos());
  std::vector<std::vector<int>> on_dir(src.npos());
  for (int a = 0; a < s.size(); ++a)
    for (int i = 0; i < p.npos(); ++i) {
      int z = a * p.npos() + i;
      int z2 = idx.pos_of(a, {i});
      on_pos[z] = z2;
      const FinSet& dd = dst.dirs(z2);
      std::vector<int> bk(dd.size());
      for (int w = 0; w < dd.size(); ++w) {
        const Label& v = dd.at(w).parts()[1];
        bk[w] = src.dirs(z).index_of(Label::pair(kStar, v));
      }
      on_dir[z] = std::move(bk);
    }
  PolyMorphism fwd(src, dst, std::move(on_pos), std::move(on_dir));
  return {fwd, fwd.inverse()};
}

IsoPair linear_iso_right(const Polynomial& p, const FinSet& t) {
  Polynomial yt = Polynomial::pure_power(t);
  Polynomial src = dirichlet(p, yt);
  Polynomial dst = compose(p, yt);
  auto idx = make_compose_index(p, yt);
  std::vector<int> on_pos(src.npos());
  std::vector<std::vector<int>> on_dir(src.npos());
  for (int i = 0; i < p.npos(); ++i) {
    int z = i;  // yt has a single position
    int z2 = idx.pos_of(i, std::vector<int>(p.dirs(i).size(), 0));
    on_pos[z] = z2;
    const FinSet& dd = dst.dirs(z2);
    std::vector<int> bk(dd.size());
    for (int w = 0; w < dd.size(); ++w) {
      const Label& wl = dd.at(w);  // (i-dir, t-elt)
      bk[w] = src.dirs(z).index_of(Label::pair(wl.parts()[0], wl.parts()[1]));
    }
    on_dir[z] = std::move(bk);
  }
  PolyMorphism fwd(src, dst, std::move(on_pos), std::move(on_dir));
  return {fwd, fwd.inverse()};
}

std::size_t count_morphisms(const Polynomial& p, const Polynomial& q) {
  double total = 1;
  for (int i = 0; i < p.npos(); ++i) {
    double per_pos = 0;
    for (int k = 0; k < q.npos(); ++k) {
      double ways = 1;
      for (int t = 0; t < q.dirs(k).size(); ++t) ways *= p.dirs(i).size();
      per_pos += ways;
    }
    total *= per_pos;
    if (total > 1e18) return static_cast<std::size_t>(-1);
  }
  return static_cast<std::size_t>(total);
}

std::vector<PolyMorphism> enumerate_morphisms(const Polynomial& p,
                                              const Polynomial& q,
                                              std::size_t budget) {
  std::size_t n = count_morphisms(p, q);
  if (n == static_cast<std::size_t>(-1) || n > budget)
    throw ResourceError("hom-set of size " +
                        (n == static_cast<std::size_t>(-1) ? std::string(">1e18")
                                                           : std::to_string(n)) +
                        " exceeds budget " + std::to_string(budget));
  // per-position choices: (target position, backward table), ordered by target
  // position then lexicographically by table
  std::vector<std::vector<std::pair<int, std::vector<int>>>> choices(p.npos());
  for (int i = 0; i < p.npos(); ++i) {
    for (int k = 0; k < q.npos(); ++k) {
      if (q.dirs(k).size() > 0 && p.dirs(i).size() == 0) continue;
      std::vector<int> tbl(q.dirs(k).size(), 0);
      while (true) {
        choices[i].emplace_back(k, tbl);
        int t = static_cast<int>(tbl.size()) - 1;
        while (t >= 0 && tbl[t] == p.dirs(i).size() - 1) tbl[t--] = 0;
        if (t < 0) break;
        ++tbl[t];
      }
    }
  }
  std::vector<PolyMorphism> out;
  std::vector<int> pick(p.npos(), 0);
  for (int i = 0; i < p.npos(); ++i)
    if (choices[i].empty()) return {};  // no morphism from this position
  while (true) {
    std::vector<int> on_pos(p.npos());
    std::vector<std::vector<int>> on_dir(p.npos());
    for (int i = 0; i < p.npos(); ++i) {
      on_pos[i] = choices[i][pick[i]].first;
      on_dir[i] = choices[i][pick[i]].second;
    }
    out.emplace_back(p, q, std::move(on_pos), std::move(on_dir));
    int i = p.npos() - 1;
    while (i >= 0 && pick[i] + 1 == static_cast<int>(choices[i].size()))
      pick[i--] = 0;
    if (i < 0) break;
    ++pick[i];
  }
  return out;
}

InternalHom internal_hom(const Polynomial& q, const Polynomial& p,
                         std::size_t budget) {
  auto reps = enumerate_morphisms(q, p, budget);
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  for (const auto& m : reps) {
    std::vector<Label> parts;
    for (int i = 0; i < q.npos(); ++i) {
      std::vector<Label> bk;
      for (int k = 0; k < p.dirs(m.pos(i)).size(); ++k)
        bk.push_back(q.dirs(i).at(m.dir(i, k)));
      parts.push_back(
          Label::pair(p.positions().at(m.pos(i)), Label::tup(std::move(bk))));
    }
    pos.push_back(Label::tup(std::move(parts)));
    std::vector<Label> d;
    for (int i = 0; i < q.npos(); ++i)
      for (const auto& w : p.dirs(m.pos(i)).labels())
        d.push_back(Label::pair(q.positions().at(i), w));
    dirs.push_back(FinSet::distinct(std::move(d)));
  }
  return {Polynomial::make(FinSet::distinct(std::move(pos)), std::move(dirs)),
          std::move(reps)};
}

EqualizerResult equalizer(const PolyMorphism& f, const PolyMorphism& g) {
  if (!(f.src() == g.src() && f.dst() == g.dst()))
    throw InputError("equalizer: not a parallel pair");
  const Polynomial& s = f.src();
  std::vector<int> pos_of;
  std::vector<Label> pos_labels;
  std::vector<FinSet> dirs;
  std::vector<std::vector<int>> dir_class;
  for (int z = 0; z < s.npos(); ++z) {
    if (f.pos(z) != g.pos(z)) continue;
    std::vector<std::pair<Label, Label>> rel;
    const FinSet& td = f.dst().dirs(f.pos(z));
    for (int w = 0; w < td.size(); ++w)
      rel.emplace_back(s.dirs(z).at(f.dir(z, w)), s.dirs(z).at(g.dir(z, w)));
    auto quo = quotient(s.dirs(z), rel);
    pos_of.push_back(z);
    pos_labels.push_back(s.positions().at(z));
    dirs.push_back(quo.classes);
    dir_class.push_back(quo.projection.table());
  }
  Polynomial eq = Polynomial::make(FinSet::of(std::move(pos_labels)), std::move(dirs));
  std::vector<int> on_pos = pos_of;
  std::vector<std::vector<int>> on_dir;
  for (std::size_t t = 0; t < pos_of.size(); ++t)
    on_dir.push_back(dir_class[t]);  // backward map s[z] -> eq[t] is the projection
  PolyMorphism incl(eq, s, std::move(on_pos), std::move(on_dir));
  return {eq, incl, pos_of, dir_class};
}

std::optional<PolyMorphism> find_poly_iso(const Polynomial& p, const Polynomial& q) {
  if (p.npos() != q.npos()) return std::nullopt;
  // group q positions by arity
  std::map<int, std::vector<int>> pool;
  for (int k = 0; k < q.npos(); ++k) pool[q.dirs(k).size()].push_back(k);
  std::vector<int> on_pos(p.npos());
  for (int i = 0; i < p.npos(); ++i) {
    auto it = pool.find(p.dirs(i).size());
    if (it == pool.end() || it->second.empty()) return std::nullopt;
    on_pos[i] = it->second.back();
    it->second.pop_back();
  }
  std::vector<std::vector<int>> on_dir(p.npos());
  for (int i = 0; i < p.npos(); ++i) {
    on_dir[i].resize(p.dirs(i).size());
    std::iota(on_dir[i].begin(), on_dir[i].end(), 0);
  }
  return PolyMorphism(p, q, std::move(on_pos), std::move(on_dir));
}

}  // namespace catsharp
