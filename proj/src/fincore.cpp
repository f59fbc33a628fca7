#include "catsharp/fincore.hpp"

#include <algorithm>
#include <map>

namespace catsharp {

void ensure(bool cond, const std::string& msg) {
  if (!cond) throw std::logic_error("internal invariant violated: " + msg);
}

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Label Label::atom(std::string s) {
  auto n = std::make_shared<Node>();
  n->atom = true;
  n->h = hash_combine(0x517cc1b7, std::hash<std::string>{}(s));
  n->text = std::move(s);
  return Label(std::move(n));
}

Label Label::num(long v) { return atom(std::to_string(v)); }

Label Label::pair(Label a, Label b) { return tup({std::move(a), std::move(b)}); }

Label Label::tup(std::vector<Label> parts) {
  auto n = std::make_shared<Node>();
  n->atom = false;
  std::size_t h = 0x8f1bbcdc;
  for (const auto& p : parts) h = hash_combine(h, p.hash());
  n->h = h;
  n->parts = std::move(parts);
  return Label(std::move(n));
}

const std::string& Label::text() const {
  ensure(n_->atom, "Label::text on tuple");
  return n_->text;
}

const std::vector<Label>& Label::parts() const {
  ensure(!n_->atom, "Label::parts on atom");
  return n_->parts;
}

std::string Label::str() const {
  if (n_->atom) return n_->text;
  std::string out = "(";
  for (std::size_t i = 0; i < n_->parts.size(); ++i) {
    if (i) out += ",";
    out += n_->parts[i].str();
  }
  out += ")";
  return out;
}

bool Label::operator==(const Label& o) const {
  if (n_ == o.n_) return true;
  if (n_->h != o.n_->h || n_->atom != o.n_->atom) return false;
  if (n_->atom) return n_->text == o.n_->text;
  if (n_->parts.size() != o.n_->parts.size()) return false;
  for (std::size_t i = 0; i < n_->parts.size(); ++i)
    if (!(n_->parts[i] == o.n_->parts[i])) return false;
  return true;
}

bool Label::operator<(const Label& o) const {
  if (n_ == o.n_) return false;
  if (n_->atom != o.n_->atom) return n_->atom;  // atoms before tuples
  if (n_->atom) return n_->text < o.n_->text;
  const auto& a = n_->parts;
  const auto& b = o.n_->parts;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

FinSet::FinSet() {
  auto d = std::make_shared<Data>();
  d_ = std::move(d);
}

void FinSet::Data::build_index() const {
  std::call_once(index_once, [this] {
    index.reserve(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      auto [it, fresh] = index.emplace(elems[i], static_cast<int>(i));
      if (!fresh)
        throw InputError("duplicate label in finite set: " + elems[i].str());
    }
  });
}

FinSet FinSet::of(std::vector<Label> elems) {
  FinSet s = distinct(std::move(elems));
  s.d_->build_index();  // eager duplicate detection
  return s;
}

FinSet FinSet::distinct(std::vector<Label> elems) {
  auto d = std::make_shared<Data>();
  d->elems = std::move(elems);
  FinSet s;
  s.d_ = std::move(d);
  return s;
}

FinSet FinSet::atoms(const std::vector<std::string>& names) {
  std::vector<Label> ls;
  ls.reserve(names.size());
  for (const auto& n : names) ls.push_back(Label::atom(n));
  return of(std::move(ls));
}

FinSet FinSet::range(const std::string& prefix, int n) {
  std::vector<Label> ls;
  ls.reserve(n);
  for (int i = 0; i < n; ++i) ls.push_back(Label::atom(prefix + std::to_string(i)));
  return of(std::move(ls));
}

const Label& FinSet::at(int i) const {
  ensure(i >= 0 && i < size(), "FinSet::at out of range");
  return d_->elems[i];
}

std::optional<int> FinSet::find(const Label& l) const {
  d_->build_index();
  auto it = d_->index.find(l);
  if (it == d_->index.end()) return std::nullopt;
  return it->second;
}

int FinSet::index_of(const Label& l) const {
  auto i = find(l);
  if (!i) throw InputError("unknown label: " + l.str());
  return *i;
}

bool FinSet::operator==(const FinSet& o) const {
  if (d_ == o.d_) return true;
  return d_->elems == o.d_->elems;
}

FinFn::FinFn(FinSet dom, FinSet cod, std::vector<int> map)
    : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
  if (static_cast<int>(map_.size()) != dom_.size())
    throw InputError("function table size does not match domain");
  for (int v : map_)
    if (v < 0 || v >= cod_.size())
      throw InputError("function value out of codomain range");
}

FinFn FinFn::identity(const FinSet& s) {
  std::vector<int> m(s.size());
  for (int i = 0; i < s.size(); ++i) m[i] = i;
  return FinFn(s, s, std::move(m));
}

FinFn FinFn::constant(const FinSet& dom, const FinSet& cod, const Label& value) {
  int v = cod.index_of(value);
  return FinFn(dom, cod, std::vector<int>(dom.size(), v));
}

int FinFn::operator()(int i) const {
  ensure(i >= 0 && i < static_cast<int>(map_.size()), "FinFn apply out of range");
  return map_[i];
}

Label FinFn::apply(const Label& l) const { return cod_.at(map_[dom_.index_of(l)]); }

FinFn FinFn::then(const FinFn& g) const {
  if (cod_ != g.dom())
    throw InputError("composition mismatch: codomain differs from next domain");
  std::vector<int> m(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) m[i] = g(map_[i]);
  return FinFn(dom_, g.cod(), std::move(m));
}

bool FinFn::is_injective() const {
  std::vector<char> seen(cod_.size(), 0);
  for (int v : map_) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool FinFn::is_surjective() const {
  std::vector<char> seen(cod_.size(), 0);
  for (int v : map_) seen[v] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

FinFn FinFn::inverse() const {
  if (!is_bijective()) throw InputError("inverse of a non-bijective function");
  std::vector<int> m(cod_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) m[map_[i]] = static_cast<int>(i);
  return FinFn(cod_, dom_, std::move(m));
}

bool FinFn::operator==(const FinFn& o) const {
  return dom_ == o.dom_ && cod_ == o.cod_ && map_ == o.map_;
}

UnionFind::UnionFind(int n) : parent_(n) {
  for (int i = 0; i < n; ++i) parent_[i] = i;
}

int UnionFind::find(int a) {
  while (parent_[a] != a) {
    parent_[a] = parent_[parent_[a]];
    a = parent_[a];
  }
  return a;
}

void UnionFind::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  // keep the least index as representative
  if (a < b)
    parent_[b] = a;
  else
    parent_[a] = b;
}

QuotientResult quotient(const FinSet& s,
                        const std::vector<std::pair<Label, Label>>& pairs) {
  UnionFind uf(s.size());
  for (const auto& [a, b] : pairs) uf.unite(s.index_of(a), s.index_of(b));
  std::vector<int> rep_of(s.size());
  std::map<int, int> class_index;  // representative -> class position
  for (int i = 0; i < s.size(); ++i) {
    int r = uf.find(i);
    rep_of[i] = r;
    class_index.emplace(r, 0);
  }
  std::vector<Label> class_labels;
  int next = 0;
  for (auto& [rep, idx] : class_index) {
    idx = next++;
    class_labels.push_back(s.at(rep));
  }
  FinSet classes = FinSet::of(std::move(class_labels));
  std::vector<int> proj(s.size());
  for (int i = 0; i < s.size(); ++i) proj[i] = class_index[rep_of[i]];
  return {classes, FinFn(s, classes, std::move(proj))};
}

std::vector<FinFn> enumerate_functions(const FinSet& a, const FinSet& b,
                                       std::size_t budget) {
  if (a.size() > 0 && b.size() == 0) return {};
  double count = 1;
  for (int i = 0; i < a.size(); ++i) {
    count *= b.size();
    if (count > static_cast<double>(budget))
      throw ResourceError("function space " + std::to_string(b.size()) + "^" +
                          std::to_string(a.size()) + " exceeds budget " +
                          std::to_string(budget));
  }
  std::vector<FinFn> out;
  std::vector<int> digits(a.size(), 0);
  while (true) {
    out.emplace_back(a, b, digits);
    int i = a.size() - 1;
    while (i >= 0 && digits[i] == b.size() - 1) digits[i--] = 0;
    if (i < 0) break;
    ++digits[i];
  }
  return out;
}

PullbackResult pullback(const FinFn& f, const FinFn& g) {
  if (f.cod() != g.cod()) throw InputError("pullback: codomain mismatch");
  std::vector<Label> elems;
  std::vector<int> left, right;
  for (int x = 0; x < f.dom().size(); ++x)
    for (int y = 0; y < g.dom().size(); ++y)
      if (f(x) == g(y)) {
        elems.push_back(Label::pair(f.dom().at(x), g.dom().at(y)));
        left.push_back(x);
        right.push_back(y);
      }
  FinSet apex = FinSet::of(std::move(elems));
  return {apex, FinFn(apex, f.dom(), std::move(left)),
          FinFn(apex, g.dom(), std::move(right))};
}

}  // namespace catsharp
