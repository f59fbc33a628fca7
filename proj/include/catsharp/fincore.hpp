#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace catsharp {

/// Raised on malformed user input (unknown labels, mismatched domains, ...).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an enumeration would exceed its configured budget.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void ensure(bool cond, const std::string& msg);

constexpr std::size_t kDefaultBudget = 1'000'000;

/// Structured tag: an atom (string) or a tuple of labels. Composite
/// constructions build tuple labels so every derived element has a
/// readable canonical name.
class Label {
 public:
  Label() : Label(atom("")) {}
  static Label atom(std::string s);
  static Label num(long n);
  static Label pair(Label a, Label b);
  static Label tup(std::vector<Label> parts);

  bool is_atom() const { return n_->atom; }
  const std::string& text() const;
  const std::vector<Label>& parts() const;
  std::string str() const;

  std::size_t hash() const { return n_->h; }
  bool operator==(const Label& o) const;
  bool operator!=(const Label& o) const { return !(*this == o); }
  bool operator<(const Label& o) const;

 private:
  struct Node {
    bool atom;
    std::string text;
    std::vector<Label> parts;
    std::size_t h;
  };
  explicit Label(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct LabelHash {
  std::size_t operator()(const Label& l) const { return l.hash(); }
};

/// Finite set of pairwise distinct labels; element order is part of the value.
/// The label-to-index map is built lazily on first lookup, so purely
/// positional consumers never pay for it.
class FinSet {
 public:
  FinSet();
  static FinSet of(std::vector<Label> elems);
  /// Caller guarantees distinctness (labels built structurally distinct);
  /// duplicates are still caught on the first indexed lookup.
  static FinSet distinct(std::vector<Label> elems);
  static FinSet atoms(const std::vector<std::string>& names);
  static FinSet range(const std::string& prefix, int n);

  int size() const { return static_cast<int>(d_->elems.size()); }
  bool empty() const { return d_->elems.empty(); }
  const Label& at(int i) const;
  std::optional<int> find(const Label& l) const;
  int index_of(const Label& l) const;
  bool contains(const Label& l) const { return find(l).has_value(); }
  const std::vector<Label>& labels() const { return d_->elems; }

  bool operator==(const FinSet& o) const;
  bool operator!=(const FinSet& o) const { return !(*this == o); }

 private:
  struct Data {
    std::vector<Label> elems;
    mutable std::once_flag index_once;
    mutable std::unordered_map<Label, int, LabelHash> index;
    void build_index() const;
  };
  std::shared_ptr<const Data> d_;
};

/// Total function between finite sets, stored by element index.
class FinFn {
 public:
  FinFn() = default;  // the empty function
  FinFn(FinSet dom, FinSet cod, std::vector<int> map);
  static FinFn identity(const FinSet& s);
  static FinFn constant(const FinSet& dom, const FinSet& cod, const Label& value);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  int operator()(int i) const;
  Label apply(const Label& l) const;
  const std::vector<int>& table() const { return map_; }

  FinFn then(const FinFn& g) const;  // this followed by g
  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }
  FinFn inverse() const;

  bool operator==(const FinFn& o) const;

 private:
  FinSet dom_, cod_;
  std::vector<int> map_;
};

struct QuotientResult {
  FinSet classes;   // representative = least member in iteration order
  FinFn projection;  // original set -> classes
};

/// Quotient by the equivalence generated by the given pairs.
QuotientResult quotient(const FinSet& s,
                        const std::vector<std::pair<Label, Label>>& pairs);

/// All |b|^|a| functions a -> b in lexicographic order of their index tables.
/// Empty when |a| > 0 and |b| = 0.
std::vector<FinFn> enumerate_functions(const FinSet& a, const FinSet& b,
                                       std::size_t budget = kDefaultBudget);

struct PullbackResult {
  FinSet apex;       // labels <x,y> with f(x) = g(y)
  FinFn to_left;     // apex -> f.dom
  FinFn to_right;    // apex -> g.dom
};

PullbackResult pullback(const FinFn& f, const FinFn& g);

/// Disjoint-set forest over 0..n-1; representative = least member.
class UnionFind {
 public:
  explicit UnionFind(int n);
  int find(int a);
  void unite(int a, int b);

 private:
  std::vector<int> parent_;
};

}  // namespace catsharp
