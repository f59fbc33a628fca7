#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catsharp/fincore.hpp"

namespace catsharp {

/// A finite polynomial: a set of positions, each carrying a finite set of
/// directions. Represents the functor  sum over I of y^{dirs(I)}.
class Polynomial {
 public:
  Polynomial();
  static Polynomial make(FinSet positions, std::vector<FinSet> dirs);
  static Polynomial y();     // one position, one direction
  static Polynomial zero();  // no positions
  static Polynomial one();   // one position, no directions
  static Polynomial linear(const FinSet& s);      // Sy
  static Polynomial pure_power(const FinSet& s);  // y^S
  static Polynomial monomials(const std::vector<int>& arities);  // y^a0 + y^a1 + ...

  int npos() const { return positions_.size(); }
  const FinSet& positions() const { return positions_; }
  const FinSet& dirs(int i) const;
  std::size_t total_dirs() const;
  bool is_linear() const;  // every position has exactly one direction

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }
  std::string describe() const;  // arity summary like "y^2 + 2y + 1"

 private:
  FinSet positions_;
  std::vector<FinSet> dirs_;
};

/// Morphism of polynomials: forward on positions, backward on directions.
class PolyMorphism {
 public:
  PolyMorphism(Polynomial src, Polynomial dst, std::vector<int> on_pos,
               std::vector<std::vector<int>> on_dir);
  static PolyMorphism identity(const Polynomial& p);

  const Polynomial& src() const { return src_; }
  const Polynomial& dst() const { return dst_; }
  int pos(int i) const { return on_pos_[i]; }
  /// Index (at source position i) of the pullback of the k-th direction of
  /// dst at pos(i).
  int dir(int i, int k) const { return on_dir_[i][k]; }
  const std::vector<int>& pos_table() const { return on_pos_; }
  const std::vector<std::vector<int>>& dir_table() const { return on_dir_; }

  PolyMorphism then(const PolyMorphism& g) const;
  bool operator==(const PolyMorphism& o) const;
  bool operator!=(const PolyMorphism& o) const { return !(*this == o); }

  bool is_cartesian() const;  // every backward map bijective
  bool is_vertical() const;   // position map bijective
  bool is_iso() const;
  PolyMorphism inverse() const;

 private:
  Polynomial src_, dst_;
  std::vector<int> on_pos_;
  std::vector<std::vector<int>> on_dir_;
};

// ---- monoidal structures on objects ----

Polynomial sum(const Polynomial& p, const Polynomial& q);        // +
Polynomial prod(const Polynomial& p, const Polynomial& q);       // x
Polynomial dirichlet(const Polynomial& p, const Polynomial& q);  // tensor
Polynomial compose(const Polynomial& p, const Polynomial& q);    // substitution

/// Internal hom [q,p] for the dirichlet tensor; positions are the morphisms
/// q -> p in enumeration order (also returned so callers can decode them).
struct InternalHom {
  Polynomial hom;
  std::vector<PolyMorphism> reps;  // aligned with hom positions
};
InternalHom internal_hom(const Polynomial& q, const Polynomial& p,
                         std::size_t budget = kDefaultBudget);

// ---- monoidal structures on morphisms ----

PolyMorphism sum_mor(const PolyMorphism& f, const PolyMorphism& g);
PolyMorphism prod_mor(const PolyMorphism& f, const PolyMorphism& g);
PolyMorphism dirichlet_mor(const PolyMorphism& f, const PolyMorphism& g);
PolyMorphism compose_mor(const PolyMorphism& f, const PolyMorphism& g);

PolyMorphism inl(const Polynomial& p, const Polynomial& q);  // p -> p+q
PolyMorphism inr(const Polynomial& p, const Polynomial& q);  // q -> p+q
PolyMorphism copair(const PolyMorphism& f, const PolyMorphism& g);  // p+q -> t
PolyMorphism proj_left(const Polynomial& p, const Polynomial& q);   // pxq -> p
PolyMorphism proj_right(const Polynomial& p, const Polynomial& q);  // pxq -> q
PolyMorphism pair_mor(const PolyMorphism& f, const PolyMorphism& g);  // x -> pxq
PolyMorphism to_one(const Polynomial& p);    // p -> 1
PolyMorphism from_zero(const Polynomial& p);  // 0 -> p

// ---- coherence isomorphisms for the composition product ----

/// Layout of p◁q: compose() enumerates J-tables in odometer order (last
/// direction fastest), so positions and direction offsets of a composite are
/// pure index arithmetic. Sharing one of these across several morphism
/// constructions avoids rebuilding the composite polynomial.
struct ComposeIndex {
  Polynomial p;
  Polynomial q;
  Polynomial pq;
  std::vector<long long> block;  // per p-position: first composite index

  int pos_of(int i, const std::vector<int>& j) const;
  std::pair<int, std::vector<int>> decode(long long z) const;
  std::vector<int> dir_prefix(const std::vector<int>& j) const;
};

ComposeIndex make_compose_index(const Polynomial& p, const Polynomial& q);
ComposeIndex make_compose_index(const Polynomial& p, const Polynomial& q,
                                Polynomial pq);

PolyMorphism lunit(const Polynomial& p);      // y ◁ p -> p
PolyMorphism lunit_inv(const Polynomial& p);  // p -> y ◁ p
PolyMorphism runit(const Polynomial& p);      // p ◁ y -> p
PolyMorphism runit_inv(const Polynomial& p);  // p -> p ◁ y
PolyMorphism assoc_lr(const Polynomial& p, const Polynomial& q,
                      const Polynomial& r);  // (p◁q)◁r -> p◁(q◁r)
PolyMorphism assoc_rl(const Polynomial& p, const Polynomial& q,
                      const Polynomial& r);  // p◁(q◁r) -> (p◁q)◁r

PolyMorphism compose_mor(const PolyMorphism& f, const PolyMorphism& g,
                         const ComposeIndex& sidx, const ComposeIndex& didx);
/// pq = p◁q, pq_r = (p◁q)◁r, qr = q◁r, p_qr = p◁(q◁r), all shareable.
PolyMorphism assoc_lr(const ComposeIndex& pq, const ComposeIndex& pq_r,
                      const ComposeIndex& qr, const ComposeIndex& p_qr);

/// Given f: x -> a◁q and g: x -> b◁q, the induced map x -> (a x b)◁q.
PolyMorphism pairing_compose(const PolyMorphism& f, const PolyMorphism& g,
                             const Polynomial& a, const Polynomial& b,
                             const Polynomial& q);

/// The duoidal interchange (p◁q) tensor (r◁s) -> (p tensor r)◁(q tensor s).
PolyMorphism duoidal_comparison(const Polynomial& p, const Polynomial& q,
                                const Polynomial& r, const Polynomial& s);

struct IsoPair {
  PolyMorphism fwd;
  PolyMorphism bwd;
};

/// Sy tensor p -> Sy ◁ p (an isomorphism) and its inverse.
IsoPair linear_iso_left(const FinSet& s, const Polynomial& p);
/// p tensor y^T -> p ◁ y^T (an isomorphism) and its inverse.
IsoPair linear_iso_right(const Polynomial& p, const FinSet& t);

// ---- enumeration, equalizers, isomorphism search ----

std::size_t count_morphisms(const Polynomial& p, const Polynomial& q);
std::vector<PolyMorphism> enumerate_morphisms(const Polynomial& p,
                                              const Polynomial& q,
                                              std::size_t budget = kDefaultBudget);

struct EqualizerResult {
  Polynomial eq;
  PolyMorphism incl;              // eq -> s (positions included, directions projected)
  std::vector<int> pos_of;        // eq position -> s position
  std::vector<std::vector<int>> dir_class;  // per eq position: s-dir -> eq-dir (class)
};

/// Equalizer of a parallel pair f,g: s -> t in Poly: equalized positions,
/// directions the coequalizer of the two backward maps.
EqualizerResult equalizer(const PolyMorphism& f, const PolyMorphism& g);

/// Isomorphism p ~ q if one exists (positions matched on arity).
std::optional<PolyMorphism> find_poly_iso(const Polynomial& p, const Polynomial& q);

}  // namespace catsharp
