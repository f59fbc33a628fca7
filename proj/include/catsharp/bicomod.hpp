#pragma once

#include <map>
#include <optional>
#include <vector>

#include "catsharp/copresheaf.hpp"

namespace catsharp {

/// A (c,d)-bicomodule in table form: position grades and actions encode the
/// left coaction, direction grades and actions the right one. The coaction
/// polynomial morphisms into c◁p and p◁d are materialized on demand; for
/// large carriers those composites are exponentially big, so every consumer
/// that can work on the tables does.
class Bicomodule {
 public:
  Bicomodule() = default;
  static Bicomodule make(Comonoid left, Comonoid right, Polynomial carrier,
                         std::vector<int> pos_grade,
                         std::vector<std::vector<int>> pos_act,
                         std::vector<std::vector<std::vector<int>>> pos_tr,
                         std::vector<std::vector<int>> dir_grade,
                         std::vector<std::vector<std::vector<int>>> dir_act);
  /// Extract tables from explicit coaction morphisms.
  static Bicomodule from_coactions(const Comonoid& left, const Comonoid& right,
                                   const Polynomial& carrier,
                                   const PolyMorphism& lco,
                                   const PolyMorphism& rco);

  const Comonoid& left() const { return left_; }
  const Comonoid& right() const { return right_; }
  const Polynomial& carrier() const { return carrier_; }
  int npos() const { return carrier_.npos(); }
  int ndirs(int i) const { return carrier_.dirs(i).size(); }

  int pos_grade(int i) const { return pos_grade_[i]; }
  int pos_act(int i, int a) const { return pos_act_[i][a]; }
  /// Transport of directions along the left action: dirs(i.a) -> dirs(i).
  int pos_tr(int i, int a, int j) const { return pos_tr_[i][a][j]; }
  int dir_grade(int i, int v) const { return dir_grade_[i][v]; }
  int dir_act(int i, int v, int m) const { return dir_act_[i][v][m]; }

  PolyMorphism lcoaction(std::size_t budget = kDefaultBudget) const;
  PolyMorphism rcoaction(std::size_t budget = kDefaultBudget) const;
  bool poly_form_feasible(std::size_t budget = kDefaultBudget) const;

  bool operator==(const Bicomodule& o) const;

 private:
  Comonoid left_, right_;
  Polynomial carrier_;
  std::vector<int> pos_grade_;
  std::vector<std::vector<int>> pos_act_;
  std::vector<std::vector<std::vector<int>>> pos_tr_;
  std::vector<std::vector<int>> dir_grade_;
  std::vector<std::vector<std::vector<int>>> dir_act_;
};

CheckReport check_bicomodule(const Bicomodule& b,
                             std::size_t budget = kDefaultBudget);

Bicomodule identity_bicomodule(const Comonoid& c);

// ---- copresheaves as (c,0)-bicomodules ----

Bicomodule copresheaf_to_bicomodule(const Copresheaf& x);
Copresheaf bicomodule_to_copresheaf(const Bicomodule& b);
/// The arity of position i as a copresheaf on the right base.
Copresheaf arity_copresheaf(const Bicomodule& b, int i);
/// The same arity as a (d,0)-bicomodule with positions in direction order.
Bicomodule arity_bicomodule(const Bicomodule& b, int i);

// ---- composition ----

struct ComposeResult {
  Bicomodule b;
  std::vector<int> pos_I;               // composite position -> left factor position
  std::vector<std::vector<int>> pos_f;  // composite position -> natural table
  std::vector<std::vector<int>> dir_pre;    // per position: offset per direction v
  std::vector<std::vector<int>> dir_class;  // flat (pre[v]+w) -> class index
  std::vector<std::map<std::vector<int>, int>> pos_lookup;  // per I: f -> position

  int find_position(int i, const std::vector<int>& f) const;
  std::optional<int> try_find(int i, const std::vector<int>& f) const;
  int class_of(int z, int v, int w) const {
    return dir_class[z][dir_pre[z][v] + w];
  }
  /// least pre-quotient pair in each class
  std::pair<int, int> rep_of(int z, int cls) const;
};

/// Composition over the shared base: positions are the natural maps from the
/// arity of a left-factor position to right-factor positions, directions the
/// colimit of the corresponding arities.
ComposeResult compose_bicomodules(const Bicomodule& p, const Bicomodule& q,
                                  std::size_t budget = kDefaultBudget);

/// Independent oracle: the same composite computed as the equalizer of
/// p◁q with the two coaction-induced maps into p◁d◁q, entirely at the level
/// of polynomial morphisms.
Bicomodule compose_oracle(const Bicomodule& p, const Bicomodule& q,
                          std::size_t budget = kDefaultBudget);

/// Apply the prafunctor of a (c,d)-bicomodule to a copresheaf on d.
Copresheaf evaluate_prafunctor(const Bicomodule& p, const Copresheaf& x,
                               std::size_t budget = kDefaultBudget);

/// Same, also returning the decoding of each value element as a pair of a
/// position and the table sending its directions to global x-elements.
struct PrafunctorResult {
  Copresheaf value;
  std::vector<std::vector<std::pair<int, std::vector<int>>>> elems;
};
PrafunctorResult evaluate_prafunctor_full(const Bicomodule& p, const Copresheaf& x,
                                          std::size_t budget = kDefaultBudget);

/// For each global element index of arity_copresheaf(b, i), the direction it
/// came from (the copresheaf groups directions by object).
std::vector<int> arity_element_dirs(const Bicomodule& b, int i);

// ---- morphisms of bicomodules over fixed bases ----

struct BicomoduleMorphism {
  Bicomodule src, dst;
  PolyMorphism underlying;
};

CheckReport check_bicomodule_morphism(const BicomoduleMorphism& m);
BicomoduleMorphism identity_bicomodule_morphism(const Bicomodule& b);
BicomoduleMorphism compose_bicomodule_morphisms(const BicomoduleMorphism& f,
                                                const BicomoduleMorphism& g);

std::vector<BicomoduleMorphism> enumerate_bicomodule_morphisms(
    const Bicomodule& x, const Bicomodule& y, std::size_t budget = kDefaultBudget);
std::optional<BicomoduleMorphism> find_bicomodule_iso(
    const Bicomodule& x, const Bicomodule& y, std::size_t node_budget = 100000);

// ---- calculus of composites over a base ----

/// Horizontal composition of morphisms: x◁y -> x'◁y' induced by f: x -> x'
/// and g: y -> y'.
BicomoduleMorphism whisker(const BicomoduleMorphism& f, const BicomoduleMorphism& g,
                           const ComposeResult& src, const ComposeResult& dst);

/// (x ◁ y) ◁ z -> x ◁ (y ◁ z); pass the four composites.
BicomoduleMorphism assoc_bicomodules(const ComposeResult& xy,
                                     const ComposeResult& xy_z,
                                     const ComposeResult& yz,
                                     const ComposeResult& x_yz);

// id(c)◁p -> p and p◁id(d) -> p with inverses; pass the composite and factor.
BicomoduleMorphism left_unitor(const ComposeResult& id_p, const Bicomodule& p);
BicomoduleMorphism left_unitor_inv(const ComposeResult& id_p, const Bicomodule& p);
BicomoduleMorphism right_unitor(const ComposeResult& p_id, const Bicomodule& p);
BicomoduleMorphism right_unitor_inv(const ComposeResult& p_id, const Bicomodule& p);

// ---- coclosure ----

struct CoclosureResult {
  Bicomodule b;                        // the (c,d)-bicomodule <p|q>
  std::vector<ComposeResult> per_pos;  // q ◁ arity(p, i) per position i
};

/// Left adjoint to -◁q: carrier has the positions of p with direction sets
/// the elements of q ◁ p[i].
CoclosureResult coclosure(const Bicomodule& p, const Bicomodule& q,
                          std::size_t budget = kDefaultBudget);

/// Unit p -> <p|q> ◁ q of the coclosure adjunction.
BicomoduleMorphism coclosure_unit(const Bicomodule& p, const Bicomodule& q,
                                  const CoclosureResult& cocl,
                                  const ComposeResult& cocl_q);

/// Transposition Hom(<p|q>, r) = Hom(p, r◁q) and its inverse.
BicomoduleMorphism coclosure_transpose(const BicomoduleMorphism& phi,
                                       const Bicomodule& p, const Bicomodule& q,
                                       const CoclosureResult& cocl,
                                       const ComposeResult& cocl_q,
                                       const ComposeResult& r_q);
BicomoduleMorphism coclosure_transpose_inv(const BicomoduleMorphism& psi,
                                           const Bicomodule& p,
                                           const Bicomodule& q,
                                           const Bicomodule& r,
                                           const CoclosureResult& cocl,
                                           const ComposeResult& r_q);

/// Exhibits the transposition bijection by enumerating both sides and
/// verifying that both round trips are identities.
CheckReport coclosure_universal_check(const Bicomodule& p, const Bicomodule& q,
                                      const Bicomodule& r,
                                      std::size_t budget = kDefaultBudget);

// ---- monoidal structure on (c,d)-bicomodules ----

Bicomodule tensor_over(const Bicomodule& p, const Bicomodule& q);
Bicomodule tensor_over_unit(const Comonoid& c, const Comonoid& d);  // c(1)y^{d(1)}

// ---- spans and duals over discrete bases ----

struct SpanDiagram {
  FinSet B;    // right base set
  FinSet mid;  // all directions
  FinSet top;  // positions
  FinSet A;    // left base set
  FinFn to_b;    // mid -> B
  FinFn to_top;  // mid -> top
  FinFn to_a;    // top -> A
};

SpanDiagram to_span(const Bicomodule& b);
Bicomodule span_to_bicomodule(const SpanDiagram& s);

/// Adjoint flip of a span in right-adjoint form (to_a an identity) or
/// left-adjoint form (to_top an identity).
SpanDiagram dagger(const SpanDiagram& s);

/// The dual over discrete bases: positions are pairs (a, section picking one
/// direction in each position over a), directions the positions over a.
Bicomodule vee(const Bicomodule& b, std::size_t budget = kDefaultBudget);

/// Computes (c-dagger)-vee and (c-vee)-dagger, asserts both are isomorphic to
/// the span of the directly-built opposite, and returns the first.
Bicomodule opposite_via_spans(const Comonoid& c, std::size_t budget = kDefaultBudget);

/// The (c tensor d, c+d)-bicomodule whose prafunctor is the external product.
Bicomodule external_product_bicomodule(const Comonoid& c, const Comonoid& d,
                                       std::size_t budget = kDefaultBudget);

/// Sub-bicomodule on a position subset closed under the left action.
Bicomodule restrict_positions(const Bicomodule& b, const std::vector<char>& keep);

/// Direct sum over the same pair of bases (disjoint union of positions).
Bicomodule sum_bicomodules(const Bicomodule& a, const Bicomodule& b);

}  // namespace catsharp
