#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "catsharp/poly.hpp"

namespace catsharp {

/// Result of a law checker: a list of located violations plus coverage
/// counters for partial (truncated) structures.
struct CheckReport {
  std::vector<std::string> violations;
  long checked = 0;
  long skipped = 0;  // inputs outside a truncation bound
  bool ok() const { return violations.empty(); }
  void fail(const std::string& msg) { violations.push_back(msg); }
  void merge(const CheckReport& o);
  std::string summary() const;
};

/// Finite category stored morphisms-out-of-object, matching the comonoid
/// encoding. Composition entries may be -1 when a truncated construction
/// leaves a composite undefined.
struct FinCategory {
  FinSet objects;
  std::vector<FinSet> hom;                      // hom[c]: morphisms out of object c
  std::vector<std::vector<int>> cod;            // cod[c][f]: target object
  std::vector<int> ident;                       // ident[c]: index into hom[c]
  std::vector<std::vector<std::vector<int>>> comp;  // comp[c][f][g], g out of cod[c][f]

  int n_objects() const { return objects.size(); }
  int n_morphisms() const;
  bool is_partial() const;
  int compose2(int c, int f, int g) const { return comp[c][f][g]; }

  // derived global view: morphism labels are <object, name> pairs
  FinSet all_morphisms() const;
  FinFn dom_fn() const;
  FinFn cod_fn() const;
  FinFn identity_fn() const;
};

CheckReport check_category(const FinCategory& k);

/// Polynomial comonoid. The counit and comultiplication are stored in table
/// form (identity picks, codomains, composition); the polynomial morphisms
/// delta: c -> c◁c and epsilon: c -> y are materialized on demand, which is
/// only feasible when |c◁c| is within budget.
class Comonoid {
 public:
  static Comonoid from_tables(Polynomial carrier, std::vector<int> ident,
                              std::vector<std::vector<int>> cod,
                              std::vector<std::vector<std::vector<int>>> comp);
  /// Extract tables from explicit counit/comultiplication morphisms.
  static Comonoid from_poly(const Polynomial& carrier, const PolyMorphism& counit,
                            const PolyMorphism& comult);

  const Polynomial& carrier() const { return carrier_; }
  int n_objects() const { return carrier_.npos(); }
  const FinSet& hom(int c) const { return carrier_.dirs(c); }
  int ident(int c) const { return ident_[c]; }
  int cod(int c, int f) const { return cod_[c][f]; }
  int comp2(int c, int f, int g) const { return comp_[c][f][g]; }
  bool is_partial() const;

  PolyMorphism counit() const;  // carrier -> y
  PolyMorphism comult(std::size_t budget = kDefaultBudget) const;  // carrier -> carrier◁carrier
  bool poly_form_feasible(std::size_t budget = kDefaultBudget) const;

  bool operator==(const Comonoid& o) const;

 private:
  Polynomial carrier_;
  std::vector<int> ident_;
  std::vector<std::vector<int>> cod_;
  std::vector<std::vector<std::vector<int>>> comp_;
};

CheckReport check_comonoid(const Comonoid& c, std::size_t budget = kDefaultBudget);

Comonoid from_category(const FinCategory& k);
FinCategory to_category(const Comonoid& c);

Comonoid discrete(const FinSet& a);
Comonoid terminal_comonoid();  // y
Comonoid zero_comonoid();      // empty category

/// Product of categories as a comonoid, built through the duoidal map on the
/// tensor of carriers.
Comonoid tensor_comonoid(const Comonoid& c, const Comonoid& d,
                         std::size_t budget = kDefaultBudget);
Comonoid coproduct_comonoid(const Comonoid& c, const Comonoid& d);

/// Direct category-level constructions; oracles for the two above.
FinCategory product_category(const FinCategory& a, const FinCategory& b);
FinCategory coproduct_category(const FinCategory& a, const FinCategory& b);

Comonoid opposite_direct(const Comonoid& c);

struct Cofunctor {
  Comonoid src, dst;
  PolyMorphism underlying;  // src.carrier -> dst.carrier
};

CheckReport check_cofunctor(const Cofunctor& f, std::size_t budget = kDefaultBudget);
Cofunctor identity_cofunctor(const Comonoid& c);
Cofunctor discrete_cofunctor(const FinFn& fn);  // Ay -> By from A -> B

/// Functor between finite categories, stored object map + per-object
/// morphism map on the morphisms-out encoding.
struct FunctorData {
  FinCategory src, dst;
  std::vector<int> obj;               // object map
  std::vector<std::vector<int>> mor;  // mor[c][f]: index in dst.hom[obj[c]]
};

CheckReport check_functor(const FunctorData& f);
FunctorData identity_functor(const FinCategory& k);

struct CategoryIso {
  std::vector<int> obj;               // bijection a.objects -> b.objects
  std::vector<std::vector<int>> mor;  // per object: bijection of hom sets
};

/// Search for an isomorphism of categories (node-budgeted backtracking).
std::optional<CategoryIso> find_category_iso(const FinCategory& a,
                                             const FinCategory& b,
                                             std::size_t node_budget = 100000);

}  // namespace catsharp
