#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "catsharp/comonoid.hpp"

namespace catsharp {

/// Set-valued functor on a finite category (given as a comonoid).
class Copresheaf {
 public:
  Copresheaf() = default;
  /// act[c][f][x] = index in at[cod(f)] of x restricted along f.
  Copresheaf(Comonoid base, std::vector<FinSet> at,
             std::vector<std::vector<std::vector<int>>> act);

  const Comonoid& base() const { return base_; }
  const FinSet& at(int c) const { return at_[c]; }
  int act(int c, int f, int x) const { return act_[c][f][x]; }
  int n_objects() const { return base_.n_objects(); }
  int total_elements() const;

  /// Global element view with labels <object, element>.
  FinSet elements() const;
  std::pair<int, int> element_at(int global) const;  // (object, local index)
  int global_index(int c, int x) const;

  bool operator==(const Copresheaf& o) const;

 private:
  Comonoid base_;
  std::vector<FinSet> at_;
  std::vector<std::vector<std::vector<int>>> act_;
  std::vector<int> offset_;
};

CheckReport check_copresheaf(const Copresheaf& x);

Copresheaf representable(const Comonoid& c, int obj);
Copresheaf terminal_copresheaf(const Comonoid& c);
Copresheaf empty_copresheaf(const Comonoid& c);
Copresheaf product_copresheaf(const Copresheaf& x, const Copresheaf& y);

/// Natural family of functions between copresheaves over the same base.
struct CopresheafMorphism {
  std::vector<std::vector<int>> comp;  // per object: src element -> dst element
  bool operator==(const CopresheafMorphism& o) const { return comp == o.comp; }
};

CheckReport check_copresheaf_morphism(const Copresheaf& x, const Copresheaf& y,
                                      const CopresheafMorphism& m);

/// All natural families x -> y, deterministic order (backtracking with unit
/// propagation along the naturality constraints).
std::vector<CopresheafMorphism> enumerate_copresheaf_morphisms(
    const Copresheaf& x, const Copresheaf& y, std::size_t budget = kDefaultBudget);

std::optional<CopresheafMorphism> find_copresheaf_iso(const Copresheaf& x,
                                                      const Copresheaf& y,
                                                      std::size_t budget = 100000);

CopresheafMorphism identity_copresheaf_morphism(const Copresheaf& x);
CopresheafMorphism compose_copresheaf_morphisms(const Copresheaf& x,
                                                const CopresheafMorphism& f,
                                                const CopresheafMorphism& g);

struct ElementsCategoryResult {
  FinCategory cat;          // objects <C,x>, morphisms out of (C,x) = hom out of C
  FunctorData projection;   // to the base category
};

ElementsCategoryResult elements_category(const Copresheaf& x);

struct ColimitResult {
  FinSet classes;
  /// class of (object c, element x, s in assign[c][x])
  std::function<int(int, int, const Label&)> class_of;
};

/// Colimit of a set-valued assignment over the category of elements of x:
/// quotient of the disjoint union of assign-sets by the transport relations.
/// transport[c][f][x] maps assign[c][x] -> assign[cod f][x.f].
ColimitResult colimit_over_elements(
    const Copresheaf& x, const std::vector<std::vector<FinSet>>& assign,
    const std::vector<std::vector<std::vector<FinFn>>>& transport);

}  // namespace catsharp
