#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catsharp/bicomod.hpp"
#include "catsharp/corpus.hpp"

namespace catsharp {

/// Monad on a comonoid in the double category: a (c,c)-bicomodule with unit
/// and multiplication. The multiplication may be partial when the carrier is
/// a truncation of an infinite colimit; undefined entries are -1 and law
/// checks skip them while reporting coverage.
struct MonadInCatSharp {
  Comonoid base;
  Bicomodule carrier;
  BicomoduleMorphism unit;  // identity(base) -> carrier
  ComposeResult square;     // carrier ◁ carrier
  std::vector<int> mult_pos;               // per square position; -1 undefined
  std::vector<std::vector<int>> mult_dir;  // backward: carrier dirs -> classes
  std::optional<int> truncation;

  bool defined(int z) const { return mult_pos[z] >= 0; }
};

CheckReport check_monad(const MonadInCatSharp& m,
                        std::size_t budget = kDefaultBudget);

MonadInCatSharp identity_monad(const Comonoid& c);

/// The walking parallel pair e => v; copresheaves on it are graphs.
Comonoid graph_base();
/// The linear graph with vertices 0..n (a copresheaf on graph_base()).
Copresheaf vec(int n);

/// Free-category monad on graphs, truncated at path length N.
MonadInCatSharp path_monad(int n_max);
/// Free-monoid monad on the terminal category, truncated at word length K.
MonadInCatSharp list_monad(int k_max);

/// A Kleisli morphism from p[src] to p[dst]: a natural map
/// p[src] -> m ◁ p[dst], stored elementwise.
struct KleisliMap {
  int src = -1;  // position of p whose arity is the domain
  int dst = -1;  // position of p whose arity generates the free algebra
  std::vector<int> mpos;              // per element of p[src]: an m-position
  std::vector<std::vector<int>> val;  // per element, per m-direction: p[dst] dir

  bool operator==(const KleisliMap& o) const {
    return src == o.src && dst == o.dst && mpos == o.mpos && val == o.val;
  }
};

KleisliMap kleisli_identity(const MonadInCatSharp& m, const Bicomodule& p, int i);
/// Composite first then second (first: J -> I, second: L -> J, result L -> I);
/// empty optional when the truncated multiplication is undefined.
std::optional<KleisliMap> kleisli_compose(const MonadInCatSharp& m,
                                          const Bicomodule& p,
                                          const KleisliMap& first,
                                          const KleisliMap& second);

/// The theory construction: k = <p | p ◁ m> with its comonoid structure, the
/// direct Kleisli category, the comparison functor between them, and the
/// opposite category Theta.
struct ThetaResult {
  Bicomodule p;
  ComposeResult pm;      // p ◁ m
  CoclosureResult cocl;  // the (d,d)-bicomodule k
  Comonoid k;            // comonoid structure on the carrier of k
  FinCategory k_category;
  FinCategory kleisli;  // independent construction of the hom-sets
  FinCategory theta;    // opposite of the k category
  std::vector<std::vector<KleisliMap>> dir_maps;  // k-direction -> Kleisli map
  FunctorData k_to_kleisli;
  /// independently enumerated Kleisli hom-set sizes, [dst][src]
  std::vector<std::vector<long>> kleisli_counts;
  /// when false, only pm/cocl/dir_maps/kleisli_counts are populated (the
  /// composition tables would be quadratic in the hom-set sizes)
  bool with_composition = true;
};

ThetaResult theta(const MonadInCatSharp& m, const Bicomodule& p,
                  std::size_t budget = kDefaultBudget,
                  bool with_composition = true);

/// Theory of the truncated free-monoid monad (a Lawvere-theory fragment).
struct LawvereListResult {
  MonadInCatSharp list;
  ThetaResult theory;
};
LawvereListResult lawvere_list(int k_max, std::size_t budget = kDefaultBudget,
                               bool with_composition = true);

/// Left module over a monad: a (c,b)-bicomodule with action m ◁ A -> A,
/// possibly partial under truncation.
struct LeftModule {
  Bicomodule carrier;
  ComposeResult ma;  // m ◁ carrier
  std::vector<int> act_pos;               // -1 where undefined
  std::vector<std::vector<int>> act_dir;  // backward: carrier dirs -> classes
};

CheckReport check_left_module(const MonadInCatSharp& m, const LeftModule& mod,
                              std::size_t budget = kDefaultBudget);

/// Free module m ◁ x on a (c,0)-bicomodule.
LeftModule free_module(const MonadInCatSharp& m, const Bicomodule& x,
                       std::size_t budget = kDefaultBudget);

/// A finite category as an algebra for the path monad: the carrier is its
/// underlying graph, the action composes paths.
LeftModule category_as_path_algebra(const MonadInCatSharp& path,
                                    const FinCategory& a,
                                    std::size_t budget = kDefaultBudget);

/// The nerve of a left module, as a copresheaf on the k category of theta;
/// cells at a position are natural maps from the arity into the algebra.
struct NerveResult {
  Copresheaf cells;          // on the comonoid theta.k
  ComposeResult cell_data;   // p ◁ A, aligned with the cell elements
  std::vector<std::vector<int>> cell_index;  // per k-position: composite index
};

NerveResult nerve(const MonadInCatSharp& m, const ThetaResult& th,
                  const LeftModule& algebra, std::size_t budget = kDefaultBudget);

/// Backward map of the cofunctor theta.k -> d (counit of the comonad):
/// a d-morphism out of the grade of position i becomes a k-direction.
int comonad_counit_dir(const ThetaResult& th, int i, int m_idx);

/// Transport between copresheaves on k and d-copresheaves with left
/// k-comodule structure. The comodule side is stored elementwise: each
/// element carries the k-position and the table of its k-direction actions.
struct KComoduleData {
  Bicomodule carrier;                     // a (d,0)-bicomodule
  std::vector<int> k_pos;                 // per position: a k-position
  std::vector<std::vector<int>> coact;    // per position: per k-direction: position
};

KComoduleData copresheaf_to_comodule(const ThetaResult& th, const Copresheaf& y);
Copresheaf comodule_to_copresheaf(const ThetaResult& th, const KComoduleData& x);
CheckReport check_kcomodule(const ThetaResult& th, const KComoduleData& x);

/// The (g,c)-bicomodule {v}c + {e}c* whose prafunctor takes a copresheaf to
/// the underlying graph of its category of elements.
Bicomodule elements_bicomodule(const Comonoid& c);

/// The restriction bicomodule of a functor.
Bicomodule delta_f(const FunctorData& f);

// ---- oracles used by tests and the acceptance suite ----

/// Number of monotone maps [a] -> [b] between finite ordinals.
long monotone_map_count(int a, int b);
/// Monotone maps [a] -> [b] as vertex tables.
std::vector<std::vector<int>> enumerate_monotone_maps(int a, int b);

}  // namespace catsharp
