#pragma once

#include "catsharp/bicomod.hpp"

namespace catsharp {

/// A polynomial in the copresheaf topos on a: an exponentiable morphism of
/// copresheaves, stored as total and parts objects with the projection.
struct CopresheafPolynomial {
  Comonoid base;
  Copresheaf total;          // P
  Copresheaf parts;          // P_*
  CopresheafMorphism proj;   // P_* -> P
};

CheckReport check_copresheaf_polynomial(const CopresheafPolynomial& cp);

CopresheafPolynomial identity_cpoly(const Comonoid& a);  // 1 = 1
/// Pointwise product, the Dirichlet tensor in the copresheaf topos.
CopresheafPolynomial product_cpoly(const CopresheafPolynomial& p,
                                   const CopresheafPolynomial& q);

/// The embedding into (a,a)-bicomodules along the Yoneda choice of dense
/// functor: positions are the elements of the total copresheaf, directions
/// at (A, x) the pairs of a morphism u out of A and a parts element over its
/// codomain lying over the restriction of x.
Bicomodule embed(const CopresheafPolynomial& cp);

/// Composition via the dependent product, computed levelwise by its
/// universal property at representables.
CopresheafPolynomial compose_in_E(const CopresheafPolynomial& p,
                                  const CopresheafPolynomial& q,
                                  std::size_t budget = kDefaultBudget);

/// embed(compose_in_E(p,q)) is isomorphic to the composite of the embeddings.
CheckReport check_composition_preserved(const CopresheafPolynomial& p,
                                        const CopresheafPolynomial& q,
                                        std::size_t budget = kDefaultBudget);

/// The lax comparison embed(p) tensor embed(q) -> embed(p x q), injective on
/// directions.
struct LaxComparison {
  Bicomodule tensor_side;
  Bicomodule embed_side;
  BicomoduleMorphism cmp;
};
LaxComparison lax_tensor_comparison(const CopresheafPolynomial& p,
                                    const CopresheafPolynomial& q,
                                    std::size_t budget = kDefaultBudget);

/// Comparison from the tensor unit to the embedding of the identity.
BicomoduleMorphism unit_comparison(const Comonoid& a);

/// Morphisms of copresheaf polynomials (a forward natural map and a backward
/// map from the pullback of parts), for the full-faithfulness probe.
long count_polye_homs(const CopresheafPolynomial& p, const CopresheafPolynomial& q,
                      std::size_t budget = kDefaultBudget);

}  // namespace catsharp
