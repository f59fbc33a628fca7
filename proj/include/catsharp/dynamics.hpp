#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catsharp/bicomod.hpp"

namespace catsharp {

/// An elementary effects handler: a carrier polynomial s with a morphism
/// s◁q -> p◁s interpreting q-effects into p-effects with internal state.
struct ElementaryHandler {
  Polynomial p, q, s;
  PolyMorphism phi;  // compose(s, q) -> compose(p, s)
};

/// A comonoid-level handler: the structure map commutes with counits and
/// comultiplications.
struct ComonoidHandler {
  Comonoid c, d;
  Polynomial s;
  PolyMorphism phi;  // compose(s, d.carrier) -> compose(c.carrier, s)
};

CheckReport check_handler(const ComonoidHandler& h,
                          std::size_t budget = kDefaultBudget);

ComonoidHandler identity_handler(const Comonoid& c);
/// The (c,d)-handler with trivial state induced by a comonoid homomorphism
/// d -> c.
ComonoidHandler handler_from_hom(const Comonoid& d, const Comonoid& c,
                                 const PolyMorphism& hom);
/// S parallel copies of the identity handler (a linear handler).
ComonoidHandler constant_linear_handler(const Comonoid& c, const FinSet& states);

ComonoidHandler compose_handlers(const ComonoidHandler& f,
                                 const ComonoidHandler& g);

Bicomodule handler_to_bicomodule(const ComonoidHandler& h);

/// A handler square over identity cofunctors: gamma commutes with the
/// structure maps.
CheckReport check_handler_square(const ComonoidHandler& h,
                                 const ComonoidHandler& h2,
                                 const PolyMorphism& gamma);
/// The image of a square under the double functor into bicomodules.
PolyMorphism square_to_bicomodule_map(const ComonoidHandler& h,
                                      const ComonoidHandler& h2,
                                      const PolyMorphism& gamma);

// ---- the cofree tower ----

/// Truncations of the cofree comonoid on p: level 0 is y and level i+1 is
/// y x (p ◁ level i), with the projections between consecutive levels.
struct CofreeTower {
  Polynomial p;
  int depth = 0;
  std::vector<Polynomial> level;
  std::vector<PolyMorphism> proj;  // proj[i]: level[i+1] -> level[i]
};

CofreeTower cofree_tower(const Polynomial& p, int depth);
PolyMorphism tower_proj_to_zero(const CofreeTower& t, int i);  // level i -> y
/// The comultiplication fragment level(i1+i2) -> level(i1) ◁ level(i2).
PolyMorphism tower_phi(const CofreeTower& t, int i1, int i2);

/// The comonoid-to-tower maps eta(i): c -> c^(i) for the tower on the
/// carrier of c.
struct EtaTower {
  CofreeTower tower;
  std::vector<PolyMorphism> eta;  // eta[i]: carrier -> level i
};
EtaTower eta_tower(const Comonoid& c, int depth);

/// Levelwise lift of an elementary (p,d)-handler to the cofree tower on p.
struct LiftedHandler {
  ElementaryHandler base;
  Comonoid d;
  CofreeTower tower;
  std::vector<PolyMorphism> level;  // level[i]: s◁d -> level(i)◁s
};
LiftedHandler lift_handler(const ElementaryHandler& h, const Comonoid& d,
                           int depth);
/// Counit and comultiplication compatibility of a lifted handler, plus the
/// round trip through the underlying elementary handler.
CheckReport check_lifted_handler(const LiftedHandler& lh);

// ---- coalgebras and behavior trees ----

/// A [q,p]-coalgebra: a state machine that in each state wires interface q
/// into interface p and continues to a new state per p-direction.
struct Coalgebra {
  Polynomial p, q;
  FinSet states;
  std::vector<PolyMorphism> wiring;            // per state: q -> p
  std::vector<std::vector<std::vector<int>>> cont;  // [s][q-pos][p-dir] -> state
};

CheckReport check_coalgebra(const Coalgebra& c);

ElementaryHandler coalgebra_to_handler(const Coalgebra& c);
Coalgebra handler_to_coalgebra(const ElementaryHandler& h);

struct BTree {
  int state = -1;
  int ppos = -1;  // emitted p-position; -1 at depth zero
  std::vector<BTree> children;
};

/// Unroll the machine from a state and an object of the input interface.
BTree run_behavior_tree(const Coalgebra& c, const Comonoid& d, int state,
                        int dobj, int depth);

/// Encode a behavior tree as a position of level(depth) together with the
/// state labelling of its nodes (the directions of the level).
struct TreePosition {
  int pos;
  std::vector<int> labels;  // per direction of level(depth) at pos: a state
};
TreePosition tree_to_position(const CofreeTower& t, const BTree& tree, int depth);

std::string render_tree(const Coalgebra& c, const Comonoid& d, const BTree& tree,
                        int indent = 0);

/// Seeded random machine over the given interfaces.
Coalgebra random_coalgebra(const Polynomial& p, const Polynomial& q,
                           const FinSet& states, std::uint64_t seed);

}  // namespace catsharp
