#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catsharp/bicomod.hpp"
#include "catsharp/comonoid.hpp"
#include "catsharp/copresheaf.hpp"

namespace catsharp {

// Standard small categories used across tests and as CLI built-ins.
FinCategory terminal_category();
FinCategory discrete_category(int n);
FinCategory chain_category(int n);    // objects 0..n, generated by i -> i+1
FinCategory walking_arrow_category(); // = chain_category(1)
FinCategory cyclic_monoid(int k);     // Z/k as a one-object category
FinCategory commuting_square_category();  // chain x chain
FinCategory parallel_pair_category();     // e => v, copresheaves are graphs

/// The default corpus of categories exercised by the acceptance suite.
std::vector<std::pair<std::string, FinCategory>> corpus_categories();

/// Deterministic xorshift generator for seeded micro-instances.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next();
  int below(int n);  // uniform in [0, n)

 private:
  std::uint64_t s_;
};

/// Random copresheaf on a corpus category (free on generators where the
/// category is freely generated, permutations for cyclic monoids).
Copresheaf random_copresheaf(const Comonoid& base, Rng& rng, int max_elems = 3);

/// Seeded (c,d)-bicomodule built from random copresheaf data: positions a
/// random c-copresheaf, arities a fixed random d-copresheaf with identity
/// transports, possibly a direct sum of two such blocks.
Bicomodule random_bicomodule(const Comonoid& c, const Comonoid& d, Rng& rng,
                             int max_positions = 3, int max_dirs = 3);

}  // namespace catsharp
