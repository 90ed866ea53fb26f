#pragma once

#include "crwb/algebra.hpp"

namespace crwb {

/// Isomorphism-invariant summary of a rational Lie algebra. All entries are
/// computed exactly; ad_semisimple uses seeded trial elements and can only
/// err on the pessimistic side.
struct Fingerprint {
  std::vector<int> derived;        // dims of the derived series, starting at dim
  std::vector<int> lower_central;  // dims of the lower central series
  int center_dim = 0;
  Signature killing;
  bool solvable = false;
  bool nilpotent = false;
  int derivation_dim = 0;          // dim of the derivation algebra
  bool ad_semisimple = false;      // every regular trial ad(x) has a squarefree minimal polynomial

  std::string str() const;
  bool operator==(const Fingerprint& o) const;
};

Fingerprint fingerprint(const RationalAlgebra& g, uint64_t seed = 42);

/// Independent subset spanning the same space.
std::vector<RatVec> reduce_basis(const std::vector<RatVec>& vecs);

std::vector<RatVec> derived_subalgebra(const RationalAlgebra& g, const std::vector<RatVec>& s);
std::vector<RatVec> center_basis(const RationalAlgebra& g);
RatMat killing_matrix(const RationalAlgebra& g);
int derivation_dim(const RationalAlgebra& g);
bool ad_generic_semisimple(const RationalAlgebra& g, uint64_t seed = 42, int trials = 8);

}  // namespace crwb
