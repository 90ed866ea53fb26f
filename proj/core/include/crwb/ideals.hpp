#pragma once

#include "crwb/algebra.hpp"

namespace crwb {

struct IdealSearch {
  enum class Status { complete, inconclusive };
  Status status = Status::inconclusive;
  std::vector<std::vector<RatVec>> ideals;  // row-reduced bases, deduplicated
  std::vector<std::string> notes;

  bool contains_span(const std::vector<RatVec>& basis) const;
};

/// Searches for every 3-dimensional abelian ideal. Tier 1 tests the 10 coordinate
/// triples exactly. Tier 2 enumerates ad(x)-invariant subspaces for random x via
/// exact generalized eigenspace atoms; one-parameter families inside 2-dimensional
/// atoms are resolved by exact polynomial conditions. Status is complete only when
/// some trial certifies a finite exhaustive candidate set.
IdealSearch find_abelian_ideals_3d(const RationalAlgebra& g, uint64_t seed = 42,
                                   int trials = 25);

/// Canonical row-reduced form of a span, for comparison and display.
std::vector<RatVec> canonical_span(const std::vector<RatVec>& basis);

}  // namespace crwb
