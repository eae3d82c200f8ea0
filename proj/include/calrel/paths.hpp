#pragma once

// The pair sets that bound every degree-k expression of a fragment.

#include <cstddef>
#include <vector>

#include "calrel/bitmatrix.hpp"
#include "calrel/fragment.hpp"
#include "calrel/structure.hpp"

namespace calrel {

/// Pairs joined by a path of length at most 2^k in graph(G), or in its
/// undirected version. Always reflexive.
PairSet reach_pairs(const Structure& g, std::size_t k, bool undirected);

/// paths_k^F(G).
PairSet paths_F(const Structure& g, Fragment f, std::size_t k);

/// Degree-free variant: reachability (undirected iff conv is in F) when 1 is
/// absent, all of V^2 when 1 is expressible at any degree.
PairSet paths_unbounded(const Structure& g, Fragment f);

/// paths_F for degrees 0..max_k, or the unbounded set repeated at every
/// degree when built with `unbounded`.
class PathTable {
 public:
  PathTable(const Structure& g, Fragment f, std::size_t max_k);
  static PathTable unbounded(const Structure& g, Fragment f);

  /// Throws std::out_of_range for a bounded table not yet extended to k.
  const PairSet& at(std::size_t k) const;
  /// Grows the table so that at(k) is exact for the bounded variant.
  void extend(std::size_t k);

 private:
  PathTable() = default;
  const Structure* g_ = nullptr;
  Fragment f_;
  bool unbounded_ = false;
  std::vector<PairSet> levels_;
};

}  // namespace calrel
