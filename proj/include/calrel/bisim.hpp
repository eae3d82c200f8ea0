#pragma once

// (F,k)-bisimulations for fragments with complement or difference.

#include <cstddef>
#include <optional>
#include <vector>

#include "calrel/fragment.hpp"
#include "calrel/pair_relation.hpp"
#include "calrel/structure.hpp"

namespace calrel {

/// A degree bound; nullopt means degree-unrestricted.
using DegreeBound = std::optional<std::size_t>;

enum class Direction { OneSided, TwoSided };

struct PairTuple {
  std::size_t a1, b1, a2, b2;
};

using BisimSequence = std::vector<PairRelation>;

enum class BisimProperty {
  AtomsForth,
  AtomsBack,
  CompForth,
  CompBack,
  ProjForth,
  ProjBack,
  LResForth,
  LResBack,
  RResForth,
  RResBack,
};

/// Overrides of the fragment-driven choice of conditions.
struct BisimOptions {
  std::optional<bool> projection;
  std::optional<bool> residuals;
};

bool bisim_projection_enabled(Fragment f);

/// The properties a fragment requires, Atoms first.
std::vector<BisimProperty> bisim_properties(Fragment f, const BisimOptions& opts = {});

/// The condition P for `t` at degree i with respect to z. Atoms ignore i and z.
bool property_holds(BisimProperty p, const PairTuple& t, std::size_t i, const PairRelation& z, Fragment f,
                    const Structure& g1, const Structure& g2);

/// Throws WrongFragment unless F has complement or difference.
bool is_bisimulation(const BisimSequence& zs, Fragment f, const Structure& g1, const Structure& g2,
                     const BisimOptions& opts = {});

BisimSequence max_bisimulation(Fragment f, const Structure& g1, const Structure& g2, std::size_t k,
                               const BisimOptions& opts = {});

bool bisimilar(Fragment f, std::size_t k, const MarkedStructure& m1, const MarkedStructure& m2);

struct UnboundedRelation {
  PairRelation z;
  /// Refinement rounds run, including the one that found Z stable.
  std::size_t rounds = 0;
};

/// Refinement with degree-free path sets until Z stops shrinking.
UnboundedRelation max_bisimulation_unbounded(Fragment f, const Structure& g1, const Structure& g2,
                                             const BisimOptions& opts = {});

bool bisimilar_unbounded(Fragment f, const MarkedStructure& m1, const MarkedStructure& m2);

/// Greatest arrow-logic bisimulation: atoms, identity, composition both
/// ways over all nodes, closed under swapping the two pairs' components.
PairRelation max_arrow_bisimulation(const Structure& g1, const Structure& g2);

bool arrow_bisimilar(const MarkedStructure& m1, const MarkedStructure& m2);

}  // namespace calrel
