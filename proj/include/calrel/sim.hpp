#pragma once

// (F,k)-simulations for fragments without complement and difference, and
// the indistinguishability dispatcher over both kinds of fragment.

#include <cstddef>
#include <optional>
#include <vector>

#include "calrel/bisim.hpp"

namespace calrel {

/// Z carries the Forth properties, W the Back properties.
struct SimPair {
  std::vector<PairRelation> z;
  std::vector<PairRelation> w;
};

enum class SimProperty {
  AtomsForth,
  AtomsBack,
  CompForth,
  CompBack,
  ProjForth,
  ProjBack,
  CoprForth,
  CoprBack,
  LResForth,
  LResBack,
  RResForth,
  RResBack,
};

struct SimOptions {
  /// When false W stays at its atomic level.
  bool refine_w = true;
  std::optional<bool> projection;
};

bool sim_projection_enabled(Fragment f);

std::vector<SimProperty> sim_properties(Fragment f, const SimOptions& opts = {});

/// Whether the property constrains Z (Forth) rather than W (Back).
bool is_forth(SimProperty p);

bool sim_property_holds(SimProperty p, const PairTuple& t, std::size_t i, const PairRelation& z,
                        const PairRelation& w, Fragment f, const Structure& g1, const Structure& g2);

/// Throws WrongFragment when F has complement or difference.
bool is_simulation(const SimPair& s, Fragment f, const Structure& g1, const Structure& g2);

SimPair max_simulation(Fragment f, const Structure& g1, const Structure& g2, std::size_t k,
                       const SimOptions& opts = {});

bool similar(Fragment f, std::size_t k, const MarkedStructure& m1, const MarkedStructure& m2);

struct UnboundedSim {
  PairRelation z;
  PairRelation w;
  std::size_t rounds = 0;
};

UnboundedSim max_simulation_unbounded(Fragment f, const Structure& g1, const Structure& g2,
                                      const SimOptions& opts = {});

bool similar_unbounded(Fragment f, const MarkedStructure& m1, const MarkedStructure& m2);

/// Every expression of C(F) (of degree at most the bound) holding on m1
/// also holds on m2, and for TwoSided also the reverse.
bool indistinguishable(Fragment f, DegreeBound k, const MarkedStructure& m1, const MarkedStructure& m2,
                       Direction dir = Direction::TwoSided);

}  // namespace calrel
