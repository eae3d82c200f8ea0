#pragma once

// Characteristic expressions: for a marked structure (G1,a,b) and degree k,
// an expression of C(F)_k whose value on any structure G2 is the set of
// pairs in paths_k^F(G2) that are (bi)similar to the mark.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "calrel/bisim.hpp"
#include "calrel/bitmatrix.hpp"
#include "calrel/expr.hpp"
#include "calrel/fragment.hpp"
#include "calrel/structure.hpp"

namespace calrel {

struct CharOptions {
  /// Subset enumerations over V1 need |V1| at most this many bits.
  std::size_t max_subset_bits = 8;
  /// Vocabulary of the atoms; the structure's own when empty.
  std::vector<std::string> vocab;
};

namespace detail {
class CharContext;
}

/// Memoized builder for bisimulation characteristic expressions.
/// Requires compl or diff in F.
class BisimCharBuilder {
 public:
  BisimCharBuilder(Fragment f, const Structure& g1, CharOptions opts = {});
  ~BisimCharBuilder();
  BisimCharBuilder(const BisimCharBuilder&) = delete;
  BisimCharBuilder& operator=(const BisimCharBuilder&) = delete;

  Expr operator()(std::size_t a, std::size_t b, std::size_t j);

 private:
  Expr build(std::size_t a, std::size_t b, std::size_t j);
  std::unique_ptr<detail::CharContext> ctx_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Expr> memo_;
};

/// e holds on the pairs whose tuple is in the forth relation Z_j; e' on the
/// pairs whose tuple is outside the back relation W_j. Both lie in paths_j.
struct SimChar {
  Expr e;
  Expr e_prime;
};

/// Memoized builder for simulation characteristic expressions.
/// Requires F without compl and diff.
class SimCharBuilder {
 public:
  SimCharBuilder(Fragment f, const Structure& g1, CharOptions opts = {});
  ~SimCharBuilder();
  SimCharBuilder(const SimCharBuilder&) = delete;
  SimCharBuilder& operator=(const SimCharBuilder&) = delete;

  const SimChar& operator()(std::size_t a, std::size_t b, std::size_t j);

 private:
  SimChar build(std::size_t a, std::size_t b, std::size_t j);
  std::unique_ptr<detail::CharContext> ctx_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, SimChar> memo_;
};

Expr char_expr_bisim(Fragment f, std::size_t k, const MarkedStructure& m1, const CharOptions& opts = {});
SimChar char_expr_sim(Fragment f, std::size_t k, const MarkedStructure& m1, const CharOptions& opts = {});

struct Witness {
  Expr expr;
  /// True when expr holds on the first marked structure and not on the
  /// second; false for the reverse (two-sided requests only).
  bool holds_on_first = true;
};

/// A verified distinguishing expression, or nothing when the marked
/// structures are indistinguishable. Throws std::logic_error if a built
/// witness fails verification.
std::optional<Witness> distinguishing_witness(Fragment f, DegreeBound k, const MarkedStructure& m1,
                                              const MarkedStructure& m2, Direction dir = Direction::OneSided,
                                              const CharOptions& opts = {});

}  // namespace calrel
