#pragma once

// Set semantics of expressions on a structure.

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "calrel/bitmatrix.hpp"
#include "calrel/expr.hpp"
#include "calrel/fragment.hpp"
#include "calrel/structure.hpp"

namespace calrel {

/// Bottom-up evaluator that memoizes every node it has seen, so shared
/// subexpressions across several roots are computed once.
class Evaluator {
 public:
  explicit Evaluator(const Structure& g) : g_(&g) {}

  /// Throws UnknownRelation for names outside the structure's vocabulary.
  const PairSet& operator()(const Expr& e);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  const Structure* g_;
  std::unordered_map<const Node*, PairSet> memo_;
  std::vector<Expr> keep_alive_;
};

PairSet evaluate(const Expr& e, const Structure& g);

/// Whether (a,b) is in e(G).
bool holds(const Expr& e, const MarkedStructure& m);

/// id, then di if di is in F, then each name, then each converse if conv is in F.
std::vector<Expr> atoms_of(Fragment f, const std::vector<std::string>& vocab);

/// The atoms of atoms_of(F, vocab) containing the mark, in atoms_of order.
/// `vocab` defaults to the structure's own vocabulary when empty.
std::vector<Expr> atomic_type(Fragment f, const MarkedStructure& m, const std::vector<std::string>& vocab = {});

/// An expression of C(F) with degree at most k that evaluates to paths_F
/// on every structure over `vocab`.
Expr paths_expr(Fragment f, const std::vector<std::string>& vocab, std::size_t k);

}  // namespace calrel
