#pragma once

// Brute-force ground truth by expression enumeration.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "calrel/bisim.hpp"
#include "calrel/expr.hpp"
#include "calrel/fragment.hpp"
#include "calrel/structure.hpp"

namespace calrel {

struct EnumBudget {
  std::size_t max_ast_size = 5;
  std::size_t max_degree = 2;
  Fragment fragment;
  std::vector<std::string> vocab;
};

/// One representative per isomorphism class of structures over `vocab` with
/// at most max_nodes nodes (the empty structure included), in order of node
/// count and then of the relation bits. Limited to max_nodes * max_nodes *
/// |vocab| <= 20.
std::vector<Structure> all_structures(std::size_t max_nodes, const std::vector<std::string>& vocab);

/// Each possible labeled edge present independently with probability `density`.
Structure random_structure(std::size_t n, const std::vector<std::string>& vocab, double density, std::uint64_t seed);

/// A random expression of C(F) over `vocab` with at most max_depth operator
/// levels. Converse may wrap any subexpression.
Expr random_expr(Fragment f, const std::vector<std::string>& vocab, std::size_t max_depth, std::mt19937_64& rng);

/// Every expression of C(F) within the budget, one per canonical form,
/// ordered by size and then by rendered text. Converses appear on
/// relation names only.
std::vector<Expr> enumerate(const EnumBudget& budget);

/// Expressions within the budget up to equivalence on a fixed family of
/// structures. An expression is kept unless one with the same value on every
/// family member and no larger degree was found at the same or a smaller
/// size, so for every expression in the budget some kept entry agrees with
/// it on the family and has no larger size or degree.
class ValueEnumerator {
 public:
  /// Structures must have at most 64 nodes. Names outside a structure's
  /// vocabulary evaluate to the empty relation there.
  ValueEnumerator(const EnumBudget& budget, std::vector<const Structure*> family);

  /// Generates the next size class. False once max_ast_size is done.
  bool next_size();
  /// Runs next_size() to the end of the budget.
  void run();

  std::size_t current_size() const noexcept { return size_; }
  std::size_t entry_count() const noexcept { return entries_.size(); }
  /// Entries of AST size s occupy [begin, end).
  std::pair<std::size_t, std::size_t> size_range(std::size_t s) const;

  std::size_t size_of(std::size_t i) const { return entries_[i].size; }
  std::size_t degree_of(std::size_t i) const { return entries_[i].degree; }
  /// Whether (a,b) is in the value of entry i on family member g.
  bool holds(std::size_t i, std::size_t g, std::size_t a, std::size_t b) const;
  Expr expr(std::size_t i) const;

 private:
  struct Entry {
    Op op;
    std::uint8_t size;
    std::uint8_t degree;
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t name;
  };
  struct Slot {
    std::size_t offset;  // first word
    std::size_t n;
    bool packed;         // whole matrix in one word, row i at bit i*n
  };

  const std::uint64_t* value(std::size_t i) const { return values_.data() + i * words_; }
  void add(const Entry& e, const std::uint64_t* v);
  void unary(Op op, const std::uint64_t* a, std::uint64_t* out) const;
  void binary(Op op, const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;
  std::size_t find(const std::uint64_t* v, std::uint64_t h) const;
  void grow();

  EnumBudget budget_;
  std::vector<const Structure*> family_;
  std::vector<Slot> slots_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> full_;
  std::vector<Entry> entries_;
  std::vector<std::uint64_t> values_;
  std::vector<std::uint32_t> table_;  // entry id + 1, 0 when empty
  std::vector<std::size_t> begin_;    // begin_[s] = first entry of size s
  std::size_t size_ = 0;
};

struct BruteVerdict {
  /// False only with a witness; true means no witness within the budget.
  bool indistinguishable = true;
  std::optional<Expr> witness;
  /// Which side the witness holds on (it fails on the other).
  bool witness_on_first = true;
};

/// Scans expressions by increasing size. The witness is the smallest
/// rendered text among surviving candidates of the minimal size.
BruteVerdict decide_bruteforce(const EnumBudget& budget, const MarkedStructure& m1, const MarkedStructure& m2,
                               Direction dir);

}  // namespace calrel
