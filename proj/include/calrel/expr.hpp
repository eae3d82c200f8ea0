#pragma once

// Expressions of the calculus of relations as immutable shared trees.
// Nodes cache their degree, the fragment features they use, and their size.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "calrel/fragment.hpp"

namespace calrel {

enum class Op : std::uint8_t {
  Rel,
  Zero,
  One,
  Id,
  Di,
  Converse,
  Complement,
  Pi1,
  Pi2,
  Cpi1,
  Cpi2,
  Union,
  Intersect,
  Diff,
  Compose,
  LRes,
  RRes,
};

int arity(Op op);

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  std::string name;  // Rel only
  Expr lhs;          // unary operand, or left operand
  Expr rhs;
  std::uint32_t degree = 0;
  std::uint16_t features = 0;  // Fragment bits used anywhere in the tree
  // Node count where a converse applied directly to a relation name counts
  // as a single node. Saturates at UINT32_MAX.
  std::uint32_t size = 1;
};

/// Builds a node, computing its cached attributes.
Expr make(Op op, Expr lhs = nullptr, Expr rhs = nullptr, std::string name = {});

namespace ex {
Expr rel(std::string name);
Expr zero();
Expr one();
Expr ident();
Expr diversity();
Expr converse(Expr e);
Expr complement(Expr e);
Expr proj1(Expr e);
Expr proj2(Expr e);
Expr coproj1(Expr e);
Expr coproj2(Expr e);
Expr cup(Expr a, Expr b);
Expr cap(Expr a, Expr b);
Expr minus(Expr a, Expr b);
Expr comp(Expr a, Expr b);
Expr lres(Expr a, Expr b);
Expr rres(Expr a, Expr b);
}  // namespace ex

inline std::size_t degree(const Expr& e) { return e->degree; }
inline Fragment features_of(const Expr& e) { return Fragment(e->features); }
inline std::size_t expr_size(const Expr& e) { return e->size; }

/// Syntactic membership in C(F).
bool in_fragment(const Expr& e, Fragment f);

/// Structural equality.
bool equal(const Expr& a, const Expr& b);

/// Number of distinct node objects reachable from e.
std::size_t dag_node_count(const Expr& e);

/// Size of the rendered text in characters.
std::size_t rendered_size(const Expr& e);

std::string render(const Expr& e);

/// Hash-consing: structurally identical requests return the same node object,
/// provided children were themselves interned by this pool.
class ExprPool {
 public:
  Expr make(Op op, Expr lhs = nullptr, Expr rhs = nullptr, std::string name = {});
  /// Rebuilds e bottom-up through this pool.
  Expr intern(const Expr& e);
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::tuple<Op, const Node*, const Node*, std::string>, Expr> table_;
};

}  // namespace calrel
