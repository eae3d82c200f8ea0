#pragma once

#include <string>

#include "calrel/expr.hpp"

namespace calrel {

/// Equivalent expression over the same operators in which every converse
/// wraps a relation name.
Expr normalize_converse(const Expr& e);

/// Converse normal form, then flattening, deduplication and sorting of
/// union and intersection operands, and removal of double complements.
/// Operands are ordered by their rendered text and refolded to the left.
Expr canonicalize(const Expr& e);

/// Rendered text of the canonical form.
std::string canonical_key(const Expr& e);

}  // namespace calrel
