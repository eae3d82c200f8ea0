#pragma once

// Concrete syntax, loosest to tightest:
//   e / e, e \ e      residuals, non-associative
//   e + e             union
//   e & e, e - e      intersection and difference, left-associative
//   e . e             composition, left-associative
//   !e                complement
//   e^                converse
// Primaries: 0 1 id di, relation names, pi1(e) pi2(e) cpi1(e) cpi2(e), (e).

#include <string_view>
#include <vector>

#include "calrel/expr.hpp"

namespace calrel {

/// Throws ParseError with a 1-based line and column.
Expr parse_expr(std::string_view text);

/// One expression per non-blank line; lines starting with '#' are skipped.
std::vector<Expr> parse_expr_lines(std::string_view text);

}  // namespace calrel
