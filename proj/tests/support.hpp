#pragma once

#include <string>
#include <utility>
#include <vector>

#include "calrel/expr.hpp"
#include "calrel/parser.hpp"
#include "calrel/structure.hpp"

#ifndef CALREL_DATA_DIR
#define CALREL_DATA_DIR "data"
#endif

namespace calrel::testing {

inline Structure fixture(const std::string& name) { return load_structure(std::string(CALREL_DATA_DIR) + "/" + name + ".rel"); }

inline MarkedStructure mark(const Structure& g, const std::string& a, const std::string& b) {
  return MarkedStructure{&g, g.require_index(a), g.require_index(b)};
}

// Equivalences between the derived operators and the base ones, as pairs of
// templates over the placeholders A and B.
inline const std::vector<std::pair<std::string, std::string>>& derived_identities() {
  static const std::vector<std::pair<std::string, std::string>> ids = {
      {"1", "!0"},
      {"1", "id + di"},
      {"1", "0 / 0"},
      {"1", "0 \\ 0"},
      {"di", "!id"},
      {"A - B", "A & !B"},
      {"!A", "1 - A"},
      {"pi1(A)", "(A . A^) & id"},
      {"pi1(A)", "(A . 1) & id"},
      {"pi1(A)", "cpi1(cpi1(A))"},
      {"pi2(A)", "(A^ . A) & id"},
      {"pi2(A)", "(1 . A) & id"},
      {"pi2(A)", "cpi2(cpi2(A))"},
      {"cpi1(A)", "id - pi1(A)"},
      {"cpi2(A)", "id - pi2(A)"},
      {"cpi1(A)", "(0 / A) & id"},
      {"A / B", "!(!A . B^)"},
      {"A \\ B", "!(A^ . !B)"},
      {"(A . B)^", "B^ . A^"},
  };
  return ids;
}

inline std::string substitute(std::string t, const std::string& a, const std::string& b) {
  std::string out;
  for (char c : t) {
    if (c == 'A') out += "(" + a + ")";
    else if (c == 'B') out += "(" + b + ")";
    else out += c;
  }
  return out;
}

// Operands the identities are instantiated with.
inline const std::vector<std::string>& identity_operands() {
  static const std::vector<std::string> ops = {"R", "R^", "R . R", "(R . R) & !R", "0", "id + R"};
  return ops;
}

}  // namespace calrel::testing
