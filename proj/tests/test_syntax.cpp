#include <doctest.h>

#include <random>

#include "calrel/error.hpp"
#include "calrel/eval.hpp"
#include "calrel/normalize.hpp"
#include "calrel/oracle.hpp"
#include "calrel/parser.hpp"
#include "calrel/paths.hpp"

using namespace calrel;
using namespace calrel::ex;

TEST_CASE("parsing") {
  CHECK(equal(parse_expr("pi2(R) . R . R . R"), comp(comp(comp(proj2(rel("R")), rel("R")), rel("R")), rel("R"))));
  CHECK(equal(parse_expr("pi1((R . R) & R)"), proj1(cap(comp(rel("R"), rel("R")), rel("R")))));
  CHECK(equal(parse_expr("R . ((R . di) & di) . R^"),
              comp(comp(rel("R"), cap(comp(rel("R"), diversity()), diversity())), converse(rel("R")))));
  CHECK(equal(parse_expr("!R^"), complement(converse(rel("R")))));
  CHECK(equal(parse_expr("R & S - T + id"), cup(minus(cap(rel("R"), rel("S")), rel("T")), ident())));
  CHECK(equal(parse_expr("R + S / T . 0"), lres(cup(rel("R"), rel("S")), comp(rel("T"), zero()))));
  CHECK(equal(parse_expr("cpi1(1) \\ cpi2(R)"), rres(coproj1(one()), coproj2(rel("R")))));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_expr("R / S / T"), ParseError);
  CHECK_THROWS_AS(parse_expr("R . "), ParseError);
  CHECK_THROWS_AS(parse_expr("pi1(R"), ParseError);
  CHECK_THROWS_AS(parse_expr("R # S"), ParseError);
  try {
    parse_expr("R .\n  & S");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  auto lines = parse_expr_lines("R\n# note\n\nS . R\n");
  CHECK(lines.size() == 2);
}

TEST_CASE("degree") {
  CHECK(degree(rel("R")) == 0);
  CHECK(degree(parse_expr("((R.R).R).(R.R)")) == 3);
  CHECK(degree(parse_expr("(R / S) . T")) == 2);
  CHECK(degree(parse_expr("pi1(R) & !R^ - cpi2(R)")) == 1);
  CHECK(degree(parse_expr("pi1((R . R) & R)")) == 2);
}

TEST_CASE("fragment membership") {
  CHECK(in_fragment(parse_expr("R & id"), Fragment{}));
  CHECK_FALSE(in_fragment(parse_expr("R - S"), Fragment{Feature::Pi}));
  CHECK(in_fragment(parse_expr("0 / 0"), Fragment{Feature::LRes}));
  CHECK_FALSE(in_fragment(parse_expr("1"), Fragment{Feature::Compl}));
  CHECK(in_fragment(parse_expr("R^ . di"), Fragment{Feature::Conv, Feature::Di}));
}

TEST_CASE("converse normalization") {
  CHECK(render(normalize_converse(parse_expr("(R . S)^"))) == "S^ . R^");
  CHECK(render(normalize_converse(parse_expr("R^"))) == "R^");
  CHECK(render(normalize_converse(parse_expr("((R / S)^)"))) == "S^ \\ R^");
  CHECK(render(normalize_converse(parse_expr("(pi1(R^) + di)^^"))) == "pi1(R^) + di");

  std::mt19937_64 rng(19);
  const std::vector<std::string> vocab{"R", "S"};
  for (int i = 0; i < 1000; ++i) {
    Fragment f(static_cast<std::uint16_t>((rng() % 512) | static_cast<std::uint16_t>(Feature::Conv)));
    Expr e = random_expr(f, vocab, 4, rng);
    Expr n = normalize_converse(e);
    CHECK(equal(normalize_converse(n), n));
    Structure g = random_structure(1 + rng() % 4, vocab, 0.3, rng());
    CHECK(evaluate(n, g) == evaluate(e, g));
    if (f.has(Feature::LRes) == f.has(Feature::RRes)) CHECK(in_fragment(n, f));
  }
}

TEST_CASE("render and parse round trip") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 2000; ++i) {
    Expr e = random_expr(Fragment(0x1FF), {"R", "S2", "x_y"}, 5, rng);
    const std::string text = render(e);
    CHECK(equal(parse_expr(text), e));
    CHECK(rendered_size(e) == text.size());
  }
}

TEST_CASE("canonical forms") {
  CHECK(canonical_key(parse_expr("S & R")) == canonical_key(parse_expr("R & S")));
  CHECK(canonical_key(parse_expr("(R + S) + T")) == canonical_key(parse_expr("T + (S + R)")));
  CHECK(canonical_key(parse_expr("!!R")) == "R");
  CHECK(canonical_key(parse_expr("R + R")) == "R");
  CHECK(canonical_key(parse_expr("R . S")) != canonical_key(parse_expr("S . R")));
}

TEST_CASE("atoms") {
  auto names = [](const std::vector<Expr>& es) {
    std::vector<std::string> out;
    for (auto& e : es) out.push_back(render(e));
    return out;
  };
  CHECK(names(atoms_of(Fragment{}, {"R"})) == std::vector<std::string>{"id", "R"});
  CHECK(names(atoms_of(Fragment{Feature::Conv, Feature::Di}, {"R"})) ==
        std::vector<std::string>{"id", "di", "R", "R^"});
  CHECK(names(atoms_of(Fragment{Feature::Compl}, {"R"})) == std::vector<std::string>{"id", "R"});
}

TEST_CASE("paths expressions") {
  CHECK(render(paths_expr(Fragment{}, {"R"}, 0)) == "id + R");
  CHECK(render(paths_expr(Fragment{Feature::LRes}, {"R"}, 2)) == "0 / 0");
  CHECK(render(paths_expr(Fragment{Feature::Compl}, {"R"}, 5)) == "!0");
  CHECK(render(paths_expr(Fragment{Feature::Compl, Feature::One}, {"R"}, 5)) == "1");

  const auto small = all_structures(3, {"R"});
  for (std::uint16_t bits = 0; bits < 512; ++bits) {
    Fragment f(bits);
    for (std::size_t k = 0; k <= 3; ++k) {
      Expr p = paths_expr(f, {"R"}, k);
      CHECK(degree(p) <= k);
      CHECK(in_fragment(p, f));
      for (const auto& g : small) CHECK(evaluate(p, g) == paths_F(g, f, k));
    }
  }
  const auto four = all_structures(4, {"R"});
  for (Fragment f : {Fragment{}, Fragment{Feature::Conv}, Fragment{Feature::RRes}, Fragment{Feature::Di}}) {
    for (std::size_t k = 0; k <= 3; ++k) {
      Expr p = paths_expr(f, {"R"}, k);
      for (const auto& g : four) CHECK(evaluate(p, g) == paths_F(g, f, k));
    }
  }
}

TEST_CASE("expression pool shares nodes") {
  ExprPool pool;
  Expr a = pool.make(Op::Compose, pool.make(Op::Rel, nullptr, nullptr, "R"), pool.make(Op::Id));
  Expr b = pool.intern(parse_expr("R . id"));
  CHECK(a.get() == b.get());
  Expr big = a;
  for (int i = 0; i < 40; ++i) big = pool.make(Op::Union, big, big);
  CHECK(dag_node_count(big) == 43);
  CHECK(pool.intern(big).get() == big.get());
}
