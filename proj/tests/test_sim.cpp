#include <doctest.h>

#include <random>

#include "calrel/error.hpp"
#include "calrel/eval.hpp"
#include "calrel/oracle.hpp"
#include "calrel/parser.hpp"
#include "calrel/paths.hpp"
#include "calrel/sim.hpp"
#include "support.hpp"

using namespace calrel;
using calrel::testing::fixture;
using calrel::testing::mark;

TEST_CASE("simulation property examples") {
  auto g5 = fixture("g5");
  Fragment di{Feature::Di};
  PairRelation none(5, 5), all = PairRelation::full(5, 5);
  CHECK_FALSE(sim_property_holds(SimProperty::AtomsForth, {0, 1, 2, 2}, 0, all, all, di, g5, g5));
  CHECK(sim_property_holds(SimProperty::AtomsForth, {0, 1, 2, 3}, 0, all, all, di, g5, g5));
  // Coprojection back looks for a witness in Z only.
  Fragment cpi{Feature::Cpi};
  CHECK(sim_property_holds(SimProperty::CoprBack, {0, 0, 4, 4}, 1, all, none, cpi, g5, g5));

  // Two nodes, one edge 1 -> 2, left residual forth at degree 1 where paths_0 = {11, 22, 12}.
  Structure g = parse_structure("nodes 1 2\nedge R 1 2\n");
  Fragment lres{Feature::LRes};
  PairRelation full2 = PairRelation::full(2, 2), empty2(2, 2);
  CHECK(sim_property_holds(SimProperty::LResForth, {0, 0, 0, 0}, 1, full2, full2, lres, g, g));
  CHECK_FALSE(sim_property_holds(SimProperty::LResForth, {0, 0, 0, 0}, 1, empty2, empty2, lres, g, g));
  // Every c1 has (1,c1) in paths_0, so an empty Z leaves no witness.
  CHECK_FALSE(sim_property_holds(SimProperty::LResForth, {0, 0, 0, 0}, 1, empty2, full2, lres, g, g));
  // From node 2 the pair (2,1) is off paths_0, so c1 = 1 needs nothing from Z.
  CHECK(sim_property_holds(SimProperty::LResForth, {1, 1, 0, 0}, 1, empty2, full2, lres, g, g));
}

TEST_CASE("maximal simulations") {
  auto g5 = fixture("g5"), g4 = fixture("g4"), h3 = fixture("h3");
  auto self = max_simulation(Fragment{Feature::Conv, Feature::LRes}, h3, h3, 3);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      CHECK(self.z[3].contains(a, b, a, b));
      CHECK(self.w[3].contains(a, b, a, b));
    }
  }
  auto pi = max_simulation(Fragment{Feature::Pi}, g4, g5, 5);
  for (std::size_t k = 0; k <= 5; ++k) CHECK(pi.z[k].contains(0, 3, 1, 4));
  auto cpi = max_simulation(Fragment{Feature::Cpi}, g4, g5, 4);
  CHECK_FALSE(cpi.z[4].contains(0, 3, 1, 4));
  CHECK_THROWS_AS(max_simulation(Fragment{Feature::Diff}, g4, g5, 1), WrongFragment);
  CHECK_THROWS_AS(is_simulation(pi, Fragment{Feature::Compl}, g4, g5), WrongFragment);
  for (std::size_t len = 1; len <= 6; ++len) {
    SimPair prefix{{pi.z.begin(), pi.z.begin() + len}, {pi.w.begin(), pi.w.begin() + len}};
    CHECK(is_simulation(prefix, Fragment{Feature::Pi}, g4, g5));
  }
}

TEST_CASE("the exponent of the path witnesses") {
  auto g5 = fixture("g5"), g4 = fixture("g4");
  auto m5 = mark(g5, "2", "5"), m4 = mark(g4, "2", "5");
  Expr pi3 = parse_expr("pi2(R) . R . R . R"), pi4 = parse_expr("pi2(R) . R . R . R . R");
  CHECK(holds(pi3, m5));
  CHECK_FALSE(holds(pi3, m4));
  CHECK_FALSE(holds(pi4, m5));
  CHECK_FALSE(holds(pi4, m4));
  Expr c3 = parse_expr("cpi2(R) . R . R . R"), c4 = parse_expr("cpi2(R) . R . R . R . R");
  CHECK(holds(c3, m4));
  CHECK_FALSE(holds(c3, m5));
  CHECK_FALSE(holds(c4, m4));
  CHECK_FALSE(holds(c4, m5));
  // Balanced, the degree-4 witness fits within degree 3.
  CHECK(degree(parse_expr("cpi2(R) . ((R . R) . R)")) == 3);
}

TEST_CASE("similarity examples") {
  auto h3 = fixture("h3"), h4 = fixture("h4"), g5 = fixture("g5"), g4 = fixture("g4");
  Fragment conv{Feature::Conv}, pi{Feature::Pi}, convdi{Feature::Conv, Feature::Di};
  for (std::size_t k = 0; k <= 4; ++k) CHECK(similar(conv, k, mark(h4, "1", "1"), mark(h3, "1", "1")));
  CHECK(similar_unbounded(conv, mark(h4, "1", "1"), mark(h3, "1", "1")));
  CHECK_FALSE(similar(pi, 2, mark(h3, "1", "1"), mark(h4, "1", "1")));
  CHECK_FALSE(similar_unbounded(pi, mark(h3, "1", "1"), mark(h4, "1", "1")));
  CHECK_FALSE(similar_unbounded(convdi, mark(h4, "1", "1"), mark(h3, "1", "1")));
  CHECK_FALSE(indistinguishable(pi, std::nullopt, mark(g5, "2", "5"), mark(g4, "2", "5")));
  CHECK(indistinguishable(Fragment{Feature::Diff}, std::nullopt, mark(g5, "2", "5"), mark(g4, "2", "5")));
  CHECK(indistinguishable(pi, 3, mark(h3, "2", "3"), mark(h3, "2", "3")));
}

TEST_CASE("simulation symmetry and W redundancy") {
  std::mt19937_64 rng(53);
  for (Fragment f : {Fragment{}, Fragment{Feature::Pi}, Fragment{Feature::Cpi}, Fragment{Feature::Conv, Feature::Di},
                     Fragment{Feature::LRes, Feature::RRes}, Fragment{Feature::Cpi, Feature::Conv, Feature::LRes}}) {
    for (int t = 0; t < 30; ++t) {
      Structure g1 = random_structure(1 + rng() % 4, {"R"}, 0.3, rng());
      Structure g2 = random_structure(1 + rng() % 4, {"R"}, 0.3, rng());
      auto s = max_simulation(f, g1, g2, 2), back = max_simulation(f, g2, g1, 2);
      SimPair flipped;
      for (std::size_t i = 0; i <= 2; ++i) {
        flipped.z.push_back(s.w[i].flipped());
        flipped.w.push_back(s.z[i].flipped());
        CHECK(s.w[i].flipped() == back.z[i]);
      }
      CHECK(is_simulation(flipped, f, g2, g1));
      if (!f.has(Feature::Cpi) && !f.has(Feature::LRes) && !f.has(Feature::RRes)) {
        SimOptions lazy;
        lazy.refine_w = false;
        CHECK(max_simulation(f, g1, g2, 2, lazy).z[2] == s.z[2]);
      }
      PathTable p1(g1, f, 2), p2(g2, f, 2);
      for (auto [a1, b1] : BitMatrix::full(g1.size()).pairs()) {
        for (auto [a2, b2] : BitMatrix::full(g2.size()).pairs()) {
          for (std::size_t i = 0; i <= 2; ++i) {
            if (s.z[i].get(a1, b1, a2, b2) && p1.at(i).test(a1, b1)) CHECK(p2.at(i).test(a2, b2));
            if (s.w[i].get(a1, b1, a2, b2) && p2.at(i).test(a2, b2)) CHECK(p1.at(i).test(a1, b1));
          }
        }
      }
    }
  }
}

TEST_CASE("similar pairs are not separated by small expressions") {
  std::mt19937_64 rng(59);
  for (Fragment f : {Fragment{Feature::Pi}, Fragment{Feature::Cpi}, Fragment{Feature::Conv},
                     Fragment{Feature::LRes}, Fragment{Feature::Di, Feature::RRes}}) {
    for (int t = 0; t < 25; ++t) {
      Structure g1 = random_structure(4, {"R"}, 0.3, rng()), g2 = random_structure(4, {"R"}, 0.3, rng());
      ValueEnumerator en(EnumBudget{7, 2, f, {"R"}}, {&g1, &g2});
      en.run();
      auto s = max_simulation(f, g1, g2, 2);
      for (std::size_t k = 0; k <= 2; ++k) {
        for (auto [a1, b1] : BitMatrix::full(4).pairs()) {
          for (auto [a2, b2] : BitMatrix::full(4).pairs()) {
            if (!s.z[k].get(a1, b1, a2, b2)) continue;
            for (std::size_t i = 0; i < en.entry_count(); ++i) {
              if (en.degree_of(i) <= k && en.holds(i, 0, a1, b1)) CHECK(en.holds(i, 1, a2, b2));
            }
          }
        }
      }
    }
  }
}
