#include <doctest.h>

#include <deque>
#include <random>

#include "calrel/error.hpp"
#include "calrel/fragment.hpp"
#include "calrel/kernels.hpp"
#include "calrel/oracle.hpp"
#include "calrel/pair_relation.hpp"
#include "calrel/paths.hpp"
#include "calrel/structure.hpp"
#include "support.hpp"

using namespace calrel;
using calrel::testing::fixture;

namespace {

std::size_t idx(const Structure& g, const char* n) { return g.require_index(n); }

bool has(const PairSet& s, const Structure& g, const char* a, const char* b) { return s.test(idx(g, a), idx(g, b)); }

// Pairs within distance 2^k by breadth-first search.
PairSet bfs_pairs(const Structure& g, std::size_t k, bool undirected) {
  const std::size_t n = g.size(), limit = std::size_t{1} << k;
  BitMatrix adj = g.adjacency();
  PairSet out(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::deque<std::size_t> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop_front();
      for (std::size_t y = 0; y < n; ++y) {
        const bool step = adj.test(x, y) || (undirected && adj.test(y, x));
        if (step && dist[y] == SIZE_MAX) {
          dist[y] = dist[x] + 1;
          q.push_back(y);
        }
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (dist[t] <= limit) out.set(s, t);
    }
  }
  return out;
}

BitMatrix random_matrix(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  BitMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (coin(rng)) m.set(i, j);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("one presence") {
  CHECK(Fragment{Feature::Compl}.one_presence() == OnePresence::Degree0);
  CHECK(Fragment{Feature::LRes}.one_presence() == OnePresence::Degree1);
  CHECK(Fragment{Feature::Pi, Feature::Conv}.one_presence() == OnePresence::Absent);
  for (std::uint16_t bits = 0; bits < 512; ++bits) {
    Fragment f(bits);
    CHECK(f.with(Feature::Pi).one_presence() == f.one_presence());
    CHECK(f.with(Feature::Cpi).one_presence() == f.one_presence());
  }
}

TEST_CASE("fragment text") {
  CHECK(Fragment::parse("") == Fragment{});
  CHECK(Fragment::parse(" conv , diff") == Fragment{Feature::Conv, Feature::Diff});
  CHECK(Fragment::parse("rres,di").to_string() == "di,rres");
  CHECK_THROWS_AS(Fragment::parse("conv,bogus"), Error);
  for (std::uint16_t bits = 0; bits < 512; ++bits) CHECK(Fragment::parse(Fragment(bits).to_string()).bits() == bits);
}

TEST_CASE("reach pairs on the path graph") {
  auto g5 = fixture("g5");
  PairSet p0 = reach_pairs(g5, 0, false);
  CHECK(p0.count() == 9);
  CHECK(has(p0, g5, "1", "2"));
  CHECK(has(p0, g5, "4", "5"));
  CHECK_FALSE(has(p0, g5, "2", "1"));
  PairSet p1 = reach_pairs(g5, 1, false);
  CHECK(has(p1, g5, "1", "3"));
  CHECK_FALSE(has(p1, g5, "1", "4"));
  CHECK(has(reach_pairs(g5, 2, false), g5, "1", "5"));
}

TEST_CASE("paths for fragments") {
  auto g5 = fixture("g5"), h4 = fixture("h4");
  CHECK(paths_F(g5, Fragment{Feature::Di}, 0) == BitMatrix::full(5));
  CHECK(paths_F(g5, Fragment{Feature::LRes}, 0) == reach_pairs(g5, 0, false));
  CHECK(paths_F(g5, Fragment{Feature::LRes}, 1) == BitMatrix::full(5));
  PairSet u = paths_F(h4, Fragment{Feature::Conv}, 1);
  CHECK_FALSE(has(u, h4, "4", "3"));
  CHECK(has(u, h4, "2", "4"));
  CHECK(paths_unbounded(g5, Fragment{}) == star(g5.adjacency()));
  CHECK(paths_unbounded(g5, Fragment{Feature::LRes}) == BitMatrix::full(5));
}

TEST_CASE("paths agree with breadth-first search") {
  std::vector<Structure> gs = all_structures(4, {"R"});
  for (std::uint64_t s = 0; s < 300; ++s) gs.push_back(random_structure(5, {"R", "S"}, 0.2, s));
  for (const auto& g : gs) {
    for (std::size_t k = 0; k <= 3; ++k) {
      for (bool und : {false, true}) {
        PairSet r = reach_pairs(g, k, und);
        CHECK(r == bfs_pairs(g, k, und));
        if (und) CHECK(r == transpose(r));
      }
      for (Fragment f : {Fragment{}, Fragment{Feature::Conv}, Fragment{Feature::Pi, Feature::Cpi}}) {
        CHECK(paths_F(g, f, k) == bfs_pairs(g, k, f.has(Feature::Conv)));
      }
    }
  }
}

TEST_CASE("paths grow with the degree") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    Structure g = random_structure(1 + t % 7, {"R"}, 0.25, rng());
    Fragment f(static_cast<std::uint16_t>(rng() % 512));
    for (std::size_t k = 0; k < 4; ++k) CHECK(paths_F(g, f, k).subset_of(paths_F(g, f, k + 1)));
    PathTable table(g, f, 1);
    CHECK_THROWS_AS(table.at(3), std::out_of_range);
    table.extend(3);
    CHECK(table.at(3) == paths_F(g, f, 3));
  }
}

TEST_CASE("structure text format") {
  Structure g = parse_structure("# comment\nnodes a b\nnodes c\nedge R a b\nedge S b c\nrelation T\n");
  CHECK(g.size() == 3);
  CHECK(g.vocabulary() == std::vector<std::string>{"R", "S", "T"});
  CHECK(g.relation("R")->test(0, 1));
  CHECK(g.relation("T")->empty());
  CHECK(g.relation("U") == nullptr);
  CHECK(parse_structure(g.to_text()).to_text() == g.to_text());
  CHECK_THROWS_AS(parse_structure("nodes a\nedge R a b\n"), ParseError);
  CHECK_THROWS_AS(parse_structure("nodes a\nvertex a\n"), ParseError);
  CHECK_THROWS_AS(g.require_index("zz"), Error);
  Structure empty = parse_structure("");
  CHECK(empty.size() == 0);
  CHECK(reach_pairs(empty, 2, true).count() == 0);
}

TEST_CASE("vocabulary merging") {
  Structure a = parse_structure("nodes 1\nedge R 1 1\n");
  Structure b = parse_structure("nodes 1 2\nedge S 1 2\n");
  CHECK(merge_vocabulary(a, b) == std::vector<std::string>{"R", "S"});
  auto [ua, ub] = unify_vocabulary(a, b);
  CHECK(ua.vocabulary() == ub.vocabulary());
  CHECK(ub.relation("R")->empty());
}

TEST_CASE("pair relations reject out-of-range queries") {
  PairRelation z(2, 3);
  z.set(1, 0, 2, 2);
  CHECK(z.contains(1, 0, 2, 2));
  CHECK_FALSE(z.contains(0, 0, 0, 0));
  CHECK_THROWS_AS(z.contains(2, 0, 0, 0), std::out_of_range);
  CHECK_THROWS_AS(z.contains(0, 0, 3, 0), std::out_of_range);
  CHECK(z.flipped().contains(2, 2, 1, 0));
  CHECK(z.count() == 1);
}

TEST_CASE("bit matrix operations against their definitions") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {0, 1, 2, 5, 63, 64, 65, 130}) {
    BitMatrix a = random_matrix(n, 0.3, rng), b = random_matrix(n, 0.3, rng);
    BitMatrix c = compose(a, b), l = left_residual(a, b), r = right_residual(a, b), t = transpose(a);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t u = 0; u < n; ++u) {
        bool ex = false, all_l = true, all_r = true;
        for (std::size_t v = 0; v < n; ++v) {
          ex = ex || (a.test(s, v) && b.test(v, u));
          all_l = all_l && (!b.test(u, v) || a.test(s, v));
          all_r = all_r && (!a.test(v, s) || b.test(v, u));
        }
        CHECK(c.test(s, u) == ex);
        CHECK(l.test(s, u) == all_l);
        CHECK(r.test(s, u) == all_r);
        CHECK(t.test(s, u) == a.test(u, s));
      }
    }
    CHECK(complement(complement(a)) == a);
    CHECK((a - b) == (a & complement(b)));
    CHECK(star(a) == square_closure(a | BitMatrix::identity(n), 8));
  }
}

TEST_CASE("scalar and AVX2 kernels agree") {
  const kernels::Table& s = kernels::scalar_table();
  const kernels::Table* v = kernels::avx2_table();
  if (!v || !kernels::avx2_available()) {
    MESSAGE("AVX2 variant not available on this machine");
    return;
  }
  std::mt19937_64 rng(3);
  for (std::size_t n = 0; n <= 37; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<std::uint64_t> a(n), b(n), m(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng() & rng();
        b[i] = rep % 3 ? rng() : a[i] | rng();
        m[i] = rng();
      }
      CHECK(s.any_andnot(a.data(), b.data(), n) == v->any_andnot(a.data(), b.data(), n));
      CHECK(s.any_andnot_masked(a.data(), b.data(), m.data(), n) ==
            v->any_andnot_masked(a.data(), b.data(), m.data(), n));
      CHECK(s.equal(a.data(), b.data(), n) == v->equal(a.data(), b.data(), n));
      CHECK(s.equal(a.data(), a.data(), n) == v->equal(a.data(), a.data(), n));
      CHECK(s.popcount(a.data(), n) == v->popcount(a.data(), n));
      for (auto op : {&kernels::Table::or_into, &kernels::Table::and_into, &kernels::Table::andnot_into}) {
        auto x = a, y = a;
        (s.*op)(x.data(), b.data(), n);
        (v->*op)(y.data(), b.data(), n);
        CHECK(x == y);
      }
    }
  }
  for (std::size_t n = 1; n <= 64; ++n) {
    std::vector<std::uint64_t> lhs(n), rhs(n), o1(n), o2(n);
    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (std::size_t i = 0; i < n; ++i) {
      lhs[i] = rng() & rng() & mask;
      rhs[i] = rng() & rng() & mask;
    }
    s.compose_narrow(lhs.data(), rhs.data(), o1.data(), n);
    v->compose_narrow(lhs.data(), rhs.data(), o2.data(), n);
    CHECK(o1 == o2);
  }
}

TEST_CASE("bit matrix results do not depend on the kernel table") {
  if (!kernels::avx2_available()) return;
  const kernels::Isa original = kernels::active().isa;
  std::mt19937_64 rng(5);
  for (std::size_t n : {3, 40, 64, 100, 200}) {
    BitMatrix a = random_matrix(n, 0.1, rng), b = random_matrix(n, 0.1, rng);
    std::vector<BitMatrix> results[2];
    for (int pass = 0; pass < 2; ++pass) {
      kernels::select(pass == 0 ? kernels::Isa::Scalar : kernels::Isa::Avx2);
      results[pass] = {compose(a, b), left_residual(a, b), right_residual(a, b), star(a), a | b, a - b};
      results[pass].push_back(BitMatrix(results[pass][0].subset_of(results[pass][3]) ? 1 : 2));
    }
    CHECK(results[0] == results[1]);
  }
  kernels::select(original);
}
