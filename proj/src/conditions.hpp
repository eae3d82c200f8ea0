#pragma once

// The quantified Forth/Back conditions on a tuple (a1,b1,a2,b2).
// p1 and p2 are the path sets of the previous degree in G1 and G2.
// Bisimulation passes the same relation for every relation argument.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "calrel/bitmatrix.hpp"
#include "calrel/fragment.hpp"
#include "calrel/pair_relation.hpp"
#include "calrel/structure.hpp"

namespace calrel::detail {

// Atomic types of every pair of one structure as bit rows over atoms_of order.
class AtomTable {
 public:
  AtomTable(const Structure& g, Fragment f, const std::vector<std::string>& vocab) : n_(g.size()) {
    const bool di = f.has(Feature::Di);
    const bool conv = f.has(Feature::Conv);
    const std::size_t atoms = 1 + (di ? 1 : 0) + vocab.size() * (conv ? 2 : 1);
    w_ = (atoms + 63) / 64;
    bits_.assign(n_ * n_ * w_, 0);
    std::vector<const BitMatrix*> rels;
    for (const auto& name : vocab) rels.push_back(g.relation(name));
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        std::size_t k = 0;
        auto put = [&](bool v) {
          if (v) bits_[(a * n_ + b) * w_ + (k >> 6)] |= std::uint64_t{1} << (k & 63);
          ++k;
        };
        put(a == b);
        if (di) put(a != b);
        for (auto* r : rels) put(r && r->test(a, b));
        if (conv) {
          for (auto* r : rels) put(r && r->test(b, a));
        }
      }
    }
  }

  const std::uint64_t* row(std::size_t a, std::size_t b) const { return bits_.data() + (a * n_ + b) * w_; }
  std::size_t words() const { return w_; }

 private:
  std::size_t n_;
  std::size_t w_ = 1;
  std::vector<std::uint64_t> bits_;
};

// atype(G1,a1,b1) is a subset of atype(G2,a2,b2).
inline bool atoms_subset(const AtomTable& t1, std::size_t a1, std::size_t b1, const AtomTable& t2, std::size_t a2,
                         std::size_t b2) {
  const std::uint64_t* x = t1.row(a1, b1);
  const std::uint64_t* y = t2.row(a2, b2);
  for (std::size_t i = 0; i < t1.words(); ++i) {
    if (x[i] & ~y[i]) return false;
  }
  return true;
}

struct Tuple {
  std::size_t a1, b1, a2, b2;
};

struct Frame {
  const BitMatrix& p1;
  const BitMatrix& p2;
  std::size_t n1;
  std::size_t n2;
};

inline bool comp_forth(const Frame& f, const Tuple& t, const PairRelation& z) {
  for (std::size_t c1 = 0; c1 < f.n1; ++c1) {
    if (!f.p1.test(t.a1, c1) || !f.p1.test(c1, t.b1)) continue;
    bool found = false;
    for (std::size_t c2 = 0; c2 < f.n2 && !found; ++c2) {
      found = z.get(t.a1, c1, t.a2, c2) && z.get(c1, t.b1, c2, t.b2);
    }
    if (!found) return false;
  }
  return true;
}

inline bool comp_back(const Frame& f, const Tuple& t, const PairRelation& z) {
  for (std::size_t c2 = 0; c2 < f.n2; ++c2) {
    if (!f.p2.test(t.a2, c2) || !f.p2.test(c2, t.b2)) continue;
    bool found = false;
    for (std::size_t c1 = 0; c1 < f.n1 && !found; ++c1) {
      found = z.get(t.a1, c1, t.a2, c2) && z.get(c1, t.b1, c2, t.b2);
    }
    if (!found) return false;
  }
  return true;
}

// For every c1 on a G1 path out of (into) a1 some c2 matches in `rel`.
inline bool every_c1_matched(const Frame& f, const Tuple& t, const PairRelation& rel) {
  for (std::size_t c1 = 0; c1 < f.n1; ++c1) {
    if (f.p1.test(t.a1, c1)) {
      bool found = false;
      for (std::size_t c2 = 0; c2 < f.n2 && !found; ++c2) found = rel.get(t.a1, c1, t.a2, c2);
      if (!found) return false;
    }
    if (f.p1.test(c1, t.a1)) {
      bool found = false;
      for (std::size_t c2 = 0; c2 < f.n2 && !found; ++c2) found = rel.get(c1, t.a1, c2, t.a2);
      if (!found) return false;
    }
  }
  return true;
}

inline bool every_c2_matched(const Frame& f, const Tuple& t, const PairRelation& rel) {
  for (std::size_t c2 = 0; c2 < f.n2; ++c2) {
    if (f.p2.test(t.a2, c2)) {
      bool found = false;
      for (std::size_t c1 = 0; c1 < f.n1 && !found; ++c1) found = rel.get(t.a1, c1, t.a2, c2);
      if (!found) return false;
    }
    if (f.p2.test(c2, t.a2)) {
      bool found = false;
      for (std::size_t c1 = 0; c1 < f.n1 && !found; ++c1) found = rel.get(c1, t.a1, c2, t.a2);
      if (!found) return false;
    }
  }
  return true;
}

inline bool proj_forth(const Frame& f, const Tuple& t, const PairRelation& z) {
  if (t.a1 != t.b1) return true;
  return t.a2 == t.b2 && every_c1_matched(f, t, z);
}

inline bool proj_back(const Frame& f, const Tuple& t, const PairRelation& z) {
  if (t.a2 != t.b2) return true;
  return t.a1 == t.b1 && every_c2_matched(f, t, z);
}

// Simulation only: witnesses for c2 are taken from W.
inline bool copr_forth(const Frame& f, const Tuple& t, const PairRelation& w) {
  if (t.a1 != t.b1) return true;
  return t.a2 == t.b2 && every_c2_matched(f, t, w);
}

inline bool copr_back(const Frame& f, const Tuple& t, const PairRelation& z) {
  if (t.a2 != t.b2) return true;
  return t.a1 == t.b1 && every_c1_matched(f, t, z);
}

// x: relation holding the (b1,c1,b2,c2) witness; y: relation for (a1,c1,a2,c2).
inline bool lres_forth(const Frame& f, const Tuple& t, const PairRelation& x, const PairRelation& y) {
  for (std::size_t c2 = 0; c2 < f.n2; ++c2) {
    if (!f.p2.test(t.b2, c2)) continue;
    bool found = false;
    for (std::size_t c1 = 0; c1 < f.n1 && !found; ++c1) {
      found = x.get(t.b1, c1, t.b2, c2) && (!f.p1.test(t.a1, c1) || y.get(t.a1, c1, t.a2, c2));
    }
    if (!found) return false;
  }
  return true;
}

inline bool lres_back(const Frame& f, const Tuple& t, const PairRelation& x, const PairRelation& y) {
  for (std::size_t c1 = 0; c1 < f.n1; ++c1) {
    if (!f.p1.test(t.b1, c1)) continue;
    bool found = false;
    for (std::size_t c2 = 0; c2 < f.n2 && !found; ++c2) {
      found = x.get(t.b1, c1, t.b2, c2) && (!f.p2.test(t.a2, c2) || y.get(t.a1, c1, t.a2, c2));
    }
    if (!found) return false;
  }
  return true;
}

// x: relation for (c1,a1,c2,a2); y: relation for (c1,b1,c2,b2).
inline bool rres_forth(const Frame& f, const Tuple& t, const PairRelation& x, const PairRelation& y) {
  for (std::size_t c2 = 0; c2 < f.n2; ++c2) {
    if (!f.p2.test(c2, t.a2)) continue;
    bool found = false;
    for (std::size_t c1 = 0; c1 < f.n1 && !found; ++c1) {
      found = x.get(c1, t.a1, c2, t.a2) && (!f.p1.test(c1, t.b1) || y.get(c1, t.b1, c2, t.b2));
    }
    if (!found) return false;
  }
  return true;
}

inline bool rres_back(const Frame& f, const Tuple& t, const PairRelation& x, const PairRelation& y) {
  for (std::size_t c1 = 0; c1 < f.n1; ++c1) {
    if (!f.p1.test(c1, t.a1)) continue;
    bool found = false;
    for (std::size_t c2 = 0; c2 < f.n2 && !found; ++c2) {
      found = x.get(c1, t.a1, c2, t.a2) && (!f.p2.test(c2, t.b2) || y.get(c1, t.b1, c2, t.b2));
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace calrel::detail
