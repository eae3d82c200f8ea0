#include "calrel/charexpr.hpp"

#include <stdexcept>
#include <unordered_set>

#include "calrel/error.hpp"
#include "calrel/eval.hpp"
#include "calrel/paths.hpp"
#include "calrel/sim.hpp"

namespace calrel {

namespace detail {

// Shared state of both builders: interned constants, path expressions for
// G1 and the expression-level helpers with the construction-time
// simplifications.
class CharContext {
 public:
  CharContext(Fragment f, const Structure& g1, CharOptions opts, bool projection)
      : f(f), g1(g1), opts(std::move(opts)), projection(projection), paths1(g1, f, 0) {
    if (this->opts.vocab.empty()) this->opts.vocab = g1.vocabulary();
    for (auto& a : atoms_of(f, this->opts.vocab)) atoms.push_back(pool.intern(a));
    zero = pool.make(Op::Zero);
    id = pool.make(Op::Id);
  }

  Fragment f;
  const Structure& g1;
  CharOptions opts;
  bool projection;
  ExprPool pool;
  PathTable paths1;
  std::vector<Expr> atoms;
  std::vector<Expr> path_exprs;
  Expr zero;
  Expr id;

  std::size_t n() const { return g1.size(); }

  const PairSet& p1(std::size_t j) {
    paths1.extend(j);
    return paths1.at(j);
  }

  Expr path(std::size_t j) {
    while (path_exprs.size() <= j) path_exprs.push_back(pool.intern(paths_expr(f, opts.vocab, path_exprs.size())));
    return path_exprs[j];
  }

  Expr one() { return pool.intern(paths_expr(f, opts.vocab, 0)); }

  // Atoms of atoms_of order holding at (a,b) in G1, and the others.
  std::pair<std::vector<Expr>, std::vector<Expr>> split_atoms(std::size_t a, std::size_t b) {
    auto in = atomic_type(f, MarkedStructure{&g1, a, b}, opts.vocab);
    std::unordered_set<std::string> names;
    for (auto& e : in) names.insert(render(e));
    std::vector<Expr> pos, neg;
    for (auto& atom : atoms) (names.count(render(atom)) ? pos : neg).push_back(atom);
    return {pos, neg};
  }

  std::size_t subset_count() const {
    if (n() > opts.max_subset_bits) {
      throw SizeLimit("subset enumeration over " + std::to_string(n()) + " nodes exceeds the cap of " +
                      std::to_string(opts.max_subset_bits) + " bits");
    }
    return std::size_t{1} << n();
  }

  Expr cup(const Expr& a, const Expr& b) {
    if (a == zero) return b;
    if (b == zero || a == b) return a;
    return pool.make(Op::Union, a, b);
  }

  Expr cap(const Expr& a, const Expr& b) {
    if (a == zero || b == zero) return zero;
    if (a == b) return a;
    return pool.make(Op::Intersect, a, b);
  }

  static void dedupe(std::vector<Expr>& xs) {
    std::unordered_set<const Node*> seen;
    std::vector<Expr> out;
    for (auto& x : xs) {
      if (seen.insert(x.get()).second) out.push_back(x);
    }
    xs = std::move(out);
  }

  Expr cup_all(std::vector<Expr> xs) {
    dedupe(xs);
    Expr acc = zero;
    for (auto& x : xs) acc = cup(acc, x);
    return acc;
  }

  // Null for an empty list: the intersection vanishes.
  Expr cap_all(std::vector<Expr> xs) {
    dedupe(xs);
    Expr acc;
    for (auto& x : xs) acc = acc ? cap(acc, x) : x;
    return acc;
  }

  Expr cap_or(std::vector<Expr> xs, const Expr& fallback) {
    Expr e = cap_all(std::move(xs));
    return e ? e : fallback;
  }

  Expr minus(const Expr& a, const Expr& b) {
    if (b == zero || a == zero) return a;
    if (f.has(Feature::Diff)) return pool.make(Op::Diff, a, b);
    return cap(a, pool.make(Op::Complement, b));
  }

  Expr comp(const Expr& a, const Expr& b) {
    if (a == zero || b == zero) return zero;
    return pool.make(Op::Compose, a, b);
  }

  Expr lres(const Expr& a, const Expr& b) { return pool.make(Op::LRes, a, b); }
  Expr rres(const Expr& a, const Expr& b) { return pool.make(Op::RRes, a, b); }

  // pi_side(e), natively or through an equivalent expression of C(F).
  Expr proj(int side, const Expr& e) {
    if (e == zero) return zero;
    if (f.has(Feature::Pi)) return pool.make(side == 1 ? Op::Pi1 : Op::Pi2, e);
    if (f.one_presence() == OnePresence::Degree0) {
      const Expr o = one();
      return cap(side == 1 ? comp(e, o) : comp(o, e), id);
    }
    if (f.has(Feature::Conv)) {
      const Expr c = pool.make(Op::Converse, e);
      return cap(side == 1 ? comp(e, c) : comp(c, e), id);
    }
    if (f.has(Feature::Cpi) && f.has_negation()) return minus(id, cpi(side, e));
    throw std::logic_error("projection is not expressible in fragment {" + f.to_string() + "}");
  }

  Expr cpi(int side, const Expr& e) { return pool.make(side == 1 ? Op::Cpi1 : Op::Cpi2, e); }
};

}  // namespace detail

BisimCharBuilder::BisimCharBuilder(Fragment f, const Structure& g1, CharOptions opts) {
  if (!f.has_negation()) throw WrongFragment("bisimulation characteristic expressions need compl or diff");
  ctx_ = std::make_unique<detail::CharContext>(f, g1, std::move(opts), bisim_projection_enabled(f));
}

BisimCharBuilder::~BisimCharBuilder() = default;

Expr BisimCharBuilder::operator()(std::size_t a, std::size_t b, std::size_t j) {
  const auto key = std::make_tuple(a, b, j);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Expr e = build(a, b, j);
  memo_.emplace(key, e);
  return e;
}

Expr BisimCharBuilder::build(std::size_t a, std::size_t b, std::size_t j) {
  auto& c = *ctx_;
  const std::size_t n = c.n();
  if (a >= n || b >= n) throw std::out_of_range("mark outside the structure");
  if (j == 0) {
    auto [pos, neg] = c.split_atoms(a, b);
    return c.minus(c.cap_or(pos, c.path(0)), c.cup_all(neg));
  }
  if (!c.p1(j).test(a, b)) return c.zero;

  const PairSet& p = c.p1(j - 1);
  const Expr pe = c.path(j - 1);
  auto z = [&](std::size_t x, std::size_t y) { return (*this)(x, y, j - 1); };
  std::vector<Expr> pos, neg;

  if (p.test(a, b)) {
    pos.push_back(z(a, b));
  } else {
    pos.push_back(c.path(j));
    neg.push_back(pe);
  }

  for (std::size_t m = 0; m < n; ++m) {
    if (p.test(a, m) && p.test(m, b)) pos.push_back(c.comp(z(a, m), z(m, b)));
  }

  const std::size_t subsets = c.subset_count();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<Expr> in, out;
    for (std::size_t m = 0; m < n; ++m) {
      if (mask >> m & 1) in.push_back(z(a, m));
      else out.push_back(z(m, b));
    }
    neg.push_back(c.comp(c.minus(pe, c.cup_all(in)), c.minus(pe, c.cup_all(out))));
  }

  if (c.projection) {
    if (a == b) {
      std::vector<Expr> from, to;
      pos.push_back(c.id);
      for (std::size_t m = 0; m < n; ++m) {
        if (p.test(a, m)) pos.push_back(c.proj(1, z(a, m)));
        if (p.test(m, a)) pos.push_back(c.proj(2, z(m, a)));
        from.push_back(z(a, m));
        to.push_back(z(m, a));
      }
      neg.push_back(c.cap(c.id, c.cup(c.proj(1, c.minus(pe, c.cup_all(from))), c.proj(2, c.minus(pe, c.cup_all(to))))));
    } else {
      neg.push_back(c.id);
    }
  }

  if (c.f.has(Feature::LRes)) {
    for (std::size_t m = 0; m < n; ++m) {
      if (p.test(b, m)) neg.push_back(c.lres(c.minus(pe, z(a, m)), z(b, m)));
    }
    std::vector<Expr> off;
    for (std::size_t m = 0; m < n; ++m) {
      if (!p.test(a, m)) off.push_back(z(b, m));
    }
    const Expr base = c.minus(pe, c.cup_all(off));
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<Expr> in, out;
      for (std::size_t m = 0; m < n; ++m) {
        if (mask >> m & 1) in.push_back(z(b, m));
        else out.push_back(z(a, m));
      }
      pos.push_back(c.lres(c.cup_all(out), c.minus(base, c.cup_all(in))));
    }
  }

  if (c.f.has(Feature::RRes)) {
    for (std::size_t m = 0; m < n; ++m) {
      if (p.test(m, a)) neg.push_back(c.rres(z(m, a), c.minus(pe, z(m, b))));
    }
    std::vector<Expr> off;
    for (std::size_t m = 0; m < n; ++m) {
      if (!p.test(m, b)) off.push_back(z(m, a));
    }
    const Expr base = c.minus(pe, c.cup_all(off));
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<Expr> in, out;
      for (std::size_t m = 0; m < n; ++m) {
        if (mask >> m & 1) in.push_back(z(m, a));
        else out.push_back(z(m, b));
      }
      pos.push_back(c.rres(c.minus(base, c.cup_all(in)), c.cup_all(out)));
    }
  }

  return c.minus(c.cap_all(pos), c.cup_all(neg));
}

SimCharBuilder::SimCharBuilder(Fragment f, const Structure& g1, CharOptions opts) {
  if (f.has_negation()) throw WrongFragment("simulation characteristic expressions need a fragment without compl and diff");
  ctx_ = std::make_unique<detail::CharContext>(f, g1, std::move(opts), sim_projection_enabled(f));
}

SimCharBuilder::~SimCharBuilder() = default;

const SimChar& SimCharBuilder::operator()(std::size_t a, std::size_t b, std::size_t j) {
  const auto key = std::make_tuple(a, b, j);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  SimChar s = build(a, b, j);
  return memo_.emplace(key, std::move(s)).first->second;
}

SimChar SimCharBuilder::build(std::size_t a, std::size_t b, std::size_t j) {
  auto& c = *ctx_;
  const std::size_t n = c.n();
  if (a >= n || b >= n) throw std::out_of_range("mark outside the structure");
  if (j == 0) {
    auto [pos, neg] = c.split_atoms(a, b);
    const Expr p0 = c.path(0);
    pos.insert(pos.begin(), p0);
    const Expr fail = c.cup_all(neg);
    return {c.cap_all(pos), c.cap(p0, fail)};
  }
  const Expr pj = c.path(j);
  if (!c.p1(j).test(a, b)) return {pj, pj};

  const PairSet& p = c.p1(j - 1);
  const Expr pe = c.path(j - 1);
  auto z = [&](std::size_t x, std::size_t y) { return (*this)(x, y, j - 1).e; };
  auto w = [&](std::size_t x, std::size_t y) { return (*this)(x, y, j - 1).e_prime; };
  const SimChar prev = (*this)(a, b, j - 1);
  const bool cpi = c.f.has(Feature::Cpi);

  std::vector<Expr> pos, fail;
  pos.push_back(p.test(a, b) ? prev.e : pj);

  for (std::size_t m = 0; m < n; ++m) {
    if (p.test(a, m) && p.test(m, b)) pos.push_back(c.comp(z(a, m), z(m, b)));
  }
  const std::size_t subsets = c.subset_count();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<Expr> in, out;
    for (std::size_t m = 0; m < n; ++m) {
      if (mask >> m & 1) in.push_back(w(a, m));
      else out.push_back(w(m, b));
    }
    fail.push_back(c.comp(c.cap_or(in, pe), c.cap_or(out, pe)));
  }

  if (c.projection || cpi) {
    std::vector<Expr> from, to;
    for (std::size_t m = 0; m < n; ++m) {
      from.push_back(w(a, m));
      to.push_back(w(m, a));
    }
    if (c.projection) {
      if (a == b) {
        pos.push_back(c.id);
        for (std::size_t m = 0; m < n; ++m) {
          if (p.test(a, m)) pos.push_back(c.proj(1, z(a, m)));
          if (p.test(m, a)) pos.push_back(c.proj(2, z(m, a)));
        }
        fail.push_back(c.cap(c.id, c.cup(c.proj(1, c.cap_or(from, pe)), c.proj(2, c.cap_or(to, pe)))));
      } else {
        fail.push_back(c.id);
      }
    }
    if (cpi) {
      if (a == b) {
        std::vector<Expr> f1{pe}, f2{pe};
        f1.insert(f1.end(), from.begin(), from.end());
        f2.insert(f2.end(), to.begin(), to.end());
        pos.push_back(c.cpi(1, c.cap_all(f1)));
        pos.push_back(c.cpi(2, c.cap_all(f2)));
        std::vector<Expr> bad;
        for (std::size_t m = 0; m < n; ++m) {
          if (p.test(a, m)) bad.push_back(c.cpi(1, z(a, m)));
          if (p.test(m, a)) bad.push_back(c.cpi(2, z(m, a)));
        }
        fail.push_back(c.cup_all(bad));
      } else {
        fail.push_back(c.id);
      }
    }
  }

  if (c.f.has(Feature::LRes)) {
    std::vector<Expr> off{pe};
    for (std::size_t m = 0; m < n; ++m) {
      if (!p.test(a, m)) off.push_back(w(b, m));
    }
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<Expr> in = off, out;
      for (std::size_t m = 0; m < n; ++m) {
        if (mask >> m & 1) in.push_back(w(b, m));
        else out.push_back(z(a, m));
      }
      pos.push_back(c.lres(c.cup_all(out), c.cap_all(in)));
    }
    for (std::size_t m = 0; m < n; ++m) {
      if (p.test(b, m)) fail.push_back(c.lres(w(a, m), z(b, m)));
    }
  }

  if (c.f.has(Feature::RRes)) {
    std::vector<Expr> off{pe};
    for (std::size_t m = 0; m < n; ++m) {
      if (!p.test(m, b)) off.push_back(w(m, a));
    }
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<Expr> in = off, out;
      for (std::size_t m = 0; m < n; ++m) {
        if (mask >> m & 1) in.push_back(w(m, a));
        else out.push_back(z(m, b));
      }
      pos.push_back(c.rres(c.cap_all(in), c.cup_all(out)));
    }
    for (std::size_t m = 0; m < n; ++m) {
      if (p.test(m, a)) fail.push_back(c.rres(z(m, a), w(m, b)));
    }
  }

  return {c.cap_all(pos), c.cup(prev.e_prime, c.cap(pj, c.cup_all(fail)))};
}

Expr char_expr_bisim(Fragment f, std::size_t k, const MarkedStructure& m1, const CharOptions& opts) {
  BisimCharBuilder b(f, *m1.structure, opts);
  return b(m1.a, m1.b, k);
}

SimChar char_expr_sim(Fragment f, std::size_t k, const MarkedStructure& m1, const CharOptions& opts) {
  SimCharBuilder b(f, *m1.structure, opts);
  return b(m1.a, m1.b, k);
}

namespace {

struct Levels {
  std::vector<PairRelation> z;
  std::vector<PairRelation> w;
};

Levels levels(Fragment f, const Structure& g1, const Structure& g2, std::size_t k) {
  if (f.has_negation()) return {max_bisimulation(f, g1, g2, k), {}};
  SimPair s = max_simulation(f, g1, g2, k);
  return {std::move(s.z), std::move(s.w)};
}

// Smallest degree j <= bound at which the mark of g1 lies in paths_j and the
// tuple has left the forth relation. For degree-free requests the bound
// doubles until the refinement and both path tables are stable.
std::optional<std::size_t> separating_degree(Fragment f, DegreeBound k, const Structure& g1, std::size_t a1,
                                             std::size_t b1, const Structure& g2, std::size_t a2, std::size_t b2) {
  std::size_t bound = k ? *k : 1;
  for (;;) {
    const Levels lv = levels(f, g1, g2, bound);
    PathTable t1(g1, f, bound), t2(g2, f, bound);
    for (std::size_t j = 0; j <= bound; ++j) {
      if (t1.at(j).test(a1, b1) && !lv.z[j].get(a1, b1, a2, b2)) return j;
    }
    if (k) return std::nullopt;
    const bool stable = lv.z[bound] == lv.z[bound - 1] && (lv.w.empty() || lv.w[bound] == lv.w[bound - 1]) &&
                        t1.at(bound) == t1.at(bound - 1) && t2.at(bound) == t2.at(bound - 1);
    if (stable) return std::nullopt;
    bound *= 2;
  }
}

std::optional<Expr> one_sided(Fragment f, DegreeBound k, const Structure& g1, std::size_t a1, std::size_t b1,
                              const Structure& g2, std::size_t a2, std::size_t b2, const CharOptions& opts) {
  const auto j = separating_degree(f, k, g1, a1, b1, g2, a2, b2);
  if (!j) return std::nullopt;
  if (f.has_negation()) {
    BisimCharBuilder b(f, g1, opts);
    return b(a1, b1, *j);
  }
  SimCharBuilder b(f, g1, opts);
  return b(a1, b1, *j).e;
}

}  // namespace

std::optional<Witness> distinguishing_witness(Fragment f, DegreeBound k, const MarkedStructure& m1,
                                              const MarkedStructure& m2, Direction dir, const CharOptions& opts) {
  CharOptions o = opts;
  if (o.vocab.empty()) o.vocab = merge_vocabulary(*m1.structure, *m2.structure);
  const Structure g1 = m1.structure->with_vocabulary(o.vocab);
  const Structure g2 = m2.structure->with_vocabulary(o.vocab);

  std::optional<Witness> out;
  if (auto e = one_sided(f, k, g1, m1.a, m1.b, g2, m2.a, m2.b, o)) {
    out = Witness{*e, true};
  } else if (dir == Direction::TwoSided) {
    if (auto r = one_sided(f, k, g2, m2.a, m2.b, g1, m1.a, m1.b, o)) out = Witness{*r, false};
  }
  if (!out) return out;

  const Expr& e = out->expr;
  const bool on1 = evaluate(e, g1).test(m1.a, m1.b);
  const bool on2 = evaluate(e, g2).test(m2.a, m2.b);
  const bool ok = (out->holds_on_first ? on1 && !on2 : on2 && !on1) && in_fragment(e, f) && (!k || degree(e) <= *k);
  if (!ok) throw std::logic_error("characteristic expression failed to verify as a witness");
  return out;
}

}  // namespace calrel
