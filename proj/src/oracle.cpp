#include "calrel/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "calrel/error.hpp"
#include "calrel/kernels.hpp"
#include "calrel/normalize.hpp"

namespace calrel {

namespace {

constexpr std::uint32_t kNone = 0xFFFFFFFFu;

std::vector<Op> unary_ops(Fragment f) {
  std::vector<Op> ops;
  if (f.has(Feature::Compl)) ops.push_back(Op::Complement);
  if (f.has(Feature::Pi)) ops.insert(ops.end(), {Op::Pi1, Op::Pi2});
  if (f.has(Feature::Cpi)) ops.insert(ops.end(), {Op::Cpi1, Op::Cpi2});
  return ops;
}

std::vector<Op> binary_ops(Fragment f) {
  std::vector<Op> ops{Op::Union, Op::Intersect, Op::Compose};
  if (f.has(Feature::Diff)) ops.push_back(Op::Diff);
  if (f.has(Feature::LRes)) ops.push_back(Op::LRes);
  if (f.has(Feature::RRes)) ops.push_back(Op::RRes);
  return ops;
}

std::vector<Expr> leaves(const EnumBudget& b) {
  std::vector<Expr> out{ex::zero(), ex::ident()};
  if (b.fragment.has(Feature::One)) out.push_back(ex::one());
  if (b.fragment.has(Feature::Di)) out.push_back(ex::diversity());
  for (auto& name : b.vocab) out.push_back(ex::rel(name));
  if (b.fragment.has(Feature::Conv)) {
    for (auto& name : b.vocab) out.push_back(ex::converse(ex::rel(name)));
  }
  return out;
}

bool commutative(Op op) { return op == Op::Union || op == Op::Intersect; }

std::size_t result_degree(Op op, std::size_t a, std::size_t b = 0) {
  switch (op) {
    case Op::Compose:
    case Op::LRes:
    case Op::RRes: return 1 + std::max(a, b);
    case Op::Pi1:
    case Op::Pi2:
    case Op::Cpi1:
    case Op::Cpi2: return 1 + a;
    default: return std::max(a, b);
  }
}

}  // namespace

std::vector<Structure> all_structures(std::size_t max_nodes, const std::vector<std::string>& vocab) {
  std::vector<Structure> out;
  for (std::size_t n = 0; n <= max_nodes; ++n) {
    const std::size_t bits = n * n * vocab.size();
    if (bits > 20) throw SizeLimit("structure family too large to enumerate");
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    // Bit (l*n + i)*n + j is edge i->j of label l.
    auto permuted = [&](std::uint32_t code, const std::vector<std::size_t>& q) {
      std::uint32_t r = 0;
      for (std::size_t l = 0; l < vocab.size(); ++l) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if ((code >> ((l * n + i) * n + j)) & 1) r |= std::uint32_t{1} << ((l * n + q[i]) * n + q[j]);
          }
        }
      }
      return r;
    };
    for (std::uint32_t code = 0; code < (std::uint32_t{1} << bits); ++code) {
      bool canonical = true;
      for (const auto& q : perms) {
        if (permuted(code, q) < code) {
          canonical = false;
          break;
        }
      }
      if (!canonical) continue;
      std::vector<BitMatrix> rels(vocab.size(), BitMatrix(n));
      for (std::size_t l = 0; l < vocab.size(); ++l) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if ((code >> ((l * n + i) * n + j)) & 1) rels[l].set(i, j);
          }
        }
      }
      out.emplace_back(n, vocab, std::move(rels));
    }
  }
  return out;
}

Structure random_structure(std::size_t n, const std::vector<std::string>& vocab, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<BitMatrix> rels(vocab.size(), BitMatrix(n));
  for (auto& r : rels) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (coin(rng)) r.set(i, j);
      }
    }
  }
  return Structure(n, vocab, std::move(rels));
}

Expr random_expr(Fragment f, const std::vector<std::string>& vocab, std::size_t max_depth, std::mt19937_64& rng) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  if (max_depth == 0 || pick(4) == 0) {
    std::vector<Expr> ls = leaves(EnumBudget{0, 0, f.without(Feature::Conv), vocab});
    return ls[pick(ls.size())];
  }
  std::vector<Op> un = unary_ops(f);
  if (f.has(Feature::Conv)) un.push_back(Op::Converse);
  const std::vector<Op> bin = binary_ops(f);
  const std::size_t choice = pick(un.size() + bin.size());
  if (choice < un.size()) return make(un[choice], random_expr(f, vocab, max_depth - 1, rng));
  Expr l = random_expr(f, vocab, max_depth - 1, rng);
  Expr r = random_expr(f, vocab, max_depth - 1, rng);
  return make(bin[choice - un.size()], l, r);
}

std::vector<Expr> enumerate(const EnumBudget& budget) {
  std::set<std::string> seen;
  std::vector<std::vector<Expr>> by_size(budget.max_ast_size + 1);
  auto offer = [&](const Expr& e) {
    if (e->degree > budget.max_degree) return;
    Expr c = canonicalize(e);
    // Converse pushdown may swap a residual out of the fragment.
    if (!in_fragment(c, budget.fragment)) c = e;
    if (c->size > budget.max_ast_size) return;
    if (!seen.insert(canonical_key(c)).second) return;
    by_size[c->size].push_back(c);
  };
  for (std::size_t s = 1; s <= budget.max_ast_size; ++s) {
    if (s == 1) {
      for (auto& e : leaves(budget)) offer(e);
      continue;
    }
    for (Op op : unary_ops(budget.fragment)) {
      const auto operands = by_size[s - 1];
      for (auto& e : operands) offer(make(op, e));
    }
    for (std::size_t ls = 1; ls + 2 <= s; ++ls) {
      const std::size_t rs = s - 1 - ls;
      const auto left = by_size[ls];
      const auto right = by_size[rs];
      for (Op op : binary_ops(budget.fragment)) {
        for (auto& l : left) {
          for (auto& r : right) offer(make(op, l, r));
        }
      }
    }
  }
  std::vector<Expr> out;
  for (auto& level : by_size) {
    std::vector<std::pair<std::string, Expr>> keyed;
    for (auto& e : level) keyed.emplace_back(render(e), e);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, e] : keyed) out.push_back(e);
  }
  return out;
}

ValueEnumerator::ValueEnumerator(const EnumBudget& budget, std::vector<const Structure*> family)
    : budget_(budget), family_(std::move(family)) {
  if (budget_.max_ast_size < 1 || budget_.max_ast_size > 255) throw Error("max_ast_size must be in 1..255");
  for (const Structure* g : family_) {
    const std::size_t n = g->size();
    if (n > 64) throw SizeLimit("value enumeration supports at most 64 nodes per structure");
    const bool packed = n * n <= 64;
    slots_.push_back(Slot{words_, n, packed});
    words_ += packed ? 1 : n;
  }
  full_.assign(words_, 0);
  for (const auto& s : slots_) {
    const std::uint64_t row = s.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s.n) - 1;
    if (s.packed) {
      full_[s.offset] = s.n * s.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (s.n * s.n)) - 1;
    } else {
      for (std::size_t i = 0; i < s.n; ++i) full_[s.offset + i] = row;
    }
  }
  table_.assign(1024, 0);
  begin_.assign(2, 0);
}

namespace {

// Rows of one family member's matrix, unpacked into one word per row.
void load(std::size_t n, bool packed, const std::uint64_t* v, std::uint64_t* rows) {
  if (!packed) {
    std::copy(v, v + n, rows);
    return;
  }
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  for (std::size_t i = 0; i < n; ++i) rows[i] = (v[0] >> (i * n)) & mask;
}

void store(std::size_t n, bool packed, const std::uint64_t* rows, std::uint64_t* v) {
  if (!packed) {
    std::copy(rows, rows + n, v);
    return;
  }
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < n; ++i) w |= rows[i] << (i * n);
  v[0] = w;
}

void transpose_rows(std::size_t n, const std::uint64_t* in, std::uint64_t* out) {
  std::fill(out, out + n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint64_t bits = in[i]; bits; bits &= bits - 1) out[std::countr_zero(bits)] |= std::uint64_t{1} << i;
  }
}

std::uint64_t hash_words(const std::uint64_t* v, std::size_t n) {
  std::uint64_t h = 0x243F6A8885A308D3ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= v[i];
    h *= 0x9E3779B97F4A7C15ull;
    h ^= h >> 29;
  }
  return h;
}

}  // namespace

void ValueEnumerator::unary(Op op, const std::uint64_t* a, std::uint64_t* out) const {
  if (op == Op::Complement) {
    for (std::size_t i = 0; i < words_; ++i) out[i] = full_[i] & ~a[i];
    return;
  }
  std::uint64_t rows[64], res[64];
  for (const auto& s : slots_) {
    load(s.n, s.packed, a + s.offset, rows);
    std::uint64_t col = 0;
    for (std::size_t i = 0; i < s.n; ++i) col |= rows[i];
    for (std::size_t i = 0; i < s.n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      switch (op) {
        case Op::Pi1: res[i] = rows[i] ? bit : 0; break;
        case Op::Pi2: res[i] = col & bit; break;
        case Op::Cpi1: res[i] = rows[i] ? 0 : bit; break;
        case Op::Cpi2: res[i] = (col & bit) ? 0 : bit; break;
        default: throw std::logic_error("not a unary enumeration operator");
      }
    }
    store(s.n, s.packed, res, out + s.offset);
  }
}

void ValueEnumerator::binary(Op op, const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
  switch (op) {
    case Op::Union:
      for (std::size_t i = 0; i < words_; ++i) out[i] = a[i] | b[i];
      return;
    case Op::Intersect:
      for (std::size_t i = 0; i < words_; ++i) out[i] = a[i] & b[i];
      return;
    case Op::Diff:
      for (std::size_t i = 0; i < words_; ++i) out[i] = a[i] & ~b[i];
      return;
    default: break;
  }
  const auto& k = kernels::active();
  std::uint64_t ra[64], rb[64], res[64], ta[64], tb[64];
  for (const auto& s : slots_) {
    load(s.n, s.packed, a + s.offset, ra);
    load(s.n, s.packed, b + s.offset, rb);
    switch (op) {
      case Op::Compose: k.compose_narrow(ra, rb, res, s.n); break;
      case Op::LRes:
        for (std::size_t x = 0; x < s.n; ++x) {
          std::uint64_t row = 0;
          for (std::size_t y = 0; y < s.n; ++y) {
            if ((rb[y] & ~ra[x]) == 0) row |= std::uint64_t{1} << y;
          }
          res[x] = row;
        }
        break;
      case Op::RRes:
        transpose_rows(s.n, ra, ta);
        transpose_rows(s.n, rb, tb);
        for (std::size_t x = 0; x < s.n; ++x) {
          std::uint64_t row = 0;
          for (std::size_t y = 0; y < s.n; ++y) {
            if ((ta[x] & ~tb[y]) == 0) row |= std::uint64_t{1} << y;
          }
          res[x] = row;
        }
        break;
      default: throw std::logic_error("not a binary enumeration operator");
    }
    store(s.n, s.packed, res, out + s.offset);
  }
}

std::size_t ValueEnumerator::find(const std::uint64_t* v, std::uint64_t h) const {
  const std::size_t mask = table_.size() - 1;
  for (std::size_t i = h & mask;; i = (i + 1) & mask) {
    const std::uint32_t id = table_[i];
    if (id == 0) return i;
    if (std::equal(v, v + words_, value(id - 1))) return i;
  }
}

void ValueEnumerator::grow() {
  std::vector<std::uint32_t> old(table_.size() * 2, 0);
  old.swap(table_);
  for (std::uint32_t id : old) {
    if (id == 0) continue;
    const std::uint64_t* v = value(id - 1);
    table_[find(v, hash_words(v, words_))] = id;
  }
}

void ValueEnumerator::add(const Entry& e, const std::uint64_t* v) {
  const std::size_t slot = find(v, hash_words(v, words_));
  const std::uint32_t id = table_[slot];
  if (id != 0 && entries_[id - 1].degree <= e.degree) return;
  if (entries_.size() >= kNone - 1) throw SizeLimit("value enumeration exceeded its entry capacity");
  entries_.push_back(e);
  values_.insert(values_.end(), v, v + words_);
  table_[slot] = static_cast<std::uint32_t>(entries_.size());
  if (id == 0 && entries_.size() * 2 > table_.size()) grow();
}

bool ValueEnumerator::next_size() {
  if (size_ >= budget_.max_ast_size) return false;
  const std::size_t s = ++size_;
  begin_.resize(s + 2, entries_.size());
  begin_[s] = entries_.size();
  std::vector<std::uint64_t> buf(words_);
  const std::size_t maxd = budget_.max_degree;
  const auto u8 = [](std::size_t x) { return static_cast<std::uint8_t>(x); };

  if (s == 1) {
    std::vector<std::uint64_t> rows(64);
    for (const Expr& leaf : leaves(budget_)) {
      std::uint32_t name = kNone;
      const std::string& label = leaf->op == Op::Converse ? leaf->lhs->name : leaf->name;
      if (leaf->op == Op::Rel || leaf->op == Op::Converse) {
        name = static_cast<std::uint32_t>(std::find(budget_.vocab.begin(), budget_.vocab.end(), label) -
                                          budget_.vocab.begin());
      }
      for (std::size_t g = 0; g < family_.size(); ++g) {
        const Slot& sl = slots_[g];
        const BitMatrix* rel = (name != kNone) ? family_[g]->relation(label) : nullptr;
        for (std::size_t i = 0; i < sl.n; ++i) {
          const std::uint64_t bit = std::uint64_t{1} << i;
          const std::uint64_t all = sl.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << sl.n) - 1;
          switch (leaf->op) {
            case Op::Zero: rows[i] = 0; break;
            case Op::One: rows[i] = all; break;
            case Op::Id: rows[i] = bit; break;
            case Op::Di: rows[i] = all & ~bit; break;
            case Op::Rel: rows[i] = rel ? rel->row(i)[0] : 0; break;
            default: rows[i] = 0; break;
          }
        }
        if (leaf->op == Op::Converse && rel) {
          std::vector<std::uint64_t> fwd(sl.n);
          for (std::size_t i = 0; i < sl.n; ++i) fwd[i] = rel->row(i)[0];
          transpose_rows(sl.n, fwd.data(), rows.data());
        }
        store(sl.n, sl.packed, rows.data(), buf.data() + sl.offset);
      }
      add(Entry{leaf->op, 1, 0, kNone, kNone, name}, buf.data());
    }
  } else {
    const std::size_t ub = begin_[s - 1], ue = begin_[s];
    for (Op op : unary_ops(budget_.fragment)) {
      for (std::size_t i = ub; i < ue; ++i) {
        const std::size_t d = result_degree(op, entries_[i].degree);
        if (d > maxd) continue;
        unary(op, value(i), buf.data());
        add(Entry{op, u8(s), u8(d), static_cast<std::uint32_t>(i), kNone, kNone}, buf.data());
      }
    }
    for (Op op : binary_ops(budget_.fragment)) {
      for (std::size_t ls = 1; ls + 2 <= s; ++ls) {
        const std::size_t rs = s - 1 - ls;
        if (commutative(op) && ls > rs) continue;
        const std::size_t lb = begin_[ls], le = begin_[ls + 1];
        const std::size_t rb = begin_[rs], re = begin_[rs + 1];
        for (std::size_t i = lb; i < le; ++i) {
          for (std::size_t j = (commutative(op) && ls == rs) ? i : rb; j < re; ++j) {
            const std::size_t d = result_degree(op, entries_[i].degree, entries_[j].degree);
            if (d > maxd) continue;
            binary(op, value(i), value(j), buf.data());
            add(Entry{op, u8(s), u8(d), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), kNone},
                buf.data());
          }
        }
      }
    }
  }
  begin_[s + 1] = entries_.size();
  return true;
}

void ValueEnumerator::run() {
  while (next_size()) {
  }
}

std::pair<std::size_t, std::size_t> ValueEnumerator::size_range(std::size_t s) const {
  if (s == 0 || s > size_) return {entries_.size(), entries_.size()};
  return {begin_[s], begin_[s + 1]};
}

bool ValueEnumerator::holds(std::size_t i, std::size_t g, std::size_t a, std::size_t b) const {
  const Slot& s = slots_.at(g);
  const std::uint64_t* v = value(i) + s.offset;
  if (s.packed) return (v[0] >> (a * s.n + b)) & 1;
  return (v[a] >> b) & 1;
}

Expr ValueEnumerator::expr(std::size_t i) const {
  const Entry& e = entries_.at(i);
  switch (arity(e.op)) {
    case 0:
      if (e.op == Op::Rel) return ex::rel(budget_.vocab[e.name]);
      return make(e.op);
    case 1:
      if (e.op == Op::Converse) return ex::converse(ex::rel(budget_.vocab[e.name]));
      return make(e.op, expr(e.lhs));
    default: return make(e.op, expr(e.lhs), expr(e.rhs));
  }
}

BruteVerdict decide_bruteforce(const EnumBudget& budget, const MarkedStructure& m1, const MarkedStructure& m2,
                               Direction dir) {
  EnumBudget b = budget;
  if (b.vocab.empty()) b.vocab = merge_vocabulary(*m1.structure, *m2.structure);
  std::vector<const Structure*> family{m1.structure};
  if (m2.structure != m1.structure) family.push_back(m2.structure);
  const std::size_t g2 = family.size() - 1;
  ValueEnumerator en(b, family);
  while (en.next_size()) {
    const auto [lo, hi] = en.size_range(en.current_size());
    std::optional<std::pair<std::string, std::size_t>> best;
    bool best_first = true;
    for (std::size_t i = lo; i < hi; ++i) {
      const bool h1 = en.holds(i, 0, m1.a, m1.b);
      const bool h2 = en.holds(i, g2, m2.a, m2.b);
      const bool hit = dir == Direction::OneSided ? (h1 && !h2) : (h1 != h2);
      if (!hit) continue;
      std::string text = render(en.expr(i));
      if (!best || text < best->first) {
        best.emplace(std::move(text), i);
        best_first = h1;
      }
    }
    if (best) return BruteVerdict{false, en.expr(best->second), best_first};
  }
  return BruteVerdict{};
}

}  // namespace calrel
