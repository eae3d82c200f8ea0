#include "calrel/eval.hpp"

#include "calrel/error.hpp"

namespace calrel {

const PairSet& Evaluator::operator()(const Expr& root) {
  if (auto it = memo_.find(root.get()); it != memo_.end()) return it->second;

  // Iterative post-order so deep left-folded chains do not exhaust the stack.
  std::vector<std::pair<const Expr*, bool>> stack{{&root, false}};
  while (!stack.empty()) {
    auto [ep, expanded] = stack.back();
    const Expr& e = *ep;
    if (memo_.count(e.get())) {
      stack.pop_back();
      continue;
    }
    if (!expanded) {
      stack.back().second = true;
      if (e->rhs && !memo_.count(e->rhs.get())) stack.push_back({&e->rhs, false});
      if (e->lhs && !memo_.count(e->lhs.get())) stack.push_back({&e->lhs, false});
      continue;
    }
    stack.pop_back();
    const std::size_t n = g_->size();
    PairSet r;
    auto L = [&]() -> const PairSet& { return memo_.at(e->lhs.get()); };
    auto R = [&]() -> const PairSet& { return memo_.at(e->rhs.get()); };
    switch (e->op) {
      case Op::Rel: {
        const BitMatrix* m = g_->relation(e->name);
        if (!m) throw UnknownRelation(e->name);
        r = *m;
        break;
      }
      case Op::Zero: r = BitMatrix(n); break;
      case Op::One: r = BitMatrix::full(n); break;
      case Op::Id: r = BitMatrix::identity(n); break;
      case Op::Di: r = BitMatrix::full(n) - BitMatrix::identity(n); break;
      case Op::Converse: r = transpose(L()); break;
      case Op::Complement: r = complement(L()); break;
      case Op::Pi1: r = proj1(L()); break;
      case Op::Pi2: r = proj2(L()); break;
      case Op::Cpi1: r = coproj1(L()); break;
      case Op::Cpi2: r = coproj2(L()); break;
      case Op::Union: r = L() | R(); break;
      case Op::Intersect: r = L() & R(); break;
      case Op::Diff: r = L() - R(); break;
      case Op::Compose: r = compose(L(), R()); break;
      case Op::LRes: r = left_residual(L(), R()); break;
      case Op::RRes: r = right_residual(L(), R()); break;
    }
    memo_.emplace(e.get(), std::move(r));
    keep_alive_.push_back(e);
  }
  return memo_.at(root.get());
}

PairSet evaluate(const Expr& e, const Structure& g) {
  Evaluator ev(g);
  return ev(e);
}

bool holds(const Expr& e, const MarkedStructure& m) { return evaluate(e, *m.structure).test(m.a, m.b); }

std::vector<Expr> atoms_of(Fragment f, const std::vector<std::string>& vocab) {
  std::vector<Expr> out{ex::ident()};
  if (f.has(Feature::Di)) out.push_back(ex::diversity());
  for (const auto& name : vocab) out.push_back(ex::rel(name));
  if (f.has(Feature::Conv)) {
    for (const auto& name : vocab) out.push_back(ex::converse(ex::rel(name)));
  }
  return out;
}

std::vector<Expr> atomic_type(Fragment f, const MarkedStructure& m, const std::vector<std::string>& vocab) {
  const Structure& g = *m.structure;
  std::vector<Expr> out;
  for (auto& atom : atoms_of(f, vocab.empty() ? g.vocabulary() : vocab)) {
    bool in = false;
    switch (atom->op) {
      case Op::Id: in = m.a == m.b; break;
      case Op::Di: in = m.a != m.b; break;
      case Op::Rel: {
        const BitMatrix* r = g.relation(atom->name);
        in = r && r->test(m.a, m.b);
        break;
      }
      case Op::Converse: {
        const BitMatrix* r = g.relation(atom->lhs->name);
        in = r && r->test(m.b, m.a);
        break;
      }
      default: break;
    }
    if (in) out.push_back(atom);
  }
  return out;
}

Expr paths_expr(Fragment f, const std::vector<std::string>& vocab, std::size_t k) {
  const OnePresence p = f.one_presence();
  if (p == OnePresence::Degree0) {
    if (f.has(Feature::One)) return ex::one();
    if (f.has(Feature::Di)) return ex::cup(ex::diversity(), ex::ident());
    return ex::complement(ex::zero());
  }
  if (p == OnePresence::Degree1 && k > 0) {
    return f.has(Feature::LRes) ? ex::lres(ex::zero(), ex::zero()) : ex::rres(ex::zero(), ex::zero());
  }
  auto atoms = atoms_of(f, vocab);
  Expr e = atoms.front();
  for (std::size_t i = 1; i < atoms.size(); ++i) e = ex::cup(e, atoms[i]);
  for (std::size_t i = 0; i < k; ++i) e = ex::cup(e, ex::comp(e, e));
  return e;
}

}  // namespace calrel
