#include "calrel/normalize.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace calrel {

namespace {

Expr norm(const Expr& e);

// Normal form of e^.
Expr conv(const Expr& e) {
  switch (e->op) {
    case Op::Rel: return ex::converse(e);
    case Op::Zero:
    case Op::One:
    case Op::Id:
    case Op::Di: return e;
    case Op::Converse: return norm(e->lhs);
    case Op::Complement: return ex::complement(conv(e->lhs));
    case Op::Pi1:
    case Op::Pi2:
    case Op::Cpi1:
    case Op::Cpi2: return norm(e);
    case Op::Union: return ex::cup(conv(e->lhs), conv(e->rhs));
    case Op::Intersect: return ex::cap(conv(e->lhs), conv(e->rhs));
    case Op::Diff: return ex::minus(conv(e->lhs), conv(e->rhs));
    case Op::Compose: return ex::comp(conv(e->rhs), conv(e->lhs));
    case Op::LRes: return ex::rres(conv(e->rhs), conv(e->lhs));
    case Op::RRes: return ex::lres(conv(e->rhs), conv(e->lhs));
  }
  return e;
}

Expr norm(const Expr& e) {
  switch (arity(e->op)) {
    case 0: return e;
    case 1:
      if (e->op == Op::Converse) return conv(e->lhs);
      return make(e->op, norm(e->lhs));
    default: return make(e->op, norm(e->lhs), norm(e->rhs));
  }
}

void flatten(const Expr& e, Op op, std::vector<Expr>& out) {
  if (e->op == op) {
    flatten(e->lhs, op, out);
    flatten(e->rhs, op, out);
  } else {
    out.push_back(e);
  }
}

Expr canon(const Expr& e) {
  switch (e->op) {
    case Op::Union:
    case Op::Intersect: {
      std::vector<Expr> raw;
      flatten(e, e->op, raw);
      std::vector<std::pair<std::string, Expr>> parts;
      for (auto& r : raw) {
        Expr c = canon(r);
        // A canonical operand may itself be of the same AC kind only if it was
        // not before canonicalization; re-flatten to keep the form stable.
        std::vector<Expr> sub;
        flatten(c, e->op, sub);
        for (auto& s : sub) parts.emplace_back(render(s), s);
      }
      std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      parts.erase(std::unique(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                  parts.end());
      Expr acc = parts.front().second;
      for (std::size_t i = 1; i < parts.size(); ++i) acc = make(e->op, acc, parts[i].second);
      return acc;
    }
    case Op::Complement: {
      Expr inner = canon(e->lhs);
      if (inner->op == Op::Complement) return inner->lhs;
      return ex::complement(inner);
    }
    default:
      switch (arity(e->op)) {
        case 0: return e;
        case 1: return make(e->op, canon(e->lhs));
        default: return make(e->op, canon(e->lhs), canon(e->rhs));
      }
  }
}

}  // namespace

Expr normalize_converse(const Expr& e) { return norm(e); }

Expr canonicalize(const Expr& e) { return canon(norm(e)); }

std::string canonical_key(const Expr& e) { return render(canonicalize(e)); }

}  // namespace calrel
