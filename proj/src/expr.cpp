#include "calrel/expr.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "calrel/error.hpp"

namespace calrel {

int arity(Op op) {
  switch (op) {
    case Op::Rel:
    case Op::Zero:
    case Op::One:
    case Op::Id:
    case Op::Di: return 0;
    case Op::Converse:
    case Op::Complement:
    case Op::Pi1:
    case Op::Pi2:
    case Op::Cpi1:
    case Op::Cpi2: return 1;
    default: return 2;
  }
}

namespace {

std::uint16_t own_feature(Op op) {
  auto bit = [](Feature f) { return static_cast<std::uint16_t>(f); };
  switch (op) {
    case Op::One: return bit(Feature::One);
    case Op::Di: return bit(Feature::Di);
    case Op::Converse: return bit(Feature::Conv);
    case Op::Complement: return bit(Feature::Compl);
    case Op::Pi1:
    case Op::Pi2: return bit(Feature::Pi);
    case Op::Cpi1:
    case Op::Cpi2: return bit(Feature::Cpi);
    case Op::Diff: return bit(Feature::Diff);
    case Op::LRes: return bit(Feature::LRes);
    case Op::RRes: return bit(Feature::RRes);
    default: return 0;
  }
}

bool raises_degree(Op op) {
  switch (op) {
    case Op::Compose:
    case Op::LRes:
    case Op::RRes:
    case Op::Pi1:
    case Op::Pi2:
    case Op::Cpi1:
    case Op::Cpi2: return true;
    default: return false;
  }
}

std::uint32_t sat_add(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t s = std::uint64_t{a} + b;
  return s > std::numeric_limits<std::uint32_t>::max() ? std::numeric_limits<std::uint32_t>::max()
                                                        : static_cast<std::uint32_t>(s);
}

int precedence(const Node& n) {
  switch (n.op) {
    case Op::LRes:
    case Op::RRes: return 0;
    case Op::Union: return 1;
    case Op::Intersect:
    case Op::Diff: return 2;
    case Op::Compose: return 3;
    case Op::Complement: return 4;
    case Op::Converse: return 5;
    default: return 6;
  }
}

const char* infix(Op op) {
  switch (op) {
    case Op::Union: return " + ";
    case Op::Intersect: return " & ";
    case Op::Diff: return " - ";
    case Op::Compose: return " . ";
    case Op::LRes: return " / ";
    case Op::RRes: return " \\ ";
    default: return "";
  }
}

void render_into(const Node& n, std::string& out);

void render_child(const Node& child, bool parens, std::string& out) {
  if (parens) out += '(';
  render_into(child, out);
  if (parens) out += ')';
}

void render_into(const Node& n, std::string& out) {
  switch (n.op) {
    case Op::Rel: out += n.name; return;
    case Op::Zero: out += '0'; return;
    case Op::One: out += '1'; return;
    case Op::Id: out += "id"; return;
    case Op::Di: out += "di"; return;
    case Op::Converse:
      render_child(*n.lhs, precedence(*n.lhs) < 5, out);
      out += '^';
      return;
    case Op::Complement:
      out += '!';
      render_child(*n.lhs, precedence(*n.lhs) < 4, out);
      return;
    case Op::Pi1:
    case Op::Pi2:
    case Op::Cpi1:
    case Op::Cpi2: {
      static const char* names[] = {"pi1(", "pi2(", "cpi1(", "cpi2("};
      out += names[static_cast<int>(n.op) - static_cast<int>(Op::Pi1)];
      render_into(*n.lhs, out);
      out += ')';
      return;
    }
    default: break;
  }
  const int p = precedence(n);
  if (p == 0) {
    render_child(*n.lhs, precedence(*n.lhs) <= 0, out);
    out += infix(n.op);
    render_child(*n.rhs, precedence(*n.rhs) <= 0, out);
    return;
  }
  render_child(*n.lhs, precedence(*n.lhs) < p, out);
  out += infix(n.op);
  render_child(*n.rhs, precedence(*n.rhs) <= p, out);
}

}  // namespace

Expr make(Op op, Expr lhs, Expr rhs, std::string name) {
  const int ar = arity(op);
  if ((ar >= 1) != static_cast<bool>(lhs) || (ar == 2) != static_cast<bool>(rhs)) {
    throw Error("malformed expression node");
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->name = std::move(name);
  n->features = own_feature(op);
  if (ar == 0) {
    n->degree = 0;
    n->size = 1;
  } else if (ar == 1) {
    n->features |= lhs->features;
    n->degree = lhs->degree + (raises_degree(op) ? 1 : 0);
    n->size = (op == Op::Converse && lhs->op == Op::Rel) ? 1 : sat_add(lhs->size, 1);
  } else {
    n->features |= lhs->features | rhs->features;
    n->degree = std::max(lhs->degree, rhs->degree) + (raises_degree(op) ? 1 : 0);
    n->size = sat_add(sat_add(lhs->size, rhs->size), 1);
  }
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

namespace ex {
Expr rel(std::string name) { return make(Op::Rel, nullptr, nullptr, std::move(name)); }
Expr zero() { return make(Op::Zero); }
Expr one() { return make(Op::One); }
Expr ident() { return make(Op::Id); }
Expr diversity() { return make(Op::Di); }
Expr converse(Expr e) { return make(Op::Converse, std::move(e)); }
Expr complement(Expr e) { return make(Op::Complement, std::move(e)); }
Expr proj1(Expr e) { return make(Op::Pi1, std::move(e)); }
Expr proj2(Expr e) { return make(Op::Pi2, std::move(e)); }
Expr coproj1(Expr e) { return make(Op::Cpi1, std::move(e)); }
Expr coproj2(Expr e) { return make(Op::Cpi2, std::move(e)); }
Expr cup(Expr a, Expr b) { return make(Op::Union, std::move(a), std::move(b)); }
Expr cap(Expr a, Expr b) { return make(Op::Intersect, std::move(a), std::move(b)); }
Expr minus(Expr a, Expr b) { return make(Op::Diff, std::move(a), std::move(b)); }
Expr comp(Expr a, Expr b) { return make(Op::Compose, std::move(a), std::move(b)); }
Expr lres(Expr a, Expr b) { return make(Op::LRes, std::move(a), std::move(b)); }
Expr rres(Expr a, Expr b) { return make(Op::RRes, std::move(a), std::move(b)); }
}  // namespace ex

bool in_fragment(const Expr& e, Fragment f) { return f.contains(Fragment(e->features)); }

bool equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->name != b->name) return false;
  if (a->degree != b->degree || a->features != b->features || a->size != b->size) return false;
  return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

std::size_t dag_node_count(const Expr& e) {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{e.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!n || !seen.insert(n).second) continue;
    stack.push_back(n->lhs.get());
    stack.push_back(n->rhs.get());
  }
  return seen.size();
}

std::string render(const Expr& e) {
  std::string out;
  render_into(*e, out);
  return out;
}

namespace {

std::uint64_t rendered_length(const Node& n, std::unordered_map<const Node*, std::uint64_t>& memo) {
  if (auto it = memo.find(&n); it != memo.end()) return it->second;
  auto child = [&](const Node& c, bool parens) { return rendered_length(c, memo) + (parens ? 2 : 0); };
  std::uint64_t len = 0;
  switch (n.op) {
    case Op::Rel: len = n.name.size(); break;
    case Op::Zero:
    case Op::One: len = 1; break;
    case Op::Id:
    case Op::Di: len = 2; break;
    case Op::Converse: len = child(*n.lhs, precedence(*n.lhs) < 5) + 1; break;
    case Op::Complement: len = child(*n.lhs, precedence(*n.lhs) < 4) + 1; break;
    case Op::Pi1:
    case Op::Pi2: len = rendered_length(*n.lhs, memo) + 5; break;
    case Op::Cpi1:
    case Op::Cpi2: len = rendered_length(*n.lhs, memo) + 6; break;
    default: {
      const int p = precedence(n);
      const bool lp = p == 0 ? precedence(*n.lhs) <= 0 : precedence(*n.lhs) < p;
      len = child(*n.lhs, lp) + 3 + child(*n.rhs, precedence(*n.rhs) <= p);
    }
  }
  memo.emplace(&n, len);
  return len;
}

}  // namespace

std::size_t rendered_size(const Expr& e) {
  std::unordered_map<const Node*, std::uint64_t> memo;
  return rendered_length(*e, memo);
}

Expr ExprPool::make(Op op, Expr lhs, Expr rhs, std::string name) {
  auto key = std::make_tuple(op, lhs.get(), rhs.get(), name);
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;
  Expr e = calrel::make(op, std::move(lhs), std::move(rhs), std::move(name));
  table_.emplace(std::move(key), e);
  return e;
}

Expr ExprPool::intern(const Expr& e) {
  std::unordered_map<const Node*, Expr> done;
  auto go = [&](auto& self, const Expr& x) -> Expr {
    if (!x) return x;
    if (auto it = done.find(x.get()); it != done.end()) return it->second;
    Expr l = self(self, x->lhs);
    Expr r = self(self, x->rhs);
    Expr out = make(x->op, std::move(l), std::move(r), x->name);
    done.emplace(x.get(), out);
    return out;
  };
  return go(go, e);
}

}  // namespace calrel
