#include "calrel/parser.hpp"

#include <cctype>
#include <sstream>
#include <string>

#include "calrel/error.hpp"

namespace calrel {

namespace {

enum class Tok { End, Name, Zero, One, Id, Di, Pi1, Pi2, Cpi1, Cpi2, LParen, RParen, Caret, Bang, Dot, Amp, Minus, Plus, Slash, Backslash };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const std::size_t l = line_, c = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", l, c});
        return out;
      }
      const char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string word;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          word += src_[pos_];
          advance();
        }
        out.push_back({keyword(word), word, l, c});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::string num;
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) {
          num += src_[pos_];
          advance();
        }
        if (num == "0") out.push_back({Tok::Zero, num, l, c});
        else if (num == "1") out.push_back({Tok::One, num, l, c});
        else throw ParseError(l, c, "unknown token '" + num + "'");
        continue;
      }
      Tok k;
      switch (ch) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '^': k = Tok::Caret; break;
        case '!': k = Tok::Bang; break;
        case '.': k = Tok::Dot; break;
        case '&': k = Tok::Amp; break;
        case '-': k = Tok::Minus; break;
        case '+': k = Tok::Plus; break;
        case '/': k = Tok::Slash; break;
        case '\\': k = Tok::Backslash; break;
        default: throw ParseError(l, c, std::string("unknown token '") + ch + "'");
      }
      out.push_back({k, std::string(1, ch), l, c});
      advance();
    }
  }

 private:
  static Tok keyword(const std::string& w) {
    if (w == "id") return Tok::Id;
    if (w == "di") return Tok::Di;
    if (w == "pi1") return Tok::Pi1;
    if (w == "pi2") return Tok::Pi2;
    if (w == "cpi1") return Tok::Cpi1;
    if (w == "cpi2") return Tok::Cpi2;
    return Tok::Name;
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Expr parse_all() {
    Expr e = residual();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(peek().line, peek().col, what); }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  Expr residual() {
    Expr lhs = unions();
    const Tok k = peek().kind;
    if (k != Tok::Slash && k != Tok::Backslash) return lhs;
    ++pos_;
    Expr rhs = unions();
    if (peek().kind == Tok::Slash || peek().kind == Tok::Backslash) {
      fail("residuals do not associate; add parentheses");
    }
    return k == Tok::Slash ? ex::lres(lhs, rhs) : ex::rres(lhs, rhs);
  }

  Expr unions() {
    Expr e = inters();
    while (peek().kind == Tok::Plus) {
      ++pos_;
      e = ex::cup(e, inters());
    }
    return e;
  }

  Expr inters() {
    Expr e = comps();
    for (;;) {
      if (peek().kind == Tok::Amp) {
        ++pos_;
        e = ex::cap(e, comps());
      } else if (peek().kind == Tok::Minus) {
        ++pos_;
        e = ex::minus(e, comps());
      } else {
        return e;
      }
    }
  }

  Expr comps() {
    Expr e = prefix();
    while (peek().kind == Tok::Dot) {
      ++pos_;
      e = ex::comp(e, prefix());
    }
    return e;
  }

  Expr prefix() {
    if (peek().kind == Tok::Bang) {
      ++pos_;
      return ex::complement(prefix());
    }
    return postfix();
  }

  Expr postfix() {
    Expr e = primary();
    while (peek().kind == Tok::Caret) {
      ++pos_;
      e = ex::converse(e);
    }
    return e;
  }

  Expr primary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Name: ++pos_; return ex::rel(t.text);
      case Tok::Zero: ++pos_; return ex::zero();
      case Tok::One: ++pos_; return ex::one();
      case Tok::Id: ++pos_; return ex::ident();
      case Tok::Di: ++pos_; return ex::diversity();
      case Tok::Pi1:
      case Tok::Pi2:
      case Tok::Cpi1:
      case Tok::Cpi2: {
        ++pos_;
        expect(Tok::LParen, "'('");
        Expr inner = residual();
        expect(Tok::RParen, "')'");
        if (t.kind == Tok::Pi1) return ex::proj1(inner);
        if (t.kind == Tok::Pi2) return ex::proj2(inner);
        if (t.kind == Tok::Cpi1) return ex::coproj1(inner);
        return ex::coproj2(inner);
      }
      case Tok::LParen: {
        ++pos_;
        Expr inner = residual();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::End: fail("unexpected end of expression");
      default: fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(Lexer(text).run()).parse_all(); }

std::vector<Expr> parse_expr_lines(std::string_view text) {
  std::vector<Expr> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(parse_expr(line));
    } catch (const ParseError& e) {
      throw ParseError(lineno, e.column(), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
  }
  return out;
}

}  // namespace calrel
