#include <cctype>
#include <vector>

#include "valshare/error.hpp"
#include "valshare/expr.hpp"

namespace valshare {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col,
                         {"number", "identifier", "operator", "parenthesis"});
    }
    out.push_back({kind, std::string(1, c), pos});
    advance(1);
  }
  out.push_back({Tok::End, "", SourcePos{line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Expr parse_all() {
    Expr e = expr();
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()), {"'+'", "'-'", "'*'", "'/'", "end of input"});
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    throw ParseError(msg, peek().pos.line, peek().pos.column, std::move(expected));
  }

  static Expr binary(NodeKind kind, SourcePos pos, Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->pos = pos;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  Expr expr() {
    Expr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token& op = take();
      Expr rhs = term();
      lhs = binary(op.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub, op.pos, lhs, rhs);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token& op = take();
      Expr rhs = unary();
      lhs = binary(op.kind == Tok::Star ? NodeKind::Mul : NodeKind::Div, op.pos, lhs, rhs);
    }
    return lhs;
  }

  // Leading minus is sugar for (0 - x).
  Expr unary() {
    if (peek().kind == Tok::Minus) {
      const Token& op = take();
      auto zero = std::make_shared<Node>();
      zero->pos = op.pos;
      return binary(NodeKind::Sub, op.pos, zero, unary());
    }
    return factor();
  }

  Expr factor() {
    Expr b = base();
    if (peek().kind == Tok::Caret) {
      const Token& op = take();
      if (peek().kind != Tok::Number) fail("exponent must be a nonnegative integer", {"unsigned integer"});
      const Token& n = take();
      mpz_class e(n.text);
      if (!e.fits_ulong_p()) fail("exponent too large", {"unsigned integer"});
      auto p = std::make_shared<Node>();
      p->kind = NodeKind::Pow;
      p->pos = op.pos;
      p->lhs = b;
      p->exponent = e.get_ui();
      return p;
    }
    return b;
  }

  Expr base() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        take();
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Rational;
        n->pos = t.pos;
        n->num = mpz_class(t.text);
        if (peek().kind == Tok::Slash && peek(1).kind == Tok::Number) {
          take();
          n->den = mpz_class(take().text);
          n->explicit_den = true;
        }
        return n;
      }
      case Tok::Ident: {
        take();
        if (t.text == "i") {
          auto n = std::make_shared<Node>();
          n->kind = NodeKind::Rational;
          n->pos = t.pos;
          n->num = 1;
          n->imaginary = true;
          return n;
        }
        if (t.text == "D" && peek().kind == Tok::LParen) {
          take();
          Expr inner = expr();
          if (peek().kind != Tok::RParen) fail("unclosed D(", {"')'"});
          take();
          auto n = std::make_shared<Node>();
          n->kind = NodeKind::Deriv;
          n->pos = t.pos;
          n->lhs = inner;
          return n;
        }
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Ident;
        n->pos = t.pos;
        n->name = t.text;
        return n;
      }
      case Tok::LParen: {
        take();
        Expr inner = expr();
        if (peek().kind != Tok::RParen) fail("unclosed parenthesis", {"')'", "'+'", "'-'", "'*'", "'/'"});
        take();
        return inner;
      }
      default:
        fail("unexpected " + describe(t), {"number", "'i'", "identifier", "'D('", "'('"});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string_view op_text(NodeKind k) {
  switch (k) {
    case NodeKind::Add: return " + ";
    case NodeKind::Sub: return " - ";
    case NodeKind::Mul: return " * ";
    case NodeKind::Div: return " / ";
    default: return "";
  }
}

}  // namespace

Expr parse(std::string_view src) { return Parser(tokenize(src)).parse_all(); }

std::string print(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Rational:
      if (e->imaginary) return "i";
      if (e->explicit_den) return e->num.get_str() + "/" + e->den.get_str();
      return e->num.get_str();
    case NodeKind::Ident: return e->name;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
      return "(" + print(e->lhs) + std::string(op_text(e->kind)) + print(e->rhs) + ")";
    case NodeKind::Div: {
      // "a / 27" would re-lex as the literal a/27 when a is an integer.
      std::string rhs = print(e->rhs);
      if (e->rhs->kind == NodeKind::Rational) rhs = "(" + rhs + ")";
      return "(" + print(e->lhs) + std::string(op_text(e->kind)) + rhs + ")";
    }
    case NodeKind::Pow: return "(" + print(e->lhs) + ")^" + std::to_string(e->exponent);
    case NodeKind::Deriv: return "D(" + print(e->lhs) + ")";
  }
  return "";
}

bool same_tree(const Expr& a, const Expr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Rational:
      return a->imaginary == b->imaginary && a->num == b->num && a->den == b->den &&
             a->explicit_den == b->explicit_den;
    case NodeKind::Ident: return a->name == b->name;
    case NodeKind::Pow: return a->exponent == b->exponent && same_tree(a->lhs, b->lhs);
    case NodeKind::Deriv: return same_tree(a->lhs, b->lhs);
    default: return same_tree(a->lhs, b->lhs) && same_tree(a->rhs, b->rhs);
  }
}

Expr make_rational(long num, long den) {
  auto n = std::make_shared<Node>();
  n->num = num;
  n->den = den;
  n->explicit_den = den != 1;
  return n;
}

Expr make_ident(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Ident;
  n->name = std::move(name);
  return n;
}

Expr make_binary(NodeKind kind, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

Expr make_pow(Expr base, unsigned long exponent) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Pow;
  n->lhs = std::move(base);
  n->exponent = exponent;
  return n;
}

Expr make_deriv(Expr inner) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Deriv;
  n->lhs = std::move(inner);
  return n;
}

}  // namespace valshare
