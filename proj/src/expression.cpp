#include "greensign/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "greensign/error.hpp"

namespace greensign {

struct Expression::Node {
  enum class Kind { Number, VarT, VarX, VarT_, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Sqrt, Abs };
  Kind kind;
  double value = 0.0;
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
};

namespace {

using Node = Expression::Node;
using Kind = Node::Kind;
using NodePtr = std::unique_ptr<Node>;

NodePtr leaf(Kind kind, double value = 0.0) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->value = value;
  return n;
}

NodePtr branch(Kind kind, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

  bool uses_t = false, uses_x = false, uses_T = false;

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, what + " at column " + std::to_string(pos_ + 1) + " in \"" + std::string(text_) + "\"");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) {
        n = branch(Kind::Add, std::move(n), term());
      } else if (accept('-')) {
        n = branch(Kind::Sub, std::move(n), term());
      } else {
        return n;
      }
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) {
        n = branch(Kind::Mul, std::move(n), unary());
      } else if (accept('/')) {
        n = branch(Kind::Div, std::move(n), unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return branch(Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return branch(Kind::Pow, std::move(base), unary());
    return base;
  }

  NodePtr number() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) error("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return leaf(Kind::Number, value);
  }

  NodePtr primary() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept('(')) {
      NodePtr n = expr();
      expect(')');
      return n;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) error("unexpected '" + std::string(1, c) + "'");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (name == "t") {
      uses_t = true;
      return leaf(Kind::VarT);
    }
    if (name == "x") {
      uses_x = true;
      return leaf(Kind::VarX);
    }
    if (name == "T") {
      uses_T = true;
      return leaf(Kind::VarT_);
    }
    if (name == "pi") return leaf(Kind::Number, std::numbers::pi);

    Kind kind;
    if (name == "sin") {
      kind = Kind::Sin;
    } else if (name == "cos") {
      kind = Kind::Cos;
    } else if (name == "exp") {
      kind = Kind::Exp;
    } else if (name == "sqrt") {
      kind = Kind::Sqrt;
    } else if (name == "abs") {
      kind = Kind::Abs;
    } else if (name == "pow") {
      expect('(');
      NodePtr a = expr();
      expect(',');
      NodePtr b = expr();
      expect(')');
      return branch(Kind::Pow, std::move(a), std::move(b));
    } else {
      pos_ = start;
      error("unknown name '" + std::string(name) + "'");
    }
    expect('(');
    NodePtr arg = expr();
    expect(')');
    return branch(kind, std::move(arg));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, double t, double x, double T) {
  switch (n.kind) {
    case Kind::Number:
      return n.value;
    case Kind::VarT:
      return t;
    case Kind::VarX:
      return x;
    case Kind::VarT_:
      return T;
    case Kind::Neg:
      return -eval(*n.lhs, t, x, T);
    case Kind::Add:
      return eval(*n.lhs, t, x, T) + eval(*n.rhs, t, x, T);
    case Kind::Sub:
      return eval(*n.lhs, t, x, T) - eval(*n.rhs, t, x, T);
    case Kind::Mul:
      return eval(*n.lhs, t, x, T) * eval(*n.rhs, t, x, T);
    case Kind::Div:
      return eval(*n.lhs, t, x, T) / eval(*n.rhs, t, x, T);
    case Kind::Pow:
      return std::pow(eval(*n.lhs, t, x, T), eval(*n.rhs, t, x, T));
    case Kind::Sin:
      return std::sin(eval(*n.lhs, t, x, T));
    case Kind::Cos:
      return std::cos(eval(*n.lhs, t, x, T));
    case Kind::Exp:
      return std::exp(eval(*n.lhs, t, x, T));
    case Kind::Sqrt:
      return std::sqrt(eval(*n.lhs, t, x, T));
    case Kind::Abs:
      return std::abs(eval(*n.lhs, t, x, T));
  }
  return 0.0;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Parser p(text);
  Expression e;
  e.root_ = p.parse();
  e.text_ = std::string(text);
  e.uses_t_ = p.uses_t;
  e.uses_x_ = p.uses_x;
  e.uses_T_ = p.uses_T;
  return e;
}

double Expression::operator()(double t, double x, double T) const { return eval(*root_, t, x, T); }

double Expression::constant() const {
  if (uses_t_ || uses_x_ || uses_T_) {
    fail(ErrorCode::ParseError, "expression \"" + text_ + "\" must not depend on t, x or T");
  }
  return eval(*root_, 0.0, 0.0, 0.0);
}

}  // namespace greensign
