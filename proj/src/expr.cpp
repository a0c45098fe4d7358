#include "gstr/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace gstr {
namespace detail {

enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };

enum class Func { Exp, Log, Sqrt, Sin, Cos, Abs };

struct ExprNode {
  Kind kind;
  double value = 0.0;          // Constant
  std::string name;            // Variable
  Func func = Func::Exp;       // Call
  std::shared_ptr<const ExprNode> a, b;
};

}  // namespace detail

namespace {

using detail::ExprNode;
using detail::Func;
using detail::Kind;
using NodePtr = std::shared_ptr<const ExprNode>;

const char* func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Abs: return "abs";
  }
  return "?";
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw EvalError(std::string("non-finite value in ") + what);
  }
  return v;
}

double eval_node(const ExprNode& n, const Bindings& b) {
  switch (n.kind) {
    case Kind::Constant:
      return n.value;
    case Kind::Variable: {
      auto it = b.find(n.name);
      if (it == b.end()) throw EvalError("unbound variable '" + n.name + "'");
      return it->second;
    }
    case Kind::Add:
      return checked(eval_node(*n.a, b) + eval_node(*n.b, b), "addition");
    case Kind::Sub:
      return checked(eval_node(*n.a, b) - eval_node(*n.b, b), "subtraction");
    case Kind::Mul:
      return checked(eval_node(*n.a, b) * eval_node(*n.b, b), "multiplication");
    case Kind::Div: {
      const double num = eval_node(*n.a, b);
      const double den = eval_node(*n.b, b);
      if (den == 0.0) throw EvalError("division by zero");
      return checked(num / den, "division");
    }
    case Kind::Pow: {
      const double base = eval_node(*n.a, b);
      const double expo = eval_node(*n.b, b);
      if (base == 0.0 && expo < 0.0) throw EvalError("zero raised to a negative power");
      if (base < 0.0 && expo != std::floor(expo)) {
        throw EvalError("fractional power of a negative base");
      }
      return checked(std::pow(base, expo), "power");
    }
    case Kind::Neg:
      return -eval_node(*n.a, b);
    case Kind::Call: {
      const double x = eval_node(*n.a, b);
      switch (n.func) {
        case Func::Exp: return checked(std::exp(x), "exp");
        case Func::Log:
          if (x <= 0.0) throw EvalError("log of a nonpositive value");
          return std::log(x);
        case Func::Sqrt:
          if (x < 0.0) throw EvalError("sqrt of a negative value");
          return std::sqrt(x);
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Abs: return std::fabs(x);
      }
      throw EvalError("unknown function");
    }
  }
  throw EvalError("corrupt expression node");
}

NodePtr make_constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Constant;
  n->value = v;
  return n;
}

bool constant_value(const NodePtr& n, double* out) {
  if (n->kind != Kind::Constant) return false;
  if (out) *out = n->value;
  return true;
}

// Constant folding only; a fold that would raise a domain error is skipped
// and the node is kept symbolic so the error surfaces at eval time.
NodePtr make_binary(Kind kind, NodePtr a, NodePtr b) {
  double ca = 0.0, cb = 0.0;
  const bool a_const = constant_value(a, &ca);
  const bool b_const = constant_value(b, &cb);

  if (a_const && b_const) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->a = a;
    n->b = b;
    try {
      return make_constant(eval_node(*n, Bindings{}));
    } catch (const EvalError&) {
      return n;
    }
  }

  switch (kind) {
    case Kind::Add:
      if (a_const && ca == 0.0) return b;
      if (b_const && cb == 0.0) return a;
      break;
    case Kind::Sub:
      if (b_const && cb == 0.0) return a;
      break;
    case Kind::Mul:
      if (a_const && ca == 1.0) return b;
      if (b_const && cb == 1.0) return a;
      if ((a_const && ca == 0.0) || (b_const && cb == 0.0)) return make_constant(0.0);
      break;
    case Kind::Div:
      if (b_const && cb == 1.0) return a;
      if (a_const && ca == 0.0) return make_constant(0.0);
      break;
    case Kind::Pow:
      if (b_const && cb == 1.0) return a;
      if (b_const && cb == 0.0) return make_constant(1.0);
      break;
    default:
      break;
  }

  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_neg(NodePtr a) {
  double c = 0.0;
  if (constant_value(a, &c)) return make_constant(-c);
  if (a->kind == Kind::Neg) return a->a;
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Neg;
  n->a = std::move(a);
  return n;
}

NodePtr make_call(Func f, NodePtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Call;
  n->func = f;
  n->a = std::move(a);
  if (n->a->kind == Kind::Constant) {
    try {
      return make_constant(eval_node(*n, Bindings{}));
    } catch (const EvalError&) {
    }
  }
  return n;
}

}  // namespace

Expr::Expr() : node_(make_constant(0.0)) {}
Expr::Expr(std::shared_ptr<const detail::ExprNode> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) { return Expr(make_constant(value)); }

Expr Expr::variable(std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  return Expr(n);
}

double Expr::eval(const Bindings& bindings) const { return eval_node(*node_, bindings); }

bool Expr::is_constant(double* value) const { return constant_value(node_, value); }

Expr operator+(const Expr& a, const Expr& b) { return Expr(make_binary(Kind::Add, a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make_binary(Kind::Sub, a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make_binary(Kind::Mul, a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(make_binary(Kind::Div, a.node_, b.node_)); }
Expr operator-(const Expr& a) { return Expr(make_neg(a.node_)); }
Expr pow(const Expr& base, const Expr& exponent) {
  return Expr(make_binary(Kind::Pow, base.node_, exponent.node_));
}

Expr call(std::string_view function, const Expr& argument) {
  static const std::array<std::pair<std::string_view, Func>, 6> table{{
      {"exp", Func::Exp}, {"log", Func::Log}, {"sqrt", Func::Sqrt},
      {"sin", Func::Sin}, {"cos", Func::Cos}, {"abs", Func::Abs},
  }};
  for (const auto& [name, f] : table) {
    if (name == function) return Expr(make_call(f, argument.node_));
  }
  throw ParseError("unknown function '" + std::string(function) + "'", 0);
}

Expr Expr::diff(const std::string& var) const {
  // Recursive rewrite; all node construction goes through the folding
  // factories so derivatives of polynomial fields stay compact.
  struct D {
    const std::string& v;
    Expr operator()(const NodePtr& n) const {
      switch (n->kind) {
        case Kind::Constant:
          return Expr::constant(0.0);
        case Kind::Variable:
          return Expr::constant(n->name == v ? 1.0 : 0.0);
        case Kind::Add:
          return (*this)(n->a) + (*this)(n->b);
        case Kind::Sub:
          return (*this)(n->a) - (*this)(n->b);
        case Kind::Mul: {
          Expr a(n->a), b(n->b);
          return (*this)(n->a) * b + a * (*this)(n->b);
        }
        case Kind::Div: {
          Expr a(n->a), b(n->b);
          return ((*this)(n->a) * b - a * (*this)(n->b)) / (b * b);
        }
        case Kind::Pow: {
          Expr base(n->a), expo(n->b);
          double c = 0.0;
          if (expo.is_constant(&c)) {
            return Expr::constant(c) * pow(base, Expr::constant(c - 1.0)) * (*this)(n->a);
          }
          if (base.is_constant(&c)) {
            return pow(base, expo) * call("log", base) * (*this)(n->b);
          }
          // u^v = exp(v log u)
          return pow(base, expo) *
                 ((*this)(n->b) * call("log", base) + expo * (*this)(n->a) / base);
        }
        case Kind::Neg:
          return -(*this)(n->a);
        case Kind::Call: {
          Expr arg(n->a);
          Expr da = (*this)(n->a);
          switch (n->func) {
            case Func::Exp: return call("exp", arg) * da;
            case Func::Log: return da / arg;
            case Func::Sqrt: return da / (Expr::constant(2.0) * call("sqrt", arg));
            case Func::Sin: return call("cos", arg) * da;
            case Func::Cos: return -(call("sin", arg) * da);
            case Func::Abs: return (arg / call("abs", arg)) * da;
          }
          throw EvalError("unknown function in diff");
        }
      }
      throw EvalError("corrupt expression node in diff");
    }
  };
  return D{var}(node_);
}

Expr Expr::substitute(const std::map<std::string, Expr>& replacements) const {
  struct S {
    const std::map<std::string, Expr>& repl;
    Expr operator()(const NodePtr& n) const {
      switch (n->kind) {
        case Kind::Constant:
          return Expr(n);
        case Kind::Variable: {
          auto it = repl.find(n->name);
          return it == repl.end() ? Expr(n) : it->second;
        }
        case Kind::Add: return (*this)(n->a) + (*this)(n->b);
        case Kind::Sub: return (*this)(n->a) - (*this)(n->b);
        case Kind::Mul: return (*this)(n->a) * (*this)(n->b);
        case Kind::Div: return (*this)(n->a) / (*this)(n->b);
        case Kind::Pow: return pow((*this)(n->a), (*this)(n->b));
        case Kind::Neg: return -(*this)(n->a);
        case Kind::Call: return Expr(make_call(n->func, (*this)(n->a).node_));
      }
      throw EvalError("corrupt expression node in substitute");
    }
  };
  return S{replacements}(node_);
}

std::set<std::string> Expr::variables() const {
  std::set<std::string> out;
  struct V {
    std::set<std::string>& out;
    void operator()(const NodePtr& n) const {
      if (!n) return;
      if (n->kind == Kind::Variable) out.insert(n->name);
      (*this)(n->a);
      (*this)(n->b);
    }
  };
  V{out}(node_);
  return out;
}

namespace {

// Printing precedence; constants with a negative value print with a leading
// minus and therefore bind like a negation.
int node_prec(const ExprNode& n) {
  switch (n.kind) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 3;
    case Kind::Pow: return 4;
    case Kind::Constant: return n.value < 0.0 ? 3 : 5;
    case Kind::Variable:
    case Kind::Call: return 5;
  }
  return 5;
}

void print_node(const ExprNode& n, std::string& out);

void print_child(const ExprNode& child, int parent_prec, bool needs_parens_at_equal,
                 std::string& out) {
  const int p = node_prec(child);
  const bool parens = p < parent_prec || (p == parent_prec && needs_parens_at_equal);
  if (parens) out += '(';
  print_node(child, out);
  if (parens) out += ')';
}

void print_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case Kind::Constant: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", n.value);
      out += buf;
      return;
    }
    case Kind::Variable:
      out += n.name;
      return;
    case Kind::Add:
      print_child(*n.a, 1, false, out);
      out += " + ";
      print_child(*n.b, 1, true, out);
      return;
    case Kind::Sub:
      print_child(*n.a, 1, false, out);
      out += " - ";
      print_child(*n.b, 1, true, out);
      return;
    case Kind::Mul:
      print_child(*n.a, 2, false, out);
      out += "*";
      print_child(*n.b, 2, true, out);
      return;
    case Kind::Div:
      print_child(*n.a, 2, false, out);
      out += "/";
      print_child(*n.b, 2, true, out);
      return;
    case Kind::Pow:
      print_child(*n.a, 4, true, out);  // right associative
      out += "^";
      print_child(*n.b, 4, false, out);
      return;
    case Kind::Neg:
      out += '-';
      print_child(*n.a, 3, false, out);
      return;
  }
  if (n.kind == Kind::Call) {
    out += func_name(n.func);
    out += '(';
    print_node(*n.a, out);
    out += ')';
  }
}

}  // namespace

std::string Expr::str() const {
  std::string out;
  print_node(*node_, out);
  return out;
}

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr expression() {
    Expr e = term();
    for (;;) {
      if (accept('+')) {
        e = e + term();
      } else if (accept('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) {
        e = e * unary();
      } else if (accept('/')) {
        e = e / unary();
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) return pow(base, unary());
    return base;
  }

  Expr atom() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];

    if (c == '(') {
      ++pos_;
      Expr e = expression();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (peek() == '(') {
        accept('(');
        Expr arg = expression();
        if (!accept(')')) throw ParseError("expected ')' after function argument", pos_);
        try {
          return call(name, arg);
        } catch (const ParseError&) {
          throw ParseError("unknown function '" + name + "'", start);
        }
      }
      return Expr::variable(std::move(name));
    }

    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Expr number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) throw ParseError("malformed number", pos_);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return Expr::constant(value);
  }
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace gstr
