////////////////////////////////////////////////////////////////////////////////
// expr.hpp
//
// Scalar symbolic expressions in named variables (X1, X2, X3, C11, ..., F33).
// Supports parsing, evaluation against a set of bindings, exact symbolic
// differentiation, and simultaneous variable substitution. Every field and
// constitutive law in the toolkit is defined through these expressions, so
// derivatives (exterior derivatives, response gradients) stay exact and the
// only numerical noise left is IEEE evaluation.
//
// Expressions are immutable values backed by a shared AST; evaluation is a
// pure function and safe to call concurrently.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gstr {

/// Variable name -> value. Evaluation fails on any unbound variable.
using Bindings = std::map<std::string, double>;

/// Syntax error with the 0-based offset into the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Unbound variable or domain error (log of nonpositive, division by zero,
/// fractional power of a negative base, non-finite intermediate).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
struct ExprNode;
}

class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(double value);
  static Expr variable(std::string name);

  double eval(const Bindings& bindings) const;

  /// Exact symbolic derivative with respect to `var`. No simplification is
  /// guaranteed beyond constant folding.
  Expr diff(const std::string& var) const;

  /// Simultaneous substitution: occurrences of the keys are replaced by the
  /// mapped expressions in one pass, so replacements may mention the keys.
  Expr substitute(const std::map<std::string, Expr>& replacements) const;

  /// Printable form; parse(str()) evaluates bit-identically to *this.
  std::string str() const;

  std::set<std::string> variables() const;

  /// True for a literal constant; stores the value if `value` is non-null.
  bool is_constant(double* value = nullptr) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, const Expr& exponent);

  /// Named function application: exp, log, sqrt, sin, cos, abs.
  friend Expr call(std::string_view function, const Expr& argument);

 private:
  explicit Expr(std::shared_ptr<const detail::ExprNode> node);

  std::shared_ptr<const detail::ExprNode> node_;
};

/// Parse an expression. Precedence: ^ (right assoc) > unary minus > *,/ > +,-.
Expr parse(std::string_view text);

}  // namespace gstr
