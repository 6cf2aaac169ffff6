#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace greensign {

/// Arithmetic expression in the variables t, x and T.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unary)?          right-associative
///   primary := number | 'pi' | 't' | 'x' | 'T' | '(' expr ')'
///            | fn1 '(' expr ')' | 'pow' '(' expr ',' expr ')'
///   fn1     := 'sin' | 'cos' | 'exp' | 'sqrt' | 'abs'
///
/// Numbers use the usual decimal/exponent syntax. Malformed text raises
/// ParseError with the offending column.
class Expression {
 public:
  struct Node;

  static Expression parse(std::string_view text);

  double operator()(double t, double x, double T) const;
  /// Value of an expression that mentions none of t, x, T.
  double constant() const;

  bool uses_t() const noexcept { return uses_t_; }
  bool uses_x() const noexcept { return uses_x_; }
  bool uses_T() const noexcept { return uses_T_; }
  const std::string& text() const noexcept { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  bool uses_t_ = false;
  bool uses_x_ = false;
  bool uses_T_ = false;
};

}  // namespace greensign
