#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hyperkin/jet.hpp"

namespace hyperkin::expr {

enum class TokenKind { Number, Identifier, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t offset;
  double number = 0.0;  // valid for TokenKind::Number
};

/// Splits source text into tokens. Throws ParseError (with the byte offset)
/// on characters outside the token alphabet or malformed numbers.
std::vector<Token> tokenize(std::string_view src);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree. Pow stores its literal exponent directly; the
/// grammar only admits numeric exponents, so no node is needed for them.
struct Expr {
  enum class Kind { Number, Variable, Pi, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind;
  double number = 0.0;    // Number value or Pow exponent
  std::string name;       // Variable or Call
  ExprPtr a;              // operand / lhs / base
  ExprPtr b;              // rhs
};

/// Recognized function names: sin, cos, tan, exp, log, sqrt (unary, radians).
bool is_known_function(std::string_view name);

/// Parses source text. Grammar: + - below * /, unary minus between * / and ^,
/// ^ binds tightest with a numeric-literal exponent; implicit multiplication
/// is rejected. Throws ParseError with the offending offset.
ExprPtr parse(std::string_view src);

/// Evaluates to a jet over `vars`; every free variable must be bound in env.
Jet eval_jet(const Expr& e, const VarsPtr& vars, const std::map<std::string, Jet>& env);

/// Plain double evaluation with the same domain rules as eval_jet.
double eval_scalar(const Expr& e, const std::map<std::string, double>& env);

/// Names of the variables the expression references (sorted).
std::set<std::string> free_vars(const Expr& e);

/// Canonical form: minimal parentheses, '%.17g' numbers, explicit '*'.
/// parse(to_string(parse(s))) is structurally identical to parse(s).
std::string to_string(const Expr& e);

/// Structural equality of expression trees.
bool equal(const Expr& x, const Expr& y);

/// Collapses subtrees without free variables into Number nodes. Subtrees
/// whose folding would leave a function's domain are kept unfolded.
ExprPtr fold_constants(const ExprPtr& e);

}  // namespace hyperkin::expr
