#include "hyperkin/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "hyperkin/error.hpp"

namespace hyperkin::expr {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

constexpr std::array<std::string_view, 6> kFunctions = {"sin", "cos", "tan", "exp", "log", "sqrt"};

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

bool is_known_function(std::string_view name) {
  for (auto f : kFunctions) {
    if (f == name) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    switch (c) {
      case '+': out.push_back({TokenKind::Plus, "+", start}); ++i; continue;
      case '-': out.push_back({TokenKind::Minus, "-", start}); ++i; continue;
      case '*': out.push_back({TokenKind::Star, "*", start}); ++i; continue;
      case '/': out.push_back({TokenKind::Slash, "/", start}); ++i; continue;
      case '^': out.push_back({TokenKind::Caret, "^", start}); ++i; continue;
      case '(': out.push_back({TokenKind::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({TokenKind::RParen, ")", start}); ++i; continue;
      case ',': out.push_back({TokenKind::Comma, ",", start}); ++i; continue;
      default: break;
    }
    if (digit(c) || (c == '.' && i + 1 < src.size() && digit(src[i + 1]))) {
      while (i < src.size() && digit(src[i])) ++i;
      if (i < src.size() && src[i] == '.') {
        ++i;
        if (i >= src.size() || !digit(src[i])) {
          throw ParseError("malformed number: expected digits after '.'", i);
        }
        while (i < src.size() && digit(src[i])) ++i;
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t mark = i;
        ++i;
        if (i < src.size() && (src[i] == '+' || src[i] == '-')) ++i;
        if (i >= src.size() || !digit(src[i])) {
          throw ParseError("malformed number: incomplete exponent", mark);
        }
        while (i < src.size() && digit(src[i])) ++i;
      }
      const std::string_view text = src.substr(start, i - start);
      double value = 0.0;
      const auto rc = std::from_chars(text.data(), text.data() + text.size(), value);
      if (rc.ec != std::errc{} || rc.ptr != text.data() + text.size()) {
        throw ParseError("malformed number '" + std::string(text) + "'", start);
      }
      out.push_back({TokenKind::Number, std::string(text), start, value});
      continue;
    }
    if (ident_start(c)) {
      while (i < src.size() && ident_char(src[i])) ++i;
      out.push_back({TokenKind::Identifier, std::string(src.substr(start, i - start)), start});
      continue;
    }
    throw ParseError(std::string("illegal character '") + c + "'", start);
  }
  out.push_back({TokenKind::End, "", src.size()});
  return out;
}

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr run() {
    ExprPtr e = sum();
    const Token& t = peek();
    if (t.kind != TokenKind::End) {
      if (t.kind == TokenKind::RParen) {
        throw ParseError("unbalanced parenthesis: unexpected ')'", t.offset);
      }
      throw ParseError("unexpected token '" + t.lexeme + "'", t.offset);
    }
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool accept(TokenKind k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr sum() {
    ExprPtr e = term();
    for (;;) {
      if (accept(TokenKind::Plus)) {
        e = make({Expr::Kind::Add, 0.0, {}, e, term()});
      } else if (accept(TokenKind::Minus)) {
        e = make({Expr::Kind::Sub, 0.0, {}, e, term()});
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      if (accept(TokenKind::Star)) {
        e = make({Expr::Kind::Mul, 0.0, {}, e, unary()});
      } else if (accept(TokenKind::Slash)) {
        e = make({Expr::Kind::Div, 0.0, {}, e, unary()});
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (accept(TokenKind::Minus)) {
      return make({Expr::Kind::Neg, 0.0, {}, unary(), nullptr});
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (!accept(TokenKind::Caret)) return base;
    double sign = 1.0;
    if (accept(TokenKind::Minus)) sign = -1.0;
    const Token& t = peek();
    if (t.kind != TokenKind::Number) {
      throw ParseError("exponent must be a numeric literal", t.offset);
    }
    advance();
    if (peek().kind == TokenKind::Caret) {
      // '^' is right-associative, so a chain makes the exponent itself a
      // power expression; only literal exponents are admitted.
      throw ParseError("exponent must be a numeric literal (parenthesize the base to chain '^')",
                       peek().offset);
    }
    return make({Expr::Kind::Pow, sign * t.number, {}, base, nullptr});
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Number:
        advance();
        return make({Expr::Kind::Number, t.number, {}, nullptr, nullptr});
      case TokenKind::LParen: {
        advance();
        ExprPtr e = sum();
        if (!accept(TokenKind::RParen)) {
          throw ParseError("unbalanced parenthesis: expected ')'", peek().offset);
        }
        return e;
      }
      case TokenKind::Identifier: {
        advance();
        if (peek().kind == TokenKind::LParen) {
          if (!is_known_function(t.lexeme)) {
            throw ParseError("unknown function '" + t.lexeme + "'", t.offset);
          }
          advance();
          ExprPtr arg = sum();
          if (!accept(TokenKind::RParen)) {
            throw ParseError("unbalanced parenthesis: expected ')'", peek().offset);
          }
          return make({Expr::Kind::Call, 0.0, t.lexeme, arg, nullptr});
        }
        if (t.lexeme == "pi") return make({Expr::Kind::Pi, 0.0, {}, nullptr, nullptr});
        return make({Expr::Kind::Variable, 0.0, t.lexeme, nullptr, nullptr});
      }
      case TokenKind::End:
        throw ParseError("unexpected end of expression", t.offset);
      default:
        throw ParseError("unexpected token '" + t.lexeme + "'", t.offset);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view src) { return Parser(tokenize(src)).run(); }

Jet eval_jet(const Expr& e, const VarsPtr& vars, const std::map<std::string, Jet>& env) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return Jet::constant(vars, e.number);
    case Expr::Kind::Pi:
      return Jet::constant(vars, std::numbers::pi);
    case Expr::Kind::Variable: {
      auto it = env.find(e.name);
      if (it == env.end()) throw EvalError("unbound variable '" + e.name + "'");
      return it->second;
    }
    case Expr::Kind::Neg:
      return -eval_jet(*e.a, vars, env);
    case Expr::Kind::Add:
      return eval_jet(*e.a, vars, env) + eval_jet(*e.b, vars, env);
    case Expr::Kind::Sub:
      return eval_jet(*e.a, vars, env) - eval_jet(*e.b, vars, env);
    case Expr::Kind::Mul:
      return eval_jet(*e.a, vars, env) * eval_jet(*e.b, vars, env);
    case Expr::Kind::Div:
      return eval_jet(*e.a, vars, env) / eval_jet(*e.b, vars, env);
    case Expr::Kind::Pow:
      return pow(eval_jet(*e.a, vars, env), e.number);
    case Expr::Kind::Call: {
      Jet a = eval_jet(*e.a, vars, env);
      if (e.name == "sin") return sin(a);
      if (e.name == "cos") return cos(a);
      if (e.name == "tan") return tan(a);
      if (e.name == "exp") return exp(a);
      if (e.name == "log") return log(a);
      if (e.name == "sqrt") return sqrt(a);
      throw EvalError("unknown function '" + e.name + "'");
    }
  }
  throw Error("expr: corrupt node");
}

double eval_scalar(const Expr& e, const std::map<std::string, double>& env) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return e.number;
    case Expr::Kind::Pi:
      return std::numbers::pi;
    case Expr::Kind::Variable: {
      auto it = env.find(e.name);
      if (it == env.end()) throw EvalError("unbound variable '" + e.name + "'");
      return it->second;
    }
    case Expr::Kind::Neg:
      return -eval_scalar(*e.a, env);
    case Expr::Kind::Add:
      return eval_scalar(*e.a, env) + eval_scalar(*e.b, env);
    case Expr::Kind::Sub:
      return eval_scalar(*e.a, env) - eval_scalar(*e.b, env);
    case Expr::Kind::Mul:
      return eval_scalar(*e.a, env) * eval_scalar(*e.b, env);
    case Expr::Kind::Div: {
      const double d = eval_scalar(*e.b, env);
      if (d == 0.0) throw DomainError("division by zero");
      return eval_scalar(*e.a, env) / d;
    }
    case Expr::Kind::Pow: {
      const double b = eval_scalar(*e.a, env);
      if (b < 0.0 && std::floor(e.number) != e.number) {
        throw DomainError("negative base with a non-integer exponent");
      }
      if (b == 0.0 && e.number < 0.0) throw DomainError("zero base with a negative exponent");
      return std::pow(b, e.number);
    }
    case Expr::Kind::Call: {
      const double a = eval_scalar(*e.a, env);
      if (e.name == "sin") return std::sin(a);
      if (e.name == "cos") return std::cos(a);
      if (e.name == "tan") {
        const double t = std::tan(a);
        if (!std::isfinite(t)) throw DomainError("tan at a pole");
        return t;
      }
      if (e.name == "exp") {
        const double v = std::exp(a);
        if (!std::isfinite(v)) throw DomainError("exp overflow");
        return v;
      }
      if (e.name == "log") {
        if (a <= 0.0) throw DomainError("log of a non-positive value");
        return std::log(a);
      }
      if (e.name == "sqrt") {
        if (a <= 0.0) throw DomainError("sqrt of a non-positive value");
        return std::sqrt(a);
      }
      throw EvalError("unknown function '" + e.name + "'");
    }
  }
  throw Error("expr: corrupt node");
}

namespace {

void collect_vars(const Expr& e, std::set<std::string>& out) {
  switch (e.kind) {
    case Expr::Kind::Variable:
      out.insert(e.name);
      return;
    case Expr::Kind::Number:
    case Expr::Kind::Pi:
      return;
    default:
      if (e.a) collect_vars(*e.a, out);
      if (e.b) collect_vars(*e.b, out);
      return;
  }
}

// Precedence levels used by the printer; higher binds tighter.
int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

void print(const Expr& e, std::string& out) {
  auto child = [&out](const Expr& c, int min_prec) {
    if (precedence(c) < min_prec) {
      out += '(';
      print(c, out);
      out += ')';
    } else {
      print(c, out);
    }
  };
  switch (e.kind) {
    case Expr::Kind::Number:
      out += format_number(e.number);
      return;
    case Expr::Kind::Pi:
      out += "pi";
      return;
    case Expr::Kind::Variable:
      out += e.name;
      return;
    case Expr::Kind::Neg:
      out += '-';
      child(*e.a, 3);
      return;
    case Expr::Kind::Add:
      child(*e.a, 1);
      out += " + ";
      child(*e.b, 2);
      return;
    case Expr::Kind::Sub:
      child(*e.a, 1);
      out += " - ";
      child(*e.b, 2);
      return;
    case Expr::Kind::Mul:
      child(*e.a, 2);
      out += '*';
      child(*e.b, 3);
      return;
    case Expr::Kind::Div:
      child(*e.a, 2);
      out += '/';
      child(*e.b, 3);
      return;
    case Expr::Kind::Pow:
      child(*e.a, 5);
      out += '^';
      out += format_number(e.number);
      return;
    case Expr::Kind::Call:
      out += e.name;
      out += '(';
      print(*e.a, out);
      out += ')';
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool equal(const Expr& x, const Expr& y) {
  if (x.kind != y.kind || x.number != y.number || x.name != y.name) return false;
  if (static_cast<bool>(x.a) != static_cast<bool>(y.a)) return false;
  if (static_cast<bool>(x.b) != static_cast<bool>(y.b)) return false;
  if (x.a && !equal(*x.a, *y.a)) return false;
  if (x.b && !equal(*x.b, *y.b)) return false;
  return true;
}

ExprPtr fold_constants(const ExprPtr& e) {
  if (!e) return e;
  Expr folded = *e;
  folded.a = fold_constants(e->a);
  folded.b = fold_constants(e->b);
  const bool a_num = !folded.a || folded.a->kind == Expr::Kind::Number;
  const bool b_num = !folded.b || folded.b->kind == Expr::Kind::Number;
  const bool leaf_const = folded.kind == Expr::Kind::Pi;
  if ((leaf_const || (folded.kind != Expr::Kind::Number && folded.kind != Expr::Kind::Variable &&
                      a_num && b_num))) {
    try {
      const double v = eval_scalar(folded, {});
      if (std::isfinite(v)) return make({Expr::Kind::Number, v, {}, nullptr, nullptr});
    } catch (const Error&) {
      // domain edge: keep the node unfolded
    }
  }
  return make(std::move(folded));
}

}  // namespace hyperkin::expr
