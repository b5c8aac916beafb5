#pragma once

// Recursive-descent parser for the Lagrangian DSL:
//
//   expr     := term (('+' | '-') term)*
//   term     := factor (('*' | '/') factor)*
//   factor   := ('-' | '+') factor | base ('^' exponent)?
//   base     := number | ident | '(' expr ')' | func '(' expr ')'
//   exponent := ('-' | '+')? (number | '(' expr ')')     -- must fold to a constant
//
// Identifiers are t, x1..xn, y1..yn and the constant pi. Functions are
// sin cos tan exp log sqrt abs (and sgn, which differentiation of abs emits).

#include <cctype>
#include <cstdlib>
#include <numbers>
#include <string>
#include <string_view>

#include "jetlag/expr/ast.hpp"

namespace jetlag::expr {

namespace detail {

class Parser {
 public:
  Parser(std::string_view src, int n) : src_(src), n_(n) {}

  Ast parse_all() {
    skip_ws();
    if (at_end()) error(ParseErrorKind::Syntax, "empty expression");
    Ast a = parse_expr();
    skip_ws();
    if (!at_end()) error(ParseErrorKind::Syntax, std::string("unexpected character '") + peek() + "'");
    return a;
  }

 private:
  [[noreturn]] void error(ParseErrorKind kind, const std::string& what) const {
    throw ParseError(kind, line_, col_, what);
  }
  [[noreturn]] void error_at(ParseErrorKind kind, int line, int col, const std::string& what) const {
    throw ParseError(kind, line, col, what);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) error(ParseErrorKind::Syntax, std::string("expected '") + c + "' but reached end of input");
      error(ParseErrorKind::Syntax, std::string("expected '") + c + "' but found '" + peek() + "'");
    }
  }

  Ast parse_expr() {
    std::vector<Ast> terms{parse_term()};
    for (;;) {
      if (accept('+')) terms.push_back(parse_term());
      else if (accept('-')) terms.push_back(negate(parse_term()));
      else break;
    }
    return terms.size() == 1 ? terms[0] : sum(std::move(terms));
  }

  Ast parse_term() {
    Ast acc = parse_factor();
    for (;;) {
      if (accept('*')) acc = mul(acc, parse_factor());
      else if (accept('/')) acc = divide(acc, parse_factor());
      else break;
    }
    return acc;
  }

  Ast parse_factor() {
    if (accept('-')) return negate(parse_factor());
    if (accept('+')) return parse_factor();
    Ast b = parse_base();
    if (accept('^')) {
      skip_ws();
      const int line = line_;
      const int col = col_;
      double sign = 1.0;
      if (accept('-')) sign = -1.0;
      else accept('+');
      skip_ws();
      Ast e;
      if (accept('(')) {
        e = parse_expr();
        expect(')');
      } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
        e = constant(parse_number());
      } else {
        error(ParseErrorKind::NonConstantExponent, "exponent must be a number or a parenthesized constant");
      }
      if (!is_constant(e)) error_at(ParseErrorKind::NonConstantExponent, line, col, "exponent must be constant");
      return power(b, sign * e->value);
    }
    return b;
  }

  double parse_number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    if (peek() == '.') {
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      const std::size_t save = pos_;
      const int save_col = col_;
      advance();
      if (peek() == '+' || peek() == '-') advance();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = save;
        col_ = save_col;
      } else {
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    if (text == ".") error(ParseErrorKind::Syntax, "malformed number");
    return std::strtod(text.c_str(), nullptr);
  }

  Ast parse_base() {
    skip_ws();
    if (at_end()) error(ParseErrorKind::Syntax, "unexpected end of input");
    const char c = peek();
    if (c == '(') {
      advance();
      Ast a = parse_expr();
      expect(')');
      return a;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(parse_number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const int line = line_;
      const int col = col_;
      const std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      const std::string id(src_.substr(start, pos_ - start));
      return resolve(id, line, col);
    }
    error(ParseErrorKind::Syntax, std::string("unexpected character '") + c + "'");
  }

  Ast resolve(const std::string& id, int line, int col) {
    static const std::pair<const char*, Function> functions[] = {
        {"sin", Function::Sin}, {"cos", Function::Cos},   {"tan", Function::Tan}, {"exp", Function::Exp},
        {"log", Function::Log}, {"sqrt", Function::Sqrt}, {"abs", Function::Abs}, {"sgn", Function::Sign}};
    for (const auto& [name, fn] : functions) {
      if (id == name) {
        skip_ws();
        if (peek() != '(') error(ParseErrorKind::Syntax, "expected '(' after function name '" + id + "'");
        advance();
        Ast arg = parse_expr();
        expect(')');
        return call(fn, arg);
      }
    }
    if (id == "t") return variable(0);
    if (id == "pi") return constant(std::numbers::pi);
    if ((id[0] == 'x' || id[0] == 'y') && id.size() > 1) {
      bool digits = true;
      for (std::size_t i = 1; i < id.size(); ++i) digits = digits && std::isdigit(static_cast<unsigned char>(id[i]));
      if (digits && id[1] != '0') {
        const long k = std::strtol(id.c_str() + 1, nullptr, 10);
        if (k < 1 || k > n_)
          error_at(ParseErrorKind::IndexOutOfRange, line, col,
                   "index out of range: '" + id + "' (dimension is " + std::to_string(n_) + ")");
        return variable(id[0] == 'x' ? static_cast<int>(k) : n_ + static_cast<int>(k));
      }
    }
    error_at(ParseErrorKind::UnknownIdentifier, line, col, "unknown identifier '" + id + "'");
  }

  std::string_view src_;
  int n_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace detail

/// Parses DSL text over (t, x1..xn, y1..yn).
inline Ast parse_ast(std::string_view source, int n) {
  if (n < 1 || 2 * n + 1 > kMaxVariables) throw InvalidArgument("dimension must be in [1, 31]");
  return detail::Parser(source, n).parse_all();
}

}  // namespace jetlag::expr
