#pragma once

// Recursive-descent parser for polynomial expressions:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := ('-' | '+') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer ('/' integer)? | identifier | '(' expr ')'
//
// Multiplication must be explicit; "2x" and "x y" are rejected.

#include <cctype>
#include <string>
#include <string_view>

#include "betainv/ring/polynomial.hpp"

namespace betainv {

class ParseError : public Error {
 public:
  ParseError(std::size_t column, const std::string& msg)
      : Error(ErrorKind::input, "syntax error at column " + std::to_string(column) + ": " + msg),
        column_(column) {}
  /// 1-based column of the offending character (one past the end for EOF).
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

namespace detail {

template <class C>
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, RingPtr<C> ring) : s_(text), ring_(std::move(ring)) {}

  Polynomial<C> parse() {
    Polynomial<C> p = expr();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_ + 1, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial<C> expr() {
    Polynomial<C> acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  Polynomial<C> term() {
    Polynomial<C> acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
        continue;
      }
      skip_ws();
      if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '(')) {
        fail("implicit multiplication is not allowed; use '*'");
      }
      return acc;
    }
  }

  Polynomial<C> unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial<C> power() {
    Polynomial<C> base = atom();
    if (accept('^')) {
      skip_ws();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        fail("expected a non-negative integer exponent");
      }
      const std::string digits = read_digits();
      if (digits.size() > 4) fail("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Polynomial<C> atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial<C> inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value{Integer(read_digits())};
      // Rational literal "p/q" binds tighter than any operator.
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          fail("expected a denominator");
        }
        Integer den(read_digits());
        if (den == 0) fail("zero denominator");
        value = Rational(value.get_num(), den);
        value.canonicalize();
      }
      return Polynomial<C>::constant(ring_, ring_->field().from_rational(value));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      return Polynomial<C>::variable(ring_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  RingPtr<C> ring_;
};

}  // namespace detail

template <class C>
Polynomial<C> parse(std::string_view text, const RingPtr<C>& ring) {
  return detail::ExpressionParser<C>(text, ring).parse();
}

inline QPoly parse(std::string_view text, const std::vector<std::string>& variables) {
  return parse<Rational>(text, QRing::make(variables));
}

}  // namespace betainv
