#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "ellsurf/errors.hpp"
#include "ellsurf/ratfunc.hpp"

namespace ellsurf {

namespace detail {

// Recursive-descent parser for expressions in t:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/' | <juxtaposition>) unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' ['-'] integer)?
//   primary := integer | 't' | '(' expr ')'
class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : src_(src) {}

  RatFunc parse() {
    RatFunc v = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError,
                msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(src_) + "\"");
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  RatFunc expr() {
    RatFunc acc = term();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= unary();
      } else if (c == '/') {
        ++pos_;
        RatFunc d = unary();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else if (c == 't' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
        acc *= unary();
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  RatFunc power() {
    RatFunc base = primary();
    if (peek() != '^') return base;
    ++pos_;
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    } else if (peek() == '(') {
      ++pos_;
      bool inner_neg = false;
      if (peek() == '-') {
        inner_neg = true;
        ++pos_;
      }
      long e = integer_literal().get_si();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return base.pow(inner_neg ? -e : e);
    }
    Integer e = integer_literal();
    if (e > 100000) fail("exponent too large");
    long ev = e.get_si();
    if (neg && base.is_zero()) fail("division by zero");
    return base.pow(neg ? -ev : ev);
  }

  Integer integer_literal() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(src_.substr(start, pos_ - start)));
  }

  RatFunc primary() {
    char c = peek();
    if (c == 't') {
      ++pos_;
      return RatFunc::t();
    }
    if (c == '(') {
      ++pos_;
      RatFunc v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RatFunc(Rat(integer_literal()));
    fail("expected number, 't' or '('");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RatFunc parse_ratfunc(std::string_view s) { return detail::ExprParser(s).parse(); }

inline Poly parse_poly(std::string_view s) {
  RatFunc f = parse_ratfunc(s);
  if (!f.is_polynomial())
    throw Error(ErrorCode::ParseError, "expected a polynomial, got \"" + std::string(s) + "\"");
  return f.num();
}

}  // namespace ellsurf
