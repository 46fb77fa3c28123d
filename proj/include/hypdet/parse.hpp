#pragma once

// Recursive-descent parser for polynomial text. Grammar:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := number | 'i' | var | '(' expr ')'
//   number := int | int '/' int | decimal
//
// The leading sign and scientific notation in decimals go slightly beyond
// the minimum grammar; both only widen the set of accepted inputs. '/' is a
// rational literal separator, not an operator, so "x/2" is rejected.
// Rational literals are converted to double at parse time.

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly.hpp"

namespace hypdet {

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& what, std::size_t p)
      : std::runtime_error(what + " at position " + std::to_string(p)), pos(p) {}
};

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string& text, const std::vector<std::string>& names)
      : s_(text), names_(names) {}

  Poly run() {
    Poly p = expr();
    skip_ws();
    if (at_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[at_]) + "'", at_);
    return p;
  }

 private:
  const std::string& s_;
  const std::vector<std::string>& names_;
  std::size_t at_ = 0;

  int nvars() const { return int(names_.size()); }

  void skip_ws() {
    while (at_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[at_]))) ++at_;
  }

  bool peek(char c) {
    skip_ws();
    return at_ < s_.size() && s_[at_] == c;
  }

  bool eat(char c) {
    if (!peek(c)) return false;
    ++at_;
    return true;
  }

  Poly expr() {
    skip_ws();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    Poly b = base();
    if (eat('^')) {
      skip_ws();
      std::size_t start = at_;
      if (at_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[at_])))
        throw ParseError("expected exponent digits after '^'", at_);
      long e = 0;
      while (at_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[at_]))) {
        e = e * 10 + (s_[at_] - '0');
        if (e > 1000) throw ParseError("exponent too large", start);
        ++at_;
      }
      b = pow_poly(b, int(e));
    }
    return b;
  }

  Poly base() {
    skip_ws();
    if (at_ >= s_.size()) throw ParseError("unexpected end of input", at_);
    char c = s_[at_];
    if (c == '(') {
      std::size_t open = at_;
      ++at_;
      Poly p = expr();
      if (!eat(')')) throw ParseError("unclosed parenthesis", open);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = at_;
      std::string id;
      while (at_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[at_])) || s_[at_] == '_')) {
        id += s_[at_];
        ++at_;
      }
      if (id == "i") return poly_const(nvars(), cd(0.0, 1.0));
      for (int j = 0; j < nvars(); ++j)
        if (names_[j] == id) {
          Expt e(nvars(), 0);
          e[j] = 1;
          return poly_monomial(nvars(), e, 1.0);
        }
      throw ParseError("unknown variable '" + id + "'", start);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", at_);
  }

  Poly number() {
    std::size_t start = at_;
    std::string digits;
    while (at_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[at_]))) {
      digits += s_[at_];
      ++at_;
    }
    bool decimal = false;
    std::string text = digits;
    if (at_ < s_.size() && s_[at_] == '.') {
      decimal = true;
      text += '.';
      ++at_;
      while (at_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[at_]))) {
        text += s_[at_];
        ++at_;
      }
    }
    if (at_ < s_.size() && (s_[at_] == 'e' || s_[at_] == 'E')) {
      std::size_t save = at_;
      std::string ex;
      ex += s_[at_++];
      if (at_ < s_.size() && (s_[at_] == '+' || s_[at_] == '-')) ex += s_[at_++];
      if (at_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[at_]))) {
        while (at_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[at_]))) ex += s_[at_++];
        decimal = true;
        text += ex;
      } else {
        at_ = save;  // the 'e' belongs to an identifier or is an error downstream
      }
    }
    if (text.empty() || text == ".") throw ParseError("malformed number", start);
    if (!decimal && at_ < s_.size() && s_[at_] == '/' && at_ + 1 < s_.size() &&
        std::isdigit(static_cast<unsigned char>(s_[at_ + 1]))) {
      ++at_;
      std::string den;
      while (at_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[at_]))) {
        den += s_[at_];
        ++at_;
      }
      double dv = std::stod(den);
      if (dv == 0.0) throw ParseError("zero denominator", start);
      return poly_const(nvars(), cd(std::stod(text) / dv, 0.0));
    }
    return poly_const(nvars(), cd(std::stod(text), 0.0));
  }
};

}  // namespace detail

inline Poly parse_poly(const std::string& text, const std::vector<std::string>& var_names) {
  detail::PolyParser p(text, var_names);
  return p.run();
}

}  // namespace hypdet
