#include "conelab/expression.hpp"

#include "conelab/error.hpp"

#include <cctype>

namespace conelab {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& symbols, std::size_t rank)
      : text_(text), symbols_(symbols), rank_(rank) {}

  DivisorClass run() {
    DivisorClass total = DivisorClass::zero(rank_);
    skip();
    if (pos_ == text_.size()) fail("empty expression");
    bool first = true;
    while (pos_ < text_.size()) {
      Rational sgn = 1;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sgn = -1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      total += sgn * term();
      skip();
    }
    return total;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::invalid_argument,
                "expression \"" + std::string(text_) + "\" at offset " + std::to_string(pos_) + ": " + what);
  }

  DivisorClass term() {
    Rational coef = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (peek() == '/') {
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("denominator expected");
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
      coef = parse_rational(text_.substr(start, pos_ - start));
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
      }
    }
    if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("symbol expected");
    std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '\'' || peek() == '~') ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    auto it = symbols_.find(name);
    if (it == symbols_.end()) fail("unknown symbol " + name);
    if (it->second.size() != rank_) fail("symbol " + name + " has the wrong rank");
    return coef * it->second;
  }

  std::string_view text_;
  const SymbolTable& symbols_;
  std::size_t rank_;
  std::size_t pos_ = 0;
};

}  // namespace

DivisorClass parse_class_expression(std::string_view text, const SymbolTable& symbols, std::size_t rank) {
  return Parser(text, symbols, rank).run();
}

std::string format_class(const DivisorClass& c, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Rational& a = c[i];
    if (a == 0) continue;
    if (a < 0) {
      s += "-";
    } else if (!s.empty()) {
      s += "+";
    }
    Rational m = abs(a);
    if (m != 1) s += to_string(m);
    s += i < names.size() ? names[i] : "e" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

}  // namespace conelab
