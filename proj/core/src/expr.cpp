#include "purosc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "purosc/errors.hpp"

namespace purosc {

namespace {

using Fn = std::function<double(double)>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Fn parse() {
    Fn f = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return f;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << "expression error at offset " << pos_ << ": " << what << " in \""
        << std::string(text_) << "\"";
    throw ParseError(msg.str());
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char ch) {
    if (peek() == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Fn expression() {
    Fn lhs = term();
    while (true) {
      if (consume('+')) {
        Fn rhs = term();
        lhs = [lhs, rhs](double t) { return lhs(t) + rhs(t); };
      } else if (consume('-')) {
        Fn rhs = term();
        lhs = [lhs, rhs](double t) { return lhs(t) - rhs(t); };
      } else {
        return lhs;
      }
    }
  }

  Fn term() {
    Fn lhs = unary();
    while (true) {
      if (consume('*')) {
        Fn rhs = unary();
        lhs = [lhs, rhs](double t) { return lhs(t) * rhs(t); };
      } else if (consume('/')) {
        Fn rhs = unary();
        lhs = [lhs, rhs](double t) { return lhs(t) / rhs(t); };
      } else {
        return lhs;
      }
    }
  }

  Fn unary() {
    if (consume('-')) {
      Fn inner = unary();
      return [inner](double t) { return -inner(t); };
    }
    if (consume('+')) return unary();
    return primary();
  }

  Fn primary() {
    const char ch = peek();
    if (ch == '(') {
      ++pos_;
      Fn inner = expression();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      return number();
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) return identifier();
    fail("expected a number, 't', a function, or '('");
  }

  Fn number() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return [v](double) { return v; };
  }

  Fn identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "t") return [](double t) { return t; };
    if (!consume('(')) fail("expected '(' after function name '" + name + "'");
    Fn arg = expression();
    if (!consume(')')) fail("expected ')'");
    if (name == "exp") {
      return [arg](double t) { return std::exp(arg(t)); };
    }
    if (name == "sin") {
      return [arg](double t) { return std::sin(arg(t)); };
    }
    if (name == "cos") {
      return [arg](double t) { return std::cos(arg(t)); };
    }
    if (name == "coth") {
      return [arg](double t) { return 1.0 / std::tanh(arg(t)); };
    }
    fail("unknown function '" + name + "'");
  }
};

}  // namespace

std::function<double(double)> parse_time_expr(std::string_view text) {
  return Parser(text).parse();
}

}  // namespace purosc
