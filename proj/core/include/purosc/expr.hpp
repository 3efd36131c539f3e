#pragma once

#include <functional>
#include <string_view>

namespace purosc {

/// Compiles a scalar expression in the variable t into a callable.
/// Grammar: numbers, t, + - * /, parentheses, unary minus, and the functions
/// exp, sin, cos, coth. Throws ParseError on malformed input.
std::function<double(double)> parse_time_expr(std::string_view text);

}  // namespace purosc
