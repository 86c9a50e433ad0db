#pragma once

#include <functional>
#include <string>

namespace wavend {

/// Parses an arithmetic expression in the variable x into a callable.
/// Supported: numbers, x, pi, + - * / ^, parentheses, unary minus, and
/// sin cos tan sec sinh cosh exp log sqrt abs. Throws ConfigError on
/// malformed input.
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace wavend
