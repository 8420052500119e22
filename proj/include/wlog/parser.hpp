#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wlog/polynomial.hpp"

namespace wlog {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

/// Parses the ASCII expression grammar: integers, rationals `a/b`,
/// named variables, `+ - * ^`, parentheses. `^` takes a nonnegative
/// integer literal; multiplication is always explicit.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars);

/// Comma-separated list of expressions over a shared variable set.
std::vector<Polynomial> parse_polynomial_list(const std::string& text,
                                              const std::vector<std::string>& vars);

/// Splits "x,y,z" into names, validating identifier syntax and distinctness.
std::vector<std::string> parse_var_names(const std::string& text);

}  // namespace wlog
