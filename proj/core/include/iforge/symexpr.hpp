#pragma once

#include <string>
#include <string_view>

#include "iforge/errors.hpp"
#include "iforge/polynomial.hpp"
#include "iforge/rational_function.hpp"
#include "iforge/var_table.hpp"

namespace iforge {

/// Parses a polynomial expression.
///
///   expr     := ['-'] term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' uint)?
///   base     := rational | ident | '(' expr ')'
///   rational := int ('/' uint)?
///   ident    := letter (letter | digit | '_')*
///
/// Whitespace is insignificant; implicit multiplication is rejected.
/// Throws SyntaxError, Errc::unknown_variable, Errc::negative_exponent.
Polynomial parse_expr(std::string_view src, const TablePtr& table);

/// Canonical text that parses back to the same polynomial.
std::string render(const Polynomial& p);
/// "num" for polynomials, "(num)/(den)" otherwise.
std::string render(const RationalFunction& f);

/// Parses "num" or a pair of expressions into a reduced rational function.
RationalFunction parse_rational(std::string_view num, std::string_view den, const TablePtr& table);

}  // namespace iforge
