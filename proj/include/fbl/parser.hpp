#pragma once

#include <cstddef>
#include <string_view>

#include "fbl/expr.hpp"

namespace fbl {

/// Parses the ASCII lattice-term grammar over generators x1..xn.
///
///   expr    := join (('+' | '-') join)*
///   join    := meet ('v' meet)*
///   meet    := unary ('/\' unary)*
///   unary   := '-' unary | coeff '*' unary | primary
///   coeff   := number | '(' '-'? number ')'
///   primary := 'x' digits | '0' | '(' expr ')' | '|' expr '|'
///   number  := digits ('/' digits)?
///
/// Scalar multiplication binds tightest, then unary minus and |.|, then /\,
/// then v, then + and -. Binary operators are left-associative. A bare
/// constant other than 0 is rejected since it is not homogeneous.
///
/// Throws ParseError (with a character offset) or DimensionError.
Expr parse_expr(std::string_view text, std::size_t n);

}  // namespace fbl
