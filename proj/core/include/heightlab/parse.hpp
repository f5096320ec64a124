#pragma once

// Polynomial grammar:
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*      ('/' only by nonzero constants)
//   factor := ('+' | '-') factor | power
//   power  := atom ('^' integer)?
//   atom   := integer | variable | '(' expr ')'
// Variables are x, t, and indexed names x<k>, u<k>, y<k>. Whitespace is
// ignored.

#include <string>
#include <string_view>
#include <vector>

#include "heightlab/poly.hpp"

namespace heightlab {

/// Parses `text` over the given variable list. Throws SyntaxError (with the
/// byte position) or UnknownVariable.
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars);

UniPoly parse_uni(std::string_view text, const std::string& var = "x");
BiPoly parse_bi(std::string_view text, const std::string& xvar = "x", const std::string& tvar = "t");

/// Variables that occur in `text`, ordered x, t, then indexed families by
/// family and index. Indexed families are filled in from index 0 up to the
/// largest index seen.
std::vector<std::string> scan_variables(std::string_view text);

}  // namespace heightlab
