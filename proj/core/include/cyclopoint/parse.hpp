#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cyclopoint/poly.hpp"

namespace cyclopoint {

// Expression syntax error; every message carries a 1-based column prefix.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The admissible variable names, in canonical order: n, s, x, y, x1, x2, y1, y2.
const std::vector<std::string>& poly_variables();

// Parse an arithmetic expression over the admissible variables into a sparse
// polynomial carrying the full canonical variable list. Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := int | var | '(' expr ')' | '-' atom
// Multiplication is always explicit; juxtaposition is rejected. The sign in
// '-' atom binds before exponentiation, so "-x^2" squares the negated atom.
poly::SparsePoly parse_poly(const std::string& text);

// Canonical text form; integer-coefficient output re-parses to an equal
// polynomial.
std::string render_poly(const poly::SparsePoly& f);

}  // namespace cyclopoint
