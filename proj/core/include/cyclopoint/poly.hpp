#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclopoint/numbers.hpp"
#include "cyclopoint/zx.hpp"

namespace cyclopoint::poly {

// Sparse multivariate polynomial over Q with a fixed, ordered variable list.
// Exponent vectors always have length vars.size(); no zero coefficients are
// stored. Negative exponents are allowed (Laurent form); every operation that
// requires an ordinary polynomial says so and rejects negative exponents.
struct SparsePoly {
  std::vector<std::string> vars;
  std::map<std::vector<int>, Rational> terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;
};

SparsePoly zero(std::vector<std::string> vars);
SparsePoly constant(std::vector<std::string> vars, const Rational& c);
SparsePoly monomial(std::vector<std::string> vars, std::vector<int> exps,
                    const Rational& c);
SparsePoly variable(std::vector<std::string> vars, const std::string& name);

// Index of name in f.vars; throws std::invalid_argument for unknown names.
int var_index(const SparsePoly& f, const std::string& name);

bool is_constant(const SparsePoly& f);
// The value of a constant polynomial (zero included).
Rational constant_value(const SparsePoly& f);

// Degree in one variable; -1 for the zero polynomial.
int degree(const SparsePoly& f, const std::string& var);
int degree(const SparsePoly& f, int var);
// Smallest exponent of var over the support; 0 for the zero polynomial.
int min_exponent(const SparsePoly& f, int var);

SparsePoly add(const SparsePoly& a, const SparsePoly& b);
SparsePoly sub(const SparsePoly& a, const SparsePoly& b);
SparsePoly mul(const SparsePoly& a, const SparsePoly& b);
SparsePoly neg(SparsePoly a);
SparsePoly scale(SparsePoly a, const Rational& c);
SparsePoly pow(const SparsePoly& a, int k);

// Exact multivariate division (ordinary polynomials only).
std::optional<SparsePoly> try_exact_div(const SparsePoly& a, const SparsePoly& b);
// Throws verification_error when b does not divide a.
SparsePoly exact_div(const SparsePoly& a, const SparsePoly& b);

enum class SignMode { neg, square, neg_square };

// var -> -var, var -> var^2, or var -> -var^2.
SparsePoly substitute_signed(const SparsePoly& f, const std::string& var,
                             SignMode mode);

// Substitute a rational value for one variable (kept in the variable list
// with exponent zero). Negative exponents require value != 0.
SparsePoly eval_var(const SparsePoly& f, const std::string& var, const Rational& value);

SparsePoly derivative(const SparsePoly& f, const std::string& var);

// Coefficients with respect to one variable: exponent of var -> coefficient
// polynomial (var cleared to exponent zero). Absent keys are zero.
std::map<int, SparsePoly> coeffs_wrt(const SparsePoly& f, int var);
SparsePoly coeff_wrt(const SparsePoly& f, int var, int k);
SparsePoly lead_coeff_wrt(const SparsePoly& f, int var);

// Scale by the unique positive rational giving coprime integer coefficients,
// then fix the sign so the graded-lex leading coefficient is positive.
SparsePoly normalize_primitive(const SparsePoly& f);

// GCD of the coefficient polynomials of f with respect to var.
SparsePoly content_wrt(const SparsePoly& f, int var);
SparsePoly primitive_wrt(const SparsePoly& f, int var);

// lc(b)^(deg a - deg b + 1) * a modulo b, in var; the fraction-free remainder.
SparsePoly pseudo_rem(const SparsePoly& a, const SparsePoly& b, int var);

// Primitive GCD with positive leading rational coefficient, by subresultant
// pseudo-remainder sequences recursing on the coefficient ring.
SparsePoly gcd(const SparsePoly& f, const SparsePoly& g, const std::string& main_var);
// Variant that picks the first occurring variable itself.
SparsePoly gcd_any(const SparsePoly& f, const SparsePoly& g);

// f / gcd(f, df/dvar), normalized primitive.
SparsePoly squarefree_part(const SparsePoly& f, const std::string& var);

// Sylvester determinant in var by fraction-free (Bareiss) elimination.
// Both inputs need positive degree in var; the result may be identically zero.
SparsePoly resultant(const SparsePoly& f, const SparsePoly& g, const std::string& var);

// All rational zeros of a polynomial in at most one effective variable.
std::vector<Rational> rational_roots(const SparsePoly& h);

// m = gcd of all exponents of var (terms free of var contribute 0); for m >= 2
// the returned g satisfies g with var^m substituted = f. Requires positive
// degree in var.
std::pair<int, SparsePoly> exponent_gcd_decompose(const SparsePoly& f,
                                                  const std::string& var);

// Clear negative exponents by multiplying with the minimal monomial.
SparsePoly monomial_clear(const SparsePoly& f);

// Divide out the largest monomial dividing f; returns the removed exponents.
// Ordinary polynomials only.
std::pair<std::vector<int>, SparsePoly> strip_monomial(const SparsePoly& f);

// Rename-and-invert map for Laurent symmetries: term exponent e contributes
// (inverted ? -e : e) to the destination variable slot.
SparsePoly remap_vars(const SparsePoly& f,
                      const std::vector<std::pair<int, bool>>& dest);

// Graded-lex descending canonical text, e.g. "-1*n^2*x^3 + 1*x^2 + 2".
std::string to_string(const SparsePoly& f);

}  // namespace cyclopoint::poly
