#pragma once

#include <optional>
#include <vector>

#include "cyclopoint/numbers.hpp"

namespace cyclopoint::zx {

// Dense univariate polynomials, coefficients ascending by degree.
// Invariant everywhere: no trailing zero coefficient; the zero polynomial is {}.
using ZPoly = std::vector<Int>;
using QPoly = std::vector<Rational>;

inline int deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }
inline int deg(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

void normalize(ZPoly& f);
void normalize(QPoly& f);

ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly neg(ZPoly a);
ZPoly scale(ZPoly a, const Int& c);

QPoly qadd(const QPoly& a, const QPoly& b);
QPoly qsub(const QPoly& a, const QPoly& b);
QPoly qmul(const QPoly& a, const QPoly& b);
QPoly qscale(QPoly a, const Rational& c);

// Quotient/remainder over the rationals; b nonzero.
void qdivmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);

// Remainder of a modulo a monic integer polynomial m (deg m >= 1).
QPoly qrem_monic(QPoly a, const ZPoly& m);

// Exact division over Z[x]; returns empty optional when b does not divide a.
std::optional<ZPoly> try_exact_div(const ZPoly& a, const ZPoly& b);

ZPoly derivative(const ZPoly& f);
Int content(const ZPoly& f);
// f / content with positive leading coefficient; zero maps to zero.
ZPoly primitive_part(const ZPoly& f);

Int eval(const ZPoly& f, const Int& x);
// q^deg(f) * f(p/q): integer-valued Horner form.
Int eval_scaled(const ZPoly& f, const Int& p, const Int& q);
Rational eval_q(const QPoly& f, const Rational& x);

// Primitive gcd with positive leading coefficient, by modular images with
// CRT and exact trial-division confirmation.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

// f / gcd(f, f'), primitive with positive leading coefficient.
ZPoly squarefree_part(const ZPoly& f);

// All rational zeros of f (f nonzero), with exact verification. Complete:
// small leading/trailing coefficients go through divisor enumeration, large
// ones through modular root finding with Hensel lifting and rational
// reconstruction.
std::vector<Rational> rational_roots(const ZPoly& f);
std::vector<Rational> rational_roots(const QPoly& f);

// Clear denominators: minimal positive integer multiple of f lying in Z[x].
ZPoly from_q(const QPoly& f);
QPoly to_q(const ZPoly& f);

}  // namespace cyclopoint::zx
