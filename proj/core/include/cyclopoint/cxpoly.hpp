#pragma once

#include <optional>
#include <vector>

#include "cyclopoint/cyclotomic.hpp"
#include "cyclopoint/zx.hpp"

namespace cyclopoint {

// Dense univariate polynomial with cyclotomic-field coefficients, ascending
// by degree, no trailing zero coefficient. This is the working form for the
// steps that evaluate a curve at a fixed root of unity.
using CxPoly = std::vector<CycloElement>;

void cx_normalize(CxPoly& f);
inline int cx_deg(const CxPoly& f) { return static_cast<int>(f.size()) - 1; }

CxPoly cx_from_q(const zx::QPoly& f);

CxPoly cx_add(const CxPoly& a, const CxPoly& b);
CxPoly cx_sub(const CxPoly& a, const CxPoly& b);
CxPoly cx_mul(const CxPoly& a, const CxPoly& b);
CxPoly cx_neg(CxPoly a);
CxPoly cx_scale(CxPoly a, const CycloElement& c);

// Divide by the leading coefficient; f nonzero.
CxPoly cx_monic(const CxPoly& f);

// Field division: a = q*b + r with deg r < deg b; b nonzero.
void cx_divmod(const CxPoly& a, const CxPoly& b, CxPoly& q, CxPoly& r);

// Monic gcd by the Euclidean algorithm; gcd(0,0) = 0.
CxPoly cx_gcd(CxPoly a, CxPoly b);

CxPoly cx_derivative(const CxPoly& f);
CycloElement cx_eval(const CxPoly& f, const CycloElement& x);

// Coefficient-wise Galois action zeta -> zeta^k.
CxPoly cx_galois(const CxPoly& f, long k);

// The rational image when every coefficient is rational.
std::optional<zx::QPoly> cx_as_rational(const CxPoly& f);

// lcm of the coefficient conductors (1 for the zero polynomial).
long cx_conductor(const CxPoly& f);

}  // namespace cyclopoint
