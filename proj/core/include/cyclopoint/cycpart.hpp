#pragma once

#include <vector>

#include "cyclopoint/cxpoly.hpp"
#include "cyclopoint/poly.hpp"
#include "cyclopoint/root_of_unity.hpp"

namespace cyclopoint::cycpart {

// The squarefree product of the cyclotomic factors of the input, with the
// full root list. part = product of (x - zeta) over roots; every root is
// re-verified against the input by exact evaluation.
struct CyclotomicPartResult {
  poly::SparsePoly part;
  std::vector<RootOfUnity> roots;    // sorted by (order, exp)
  std::vector<long> conductors;      // sorted, distinct orders with Phi_n | f
};

// All n with phi(n) <= d. phi(n) >= sqrt(n/2) makes n <= 2d^2 a complete
// enumeration window.
std::vector<long> conductor_candidates(long d);
// Same, additionally clipped to n <= cap (cap < 1 means no cap). The cap
// sacrifices completeness and exists for exploratory runs only.
std::vector<long> conductor_candidates(long d, long cap);

// g with g(x^2) = +-f(x)*f(-x); the roots of g are the squares of the
// roots of f. Sign fixed so the leading coefficient stays positive-squared.
poly::SparsePoly graeffe(const poly::SparsePoly& f);

// Trial division by Phi_n over the full candidate window.
CyclotomicPartResult cyclotomic_part_baseline(const poly::SparsePoly& f);
// Graeffe/gcd filter narrowing the window before trial division. Must agree
// with the baseline everywhere; the test corpus checks that.
CyclotomicPartResult cyclotomic_part(const poly::SparsePoly& f);

CyclotomicPartResult cyclotomic_part_baseline(const poly::SparsePoly& f, long cap);
CyclotomicPartResult cyclotomic_part(const poly::SparsePoly& f, long cap);

struct FieldCyclotomicPartResult {
  CxPoly part;
  std::vector<RootOfUnity> roots;
  std::vector<long> conductors;
};

// Cyclotomic roots of a polynomial with cyclotomic-field coefficients:
// push the full Galois-conjugate product down to Q, find its cyclotomic
// part, then keep exactly the roots that satisfy f itself.
FieldCyclotomicPartResult cyclotomic_part_over_field(const CxPoly& f);
FieldCyclotomicPartResult cyclotomic_part_over_field(const CxPoly& f, long cap);

}  // namespace cyclopoint::cycpart
