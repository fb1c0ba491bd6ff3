#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "cyclopoint/cyclotomic.hpp"
#include "cyclopoint/metallic.hpp"
#include "cyclopoint/numbers.hpp"
#include "cyclopoint/poly.hpp"
#include "cyclopoint/root_of_unity.hpp"

namespace cyclopoint::diagonals {

// The two summand exponents (e1, e2) mod 4n with
// |1 - zeta_n^a| = zeta_4n^e1 + zeta_4n^e2 and zeta_4n^e1 * zeta_4n^e2 = 1;
// the identity is re-verified by squaring on every call. Throws
// std::invalid_argument when a = 0 mod n.
std::pair<long, long> diagonal_rep(long n, long a);

// The eight-term Laurent polynomial over {x1, x2, y1, y2} whose root-of-unity
// zeros govern coincidences between diagonal ratios:
// sum of v + 1/v over the four products x1*y2, x1/y2, x2*y1, x2/y1.
poly::SparsePoly quadruple_poly();

// A root-of-unity zero of quadruple_poly. The stored tuple represents the
// four simultaneous pair negations (x1,y2) -> -(x1,y2), (x2,y1) -> -(x2,y1)
// as well, which never change the polynomial's value.
struct QuadrupleSolution {
  RootOfUnity x1, x2, y1, y2;
  bool sign_orbit = true;
  friend bool operator==(const QuadrupleSolution&, const QuadrupleSolution&) = default;
};

CycloElement quadruple_value(const QuadrupleSolution& q);
bool is_quadruple_solution(const QuadrupleSolution& q);

// The seven invariance transforms of quadruple_poly, numbered 1 through 7:
// pair swap, single inversions, and the cross exchanges between the x and y
// slots. apply_symmetry_poly(f, op) rewrites any polynomial over the same
// variables; applying it to quadruple_poly returns quadruple_poly.
poly::SparsePoly apply_symmetry_poly(const poly::SparsePoly& f, int op);
QuadrupleSolution apply_symmetry(const QuadrupleSolution& q, int op);

// A rational zero of cos(pi*A) + cos(pi*B) + cos(pi*C) + cos(pi*D):
// the two parametric families and the ten sporadic quadruples. values holds
// the sorted multiset {A,B,C,D} in [0,2); params keeps the instantiating
// (alpha[, beta]) for family entries.
enum class CJKind { family1, family2, sporadic };
struct CJSolution {
  CJKind kind = CJKind::sporadic;
  std::array<Rational, 4> values{};
  std::vector<Rational> params{};
};

// The cosine sum as an exact cyclotomic number (zero for every valid entry).
CycloElement cj_value(const CJSolution& s);

// Sporadics plus both families instantiated over all parameters with
// denominator at most denominator_bound, deduplicated by value multiset;
// every returned entry is verified to sum to zero.
std::vector<CJSolution> cj_solutions(long denominator_bound);

// The six parametric solution families: a1-a3 take one root of unity, b1-b3
// take two. Every instantiation is verified exactly before being returned.
enum class FamilyKind { a1, a2, a3, b1, b2, b3 };
QuadrupleSolution lemma42_family(FamilyKind kind, const RootOfUnity& p,
                                 const RootOfUnity& q = RootOfUnity());

// The thirty tabulated sporadic quadruples. Rows failing exact verification
// are returned with verified = false rather than repaired or dropped.
struct Lemma42Row {
  int index = 0;
  QuadrupleSolution quad;
  bool verified = false;
};
std::vector<Lemma42Row> lemma42_solutions();

// All quadruples obtained from an instantiated cosine solution by assigning
// its four terms, permuted and sign-twisted, to the four product equations
// and taking both square roots per pair; results are verified and deduplicated.
std::vector<QuadrupleSolution> solve_quadruple_from_cj(const CJSolution& cj,
                                                       const std::array<int, 4>& perm,
                                                       const std::array<int, 4>& signs);

// Smallest unit k mod twoN with a*k = N+a and b*k = N+b (mod twoN, N = twoN/2),
// the congruence detecting a conjugation-type automorphism fixing the ratio.
std::optional<long> defective_congruence(long twoN, long a, long b);

// A ratio is defective when it fails to generate Q[d1, d2]: either the two
// diagonals coincide, or some unit k mod 4n negates both chords, meaning
// k*u = u + 2n or -u + 2n for u = n-2a and likewise for n-2b. The reported
// witness prefers the like-signed congruence k*u = u + 2n when solvable.
struct Defectiveness {
  enum class Kind { trivially, by_k, not_defective } kind = Kind::not_defective;
  std::optional<long> k{};
};
Defectiveness is_defective(long n, long a, long b);

// Ratio-fixing maps counted at the 4n-th cyclotomic level: chord-negating
// units k (both sign classes), halved because k and -k restrict to the same
// real map, plus the identity. Requires gcd(a,b) = 1 and distinct diagonals.
long count_fixing_automorphisms(long n, long a, long b);

// [Q[d1/d2] : Q], exactly. Odd n with distinct diagonals uses the closed
// formula phi(4n)/4, cross-checked against the minimal-polynomial oracle
// while 4n <= oracle_limit; even n always asks the oracle and asserts the
// proven lower bound 10*degree >= phi(4n). Coinciding diagonals give 1.
struct RatioDegree {
  long degree = 1;
  enum class Method { formula_odd, oracle } method = Method::oracle;
};
RatioDegree ratio_degree(long n, long a, long b, long oracle_limit = 240);

// Union of realizable means over all polygons with at most nmax vertices;
// delegates to the coprime diagonal-pair scan.
std::vector<metallic::MetallicParam> theorem11_scan(long nmax, int jobs = 0);

// phi(n) >= 48 * (n/210)^(12/13), compared via the equivalent integer
// inequality phi(n)^13 * 210^12 >= 48^13 * n^12.
bool totient_bound_check(long n);

}  // namespace cyclopoint::diagonals
