#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclopoint/cyclotomic.hpp"
#include "cyclopoint/numbers.hpp"
#include "cyclopoint/poly.hpp"

namespace cyclopoint::metallic {

// Generalized metallic mean y0 = sign * sqrt(a), the larger root of
// t^2 - y0*t - 1. Invariants: a >= 0, sign is +1 or -1, and a == 0 carries
// the canonical sign +1.
struct MetallicParam {
  Rational a{0};
  int sign = 1;

  friend bool operator==(const MetallicParam&, const MetallicParam&) = default;
};

// Ascending by a, positive sign first for equal a.
bool param_less(const MetallicParam& u, const MetallicParam& v);

// Simplified surd text: "0", "-3/2", "sqrt(2)", "2*sqrt(3)/3", "-sqrt(2)/2".
std::string to_string(const MetallicParam& p);

// The mean itself as an exact cyclotomic number.
CycloElement param_value(const MetallicParam& p);

// A ratio of two regular-polygon diagonals |1 - zeta_n^a_exp| / |1 - zeta_n^b_exp|.
struct Realization {
  long n = 3;
  long a_exp = 1;
  long b_exp = 1;
  friend bool operator==(const Realization&, const Realization&) = default;
};

// |1 - zeta_n^e| = 2 sin(pi e / n) as an element of Q(zeta_4n); e is reduced
// into [0, n), and e = 0 mod n gives zero.
CycloElement diagonal_length(long n, long e);

// The constraint polynomial tying a squared parameter s to a torus point
// (x, y): its zeros with x, y roots of unity and s rational nonnegative are
// exactly the means realizable as diagonal ratios. Linear in s.
poly::SparsePoly build_metallic_constraint();

// Rebuilds the constraint from scratch: substitute r^2 = (1-x)(1-1/x) /
// ((1-y)(1-1/y)) into r^2 + r^-2 - s - 2 and clear denominators. Throws
// verification_error unless the result matches build_metallic_constraint().
poly::SparsePoly derive_metallic_constraint();

// Every mean realizable as a ratio of two regular-polygon diagonals, from the
// torus-point solver applied to the constraint. Sorted by param_less.
std::vector<MetallicParam> classify_metallic();

// The squared deviation (r - 1/r)^2 of the diagonal ratio when it is
// rational, tested inside Q(zeta_n) without any field inversion. Exponents
// must be nonzero mod n.
std::optional<Rational> squared_deviation(long n, long a_exp, long b_exp);

// The mean realized by the diagonal ratio of the n-gon, when the squared
// deviation is rational; the sign comes from exact folded-chord comparison.
// Throws std::invalid_argument for exponents divisible by n.
std::optional<MetallicParam> is_metallic_ratio(long n, long a_exp, long b_exp);

// The ten positive-mean realizations, each verified exactly against
// r^2 - y0*r - 1 = 0 in the compositum field; failure aborts.
std::vector<std::pair<MetallicParam, Realization>> realization_table();

// All means realized by coprime diagonal pairs of n-gons with n <= nmax,
// deduplicated and sorted. Parallel over n; jobs <= 0 picks a hardware
// default. The result is deterministic regardless of jobs.
std::vector<MetallicParam> scan_metallic(long nmax, int jobs = 0);

}  // namespace cyclopoint::metallic
