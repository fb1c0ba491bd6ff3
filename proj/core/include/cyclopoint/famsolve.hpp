#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cyclopoint/poly.hpp"
#include "cyclopoint/root_of_unity.hpp"

namespace cyclopoint::famsolve {

// Parameter slot: a fixed rational value or free over all of Q.
struct ParamSlot {
  bool is_free = true;
  Rational value{0};

  static ParamSlot free_slot() { return {}; }
  static ParamSlot fixed(Rational v) { return {false, std::move(v)}; }
  friend bool operator==(const ParamSlot&, const ParamSlot&) = default;
};

// Coordinate slot: a fixed root of unity or free over all roots of unity.
struct CoordSlot {
  bool is_free = true;
  RootOfUnity value{};

  static CoordSlot free_slot() { return {}; }
  static CoordSlot fixed(RootOfUnity v) { return {false, v}; }
  friend bool operator==(const CoordSlot&, const CoordSlot&) = default;
};

// Multiplicative link between two free coordinates: x^p * y^q = mu.
// Canonical form: gcd(p,q) = 1, p > 0, and both p and q nonzero (a relation
// with a zero exponent collapses into a fixed coordinate instead).
struct CosetRel {
  long p = 0;
  long q = 0;
  RootOfUnity mu{};
  friend bool operator==(const CosetRel&, const CosetRel&) = default;
};

// One output family: an n-slot, one coordinate slot per torus variable, and
// an optional coset link (two-variable solutions only). Every family is
// verified against the source polynomial on emission, symbolically over its
// free slots and again at random instantiations.
struct SolutionFamily {
  ParamSlot n;
  std::vector<CoordSlot> coords;
  std::optional<CosetRel> coset;
  std::string provenance;  // algorithm step label; not part of identity
};

// Identity ignoring provenance.
bool same_solution(const SolutionFamily& a, const SolutionFamily& b);
// Solution-set inclusion: every instantiation of b is one of a.
bool subsumes(const SolutionFamily& a, const SolutionFamily& b);
// Deterministic output order for deduplicated sets.
bool family_less(const SolutionFamily& a, const SolutionFamily& b);

std::string to_string(const SolutionFamily& f);

// The difference lattice of the (x, y) exponent support, n ignored.
// basis is in Hermite form: rank 2 -> {(d1, e), (0, d2)} with d1, d2 > 0 and
// 0 <= e < d2; rank 1 -> one vector with positive leading entry.
struct SupportLattice {
  int rank = 0;
  std::vector<std::array<long, 2>> basis;
  friend bool operator==(const SupportLattice&, const SupportLattice&) = default;
};

SupportLattice support_lattice(const poly::SparsePoly& f);

// All pairs (n0, omega), n0 rational, omega a root of unity, with
// f(n0, omega) = 0, as families over the variables {"n", "x"}.
std::vector<SolutionFamily> solve_param_family(const poly::SparsePoly& f);

// All triples (n0, omega, tau) for f over {"n", "x", "y"}.
std::vector<SolutionFamily> solve_param_curve(const poly::SparsePoly& f);

// All root-of-unity pairs (x, y) with x^M[0][0] y^M[0][1] = t1 and
// x^M[1][0] y^M[1][1] = t2; requires det M != 0. Always exactly |det M|
// pairs: roots of unity form a divisible group.
std::vector<std::pair<RootOfUnity, RootOfUnity>> monomial_system_solve(
    const std::array<std::array<long, 2>, 2>& M,
    const std::pair<RootOfUnity, RootOfUnity>& targets);

}  // namespace cyclopoint::famsolve
