#include "cyclopoint/diagonals.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cyclopoint::diagonals {

namespace {

long mod_pos(long x, long m) { return ((x % m) + m) % m; }

long fold(long n, long e) {
  long r = mod_pos(e, n);
  return std::min(r, n - r);
}

// v + 1/v as an exact cyclotomic number.
CycloElement chord(const RootOfUnity& v) {
  return cyclo_add(cyclo_from_rou(v), cyclo_from_rou(rou_inv(v)));
}

// e^(i*pi*v) for rational v: the (2q)-th root of unity with exponent p.
RootOfUnity half_turn(const Rational& v) {
  const Int num = v.get_num();
  const Int den = v.get_den();
  if (!num.fits_slong_p() || !den.fits_slong_p())
    throw std::invalid_argument("half_turn: argument out of range");
  return rou(2 * den.get_si(), num.get_si());
}

// Reduce into [0, 2).
Rational norm_two(const Rational& v) {
  Rational r = v;
  const Rational two(2);
  while (r < 0) r += two;
  while (r >= two) r -= two;
  return r;
}

void check_ratio_args(long n, long a, long b) {
  if (n < 3) throw std::invalid_argument("diagonal ratio: need n >= 3");
  if (mod_pos(a, n) == 0 || mod_pos(b, n) == 0)
    throw std::invalid_argument("diagonal ratio: diagonals must be nonzero mod n");
  if (std::gcd(mod_pos(a, n), mod_pos(b, n)) != 1)
    throw std::invalid_argument("diagonal ratio: need gcd(a, b) = 1");
}

const std::vector<std::string> kQuadVars = {"x1", "x2", "y1", "y2"};

// Destination tables for the seven invariance transforms, one (slot, invert)
// entry per variable of kQuadVars.
const std::vector<std::vector<std::pair<int, bool>>> kSymmetryMaps = {
    {{1, false}, {0, false}, {3, false}, {2, false}},
    {{0, true}, {1, false}, {2, false}, {3, false}},
    {{0, false}, {1, true}, {2, false}, {3, false}},
    {{3, false}, {1, false}, {2, false}, {0, false}},
    {{0, false}, {2, false}, {1, false}, {3, false}},
    {{3, true}, {1, false}, {2, false}, {0, true}},
    {{0, false}, {2, true}, {1, true}, {3, false}},
};

// The ten sporadic cosine quadruples, as (num, den) pairs.
const long kSporadics[10][4][2] = {
    {{2, 5}, {1, 2}, {4, 5}, {1, 3}},
    {{3, 5}, {1, 2}, {1, 5}, {2, 3}},
    {{1, 1}, {1, 5}, {3, 5}, {1, 3}},
    {{0, 1}, {4, 5}, {2, 5}, {2, 3}},
    {{2, 5}, {7, 15}, {13, 15}, {1, 3}},
    {{3, 5}, {8, 15}, {2, 15}, {2, 3}},
    {{4, 5}, {1, 15}, {11, 15}, {1, 3}},
    {{1, 5}, {14, 15}, {4, 15}, {2, 3}},
    {{2, 7}, {4, 7}, {6, 7}, {1, 3}},
    {{1, 7}, {3, 7}, {5, 7}, {2, 3}},
};

// The thirty tabulated quadruples, stored as
// (x1 order, x1 exp, y2 order, y2 exp, x2 order, x2 exp, y1 order, y1 exp).
const long kTableRows[30][8] = {
    {40, 9, 40, 39, 60, 17, 60, 7},   {10, 3, 10, 9, 24, 5, 24, 1},
    {60, 11, 60, 1, 40, 13, 40, 37},  {40, 11, 40, 1, 60, 13, 60, 53},
    {10, 2, 10, 1, 24, 7, 24, 23},    {60, 19, 60, 59, 40, 7, 40, 3},
    {10, 3, 10, 2, 60, 14, 60, 4},    {10, 4, 10, 1, 60, 8, 60, 58},
    {6, 2, 6, 1, 10, 2, 10, 9},       {5, 1, 5, 4, 15, 4, 15, 14},
    {10, 1, 10, 9, 30, 11, 30, 1},    {6, 1, 6, 5, 10, 3, 10, 1},
    {60, 13, 60, 59, 30, 9, 30, 4},   {60, 19, 60, 53, 30, 6, 30, 1},
    {60, 11, 60, 1, 30, 10, 30, 27},  {60, 17, 60, 59, 30, 6, 30, 26},
    {60, 11, 60, 7, 30, 9, 30, 29},   {60, 19, 60, 59, 30, 5, 30, 3},
    {60, 13, 60, 11, 30, 8, 30, 3},   {60, 23, 60, 1, 30, 3, 30, 28},
    {60, 17, 60, 7, 30, 6, 30, 25},   {60, 17, 60, 11, 30, 7, 30, 27},
    {60, 7, 60, 59, 30, 12, 30, 2},   {60, 13, 60, 53, 30, 9, 30, 5},
    {42, 9, 42, 39, 84, 25, 84, 11},  {42, 12, 42, 36, 84, 19, 84, 5},
    {84, 13, 84, 83, 42, 15, 42, 39}, {42, 6, 42, 39, 84, 29, 84, 1},
    {42, 9, 42, 36, 84, 23, 84, 79},  {84, 17, 84, 73, 42, 12, 42, 39},
};

// All k in [1, m) coprime to m with k*a = c and k*b = d (mod m), ascending.
std::vector<long> unit_solutions(long m, long a, long b, long c, long d) {
  std::vector<long> out;
  for (long k = 1; k < m; ++k) {
    if (std::gcd(k, m) != 1) continue;
    if (mod_pos(k * a - c, m) != 0) continue;
    if (mod_pos(k * b - d, m) != 0) continue;
    out.push_back(k);
  }
  return out;
}

// Units k mod 4n sending both chords to their negatives. The chord with
// summand exponents +-u is negated exactly when k*u = u + 2n or -u + 2n;
// both signs must be admitted per chord (independently), since for even n
// an automorphism may negate one chord through the conjugate summand only.
std::vector<long> negating_units(long n, long ua, long ub) {
  const long m = 4 * n;
  std::vector<long> out;
  for (long k = 1; k < m; ++k) {
    if (std::gcd(k, m) != 1) continue;
    const long ra = mod_pos(k * ua, m);
    const long rb = mod_pos(k * ub, m);
    const bool na = ra == mod_pos(ua + 2 * n, m) || ra == mod_pos(-ua + 2 * n, m);
    const bool nb = rb == mod_pos(ub + 2 * n, m) || rb == mod_pos(-ub + 2 * n, m);
    if (na && nb) out.push_back(k);
  }
  return out;
}

}  // namespace

std::pair<long, long> diagonal_rep(long n, long a) {
  if (n < 1) throw std::invalid_argument("diagonal_rep: need n >= 1");
  const long r = mod_pos(a, n);
  if (r == 0) throw std::invalid_argument("diagonal_rep: diagonal must be nonzero mod n");
  const long e1 = mod_pos(n - 2 * r, 4 * n);
  const long e2 = mod_pos(3 * n + 2 * r, 4 * n);
  const CycloElement s = cyclo_add(cyclo_power(4 * n, e1), cyclo_power(4 * n, e2));
  const CycloElement one = cyclo_from_rational(Rational(1));
  const CycloElement len_sq = cyclo_mul(cyclo_sub(one, cyclo_power(n, r)),
                                        cyclo_sub(one, cyclo_power(n, -r)));
  if (!cyclo_eq(cyclo_mul(s, s), len_sq))
    throw verification_error("diagonal_rep: square identity failed");
  return {e1, e2};
}

poly::SparsePoly quadruple_poly() {
  poly::SparsePoly f = poly::zero(kQuadVars);
  const int signs[2] = {1, -1};
  for (int s1 : signs) {
    for (int s2 : signs) {
      f.terms[{s1, 0, 0, s2}] = Rational(1);
      f.terms[{0, s1, s2, 0}] = Rational(1);
    }
  }
  return f;
}

CycloElement quadruple_value(const QuadrupleSolution& q) {
  CycloElement v = chord(rou_mul(q.x1, q.y2));
  v = cyclo_add(v, chord(rou_mul(q.x1, rou_inv(q.y2))));
  v = cyclo_add(v, chord(rou_mul(q.x2, q.y1)));
  v = cyclo_add(v, chord(rou_mul(q.x2, rou_inv(q.y1))));
  return v;
}

bool is_quadruple_solution(const QuadrupleSolution& q) {
  return quadruple_value(q).is_zero();
}

poly::SparsePoly apply_symmetry_poly(const poly::SparsePoly& f, int op) {
  if (op < 1 || op > 7) throw std::invalid_argument("apply_symmetry_poly: op must be in [1, 7]");
  if (f.vars != kQuadVars)
    throw std::invalid_argument("apply_symmetry_poly: expected variables x1, x2, y1, y2");
  return poly::remap_vars(f, kSymmetryMaps[op - 1]);
}

QuadrupleSolution apply_symmetry(const QuadrupleSolution& q, int op) {
  switch (op) {
    case 1: return {q.x2, q.x1, q.y2, q.y1, q.sign_orbit};
    case 2: return {rou_inv(q.x1), q.x2, q.y1, q.y2, q.sign_orbit};
    case 3: return {q.x1, rou_inv(q.x2), q.y1, q.y2, q.sign_orbit};
    case 4: return {q.y2, q.x2, q.y1, q.x1, q.sign_orbit};
    case 5: return {q.x1, q.y1, q.x2, q.y2, q.sign_orbit};
    case 6: return {rou_inv(q.y2), q.x2, q.y1, rou_inv(q.x1), q.sign_orbit};
    case 7: return {q.x1, rou_inv(q.y1), rou_inv(q.x2), q.y2, q.sign_orbit};
    default: throw std::invalid_argument("apply_symmetry: op must be in [1, 7]");
  }
}

CycloElement cj_value(const CJSolution& s) {
  CycloElement v = cyclo_zero();
  for (const Rational& a : s.values) v = cyclo_add(v, chord(half_turn(a)));
  return v;
}

std::vector<CJSolution> cj_solutions(long denominator_bound) {
  if (denominator_bound < 1)
    throw std::invalid_argument("cj_solutions: need denominator bound >= 1");

  std::vector<CJSolution> out;
  std::set<std::array<Rational, 4>> seen;
  auto emit = [&](CJSolution s) {
    std::sort(s.values.begin(), s.values.end());
    if (!seen.insert(s.values).second) return;
    if (!cj_value(s).is_zero()) throw verification_error("cj_solutions: nonzero cosine sum");
    out.push_back(std::move(s));
  };

  for (const auto& row : kSporadics) {
    CJSolution s;
    s.kind = CJKind::sporadic;
    for (int i = 0; i < 4; ++i) s.values[i] = make_rational(row[i][0], row[i][1]);
    emit(std::move(s));
  }

  std::vector<Rational> args;
  for (long q = 1; q <= denominator_bound; ++q)
    for (long p = 0; p < 2 * q; ++p)
      if (std::gcd(p, q) == 1 || p == 0) {
        const Rational v = make_rational(p, q);
        if (v.get_den() == q) args.push_back(v);
      }
  std::sort(args.begin(), args.end());

  const Rational one(1);
  for (std::size_t i = 0; i < args.size(); ++i) {
    for (std::size_t j = i; j < args.size(); ++j) {
      CJSolution s;
      s.kind = CJKind::family1;
      s.values = {args[i], args[j], norm_two(one - args[i]), norm_two(one - args[j])};
      s.params = {args[i], args[j]};
      emit(std::move(s));
    }
  }

  const Rational two_thirds = make_rational(2, 3);
  const Rational half = make_rational(1, 2);
  for (const Rational& a : args) {
    CJSolution s;
    s.kind = CJKind::family2;
    s.values = {a, norm_two(two_thirds - a), norm_two(two_thirds + a), half};
    s.params = {a};
    emit(std::move(s));
  }

  return out;
}

QuadrupleSolution lemma42_family(FamilyKind kind, const RootOfUnity& p, const RootOfUnity& q) {
  QuadrupleSolution out;
  // Canonical half root: rou(2*order, exp) squares to the given root.
  const RootOfUnity g = rou(2 * p.order, p.exp);
  switch (kind) {
    case FamilyKind::a1:
      out = {rou_mul(rou(3, 2), p), rou_mul(rou(24, 11), g), rou_mul(rou(24, 5), g), rou(3, 1)};
      break;
    case FamilyKind::a2:
      out = {rou_mul(rou(3, 1), p), rou_mul(rou(24, 7), g), rou_mul(rou(24, 1), g), rou(3, 2)};
      break;
    case FamilyKind::a3:
      out = {rou_mul(rou(8, 1), g), p, rou(3, 1), rou_mul(rou(8, 7), g)};
      break;
    case FamilyKind::b1:
      out = {rou_mul(rou(4, 1), p), rou_mul(rou(4, 1), q), rou(4, 3), rou(4, 3)};
      break;
    case FamilyKind::b2:
    case FamilyKind::b3: {
      const long m = 2 * p.order * q.order;
      const long s = p.exp * q.order + p.order * q.exp;
      const long t = p.exp * q.order - p.order * q.exp;
      // One x-coordinate is negated: the pure pair-sign instantiations of
      // these two families do not vanish for generic parameters.
      out = {rou(m, s), rou_neg(rou(m, -s)), rou(m, -t), rou(m, t)};
      if (kind == FamilyKind::b3) {
        out.x1 = rou_mul(rou(4, 1), out.x1);
        out.x2 = rou_mul(rou(4, 1), out.x2);
        out.y1 = rou_mul(rou(4, 3), out.y1);
        out.y2 = rou_mul(rou(4, 3), out.y2);
      }
      break;
    }
  }
  if (!is_quadruple_solution(out)) throw verification_error("lemma42_family: nonzero value");
  return out;
}

std::vector<Lemma42Row> lemma42_solutions() {
  std::vector<Lemma42Row> rows;
  rows.reserve(30);
  for (int i = 0; i < 30; ++i) {
    const long* r = kTableRows[i];
    Lemma42Row row;
    row.index = i + 1;
    row.quad = {rou(r[0], r[1]), rou(r[4], r[5]), rou(r[6], r[7]), rou(r[2], r[3])};
    row.verified = is_quadruple_solution(row.quad);
    rows.push_back(row);
  }
  return rows;
}

std::vector<QuadrupleSolution> solve_quadruple_from_cj(const CJSolution& cj,
                                                       const std::array<int, 4>& perm,
                                                       const std::array<int, 4>& signs) {
  std::array<bool, 4> hit{};
  for (int i : perm) {
    if (i < 0 || i > 3 || hit[i])
      throw std::invalid_argument("solve_quadruple_from_cj: perm must permute {0,1,2,3}");
    hit[i] = true;
  }
  for (int s : signs)
    if (s != 1 && s != -1)
      throw std::invalid_argument("solve_quadruple_from_cj: signs must be +-1");

  std::array<RootOfUnity, 4> mu;
  for (int j = 0; j < 4; ++j) {
    RootOfUnity m = half_turn(cj.values[perm[j]]);
    mu[j] = signs[j] > 0 ? m : rou_inv(m);
  }

  // x1^2 = mu0*mu1 and x2^2 = mu2*mu3; each pair of square roots determines
  // the matching y-coordinate via y2 = mu0/x1 and y1 = mu2/x2.
  const RootOfUnity x1_sq = rou_mul(mu[0], mu[1]);
  const RootOfUnity x2_sq = rou_mul(mu[2], mu[3]);
  const RootOfUnity x1_root = rou(2 * x1_sq.order, x1_sq.exp);
  const RootOfUnity x2_root = rou(2 * x2_sq.order, x2_sq.exp);

  std::vector<QuadrupleSolution> out;
  for (const RootOfUnity& x1 : {x1_root, rou_neg(x1_root)}) {
    for (const RootOfUnity& x2 : {x2_root, rou_neg(x2_root)}) {
      QuadrupleSolution q{x1, x2, rou_mul(mu[2], rou_inv(x2)), rou_mul(mu[0], rou_inv(x1))};
      if (!is_quadruple_solution(q))
        throw verification_error("solve_quadruple_from_cj: nonzero value");
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
  }
  return out;
}

std::optional<long> defective_congruence(long twoN, long a, long b) {
  if (twoN < 2 || twoN % 2 != 0)
    throw std::invalid_argument("defective_congruence: modulus must be even and positive");
  const long n = twoN / 2;
  if (mod_pos(a, twoN) == 0 || mod_pos(b, twoN) == 0)
    throw std::invalid_argument("defective_congruence: arguments must be nonzero mod 2N");
  const auto ks = unit_solutions(twoN, a, b, n + a, n + b);
  if (ks.empty()) return std::nullopt;
  return ks.front();
}

Defectiveness is_defective(long n, long a, long b) {
  check_ratio_args(n, a, b);
  if (fold(n, a) == fold(n, b)) return {Defectiveness::Kind::trivially, std::nullopt};
  const long ua = n - 2 * mod_pos(a, n);
  const long ub = n - 2 * mod_pos(b, n);
  const auto ks = negating_units(n, ua, ub);
  if (ks.empty()) return {Defectiveness::Kind::not_defective, std::nullopt};
  // Report the smallest k from the like-signed class when one exists; it is
  // the witness form the congruence is usually quoted in.
  const auto printed = unit_solutions(4 * n, ua, ub, 2 * n + ua, 2 * n + ub);
  return {Defectiveness::Kind::by_k, printed.empty() ? ks.front() : printed.front()};
}

long count_fixing_automorphisms(long n, long a, long b) {
  check_ratio_args(n, a, b);
  if (fold(n, a) == fold(n, b))
    throw std::invalid_argument("count_fixing_automorphisms: diagonals must be distinct");
  const long u = n - 2 * mod_pos(a, n);
  const long v = n - 2 * mod_pos(b, n);
  // k and -k induce the same map on the real subfield, hence the halving.
  const auto ks = negating_units(n, u, v);
  return static_cast<long>(ks.size()) / 2 + 1;
}

RatioDegree ratio_degree(long n, long a, long b, long oracle_limit) {
  check_ratio_args(n, a, b);
  if (fold(n, a) == fold(n, b)) return {1, RatioDegree::Method::oracle};

  auto oracle_degree = [&]() {
    const CycloElement ratio =
        cyclo_div(metallic::diagonal_length(n, a), metallic::diagonal_length(n, b));
    return static_cast<long>(zx::deg(minimal_polynomial(ratio)));
  };

  if (n % 2 == 1) {
    const long formula = euler_phi(4 * n) / 4;
    if (4 * n <= oracle_limit && oracle_degree() != formula)
      throw verification_error("ratio_degree: formula disagrees with minimal polynomial");
    return {formula, RatioDegree::Method::formula_odd};
  }

  const long deg = oracle_degree();
  if (10 * deg < euler_phi(4 * n))
    throw verification_error("ratio_degree: even-sided lower bound violated");
  return {deg, RatioDegree::Method::oracle};
}

std::vector<metallic::MetallicParam> theorem11_scan(long nmax, int jobs) {
  return metallic::scan_metallic(nmax, jobs);
}

bool totient_bound_check(long n) {
  if (n < 1) throw std::invalid_argument("totient_bound_check: need n >= 1");
  const Int lhs = pow_int(Int(euler_phi(n)), 13) * pow_int(Int(210), 12);
  const Int rhs = pow_int(Int(48), 13) * pow_int(Int(n), 12);
  return lhs >= rhs;
}

}  // namespace cyclopoint::diagonals
