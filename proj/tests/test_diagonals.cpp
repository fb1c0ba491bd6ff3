#include <algorithm>
#include <numeric>
#include <random>

#include "cyclopoint/diagonals.hpp"
#include "doctest.h"

using namespace cyclopoint;
namespace dg = cyclopoint::diagonals;

namespace {

long foldv(long n, long e) {
  long r = ((e % n) + n) % n;
  return std::min(r, n - r);
}

long mp(long x, long m) { return ((x % m) + m) % m; }

// [Q(d1,d2) : Q] from the Galois side: phi(4n) over the number of units
// fixing both chords, a chord zeta^u + zeta^-u being fixed iff k*u = +-u.
long compositum_degree(long n, long a, long b) {
  const long m = 4 * n;
  const long ua = mp(n - 2 * a, m), ub = mp(n - 2 * b, m);
  long stab = 0;
  for (long k = 1; k < m; ++k) {
    if (std::gcd(k, m) != 1) continue;
    const bool fa = mp(k * ua - ua, m) == 0 || mp(k * ua + ua, m) == 0;
    const bool fb = mp(k * ub - ub, m) == 0 || mp(k * ub + ub, m) == 0;
    if (fa && fb) ++stab;
  }
  return euler_phi(m) / stab;
}

dg::QuadrupleSolution random_quadruple(std::mt19937& rng) {
  std::uniform_int_distribution<long> ord(1, 10);
  auto pick = [&]() {
    const long o = ord(rng);
    std::uniform_int_distribution<long> ex(0, o - 1);
    return rou(o, ex(rng));
  };
  return {pick(), pick(), pick(), pick()};
}

}  // namespace

TEST_SUITE("diagonals") {

TEST_CASE("representation exponents") {
  CHECK(dg::diagonal_rep(5, 1) == std::pair<long, long>{3, 17});
  CHECK(dg::diagonal_rep(5, 2) == std::pair<long, long>{1, 19});
  CHECK(dg::diagonal_rep(10, 1) == std::pair<long, long>{8, 32});

  for (long n : {3L, 5L, 8L, 12L}) {
    for (long a = 1; a < n; ++a) {
      const auto [e1, e2] = dg::diagonal_rep(n, a);
      const CycloElement s = cyclo_add(cyclo_power(4 * n, e1), cyclo_power(4 * n, e2));
      CHECK(cyclo_eq(s, metallic::diagonal_length(n, a)));
      // The two summands are reciprocal roots of unity.
      CHECK((e1 + e2) % (4 * n) == 0);
    }
  }

  CHECK_THROWS_AS(dg::diagonal_rep(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(dg::diagonal_rep(6, 12), std::invalid_argument);
  CHECK_THROWS_AS(dg::diagonal_rep(0, 1), std::invalid_argument);
}

TEST_CASE("quadruple polynomial and symmetries") {
  const poly::SparsePoly f = dg::quadruple_poly();
  CHECK(f.vars == std::vector<std::string>{"x1", "x2", "y1", "y2"});
  CHECK(f.terms.size() == 8);
  for (const auto& [e, c] : f.terms) CHECK(c == 1);
  for (int v = 0; v < 4; ++v) {
    CHECK(poly::degree(f, v) == 1);
    CHECK(poly::min_exponent(f, v) == -1);
  }
  for (int op = 1; op <= 7; ++op) CHECK(dg::apply_symmetry_poly(f, op) == f);
  CHECK_THROWS_AS(dg::apply_symmetry_poly(f, 0), std::invalid_argument);
  CHECK_THROWS_AS(dg::apply_symmetry_poly(f, 8), std::invalid_argument);
  CHECK_THROWS_AS(dg::apply_symmetry_poly(poly::zero({"x", "y"}), 1), std::invalid_argument);
}

TEST_CASE("symmetries preserve quadruple values") {
  std::mt19937 rng(271828);
  for (int trial = 0; trial < 60; ++trial) {
    const dg::QuadrupleSolution q = random_quadruple(rng);
    const CycloElement v = dg::quadruple_value(q);
    for (int op = 1; op <= 7; ++op)
      CHECK(cyclo_eq(dg::quadruple_value(dg::apply_symmetry(q, op)), v));
  }
  CHECK_THROWS_AS(dg::apply_symmetry({rou(1, 0), rou(1, 0), rou(1, 0), rou(1, 0)}, 9),
                  std::invalid_argument);
}

TEST_CASE("cosine quadruple catalog") {
  const auto small = dg::cj_solutions(1);
  CHECK(small.size() == 13);
  long sporadic = 0;
  for (const auto& s : small) {
    CHECK(dg::cj_value(s).is_zero());
    CHECK(std::is_sorted(s.values.begin(), s.values.end()));
    for (const Rational& v : s.values) {
      CHECK(v >= 0);
      CHECK(v < 2);
    }
    if (s.kind == dg::CJKind::sporadic) ++sporadic;
  }
  CHECK(sporadic == 10);

  const std::array<Rational, 4> golden = {make_rational(1, 3), make_rational(2, 5),
                                          make_rational(1, 2), make_rational(4, 5)};
  const auto has = [](const std::vector<dg::CJSolution>& v, const std::array<Rational, 4>& m,
                      dg::CJKind kind) {
    return std::any_of(v.begin(), v.end(), [&](const dg::CJSolution& s) {
      return s.values == m && s.kind == kind;
    });
  };
  CHECK(has(small, golden, dg::CJKind::sporadic));

  const auto wide = dg::cj_solutions(5);
  CHECK(wide.size() == 96);
  const std::array<Rational, 4> fifth = {make_rational(1, 5), make_rational(7, 15),
                                         make_rational(1, 2), make_rational(13, 15)};
  CHECK(has(wide, fifth, dg::CJKind::family2));
  const std::array<Rational, 4> thirds = {make_rational(1, 3), make_rational(1, 3),
                                          make_rational(2, 3), make_rational(2, 3)};
  CHECK(has(wide, thirds, dg::CJKind::family1));

  CHECK_THROWS_AS(dg::cj_solutions(0), std::invalid_argument);
}

TEST_CASE("tabulated quadruples all verify") {
  const auto rows = dg::lemma42_solutions();
  CHECK(rows.size() == 30);
  for (const auto& r : rows) {
    CHECK(r.verified);
    CHECK(dg::quadruple_value(r.quad).is_zero());
  }
  CHECK(rows.front().index == 1);
  const dg::QuadrupleSolution first = {rou(40, 9), rou(60, 17), rou(60, 7), rou(40, 39)};
  CHECK(rows.front().quad == first);
  CHECK(rows.back().index == 30);
  CHECK(rows.back().quad.x1 == rou(84, 17));
}

TEST_CASE("solution families") {
  // Trivial parameter: the first family pins down a fixed quadruple.
  const dg::QuadrupleSolution a1 = dg::lemma42_family(dg::FamilyKind::a1, rou(1, 0));
  CHECK(a1 == dg::QuadrupleSolution{rou(3, 2), rou(24, 11), rou(24, 5), rou(3, 1)});

  const RootOfUnity ps[] = {rou(1, 0), rou(5, 1), rou(7, 3), rou(12, 5), rou(9, 4)};
  const RootOfUnity qs[] = {rou(1, 0), rou(8, 3), rou(9, 2)};
  for (auto kind : {dg::FamilyKind::a1, dg::FamilyKind::a2, dg::FamilyKind::a3})
    for (const auto& p : ps) CHECK(dg::quadruple_value(dg::lemma42_family(kind, p)).is_zero());
  for (auto kind : {dg::FamilyKind::b1, dg::FamilyKind::b2, dg::FamilyKind::b3})
    for (const auto& p : ps)
      for (const auto& q : qs) CHECK(dg::quadruple_value(dg::lemma42_family(kind, p, q)).is_zero());

  // Without the mixed sign twist the b2 pattern misses the zero set.
  const long m = 2 * 5 * 7, s = 1 * 7 + 5 * 2, t = 1 * 7 - 5 * 2;
  const dg::QuadrupleSolution unmixed = {rou(m, s), rou(m, -s), rou(m, -t), rou(m, t)};
  CHECK_FALSE(dg::is_quadruple_solution(unmixed));
  const dg::QuadrupleSolution mixed = {rou(m, s), rou_neg(rou(m, -s)), rou(m, -t), rou(m, t)};
  CHECK(dg::is_quadruple_solution(mixed));
}

TEST_CASE("quadruples from cosine data") {
  dg::CJSolution golden;
  golden.kind = dg::CJKind::sporadic;
  golden.values = {make_rational(1, 3), make_rational(2, 5), make_rational(1, 2),
                   make_rational(4, 5)};

  const auto sols = dg::solve_quadruple_from_cj(golden, {1, 2, 3, 0}, {1, 1, 1, 1});
  CHECK(sols.size() == 4);
  const dg::QuadrupleSolution row1 = {rou(40, 9), rou(60, 17), rou(60, 7), rou(40, 39)};
  CHECK(sols.front() == row1);
  for (const auto& s : sols) CHECK(dg::is_quadruple_solution(s));

  // Inverting a term keeps the cosine data, so solutions still exist.
  CHECK(dg::solve_quadruple_from_cj(golden, {1, 2, 3, 0}, {1, -1, 1, 1}).size() == 4);

  dg::CJSolution thirds;
  thirds.kind = dg::CJKind::family1;
  thirds.values = {make_rational(1, 3), make_rational(1, 3), make_rational(2, 3),
                   make_rational(2, 3)};
  const auto degen = dg::solve_quadruple_from_cj(thirds, {0, 1, 2, 3}, {1, 1, 1, 1});
  CHECK(degen.size() == 4);
  CHECK(std::any_of(degen.begin(), degen.end(),
                    [](const dg::QuadrupleSolution& q) { return q.x1 == rou(6, 1); }));

  CHECK_THROWS_AS(dg::solve_quadruple_from_cj(golden, {0, 0, 2, 3}, {1, 1, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(dg::solve_quadruple_from_cj(golden, {0, 1, 2, 3}, {1, 2, 1, 1}),
                  std::invalid_argument);
}

TEST_CASE("conjugation congruence") {
  CHECK(dg::defective_congruence(20, 1, 3) == 11);
  CHECK_FALSE(dg::defective_congruence(20, 1, 2).has_value());
  CHECK(dg::defective_congruence(16, 3, 3) == 9);
  CHECK_THROWS_AS(dg::defective_congruence(15, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(dg::defective_congruence(20, 20, 3), std::invalid_argument);
}

TEST_CASE("defective ratios") {
  const auto golden = dg::is_defective(5, 2, 1);
  CHECK(golden.kind == dg::Defectiveness::Kind::by_k);
  CHECK(golden.k == 11);

  CHECK(dg::is_defective(10, 1, 2).kind == dg::Defectiveness::Kind::not_defective);
  CHECK(dg::is_defective(7, 1, 1).kind == dg::Defectiveness::Kind::trivially);
  CHECK(dg::is_defective(3, 1, 2).kind == dg::Defectiveness::Kind::trivially);

  // sqrt2 : sqrt3 in the 12-gon. The negating unit k = 5 works through the
  // conjugate summand on one chord, so only the sign-symmetric search sees it.
  const auto dodeca = dg::is_defective(12, 3, 4);
  CHECK(dodeca.kind == dg::Defectiveness::Kind::by_k);
  CHECK(dodeca.k == 5);

  CHECK_THROWS_AS(dg::is_defective(5, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(dg::is_defective(6, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(dg::is_defective(2, 1, 1), std::invalid_argument);
}

TEST_CASE("fixing map counts") {
  CHECK(dg::count_fixing_automorphisms(5, 2, 1) == 2);
  CHECK(dg::count_fixing_automorphisms(10, 1, 2) == 1);
  CHECK(dg::count_fixing_automorphisms(12, 3, 4) == 3);
  CHECK(dg::count_fixing_automorphisms(9, 3, 1) == 2);
  CHECK_THROWS_AS(dg::count_fixing_automorphisms(7, 1, 1), std::invalid_argument);
}

TEST_CASE("ratio degrees") {
  const auto golden = dg::ratio_degree(5, 2, 1);
  CHECK(golden.degree == 2);
  CHECK(golden.method == dg::RatioDegree::Method::formula_odd);
  const CycloElement ratio =
      cyclo_div(metallic::diagonal_length(5, 2), metallic::diagonal_length(5, 1));
  CHECK(minimal_polynomial(ratio) == zx::QPoly{Rational(-1), Rational(-1), Rational(1)});

  CHECK(dg::ratio_degree(7, 2, 1).degree == 3);
  CHECK(dg::ratio_degree(3, 1, 1).degree == 1);

  const auto deca = dg::ratio_degree(10, 1, 2);
  CHECK(deca.degree == 4);
  CHECK(deca.method == dg::RatioDegree::Method::oracle);
  CHECK(dg::ratio_degree(4, 1, 2).degree == 2);

  // The hexagon's side against its diameter: the one even-sided rational ratio.
  CHECK(dg::ratio_degree(6, 1, 3).degree == 1);
  const CycloElement half =
      cyclo_div(metallic::diagonal_length(6, 1), metallic::diagonal_length(6, 3));
  CHECK(as_rational(half) == make_rational(1, 2));
}

TEST_CASE("field structure sweep") {
  for (long n = 3; n <= 14; ++n) {
    for (long a = 1; a < n; ++a) {
      for (long b = 1; b < n; ++b) {
        if (std::gcd(a, b) != 1) continue;
        if (foldv(n, a) == foldv(n, b)) continue;
        const auto rd = dg::ratio_degree(n, a, b, 1000);
        const long cnt = dg::count_fixing_automorphisms(n, a, b);
        const long comp = compositum_degree(n, a, b);
        const bool defect =
            dg::is_defective(n, a, b).kind != dg::Defectiveness::Kind::not_defective;
        // The ratio field sits at index 1 or 2 inside Q(d1, d2), and index 2
        // is exactly defectiveness.
        CHECK(rd.degree * (defect ? 2 : 1) == comp);
        CHECK(cnt <= 5);
        if (n % 2 == 1) {
          CHECK(cnt == 2);
          CHECK(comp * 2 == euler_phi(4 * n));
          CHECK(rd.degree * 4 == euler_phi(4 * n));
        }
      }
    }
  }
}

TEST_CASE("polygon scan wrapper") {
  const auto scan4 = dg::theorem11_scan(4, 1);
  const std::vector<metallic::MetallicParam> expected = {
      {Rational(0), 1}, {make_rational(1, 2), 1}, {make_rational(1, 2), -1}};
  CHECK(scan4 == expected);
  CHECK(dg::theorem11_scan(5, 1) == metallic::scan_metallic(5, 1));
}

TEST_CASE("totient growth bound") {
  CHECK(dg::totient_bound_check(210));
  // Equality at 210: the bound is tight there.
  const Int lhs = pow_int(Int(euler_phi(210)), 13) * pow_int(Int(210), 12);
  const Int rhs = pow_int(Int(48), 13) * pow_int(Int(210), 12);
  CHECK(lhs == rhs);
  CHECK(dg::totient_bound_check(1144));
  for (long n = 1; n <= 4000; ++n) CHECK(dg::totient_bound_check(n));
  CHECK_THROWS_AS(dg::totient_bound_check(0), std::invalid_argument);
}

}
