#include <doctest.h>

#include <algorithm>
#include <random>

#include "cyclopoint/poly.hpp"
#include "cyclopoint/zx.hpp"

using namespace cyclopoint;
using poly::SparsePoly;

namespace {

const std::vector<std::string> NX = {"n", "x"};

SparsePoly C(const Rational& c) { return poly::constant(NX, c); }
SparsePoly N() { return poly::variable(NX, "n"); }
SparsePoly X() { return poly::variable(NX, "x"); }

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return poly::add(a, b); }
SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return poly::sub(a, b); }
SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) { return poly::mul(a, b); }

SparsePoly random_poly(std::mt19937& rng, int max_deg_n, int max_deg_x) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  SparsePoly f = poly::zero(NX);
  for (int i = 0; i <= max_deg_n; ++i)
    for (int j = 0; j <= max_deg_x; ++j)
      f = f + poly::monomial(NX, {i, j}, Rational(coeff(rng)));
  return f;
}

// Euclidean-recursion resultant over Q, an independent oracle for the
// Bareiss determinant path.
Rational qres(const zx::QPoly& a, const zx::QPoly& b) {
  if (a.empty() || b.empty()) return Rational(0);
  const int da = zx::deg(a), db = zx::deg(b);
  auto rpow = [](Rational base, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
  };
  if (da == 0) return rpow(a[0], db);
  if (db == 0) return rpow(b[0], da);
  if (da < db) {
    Rational r = qres(b, a);
    return (da * db) % 2 ? Rational(-r) : r;
  }
  zx::QPoly q, r;
  zx::qdivmod(a, b, q, r);
  if (r.empty()) return Rational(0);
  Rational rec = qres(b, r);
  Rational out = rpow(b.back(), da - zx::deg(r)) * rec;
  return (da * db) % 2 ? Rational(-out) : out;
}

zx::QPoly dense_in_x(const SparsePoly& f) {
  const int v = poly::var_index(f, "x");
  zx::QPoly out(std::max(poly::degree(f, v), 0) + 1, Rational(0));
  for (const auto& [e, c] : f.terms) {
    REQUIRE(e[0] == 0);
    out[e[v]] = c;
  }
  zx::normalize(out);
  return out;
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("construction and canonical text") {
  CHECK(poly::to_string(poly::zero(NX)) == "0");
  CHECK(poly::to_string(C(make_rational(-1, 2))) == "-1/2");
  auto f = poly::monomial(NX, {2, 3}, Rational(-1)) + poly::monomial(NX, {0, 2}, Rational(1)) + C(Rational(2));
  CHECK(poly::to_string(f) == "-1*n^2*x^3 + 1*x^2 + 2");
  auto g = X() - N();
  CHECK(poly::to_string(g) == "-1*n + 1*x");
  CHECK(poly::degree(f, "x") == 3);
  CHECK(poly::degree(f, "n") == 2);
  CHECK(poly::is_constant(C(Rational(5))));
  CHECK(poly::constant_value(poly::zero(NX)) == 0);
  CHECK_THROWS_AS(poly::var_index(f, "y"), std::invalid_argument);
}

TEST_CASE("ring arithmetic and exact division") {
  auto f = (X() + C(Rational(1))) * (X() - C(Rational(1)));
  CHECK(f == X() * X() - C(Rational(1)));
  CHECK(poly::exact_div(f, X() - C(Rational(1))) == X() + C(Rational(1)));
  CHECK_THROWS_AS(poly::exact_div(X() * X() + C(Rational(1)), X() - C(Rational(1))),
                  verification_error);
  // multivariate quotient with polynomial leading coefficients
  auto a = (N() * X() + C(Rational(1))) * (X() * X() - N());
  CHECK(poly::exact_div(a, N() * X() + C(Rational(1))) == X() * X() - N());
  CHECK_FALSE(poly::try_exact_div(a, X() + N()).has_value());
}

TEST_CASE("signed substitutions") {
  auto xp1 = X() + C(Rational(1));
  CHECK(poly::substitute_signed(xp1, "x", poly::SignMode::neg) ==
        C(Rational(1)) - X());
  CHECK(poly::substitute_signed(xp1, "x", poly::SignMode::square) ==
        X() * X() + C(Rational(1)));
  auto nx3 = N() * X() * X() * X();
  CHECK(poly::substitute_signed(nx3, "x", poly::SignMode::neg_square) ==
        poly::neg(N() * poly::pow(X(), 6)));
  std::mt19937 rng(7);
  for (int t = 0; t < 25; ++t) {
    auto f = random_poly(rng, 2, 3);
    auto twice = poly::substitute_signed(
        poly::substitute_signed(f, "x", poly::SignMode::neg), "x", poly::SignMode::neg);
    CHECK(twice == f);
  }
}

TEST_CASE("multivariate gcd") {
  auto x = X(), one = C(Rational(1));
  CHECK(poly::gcd(x * x - one, (x - one) * (x - one), "x") == x - one);
  CHECK(poly::gcd(N() * x - N(), x * x - one, "x") == x - one);
  CHECK(poly::gcd(x * x + one, x * x - one, "x") == one);
  // content in n is part of the answer
  CHECK(poly::gcd(N() * x, N() * N() * x * x - N() * N(), "x") == N());
  CHECK(poly::gcd(N() * x * (x - one), N() * N() * (x - one), "x") == N() * (x - one));
}

TEST_CASE("gcd properties on random instances") {
  std::mt19937 rng(11);
  int nontrivial = 0;
  for (int t = 0; t < 40; ++t) {
    auto f = random_poly(rng, 1, 2);
    auto g = random_poly(rng, 1, 2);
    auto h = random_poly(rng, 1, 1);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    auto d = poly::gcd(f, g, "x");
    CHECK(poly::try_exact_div(f, d).has_value());
    CHECK(poly::try_exact_div(g, d).has_value());
    auto lhs = poly::gcd(f * h, g * h, "x");
    auto rhs = poly::normalize_primitive(h * d);
    CHECK(lhs == rhs);
    if (poly::degree(d, "x") > 0 || poly::degree(rhs, "x") > 0) ++nontrivial;
  }
  CHECK(nontrivial > 10);
}

TEST_CASE("squarefree part") {
  auto x = X(), one = C(Rational(1)), two = C(Rational(2));
  auto f = (x - one) * (x - one) * (x + two);
  CHECK(poly::squarefree_part(f, "x") == (x - one) * (x + two));
  CHECK(poly::squarefree_part(x * x * x, "x") == x);
  std::mt19937 rng(13);
  for (int t = 0; t < 25; ++t) {
    auto g = random_poly(rng, 1, 3);
    if (g.is_zero() || poly::degree(g, "x") < 1) continue;
    auto s = poly::squarefree_part(g, "x");
    auto d = poly::gcd(s, poly::derivative(s, "x"), "x");
    CHECK(poly::degree(d, "x") == 0);
    // idempotence
    CHECK(poly::squarefree_part(s, "x") == poly::normalize_primitive(s));
  }
}

TEST_CASE("resultant agrees with hand values") {
  auto x = X(), n = N(), one = C(Rational(1));
  CHECK(poly::resultant(x * x + one, x - n, "x") == n * n + one);
  auto r = poly::resultant(n * x - one, x * x - one, "x");
  bool match = (r == n * n - one) || (r == one - n * n);
  CHECK(match);
  auto f = n * x * x + x - one;
  CHECK(poly::resultant(f, f, "x").is_zero());
  CHECK_THROWS_AS(poly::resultant(n, x - n, "x"), std::invalid_argument);
}

TEST_CASE("resultant specializes to the univariate resultant") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> small(-5, 5);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    // monic in x so no degree drop happens under specialization
    auto f = poly::pow(X(), 3) + random_poly(rng, 2, 2);
    auto g = poly::pow(X(), 2) + random_poly(rng, 2, 1);
    auto res = poly::resultant(f, g, "x");
    Rational n0 = make_rational(small(rng), 1 + std::uniform_int_distribution<int>(0, 3)(rng));
    auto fn = poly::eval_var(f, "n", n0);
    auto gn = poly::eval_var(g, "n", n0);
    Rational expect = qres(dense_in_x(fn), dense_in_x(gn));
    CHECK(poly::constant_value(poly::eval_var(res, "n", n0)) == expect);
    ++checked;
  }
  CHECK(checked == 200);
  // a shared factor forces the identically-zero resultant
  auto h = X() - N();
  auto F = h * (X() * X() + C(Rational(3)));
  auto G = h * (N() * X() + C(Rational(2)));
  CHECK(poly::resultant(F, G, "x").is_zero());
}

TEST_CASE("rational roots of univariate input") {
  auto n = N();
  auto h = poly::scale(n * n, Rational(2)) - n - C(Rational(1));
  auto roots = poly::rational_roots(h);
  std::sort(roots.begin(), roots.end());
  CHECK(roots == std::vector<Rational>{make_rational(-1, 2), Rational(1)});
  CHECK(poly::rational_roots(n * n + C(Rational(1))).empty());
  CHECK(poly::rational_roots(n * n * n) == std::vector<Rational>{Rational(0)});
  CHECK_THROWS_AS(poly::rational_roots(poly::zero(NX)), std::invalid_argument);
  CHECK_THROWS_AS(poly::rational_roots(N() * X()), std::invalid_argument);
}

TEST_CASE("exponent gcd decomposition") {
  auto [m1, g1] = poly::exponent_gcd_decompose(poly::pow(X(), 4) + X() * X(), "x");
  CHECK(m1 == 2);
  CHECK(g1 == X() * X() + X());
  auto f2 = poly::pow(X(), 3) + X();
  auto [m2, g2] = poly::exponent_gcd_decompose(f2, "x");
  CHECK(m2 == 1);
  CHECK(g2 == f2);
  auto f3 = N() * N() * poly::pow(X(), 6) + poly::pow(X(), 3);
  auto [m3, g3] = poly::exponent_gcd_decompose(f3, "x");
  CHECK(m3 == 3);
  CHECK(g3 == N() * N() * X() * X() + X());
  // terms free of the variable force m through gcd(0, e)
  auto [m4, g4] = poly::exponent_gcd_decompose(X() * X() + C(Rational(1)), "x");
  CHECK(m4 == 2);
  CHECK(g4 == X() + C(Rational(1)));
}

TEST_CASE("laurent clearing and monomial stripping") {
  auto f = poly::monomial(NX, {0, -2}, Rational(1)) + poly::monomial(NX, {1, 1}, Rational(3));
  auto cleared = poly::monomial_clear(f);
  CHECK(cleared == C(Rational(1)) + poly::monomial(NX, {1, 3}, Rational(3)));
  auto [shift, stripped] = poly::strip_monomial(N() * X() * X() + N() * N() * poly::pow(X(), 3));
  CHECK(shift == std::vector<int>{1, 2});
  CHECK(stripped == C(Rational(1)) + N() * X());
  // swap n and x, inverting the second
  auto g = poly::monomial(NX, {1, 2}, Rational(5));
  auto swapped = poly::remap_vars(g, {{1, false}, {0, true}});
  CHECK(swapped == poly::monomial(NX, {-2, 1}, Rational(5)));
}

TEST_CASE("pseudo remainder matches scaled euclidean remainder") {
  std::mt19937 rng(23);
  for (int t = 0; t < 30; ++t) {
    auto a = random_poly(rng, 0, 4);
    auto b = random_poly(rng, 0, 2);
    if (b.is_zero() || poly::degree(b, "x") < 1) continue;
    if (poly::degree(a, "x") < poly::degree(b, "x")) continue;
    auto prem = poly::pseudo_rem(a, b, poly::var_index(a, "x"));
    auto da = dense_in_x(a), db = dense_in_x(b);
    zx::QPoly q, r;
    zx::qdivmod(da, db, q, r);
    Rational lead(1);
    for (int i = 0; i < zx::deg(da) - zx::deg(db) + 1; ++i) lead *= db.back();
    zx::QPoly want = zx::qscale(std::move(r), lead);
    CHECK(dense_in_x(prem) == want);
  }
}

}  // TEST_SUITE
