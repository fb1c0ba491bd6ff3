#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "cyclopoint/cyclotomic.hpp"
#include "cyclopoint/metallic.hpp"

using namespace cyclopoint;
using metallic::MetallicParam;

namespace {

CycloElement eval_at(const poly::SparsePoly& f, const Rational& s0,
                     const CycloElement& x, const CycloElement& y) {
  CycloElement acc = cyclo_zero();
  for (const auto& [e, c] : f.terms) {
    Rational sc = c;
    for (int i = 0; i < e[0]; ++i) sc *= s0;
    CycloElement term = cyclo_mul(cyclo_pow(x, e[1]), cyclo_pow(y, e[2]));
    acc = cyclo_add(acc, cyclo_scale(std::move(term), sc));
  }
  return acc;
}

std::vector<MetallicParam> expected_classification() {
  static const long svals[][2] = {{0, 1}, {1, 12}, {1, 6}, {1, 2}, {1, 1}, {4, 3},
                                  {2, 1}, {9, 4},  {4, 1}, {5, 1}, {12, 1}};
  std::vector<MetallicParam> out;
  for (const auto& s : svals) {
    const Rational a = make_rational(s[0], s[1]);
    out.push_back({a, 1});
    if (a != 0) out.push_back({a, -1});
  }
  std::sort(out.begin(), out.end(), metallic::param_less);
  return out;
}

}  // namespace

TEST_SUITE("metallic") {

TEST_CASE("transcribed constraint has the expected support") {
  const poly::SparsePoly f = metallic::build_metallic_constraint();
  CHECK(f.vars == std::vector<std::string>{"s", "x", "y"});
  CHECK(f.terms.size() == 18);
  CHECK(f.terms.at({1, 3, 3}) == Rational(-1));
  CHECK(f.terms.at({0, 4, 2}) == Rational(1));
  CHECK(f.terms.at({1, 2, 2}) == Rational(-4));
  CHECK(f.terms.at({0, 0, 2}) == Rational(1));
  CHECK(poly::degree(f, "s") == 1);
  CHECK(poly::degree(f, "x") == 4);
  CHECK(poly::degree(f, "y") == 4);
}

TEST_CASE("re-derivation from the chord ratio matches the transcription") {
  poly::SparsePoly d = poly::zero({});
  CHECK_NOTHROW(d = metallic::derive_metallic_constraint());
  CHECK(d == metallic::build_metallic_constraint());
}

TEST_CASE("equal coordinates solve the constraint at parameter zero") {
  const poly::SparsePoly f = metallic::build_metallic_constraint();
  const long zs[][2] = {{7, 3}, {5, 1}, {12, 5}, {9, 2}, {16, 7}};
  for (const auto& z : zs) {
    const CycloElement w = cyclo_from_rou(rou(z[0], z[1]));
    CHECK(eval_at(f, Rational(0), w, w).is_zero());
  }
}

TEST_CASE("golden ratio points solve the constraint") {
  const poly::SparsePoly f = metallic::build_metallic_constraint();
  const CycloElement z1 = cyclo_power(5, 2), z2 = cyclo_power(5, 1);
  CHECK(eval_at(f, Rational(1), z1, z2).is_zero());
  CHECK(eval_at(f, Rational(1), z2, z1).is_zero());
  CHECK_FALSE(eval_at(f, Rational(2), z1, z2).is_zero());
}

TEST_CASE("classification finds exactly the eleven squared parameters") {
  const std::vector<MetallicParam> got = metallic::classify_metallic();
  CHECK(got.size() == 21);
  CHECK(got == expected_classification());
}

TEST_CASE("diagonal lengths reduce to known radicals") {
  CHECK(cyclo_eq(metallic::diagonal_length(6, 3), cyclo_from_rational(Rational(2))));
  CHECK(cyclo_eq(metallic::diagonal_length(6, 1), cyclo_from_rational(Rational(1))));
  CHECK(cyclo_eq(metallic::diagonal_length(4, 1), sqrt_nonneg_rational(Rational(2))));
  CHECK(cyclo_eq(metallic::diagonal_length(3, 1), sqrt_nonneg_rational(Rational(3))));
  CHECK(metallic::diagonal_length(5, 5).is_zero());
  CHECK(cyclo_eq(metallic::diagonal_length(5, -2), metallic::diagonal_length(5, 3)));
}

TEST_CASE("ratio membership on small polygons") {
  CHECK(metallic::is_metallic_ratio(5, 2, 1) == MetallicParam{Rational(1), 1});
  CHECK(metallic::is_metallic_ratio(8, 3, 1) == MetallicParam{Rational(4), 1});
  CHECK(metallic::is_metallic_ratio(6, 3, 1) == MetallicParam{make_rational(9, 4), 1});
  CHECK(metallic::is_metallic_ratio(5, 1, 2) == MetallicParam{Rational(1), -1});
  CHECK(metallic::is_metallic_ratio(2, 1, 1) == MetallicParam{Rational(0), 1});
  CHECK_FALSE(metallic::is_metallic_ratio(7, 2, 1).has_value());
  // The heptagon ratio is 2cos(pi/7), cubic over Q, so no quadratic holds it.
  const CycloElement r =
      cyclo_div(metallic::diagonal_length(7, 2), metallic::diagonal_length(7, 1));
  CHECK(zx::deg(minimal_polynomial(r)) == 3);
  CHECK_THROWS_AS(metallic::is_metallic_ratio(5, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(metallic::is_metallic_ratio(4, 1, 8), std::invalid_argument);
}

TEST_CASE("realization table rows verify and invert") {
  const auto table = metallic::realization_table();
  REQUIRE(table.size() == 10);
  const long expect[][2] = {{1, 1}, {4, 1}, {9, 4}, {2, 1}, {5, 1},
                            {12, 1}, {1, 2}, {1, 6}, {4, 3}, {1, 12}};
  for (size_t i = 0; i < table.size(); ++i) {
    const auto& [p, real] = table[i];
    CHECK(p == MetallicParam{make_rational(expect[i][0], expect[i][1]), 1});
    CHECK(metallic::is_metallic_ratio(real.n, real.a_exp, real.b_exp) == p);
    // Swapping the diagonals realizes the negative-sign partner.
    CHECK(metallic::is_metallic_ratio(real.n, real.b_exp, real.a_exp) ==
          MetallicParam{p.a, -1});
  }
  const CycloElement up =
      cyclo_div(metallic::diagonal_length(5, 2), metallic::diagonal_length(5, 1));
  const CycloElement dn =
      cyclo_div(metallic::diagonal_length(5, 1), metallic::diagonal_length(5, 2));
  CHECK(cyclo_eq(cyclo_mul(up, dn), cyclo_from_rational(Rational(1))));
}

TEST_CASE("base-field deviation test agrees with the quotient-field test") {
  for (long n = 2; n <= 10; ++n)
    for (long a = 1; a < n; ++a)
      for (long b = 1; b < n; ++b) {
        if (std::gcd(a, b) != 1) continue;
        const auto t = metallic::squared_deviation(n, a, b);
        const auto p = metallic::is_metallic_ratio(n, a, b);
        CHECK(t.has_value() == p.has_value());
        if (t && p) CHECK(*t == p->a);
      }
}

TEST_CASE("polygon scan reproduces the classification") {
  // The square already realizes +-sqrt(2)/2 through its side-diameter pair.
  const std::vector<MetallicParam> small = metallic::scan_metallic(5, 1);
  CHECK(small == std::vector<MetallicParam>{{Rational(0), 1},
                                            {make_rational(1, 2), 1},
                                            {make_rational(1, 2), -1},
                                            {Rational(1), 1},
                                            {Rational(1), -1}});
  const std::vector<MetallicParam> full = metallic::scan_metallic(12, 2);
  CHECK(full == expected_classification());
  CHECK(metallic::scan_metallic(12, 3) == full);
}

TEST_CASE("surd display is canonical") {
  CHECK(metallic::to_string({Rational(0), 1}) == "0");
  CHECK(metallic::to_string({Rational(1), -1}) == "-1");
  CHECK(metallic::to_string({make_rational(9, 4), 1}) == "3/2");
  CHECK(metallic::to_string({Rational(4), -1}) == "-2");
  CHECK(metallic::to_string({Rational(2), 1}) == "sqrt(2)");
  CHECK(metallic::to_string({Rational(5), 1}) == "sqrt(5)");
  CHECK(metallic::to_string({Rational(12), 1}) == "2*sqrt(3)");
  CHECK(metallic::to_string({make_rational(1, 2), -1}) == "-sqrt(2)/2");
  CHECK(metallic::to_string({make_rational(1, 6), 1}) == "sqrt(6)/6");
  CHECK(metallic::to_string({make_rational(4, 3), 1}) == "2*sqrt(3)/3");
  CHECK(metallic::to_string({make_rational(1, 12), 1}) == "sqrt(3)/6");
}

TEST_CASE("parameter values square back to the parameter") {
  for (const MetallicParam& p : expected_classification()) {
    const CycloElement v = metallic::param_value(p);
    CHECK(cyclo_eq(cyclo_mul(v, v), cyclo_from_rational(p.a)));
  }
}

}  // TEST_SUITE
