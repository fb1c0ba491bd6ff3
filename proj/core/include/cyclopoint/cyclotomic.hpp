#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cyclopoint/numbers.hpp"
#include "cyclopoint/root_of_unity.hpp"
#include "cyclopoint/zx.hpp"

namespace cyclopoint {

// Per-conductor data: Phi_n plus reduction rows x^k mod Phi_n for
// k in [phi(n), n). Built once, shared via a thread-safe cache.
struct ConductorData {
  long n = 1;
  long phi = 1;
  zx::ZPoly phi_poly;                  // monic, degree phi
  std::vector<std::vector<Int>> rows;  // rows[k - phi] = x^k mod Phi_n
};

std::shared_ptr<const ConductorData> conductor_data(long n);
const zx::ZPoly& cyclotomic_poly(long n);

// Element of Q(zeta_n) in the power basis modulo Phi_n. coords has length
// exactly phi(n). The conductor is not automatically minimized; values of
// different conductors combine through the lcm embedding.
struct CycloElement {
  long conductor = 1;
  std::vector<Rational> coords{Rational(0)};

  bool is_zero() const;
  bool is_rational() const;
};

CycloElement cyclo_zero();
CycloElement cyclo_from_rational(const Rational& r);
CycloElement cyclo_from_rou(const RootOfUnity& u);
// zeta_n^e reduced into the power basis (e arbitrary integer).
CycloElement cyclo_power(long n, long e);

// Rewrite e in conductor m; requires conductor | m.
CycloElement cyclo_embed(const CycloElement& e, long m);

CycloElement cyclo_add(const CycloElement& a, const CycloElement& b);
CycloElement cyclo_sub(const CycloElement& a, const CycloElement& b);
CycloElement cyclo_mul(const CycloElement& a, const CycloElement& b);
// b must be nonzero.
CycloElement cyclo_div(const CycloElement& a, const CycloElement& b);
CycloElement cyclo_neg(CycloElement a);
CycloElement cyclo_inv(const CycloElement& b);
CycloElement cyclo_pow(const CycloElement& a, long k);
CycloElement cyclo_scale(CycloElement a, const Rational& c);

bool cyclo_eq(const CycloElement& a, const CycloElement& b);

// Image under zeta -> zeta^k; requires gcd(k, conductor) = 1.
CycloElement galois_apply(const CycloElement& e, long k);

// The rational value when all non-constant power-basis coordinates vanish.
std::optional<Rational> as_rational(const CycloElement& e);

// Monic minimal polynomial over Q, as ascending rational coefficients.
// Product of (t - image) over the distinct Galois images; every coefficient
// is asserted rational.
zx::QPoly minimal_polynomial(const CycloElement& e);

// Horner evaluation of a rational-coefficient polynomial at e.
CycloElement cyclo_eval_poly(const zx::QPoly& f, const CycloElement& e);

// The nonnegative square root of r >= 0, assembled from Gauss sums.
CycloElement sqrt_nonneg_rational(const Rational& r);

std::string to_string(const CycloElement& e);

}  // namespace cyclopoint
