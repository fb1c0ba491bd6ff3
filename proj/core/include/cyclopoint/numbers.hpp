#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclopoint {

using Int = mpz_class;
using Rational = mpq_class;

// Raised when an internal exact-arithmetic self-check fails; callers treat it
// as a bug report, never as a recoverable condition.
struct verification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Int int_gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline long long_gcd(long a, long b) { return std::gcd(a, b); }

inline long long_lcm(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

// num/den with any signs; canonicalizes (den > 0, reduced).
inline Rational make_rational(Int num, Int den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational r;
  r.get_num() = std::move(num);
  r.get_den() = std::move(den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Int(num), Int(den));
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline Int pow_int(Int base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Euler's totient by trial-division factorization; n is small everywhere
// (conductor scale), so this is never a bottleneck.
long euler_phi(long n);

// Prime factors of n, ascending, without multiplicity.
std::vector<long> prime_factors(long n);

// phi(n) for all n in [0, limit] by sieve; phi[0] = 0.
std::vector<long> phi_sieve(long limit);

}  // namespace cyclopoint
