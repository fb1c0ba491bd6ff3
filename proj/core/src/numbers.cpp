#include "cyclopoint/numbers.hpp"

namespace cyclopoint {

long euler_phi(long n) {
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> ps;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      ps.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) ps.push_back(m);
  return ps;
}

std::vector<long> phi_sieve(long limit) {
  std::vector<long> phi(limit + 1);
  for (long i = 0; i <= limit; ++i) phi[i] = i;
  for (long p = 2; p <= limit; ++p) {
    if (phi[p] == p) {  // p prime
      for (long k = p; k <= limit; k += p) phi[k] -= phi[k] / p;
    }
  }
  return phi;
}

}  // namespace cyclopoint
