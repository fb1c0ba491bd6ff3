#include "cyclopoint/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace cyclopoint {

namespace {

zx::ZPoly compute_phi_poly(long n, const std::map<long, zx::ZPoly>& lower) {
  // x^n - 1 divided by Phi_d for all proper divisors d of n.
  zx::ZPoly f(n + 1, Int(0));
  f[0] = -1;
  f[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto q = zx::try_exact_div(f, lower.at(d));
    if (!q) throw verification_error("cyclotomic_poly: inexact division");
    f = std::move(*q);
  }
  return f;
}

std::map<long, std::shared_ptr<const ConductorData>>& cache() {
  static std::map<long, std::shared_ptr<const ConductorData>> c;
  return c;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::shared_ptr<const ConductorData> conductor_data(long n) {
  if (n <= 0) throw std::invalid_argument("conductor must be positive");
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache().find(n);
    if (it != cache().end()) return it->second;
  }
  // Build Phi_d for all divisors of n outside the lock, reusing cached ones.
  std::map<long, zx::ZPoly> phis;
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    std::shared_ptr<const ConductorData> hit;
    {
      std::lock_guard<std::mutex> lock(cache_mutex());
      auto it = cache().find(d);
      if (it != cache().end()) hit = it->second;
    }
    phis[d] = hit ? hit->phi_poly : compute_phi_poly(d, phis);
  }

  auto data = std::make_shared<ConductorData>();
  data->n = n;
  data->phi_poly = std::move(phis[n]);
  data->phi = zx::deg(data->phi_poly);
  const long phi = data->phi;
  if (n > 1) {
    data->rows.resize(n - phi);
    // rows[0] = x^phi = -(lower part of Phi_n)
    std::vector<Int> r0(phi);
    for (long j = 0; j < phi; ++j) r0[j] = -data->phi_poly[j];
    data->rows[0] = r0;
    for (long k = 1; k < n - phi; ++k) {
      const auto& prev = data->rows[k - 1];
      std::vector<Int> row(phi, Int(0));
      const Int& top = prev[phi - 1];
      for (long j = 1; j < phi; ++j) row[j] = prev[j - 1];
      if (top != 0) {
        for (long j = 0; j < phi; ++j) {
          mpz_addmul(row[j].get_mpz_t(), top.get_mpz_t(), r0[j].get_mpz_t());
        }
      }
      data->rows[k] = std::move(row);
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto [it, inserted] = cache().emplace(n, std::move(data));
  return it->second;
}

const zx::ZPoly& cyclotomic_poly(long n) { return conductor_data(n)->phi_poly; }

bool CycloElement::is_zero() const {
  for (const auto& c : coords)
    if (c != 0) return false;
  return true;
}

bool CycloElement::is_rational() const {
  for (size_t i = 1; i < coords.size(); ++i)
    if (coords[i] != 0) return false;
  return true;
}

CycloElement cyclo_zero() { return CycloElement{1, {Rational(0)}}; }

CycloElement cyclo_from_rational(const Rational& r) { return CycloElement{1, {r}}; }

CycloElement cyclo_power(long n, long e) {
  auto data = conductor_data(n);
  long m = e % n;
  if (m < 0) m += n;
  CycloElement out;
  out.conductor = n;
  out.coords.assign(data->phi, Rational(0));
  if (m < data->phi) {
    out.coords[m] = 1;
  } else {
    const auto& row = data->rows[m - data->phi];
    for (long j = 0; j < data->phi; ++j) out.coords[j] = Rational(row[j]);
  }
  return out;
}

CycloElement cyclo_from_rou(const RootOfUnity& u) { return cyclo_power(u.order, u.exp); }

CycloElement cyclo_embed(const CycloElement& e, long m) {
  if (e.conductor == m) return e;
  if (m % e.conductor != 0)
    throw std::invalid_argument("cyclo_embed: target conductor not a multiple");
  const long stride = m / e.conductor;
  auto data = conductor_data(m);
  // substitute x -> x^stride, then reduce mod Phi_m
  zx::QPoly dense((e.coords.size() - 1) * stride + 1, Rational(0));
  for (size_t j = 0; j < e.coords.size(); ++j) dense[j * stride] = e.coords[j];
  zx::normalize(dense);
  zx::QPoly red = zx::qrem_monic(std::move(dense), data->phi_poly);
  CycloElement out;
  out.conductor = m;
  out.coords.assign(data->phi, Rational(0));
  for (size_t j = 0; j < red.size(); ++j) out.coords[j] = red[j];
  return out;
}

namespace {

CycloElement from_reduced(long n, zx::QPoly red, long phi) {
  CycloElement out;
  out.conductor = n;
  out.coords.assign(phi, Rational(0));
  for (size_t j = 0; j < red.size(); ++j) out.coords[j] = red[j];
  return out;
}

}  // namespace

CycloElement cyclo_add(const CycloElement& a, const CycloElement& b) {
  const long n = long_lcm(a.conductor, b.conductor);
  CycloElement ea = cyclo_embed(a, n), eb = cyclo_embed(b, n);
  for (size_t j = 0; j < eb.coords.size(); ++j) ea.coords[j] += eb.coords[j];
  return ea;
}

CycloElement cyclo_sub(const CycloElement& a, const CycloElement& b) {
  const long n = long_lcm(a.conductor, b.conductor);
  CycloElement ea = cyclo_embed(a, n), eb = cyclo_embed(b, n);
  for (size_t j = 0; j < eb.coords.size(); ++j) ea.coords[j] -= eb.coords[j];
  return ea;
}

CycloElement cyclo_mul(const CycloElement& a, const CycloElement& b) {
  const long n = long_lcm(a.conductor, b.conductor);
  CycloElement ea = cyclo_embed(a, n), eb = cyclo_embed(b, n);
  auto data = conductor_data(n);
  zx::QPoly pa(ea.coords.begin(), ea.coords.end());
  zx::QPoly pb(eb.coords.begin(), eb.coords.end());
  zx::normalize(pa);
  zx::normalize(pb);
  zx::QPoly prod = zx::qmul(pa, pb);
  return from_reduced(n, zx::qrem_monic(std::move(prod), data->phi_poly), data->phi);
}

CycloElement cyclo_neg(CycloElement a) {
  for (auto& c : a.coords) c = -c;
  return a;
}

CycloElement cyclo_scale(CycloElement a, const Rational& c) {
  for (auto& x : a.coords) x *= c;
  return a;
}

CycloElement cyclo_inv(const CycloElement& b) {
  if (b.is_zero()) throw std::domain_error("cyclo_inv: division by zero");
  const long n = b.conductor;
  auto data = conductor_data(n);
  // Extended Euclid for gcd(b_poly, Phi_n) = 1 over Q; Phi_n irreducible, so
  // any nonzero b is invertible.
  zx::QPoly r0 = zx::to_q(data->phi_poly);
  zx::QPoly r1(b.coords.begin(), b.coords.end());
  zx::normalize(r1);
  zx::QPoly t0{}, t1{Rational(1)};
  while (!r1.empty()) {
    zx::QPoly q, r2;
    zx::qdivmod(r0, r1, q, r2);
    zx::QPoly t2 = zx::qsub(t0, zx::qmul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (zx::deg(r0) != 0) throw verification_error("cyclo_inv: element not invertible");
  zx::QPoly inv = zx::qscale(std::move(t0), Rational(1) / r0[0]);
  inv = zx::qrem_monic(std::move(inv), data->phi_poly);
  return from_reduced(n, std::move(inv), data->phi);
}

CycloElement cyclo_div(const CycloElement& a, const CycloElement& b) {
  const long n = long_lcm(a.conductor, b.conductor);
  return cyclo_mul(cyclo_embed(a, n), cyclo_inv(cyclo_embed(b, n)));
}

CycloElement cyclo_pow(const CycloElement& a, long k) {
  if (k < 0) return cyclo_pow(cyclo_inv(a), -k);
  CycloElement acc = cyclo_from_rational(Rational(1));
  CycloElement base = a;
  long e = k;
  while (e) {
    if (e & 1) acc = cyclo_mul(acc, base);
    base = cyclo_mul(base, base);
    e >>= 1;
  }
  return acc;
}

bool cyclo_eq(const CycloElement& a, const CycloElement& b) {
  const long n = long_lcm(a.conductor, b.conductor);
  CycloElement ea = cyclo_embed(a, n), eb = cyclo_embed(b, n);
  return ea.coords == eb.coords;
}

CycloElement galois_apply(const CycloElement& e, long k) {
  const long n = e.conductor;
  long km = k % n;
  if (km < 0) km += n;
  if (std::gcd(km, n) != 1)
    throw std::invalid_argument("galois_apply: exponent not coprime to conductor");
  auto data = conductor_data(n);
  zx::QPoly dense(n, Rational(0));
  for (size_t j = 0; j < e.coords.size(); ++j) {
    if (e.coords[j] == 0) continue;
    dense[static_cast<size_t>(j) * km % n] += e.coords[j];
  }
  zx::normalize(dense);
  return from_reduced(n, zx::qrem_monic(std::move(dense), data->phi_poly), data->phi);
}

std::optional<Rational> as_rational(const CycloElement& e) {
  if (!e.is_rational()) return std::nullopt;
  return e.coords[0];
}

zx::QPoly minimal_polynomial(const CycloElement& e) {
  const long n = e.conductor;
  std::vector<CycloElement> orbit;
  for (long k = 1; k <= n; ++k) {
    if (std::gcd(k, n) != 1) continue;
    CycloElement img = galois_apply(e, k);
    bool seen = false;
    for (const auto& o : orbit) {
      if (o.coords == img.coords) {
        seen = true;
        break;
      }
    }
    if (!seen) orbit.push_back(std::move(img));
  }
  // product of (t - img) with CycloElement coefficients
  std::vector<CycloElement> poly{cyclo_from_rational(Rational(1))};
  for (const auto& img : orbit) {
    std::vector<CycloElement> next(poly.size() + 1, cyclo_zero());
    for (size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] = cyclo_add(next[j + 1], poly[j]);
      next[j] = cyclo_sub(next[j], cyclo_mul(img, poly[j]));
    }
    poly = std::move(next);
  }
  zx::QPoly out(poly.size());
  for (size_t j = 0; j < poly.size(); ++j) {
    auto r = as_rational(poly[j]);
    if (!r) throw verification_error("minimal_polynomial: non-rational coefficient");
    out[j] = *r;
  }
  zx::normalize(out);
  return out;
}

CycloElement cyclo_eval_poly(const zx::QPoly& f, const CycloElement& e) {
  CycloElement acc = cyclo_zero();
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    acc = cyclo_mul(acc, e);
    acc = cyclo_add(acc, cyclo_from_rational(f[i]));
  }
  return acc;
}

CycloElement sqrt_nonneg_rational(const Rational& r) {
  if (r < 0) throw std::domain_error("sqrt_nonneg_rational: negative input");
  if (r == 0) return cyclo_zero();
  // sqrt(p/q) = sqrt(p*q)/q; pull the square part out of p*q so only the
  // squarefree remainder needs Gauss sums.
  Int m = 1, rest = r.get_num() * r.get_den();
  std::vector<long> squarefree;
  for (Int p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) m *= p;
    if (e % 2) {
      if (!p.fits_slong_p())
        throw std::domain_error("sqrt_nonneg_rational: squarefree part too large");
      squarefree.push_back(p.get_si());
    }
  }
  if (rest > 1) {
    if (!rest.fits_slong_p())
      throw std::domain_error("sqrt_nonneg_rational: squarefree part too large");
    squarefree.push_back(rest.get_si());
  }
  CycloElement acc = cyclo_from_rational(make_rational(m, r.get_den()));
  for (long p : squarefree) {
    CycloElement s;
    if (p == 2) {
      s = cyclo_add(cyclo_power(8, 1), cyclo_power(8, 7));
    } else {
      // Gauss sum over Legendre symbols: equals sqrt(p) for p = 1 mod 4 and
      // i*sqrt(p) for p = 3 mod 4 (then corrected by zeta_4^3 = -i).
      s = cyclo_zero();
      for (long k = 1; k < p; ++k) {
        Int kk(k), pp(p);
        int leg = mpz_legendre(kk.get_mpz_t(), pp.get_mpz_t());
        CycloElement term = cyclo_power(p, k);
        s = (leg >= 0) ? cyclo_add(s, term) : cyclo_sub(s, term);
      }
      if (p % 4 == 3) s = cyclo_mul(s, cyclo_power(4, 3));
    }
    acc = cyclo_mul(acc, s);
  }
  return acc;
}

std::string to_string(const CycloElement& e) {
  std::string s = "[" + std::to_string(e.conductor) + ";";
  for (size_t j = 0; j < e.coords.size(); ++j) {
    if (j) s += ",";
    s += to_string(e.coords[j]);
  }
  return s + "]";
}

}  // namespace cyclopoint
