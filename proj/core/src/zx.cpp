#include "cyclopoint/zx.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <random>

namespace cyclopoint::zx {

void normalize(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

void normalize(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  normalize(r);
  return r;
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  normalize(r);
  return r;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  normalize(r);
  return r;
}

ZPoly neg(ZPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

ZPoly scale(ZPoly a, const Int& c) {
  if (c == 0) return {};
  for (auto& x : a) x *= c;
  return a;
}

QPoly qadd(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  normalize(r);
  return r;
}

QPoly qsub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  normalize(r);
  return r;
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  normalize(r);
  return r;
}

QPoly qscale(QPoly a, const Rational& c) {
  if (c == 0) return {};
  for (auto& x : a) x *= c;
  return a;
}

void qdivmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.empty()) throw std::invalid_argument("qdivmod: division by zero polynomial");
  r = a;
  q.clear();
  if (a.size() < b.size()) return;
  q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lb = b.back();
  for (int i = static_cast<int>(r.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    if (r[i] == 0) continue;
    Rational c = r[i] / lb;
    q[i - (b.size() - 1)] = c;
    for (size_t j = 0; j < b.size(); ++j) r[i - (b.size() - 1) + j] -= c * b[j];
  }
  normalize(q);
  normalize(r);
}

QPoly qrem_monic(QPoly a, const ZPoly& m) {
  const size_t dm = m.size() - 1;
  while (a.size() > dm) {
    Rational c = a.back();
    size_t sh = a.size() - 1 - dm;
    if (c != 0) {
      for (size_t j = 0; j < dm; ++j) a[sh + j] -= c * m[j];
    }
    a.pop_back();
  }
  normalize(a);
  return a;
}

std::optional<ZPoly> try_exact_div(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) return std::nullopt;
  if (a.empty()) return ZPoly{};
  if (a.size() < b.size()) return std::nullopt;
  ZPoly r = a;
  ZPoly q(a.size() - b.size() + 1, Int(0));
  const Int& lb = b.back();
  for (int i = static_cast<int>(r.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    if (r[i] == 0) continue;
    Int c, rem;
    mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), r[i].get_mpz_t(), lb.get_mpz_t());
    if (rem != 0) return std::nullopt;
    q[i - (b.size() - 1)] = c;
    for (size_t j = 0; j < b.size(); ++j) r[i - (b.size() - 1) + j] -= c * b[j];
  }
  for (const auto& c : r)
    if (c != 0) return std::nullopt;
  normalize(q);
  return q;
}

ZPoly derivative(const ZPoly& f) {
  if (f.size() <= 1) return {};
  ZPoly r(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * static_cast<long>(i);
  normalize(r);
  return r;
}

Int content(const ZPoly& f) {
  Int g = 0;
  for (const auto& c : f) {
    g = int_gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

ZPoly primitive_part(const ZPoly& f) {
  if (f.empty()) return {};
  Int g = content(f);
  if (f.back() < 0) g = -g;
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = f[i] / g;
  return r;
}

Int eval(const ZPoly& f, const Int& x) {
  Int acc = 0;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    acc *= x;
    acc += f[i];
  }
  return acc;
}

Int eval_scaled(const ZPoly& f, const Int& p, const Int& q) {
  // q^d * f(p/q) = sum f[i] p^i q^(d-i), Horner in p with a running power of q.
  Int acc = 0;
  Int qpow = 1;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    acc *= p;
    mpz_addmul(acc.get_mpz_t(), f[i].get_mpz_t(), qpow.get_mpz_t());
    if (i > 0) qpow *= q;
  }
  return acc;
}

Rational eval_q(const QPoly& f, const Rational& x) {
  Rational acc = 0;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    acc *= x;
    acc += f[i];
  }
  return acc;
}

ZPoly from_q(const QPoly& f) {
  Int den = 1;
  for (const auto& c : f) den = int_lcm(den, c.get_den());
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    Rational v = f[i] * Rational(den);
    r[i] = v.get_num();
  }
  normalize(r);
  return r;
}

QPoly to_q(const ZPoly& f) {
  QPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = Rational(f[i]);
  return r;
}

namespace {

// ---- modular univariate arithmetic over 61-bit prime fields ----

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

// Unbounded supply of distinct 61-bit primes, generated lazily.
u64 nth_prime(size_t i) {
  static std::vector<u64> primes;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (primes.empty()) primes.push_back(2305843009213693951ULL);  // 2^61 - 1
  while (primes.size() <= i) {
    Int cand(primes.back());
    do {
      cand -= 2;
    } while (mpz_probab_prime_p(cand.get_mpz_t(), 30) == 0);
    primes.push_back(cand.get_ui());
  }
  return primes[i];
}

using MPoly = std::vector<u64>;  // ascending, normalized

void mnormalize(MPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

MPoly to_mod(const ZPoly& f, u64 p) {
  MPoly r(f.size());
  Int pp(static_cast<unsigned long>(p));
  for (size_t i = 0; i < f.size(); ++i) {
    Int c = f[i] % pp;
    if (c < 0) c += pp;
    r[i] = c.get_ui();
  }
  mnormalize(r);
  return r;
}

MPoly mmul(const MPoly& a, const MPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  MPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<u64>((u128(a[i]) * b[j] + r[i + j]) % p);
    }
  }
  mnormalize(r);
  return r;
}

MPoly mrem(MPoly a, const MPoly& b, u64 p) {
  const u64 li = invmod(b.back(), p);
  while (a.size() >= b.size()) {
    u64 c = mulmod(a.back(), li, p);
    size_t sh = a.size() - b.size();
    if (c) {
      for (size_t j = 0; j + 1 < b.size(); ++j) {
        u64 t = mulmod(c, b[j], p);
        a[sh + j] = (a[sh + j] + p - t) % p;
      }
    }
    a.pop_back();
    mnormalize(a);
  }
  return a;
}

// quotient of a by monic-izable b (exact or not; standard poly division)
MPoly mquo(MPoly a, const MPoly& b, u64 p) {
  if (a.size() < b.size()) return {};
  const u64 li = invmod(b.back(), p);
  MPoly q(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size()) {
    u64 c = mulmod(a.back(), li, p);
    size_t sh = a.size() - b.size();
    q[sh] = c;
    if (c) {
      for (size_t j = 0; j + 1 < b.size(); ++j) {
        u64 t = mulmod(c, b[j], p);
        a[sh + j] = (a[sh + j] + p - t) % p;
      }
    }
    a.pop_back();
    mnormalize(a);
  }
  mnormalize(q);
  return q;
}

MPoly mmonic(MPoly f, u64 p) {
  if (f.empty()) return f;
  const u64 li = invmod(f.back(), p);
  for (auto& c : f) c = mulmod(c, li, p);
  return f;
}

MPoly mgcd(MPoly a, MPoly b, u64 p) {
  while (!b.empty()) {
    MPoly r = mrem(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return mmonic(std::move(a), p);
}

MPoly mderiv(const MPoly& f, u64 p) {
  if (f.size() <= 1) return {};
  MPoly r(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = mulmod(f[i], i % p, p);
  mnormalize(r);
  return r;
}

MPoly mpowmod_poly(MPoly base, u64 e, const MPoly& f, u64 p) {
  base = mrem(std::move(base), f, p);
  MPoly acc{1};
  while (e) {
    if (e & 1) acc = mrem(mmul(acc, base, p), f, p);
    base = mrem(mmul(base, base, p), f, p);
    e >>= 1;
  }
  return acc;
}

// All roots in F_p of a monic squarefree product of linear factors.
void mroots_split(const MPoly& f, u64 p, std::mt19937_64& rng, std::vector<u64>& out) {
  if (f.size() <= 1) return;
  if (f.size() == 2) {
    out.push_back((p - f[0]) % p);
    return;
  }
  for (;;) {
    u64 r = rng() % p;
    MPoly w = mpowmod_poly(MPoly{r, 1}, (p - 1) / 2, f, p);
    if (w.empty()) {
      w = MPoly{p - 1};
    } else {
      w[0] = (w[0] + p - 1) % p;
    }
    mnormalize(w);
    if (w.empty()) continue;
    MPoly g = mgcd(f, w, p);
    if (g.size() > 1 && g.size() < f.size()) {
      MPoly q = mquo(f, g, p);
      mroots_split(g, p, rng, out);
      mroots_split(mmonic(std::move(q), p), p, rng, out);
      return;
    }
  }
}

std::vector<u64> mroots(const MPoly& f0, u64 p, std::mt19937_64& rng) {
  std::vector<u64> out;
  MPoly f = mmonic(f0, p);
  if (f.size() <= 1) return out;
  if (f.size() == 2) {
    out.push_back((p - f[0]) % p);
    return out;
  }
  MPoly xp = mpowmod_poly(MPoly{0, 1}, p, f, p);  // x^p mod f
  MPoly xmx = xp;
  if (xmx.size() < 2) xmx.resize(2, 0);
  xmx[1] = (xmx[1] + p - 1) % p;
  mnormalize(xmx);
  MPoly g = mgcd(f, xmx, p);  // product of (x - r) over distinct roots
  mroots_split(g, p, rng, out);
  return out;
}

// All positive divisors of |n|, n != 0.
std::vector<Int> divisors_of(const Int& n0) {
  Int n = abs(n0);
  std::vector<std::pair<Int, int>> fac;
  Int m = n;
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      fac.emplace_back(p, e);
    }
  }
  if (m > 1) fac.emplace_back(m, 1);
  std::vector<Int> divs{Int(1)};
  for (const auto& [p, e] : fac) {
    size_t sz = divs.size();
    Int pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pe);
    }
  }
  return divs;
}

// Rational reconstruction of r mod m with |num| <= nbound, den <= dbound.
std::optional<Rational> rational_reconstruct(const Int& r, const Int& m, const Int& nbound,
                                             const Int& dbound) {
  Int r0 = m, r1 = r % m;
  if (r1 < 0) r1 += m;
  Int t0 = 0, t1 = 1;
  while (abs(r1) > nbound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0) return std::nullopt;
  if (abs(t1) > dbound) return std::nullopt;
  if (int_gcd(r1, t1) != 1) return std::nullopt;
  return make_rational(r1, t1);
}

}  // namespace

ZPoly gcd(const ZPoly& a0, const ZPoly& b0) {
  if (a0.empty()) return primitive_part(b0);
  if (b0.empty()) return primitive_part(a0);
  ZPoly a = primitive_part(a0), b = primitive_part(b0);
  if (deg(a) < deg(b)) std::swap(a, b);
  if (deg(b) == 0) return ZPoly{Int(1)};
  const Int lc_gcd = int_gcd(a.back(), b.back());

  int best_deg = -1;
  Int crt_mod = 0;
  ZPoly crt;  // balanced representatives of lc_gcd * (monic gcd image)
  for (size_t pi = 0; pi < 512; ++pi) {
    const u64 p = nth_prime(pi);
    Int pp(static_cast<unsigned long>(p));
    if (a.back() % pp == 0 || b.back() % pp == 0) continue;
    MPoly g = mgcd(to_mod(a, p), to_mod(b, p), p);
    const int dp = static_cast<int>(g.size()) - 1;
    if (dp == 0) return ZPoly{Int(1)};
    if (best_deg != -1 && dp > best_deg) continue;  // unlucky prime
    u64 scale_to;
    {
      Int c = lc_gcd % pp;
      if (c < 0) c += pp;
      scale_to = c.get_ui();
    }
    for (auto& c : g) c = mulmod(c, scale_to, p);
    if (best_deg == -1 || dp < best_deg) {
      best_deg = dp;
      crt_mod = pp;
      crt.assign(g.size(), Int(0));
      for (size_t i = 0; i < g.size(); ++i) {
        Int v(static_cast<unsigned long>(g[i]));
        if (v * 2 > crt_mod) v -= crt_mod;
        crt[i] = v;
      }
    } else {
      Int new_mod = crt_mod * pp;
      Int inv_old;
      {
        Int t = crt_mod % pp;
        if (t < 0) t += pp;
        inv_old = Int(static_cast<unsigned long>(invmod(t.get_ui(), p)));
      }
      for (size_t i = 0; i < crt.size(); ++i) {
        Int cur = crt[i] % pp;
        if (cur < 0) cur += pp;
        Int want(static_cast<unsigned long>(g[i]));
        Int delta = ((want - cur) * inv_old) % pp;
        if (delta < 0) delta += pp;
        Int v = crt[i] + delta * crt_mod;
        if (v * 2 > new_mod) v -= new_mod;
        crt[i] = v;
      }
      crt_mod = new_mod;
    }
    ZPoly cand = crt;
    normalize(cand);
    if (static_cast<int>(cand.size()) - 1 != best_deg) continue;
    cand = primitive_part(cand);
    if (try_exact_div(a, cand) && try_exact_div(b, cand)) return cand;
  }
  throw verification_error("zx::gcd: modular gcd did not stabilize");
}

ZPoly squarefree_part(const ZPoly& f0) {
  ZPoly f = primitive_part(f0);
  if (deg(f) <= 0) return f;
  ZPoly g = gcd(f, derivative(f));
  if (deg(g) == 0) return f;
  auto q = try_exact_div(f, g);
  if (!q) throw verification_error("zx::squarefree_part: gcd does not divide input");
  return primitive_part(*q);
}

std::vector<Rational> rational_roots(const ZPoly& f0) {
  if (f0.empty()) throw std::invalid_argument("rational_roots: zero polynomial");
  std::vector<Rational> roots;
  ZPoly f = f0;
  size_t k = 0;
  while (k < f.size() && f[k] == 0) ++k;
  if (k > 0) {
    roots.push_back(Rational(0));
    f.erase(f.begin(), f.begin() + k);
  }
  if (deg(f) <= 0) {
    return roots;
  }
  f = primitive_part(f);
  if (deg(f) == 1) {
    roots.push_back(make_rational(-f[0], f[1]));
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  const Int a0 = f.front(), ad = f.back();
  const Int kSmall = 1000000000L;
  if (abs(a0) <= kSmall && abs(ad) <= kSmall) {
    auto dp = divisors_of(a0);
    auto dq = divisors_of(ad);
    if (dp.size() * dq.size() <= 4096) {
      for (const auto& p : dp) {
        for (const auto& q : dq) {
          if (int_gcd(p, q) != 1) continue;
          if (eval_scaled(f, p, q) == 0) roots.push_back(make_rational(p, q));
          Int np = -p;
          if (eval_scaled(f, np, q) == 0) roots.push_back(make_rational(np, q));
        }
      }
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      return roots;
    }
  }

  // Modular path: roots mod p of the squarefree part, Newton lifting, rational
  // reconstruction, exact confirmation against f.
  ZPoly s = squarefree_part(f);
  if (deg(s) == 1) {
    if (eval_scaled(f, -s[0], s[1]) == 0) roots.push_back(make_rational(-s[0], s[1]));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
  }
  std::mt19937_64 rng(0x5eedULL);
  const Int nbound = abs(s.front());
  const Int dbound = abs(s.back());
  const ZPoly sd = derivative(s);
  for (size_t pi = 0; pi < 512; ++pi) {
    const u64 p = nth_prime(pi);
    Int pp(static_cast<unsigned long>(p));
    if (s.back() % pp == 0) continue;
    MPoly sp = to_mod(s, p);
    if (mgcd(sp, mderiv(sp, p), p).size() > 1) continue;  // p divides disc
    std::vector<u64> rs = mroots(sp, p, rng);
    const Int target = 2 * nbound * dbound + 1;
    for (const u64 r : rs) {
      Int mod(static_cast<unsigned long>(p));
      Int x(static_cast<unsigned long>(r));
      while (mod < target) {
        mod *= mod;
        Int sx = 0, sdx = 0;
        for (int i = static_cast<int>(s.size()) - 1; i >= 0; --i) sx = (sx * x + s[i]) % mod;
        for (int i = static_cast<int>(sd.size()) - 1; i >= 0; --i) sdx = (sdx * x + sd[i]) % mod;
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), sdx.get_mpz_t(), mod.get_mpz_t()) == 0) {
          throw verification_error("rational_roots: derivative not invertible during lift");
        }
        x = (x - sx * inv) % mod;
        if (x < 0) x += mod;
      }
      auto rec = rational_reconstruct(x, mod, nbound, dbound);
      if (rec && eval_scaled(f, rec->get_num(), rec->get_den()) == 0) roots.push_back(*rec);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
  }
  throw verification_error("rational_roots: no usable prime found");
}

std::vector<Rational> rational_roots(const QPoly& f) { return rational_roots(from_q(f)); }

}  // namespace cyclopoint::zx
