#include "cyclopoint/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace cyclopoint::poly {

namespace {

void require_same_vars(const SparsePoly& a, const SparsePoly& b) {
  if (a.vars != b.vars)
    throw std::invalid_argument("polynomial operands use different variable lists");
}

void insert_term(SparsePoly& f, std::vector<int> e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = f.terms.try_emplace(std::move(e), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) f.terms.erase(it);
  }
}

bool has_negative_exponent(const SparsePoly& f) {
  for (const auto& [e, c] : f.terms)
    for (int x : e)
      if (x < 0) return true;
  return false;
}

void require_ordinary(const SparsePoly& f, const char* op) {
  if (has_negative_exponent(f))
    throw std::invalid_argument(std::string(op) + ": negative exponents present");
}

// graded-lex: higher total degree first, ties by lexicographic comparison of
// the exponent vector (variable list order)
bool graded_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  long ta = std::accumulate(a.begin(), a.end(), 0L);
  long tb = std::accumulate(b.begin(), b.end(), 0L);
  if (ta != tb) return ta < tb;
  return a < b;
}

const std::pair<const std::vector<int>, Rational>& leading_term(const SparsePoly& f) {
  auto best = f.terms.begin();
  for (auto it = std::next(best); it != f.terms.end(); ++it)
    if (graded_lex_less(best->first, it->first)) best = it;
  return *best;
}

}  // namespace

SparsePoly zero(std::vector<std::string> vars) {
  SparsePoly f;
  f.vars = std::move(vars);
  return f;
}

SparsePoly constant(std::vector<std::string> vars, const Rational& c) {
  SparsePoly f = zero(std::move(vars));
  if (c != 0) f.terms.emplace(std::vector<int>(f.vars.size(), 0), c);
  return f;
}

SparsePoly monomial(std::vector<std::string> vars, std::vector<int> exps,
                    const Rational& c) {
  SparsePoly f = zero(std::move(vars));
  if (exps.size() != f.vars.size())
    throw std::invalid_argument("monomial: exponent vector length mismatch");
  if (c != 0) f.terms.emplace(std::move(exps), c);
  return f;
}

SparsePoly variable(std::vector<std::string> vars, const std::string& name) {
  SparsePoly f = zero(std::move(vars));
  std::vector<int> e(f.vars.size(), 0);
  e[var_index(f, name)] = 1;
  f.terms.emplace(std::move(e), Rational(1));
  return f;
}

int var_index(const SparsePoly& f, const std::string& name) {
  for (size_t i = 0; i < f.vars.size(); ++i)
    if (f.vars[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown variable: " + name);
}

bool is_constant(const SparsePoly& f) {
  for (const auto& [e, c] : f.terms)
    for (int x : e)
      if (x != 0) return false;
  return true;
}

Rational constant_value(const SparsePoly& f) {
  if (!is_constant(f)) throw std::invalid_argument("constant_value: nonconstant");
  return f.terms.empty() ? Rational(0) : f.terms.begin()->second;
}

int degree(const SparsePoly& f, int var) {
  if (f.terms.empty()) return -1;
  int d = std::numeric_limits<int>::min();
  for (const auto& [e, c] : f.terms) d = std::max(d, e[var]);
  return d;
}

int degree(const SparsePoly& f, const std::string& var) {
  return degree(f, var_index(f, var));
}

int min_exponent(const SparsePoly& f, int var) {
  if (f.terms.empty()) return 0;
  int d = std::numeric_limits<int>::max();
  for (const auto& [e, c] : f.terms) d = std::min(d, e[var]);
  return d;
}

SparsePoly add(const SparsePoly& a, const SparsePoly& b) {
  require_same_vars(a, b);
  SparsePoly out = a;
  for (const auto& [e, c] : b.terms) insert_term(out, e, c);
  return out;
}

SparsePoly sub(const SparsePoly& a, const SparsePoly& b) {
  require_same_vars(a, b);
  SparsePoly out = a;
  for (const auto& [e, c] : b.terms) insert_term(out, e, -c);
  return out;
}

SparsePoly mul(const SparsePoly& a, const SparsePoly& b) {
  require_same_vars(a, b);
  SparsePoly out = zero(a.vars);
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      insert_term(out, std::move(e), ca * cb);
    }
  }
  return out;
}

SparsePoly neg(SparsePoly a) {
  for (auto& [e, c] : a.terms) c = -c;
  return a;
}

SparsePoly scale(SparsePoly a, const Rational& c) {
  if (c == 0) return zero(a.vars);
  for (auto& [e, co] : a.terms) co *= c;
  return a;
}

SparsePoly pow(const SparsePoly& a, int k) {
  if (k < 0) throw std::invalid_argument("pow: negative exponent");
  SparsePoly acc = constant(a.vars, Rational(1));
  for (int i = 0; i < k; ++i) acc = mul(acc, a);
  return acc;
}

std::map<int, SparsePoly> coeffs_wrt(const SparsePoly& f, int var) {
  std::map<int, SparsePoly> out;
  for (const auto& [e, c] : f.terms) {
    auto it = out.find(e[var]);
    if (it == out.end()) it = out.emplace(e[var], zero(f.vars)).first;
    std::vector<int> rest = e;
    rest[var] = 0;
    insert_term(it->second, std::move(rest), c);
  }
  return out;
}

SparsePoly coeff_wrt(const SparsePoly& f, int var, int k) {
  SparsePoly out = zero(f.vars);
  for (const auto& [e, c] : f.terms) {
    if (e[var] != k) continue;
    std::vector<int> rest = e;
    rest[var] = 0;
    insert_term(out, std::move(rest), c);
  }
  return out;
}

SparsePoly lead_coeff_wrt(const SparsePoly& f, int var) {
  return coeff_wrt(f, var, degree(f, var));
}

std::optional<SparsePoly> try_exact_div(const SparsePoly& a, const SparsePoly& b) {
  require_same_vars(a, b);
  if (b.is_zero()) throw std::invalid_argument("exact_div: zero divisor");
  require_ordinary(a, "exact_div");
  require_ordinary(b, "exact_div");
  if (a.is_zero()) return zero(a.vars);
  if (is_constant(b)) return scale(a, Rational(1) / constant_value(b));
  int var = -1;
  for (size_t i = 0; i < b.vars.size(); ++i) {
    if (degree(b, static_cast<int>(i)) > 0) {
      var = static_cast<int>(i);
      break;
    }
  }
  const int db = degree(b, var);
  const SparsePoly lb = lead_coeff_wrt(b, var);
  SparsePoly r = a, q = zero(a.vars);
  while (!r.is_zero()) {
    const int dr = degree(r, var);
    if (dr < db) return std::nullopt;
    auto qc = try_exact_div(lead_coeff_wrt(r, var), lb);
    if (!qc) return std::nullopt;
    std::vector<int> shift(a.vars.size(), 0);
    shift[var] = dr - db;
    SparsePoly term = mul(*qc, monomial(a.vars, shift, Rational(1)));
    q = add(q, term);
    r = sub(r, mul(term, b));
    if (!r.is_zero() && degree(r, var) >= dr)
      throw verification_error("exact_div: no degree progress");
  }
  return q;
}

SparsePoly exact_div(const SparsePoly& a, const SparsePoly& b) {
  auto q = try_exact_div(a, b);
  if (!q) throw verification_error("exact_div: inexact division");
  return *q;
}

SparsePoly substitute_signed(const SparsePoly& f, const std::string& var,
                             SignMode mode) {
  const int v = var_index(f, var);
  SparsePoly out = zero(f.vars);
  for (const auto& [e, c] : f.terms) {
    std::vector<int> ne = e;
    Rational nc = c;
    const bool odd = (e[v] % 2) != 0;
    switch (mode) {
      case SignMode::neg:
        if (odd) nc = -nc;
        break;
      case SignMode::square:
        ne[v] = 2 * e[v];
        break;
      case SignMode::neg_square:
        if (odd) nc = -nc;
        ne[v] = 2 * e[v];
        break;
    }
    insert_term(out, std::move(ne), nc);
  }
  return out;
}

SparsePoly eval_var(const SparsePoly& f, const std::string& var, const Rational& value) {
  const int v = var_index(f, var);
  SparsePoly out = zero(f.vars);
  for (const auto& [e, c] : f.terms) {
    Rational factor(1);
    int k = e[v];
    if (k < 0) {
      if (value == 0) throw std::domain_error("eval_var: 0 with negative exponent");
      factor = Rational(1) / value;
      k = -k;
    } else {
      factor = value;
    }
    Rational p(1);
    for (int i = 0; i < k; ++i) p *= factor;
    std::vector<int> ne = e;
    ne[v] = 0;
    insert_term(out, std::move(ne), c * p);
  }
  return out;
}

SparsePoly derivative(const SparsePoly& f, const std::string& var) {
  const int v = var_index(f, var);
  SparsePoly out = zero(f.vars);
  for (const auto& [e, c] : f.terms) {
    if (e[v] == 0) continue;
    std::vector<int> ne = e;
    ne[v] -= 1;
    insert_term(out, std::move(ne), c * e[v]);
  }
  return out;
}

SparsePoly normalize_primitive(const SparsePoly& f) {
  if (f.is_zero()) return f;
  Int num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : f.terms) {
    num_gcd = int_gcd(num_gcd, c.get_num());
    den_lcm = int_lcm(den_lcm, c.get_den());
  }
  Rational s = make_rational(den_lcm, num_gcd < 0 ? -num_gcd : num_gcd);
  SparsePoly out = scale(f, s);
  if (leading_term(out).second < 0) out = neg(std::move(out));
  return out;
}

namespace {

SparsePoly gcd_rec(const SparsePoly& a, const SparsePoly& b);

// Dense coefficients of f in var after substituting w := t; f must have no
// effective variable besides var and w. tp holds the powers of t.
zx::QPoly eval_to_dense(const SparsePoly& f, int var, int w,
                        const std::vector<Rational>& tp) {
  zx::QPoly out(static_cast<size_t>(std::max(degree(f, var), 0)) + 1, Rational(0));
  for (const auto& [e, c] : f.terms)
    out[static_cast<size_t>(e[static_cast<size_t>(var)])] +=
        w < 0 ? c : c * tp[static_cast<size_t>(e[static_cast<size_t>(w)])];
  zx::normalize(out);
  return out;
}

// The one effective variable besides var shared by a and b, -1 when there is
// none; nullopt when they spread over two or more.
std::optional<int> other_effective_var(const SparsePoly& a, const SparsePoly& b, int var) {
  int w = -1;
  for (const SparsePoly* f : {&a, &b})
    for (const auto& [e, c] : f->terms)
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0 || static_cast<int>(i) == var) continue;
        if (w == -1)
          w = static_cast<int>(i);
        else if (w != static_cast<int>(i))
          return std::nullopt;
      }
  return w;
}

// GCD of polynomials with at most two effective variables, by evaluation of
// the second variable and modular univariate gcds, then Newton interpolation
// against the leading-coefficient gcd and an exact division check. Inputs are
// primitive in var with positive degree. Returns nullopt when the inputs
// involve a third variable or the (rare) retry budget runs out; the caller
// falls back to the subresultant walk.
std::optional<SparsePoly> fast_gcd_two_var(const SparsePoly& A, const SparsePoly& B,
                                           int var) {
  const std::optional<int> wopt = other_effective_var(A, B, var);
  if (!wopt) return std::nullopt;
  const int w = *wopt;
  static const std::vector<Rational> no_powers;
  if (w < 0) {
    zx::ZPoly g = zx::gcd(zx::from_q(eval_to_dense(A, var, -1, no_powers)),
                          zx::from_q(eval_to_dense(B, var, -1, no_powers)));
    SparsePoly out = zero(A.vars);
    for (size_t u = 0; u < g.size(); ++u) {
      if (g[u] == 0) continue;
      std::vector<int> e(A.vars.size(), 0);
      e[static_cast<size_t>(var)] = static_cast<int>(u);
      out.terms.emplace(std::move(e), Rational(g[u]));
    }
    return out;
  }

  const int dw = std::min(degree(A, w), degree(B, w));
  zx::QPoly la, lb;
  {
    const SparsePoly lcA = lead_coeff_wrt(A, var), lcB = lead_coeff_wrt(B, var);
    la = eval_to_dense(lcA, w, -1, no_powers);
    lb = eval_to_dense(lcB, w, -1, no_powers);
  }
  const zx::QPoly gamma = zx::to_q(zx::gcd(zx::from_q(la), zx::from_q(lb)));
  const int need = zx::deg(gamma) + dw + 1;

  std::vector<Rational> ts;
  std::vector<std::vector<Rational>> vals;
  int dmin = std::numeric_limits<int>::max();
  int fails = 0;
  const int wdeg = std::max({degree(A, w), degree(B, w), 1});
  for (long step = 0; step < 8l * (need + 4) && fails < 3; ++step) {
    const long tl = (step % 2) ? -((step + 1) / 2) : step / 2;
    const Rational t(tl);
    if (zx::eval_q(la, t) == 0 || zx::eval_q(lb, t) == 0) continue;
    std::vector<Rational> tp(static_cast<size_t>(wdeg) + 1, Rational(1));
    for (size_t u = 1; u < tp.size(); ++u) tp[u] = tp[u - 1] * t;
    zx::ZPoly gt = zx::gcd(zx::from_q(eval_to_dense(A, var, w, tp)),
                           zx::from_q(eval_to_dense(B, var, w, tp)));
    const int d = zx::deg(gt);
    if (d == 0) return constant(A.vars, Rational(1));
    if (d > dmin) continue;  // unlucky evaluation point
    if (d < dmin) {
      dmin = d;
      ts.clear();
      vals.clear();
    }
    const zx::QPoly gq = zx::to_q(gt);
    const Rational sc = zx::eval_q(gamma, t) / gq.back();
    std::vector<Rational> v(gq.size());
    for (size_t u = 0; u < gq.size(); ++u) v[u] = gq[u] * sc;
    ts.push_back(t);
    vals.push_back(std::move(v));
    if (static_cast<int>(ts.size()) < need) continue;

    SparsePoly H = zero(A.vars);
    const size_t k = ts.size();
    for (int j = 0; j <= dmin; ++j) {
      std::vector<Rational> c(k);
      for (size_t i = 0; i < k; ++i) c[i] = vals[i][static_cast<size_t>(j)];
      for (size_t lvl = 1; lvl < k; ++lvl)
        for (size_t i = k; i-- > lvl;) c[i] = (c[i] - c[i - 1]) / (ts[i] - ts[i - lvl]);
      zx::QPoly P{c[k - 1]};
      for (size_t i = k - 1; i-- > 0;) {
        zx::QPoly sh(P.size() + 1, Rational(0));
        for (size_t u = 0; u < P.size(); ++u) {
          sh[u + 1] += P[u];
          sh[u] -= P[u] * ts[i];
        }
        sh[0] += c[i];
        zx::normalize(sh);
        P = std::move(sh);
      }
      for (size_t u = 0; u < P.size(); ++u) {
        if (P[u] == 0) continue;
        std::vector<int> e(A.vars.size(), 0);
        e[static_cast<size_t>(var)] = j;
        e[static_cast<size_t>(w)] = static_cast<int>(u);
        H.terms.emplace(std::move(e), P[u]);
      }
    }
    SparsePoly Hp = primitive_wrt(H, var);
    if (try_exact_div(A, Hp) && try_exact_div(B, Hp)) return Hp;
    ++fails;  // every retained sample was degree-inflated; gather a fresh one
    ts.pop_back();
    vals.pop_back();
  }
  return std::nullopt;
}

// ---- modular resultant for inputs spanning at most two variables ----

using u64 = std::uint64_t;
using u128 = unsigned __int128;

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

u64 int_mod(const Int& v, u64 p) { return mpz_fdiv_ui(v.get_mpz_t(), p); }

// Montgomery arithmetic mod an odd prime below 2^63; values live in residue
// form (x * 2^64 mod p), with zero shared between both representations.
struct Mont {
  u64 p, ninv, r2;

  explicit Mont(u64 prime) : p(prime) {
    u64 x = p;
    for (int i = 0; i < 5; ++i) x *= 2 - p * x;  // p * x == 1 mod 2^64
    ninv = ~x + 1;
    const u64 r1 = (~p + 1) % p;  // 2^64 mod p
    r2 = static_cast<u64>(u128(r1) * r1 % p);
  }
  u64 redc(u128 t) const {
    const u64 m = static_cast<u64>(t) * ninv;
    const u64 r = static_cast<u64>((t + u128(m) * p) >> 64);
    return r >= p ? r - p : r;
  }
  u64 from(u64 v) const { return redc(u128(v) * r2); }
  u64 to(u64 m) const { return redc(u128(m)); }
  u64 mul(u64 a, u64 b) const { return redc(u128(a) * b); }
  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 pow(u64 a, u64 e) const {
    u64 r = from(1);
    for (; e; e >>= 1) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

u64 eval_row(const std::vector<u64>& r, u64 t, const Mont& M) {
  u64 v = 0;
  for (size_t i = r.size(); i-- > 0;) v = M.add(M.mul(v, t), r[i]);
  return v;
}

// det of the Sylvester matrix of a and b over GF(p), via the Euclidean chain
// with leading-coefficient and sign bookkeeping. Inputs are nonzero, in
// Montgomery form; so is the result.
u64 res_mod_p(std::vector<u64> a, std::vector<u64> b, const Mont& M) {
  auto trim = [](std::vector<u64>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  };
  trim(a);
  trim(b);
  u64 acc = M.from(1);
  if (a.size() < b.size()) {
    if (((a.size() - 1) & 1) && ((b.size() - 1) & 1)) acc = M.p - acc;
    std::swap(a, b);
  }
  while (b.size() > 1) {
    const size_t m = a.size() - 1, k = b.size() - 1;
    const u64 li = M.inv(b.back());
    std::vector<u64> r = a;
    for (int i = static_cast<int>(r.size()) - 1; i >= static_cast<int>(k); --i) {
      if (r[i] == 0) continue;
      const u64 c = M.mul(r[i], li);
      for (size_t j = 0; j < k; ++j) {
        u64& t = r[static_cast<size_t>(i) - k + j];
        t = M.sub(t, M.mul(c, b[j]));
      }
      r[i] = 0;
    }
    trim(r);
    if (r.empty()) return 0;
    acc = M.mul(acc, M.pow(b.back(), m - (r.size() - 1)));
    if ((m & 1) && (k & 1)) acc = M.p - acc;
    a = std::move(b);
    b = std::move(r);
  }
  return M.mul(acc, M.pow(b[0], a.size() - 1));
}

// Exact resultant wrt v when f and g involve at most one other variable:
// evaluate that variable, take univariate resultants over word-size prime
// fields, interpolate, and CRT-combine. The prime count comes from the
// permanent bound ||det||_1 <= prod over rows of the row 1-norms, so the
// reconstruction is unconditional. nullopt when a third variable appears.
std::optional<SparsePoly> fast_resultant_two_var(const SparsePoly& f,
                                                 const SparsePoly& g, int v) {
  const std::optional<int> wopt = other_effective_var(f, g, v);
  if (!wopt) return std::nullopt;
  const int w = *wopt;
  const int df = degree(f, v), dg = degree(g, v);
  const int dwf = w < 0 ? 0 : degree(f, w), dwg = w < 0 ? 0 : degree(g, w);

  Int denf(1), deng(1);
  for (const auto& [e, c] : f.terms)
    mpz_lcm(denf.get_mpz_t(), denf.get_mpz_t(), c.get_den().get_mpz_t());
  for (const auto& [e, c] : g.terms)
    mpz_lcm(deng.get_mpz_t(), deng.get_mpz_t(), c.get_den().get_mpz_t());
  auto grid = [&](const SparsePoly& h, const Int& den, int dv, int dw2) {
    std::vector<std::vector<Int>> out(static_cast<size_t>(dv) + 1,
                                      std::vector<Int>(static_cast<size_t>(dw2) + 1, Int(0)));
    for (const auto& [e, c] : h.terms) {
      const Rational s = c * Rational(den);
      out[static_cast<size_t>(e[static_cast<size_t>(v)])]
         [w < 0 ? 0 : static_cast<size_t>(e[static_cast<size_t>(w)])] = s.get_num();
    }
    return out;
  };
  const auto F = grid(f, denf, df, dwf), G = grid(g, deng, dg, dwg);

  Int nf(0), ng(0);
  for (const auto& row : F)
    for (const Int& cc : row) nf += abs(cc);
  for (const auto& row : G)
    for (const Int& cc : row) ng += abs(cc);
  const size_t bits = static_cast<size_t>(dg) * mpz_sizeinbase(nf.get_mpz_t(), 2) +
                      static_cast<size_t>(df) * mpz_sizeinbase(ng.get_mpz_t(), 2) + 2;
  const size_t nprimes = bits / 60 + 1;
  const size_t N = static_cast<size_t>(dg) * dwf + static_cast<size_t>(df) * dwg + 1;

  std::vector<Int> res_int(N, Int(0));
  Int mod(1);
  size_t got = 0;
  for (size_t pi = 0; got < nprimes && pi < nprimes + 64; ++pi) {
    const u64 p = nth_prime(pi);
    const Mont M(p);
    auto reduce = [&](const std::vector<std::vector<Int>>& src) {
      std::vector<std::vector<u64>> out(src.size());
      for (size_t i = 0; i < src.size(); ++i) {
        out[i].resize(src[i].size());
        for (size_t j = 0; j < src[i].size(); ++j)
          out[i][j] = M.from(int_mod(src[i][j], p));
      }
      return out;
    };
    const auto Fp = reduce(F), Gp = reduce(G);
    auto all_zero = [](const std::vector<u64>& r) {
      return std::all_of(r.begin(), r.end(), [](u64 x) { return x == 0; });
    };
    if (all_zero(Fp[static_cast<size_t>(df)]) || all_zero(Gp[static_cast<size_t>(dg)]))
      continue;  // degree drop mod p

    std::vector<u64> P(N, 0);
    if (w < 0) {
      std::vector<u64> av(static_cast<size_t>(df) + 1), bv(static_cast<size_t>(dg) + 1);
      for (size_t j = 0; j < av.size(); ++j) av[j] = Fp[j][0];
      for (size_t j = 0; j < bv.size(); ++j) bv[j] = Gp[j][0];
      P[0] = res_mod_p(av, bv, M);
    } else {
      std::vector<u64> nodes, values;
      for (u64 t = 0; nodes.size() < N && t < N + 16ull * (dwf + dwg + 8); ++t) {
        const u64 tm = M.from(t);
        if (eval_row(Fp[static_cast<size_t>(df)], tm, M) == 0 ||
            eval_row(Gp[static_cast<size_t>(dg)], tm, M) == 0)
          continue;
        std::vector<u64> av(static_cast<size_t>(df) + 1), bv(static_cast<size_t>(dg) + 1);
        for (size_t j = 0; j < av.size(); ++j) av[j] = eval_row(Fp[j], tm, M);
        for (size_t j = 0; j < bv.size(); ++j) bv[j] = eval_row(Gp[j], tm, M);
        nodes.push_back(t);
        values.push_back(res_mod_p(av, bv, M));
      }
      if (nodes.size() < N) continue;
      std::vector<u64> invsmall(nodes.back() + 1, 0);
      for (u64 d = 1; d <= nodes.back(); ++d) invsmall[d] = M.inv(M.from(d));
      std::vector<u64>& c = values;
      for (size_t lvl = 1; lvl < N; ++lvl)
        for (size_t i = N; i-- > lvl;)
          c[i] = M.mul(M.sub(c[i], c[i - 1]), invsmall[nodes[i] - nodes[i - lvl]]);
      P[0] = c[N - 1];
      size_t plen = 1;
      for (size_t i = N - 1; i-- > 0;) {
        const u64 ti = M.from(nodes[i]);
        for (size_t u = plen + 1; u-- > 1;) P[u] = M.sub(P[u - 1], M.mul(ti, P[u]));
        P[0] = M.sub(c[i], M.mul(ti, P[0]));
        ++plen;
      }
    }

    if (got == 0) {
      for (size_t k = 0; k < N; ++k)
        res_int[k] = Int(static_cast<unsigned long>(M.to(P[k])));
    } else {
      const u64 minv = M.inv(M.from(int_mod(mod, p)));
      for (size_t k = 0; k < N; ++k) {
        const u64 cur = int_mod(res_int[k], p);
        const u64 delta = M.to(M.mul(M.sub(P[k], M.from(cur)), minv));
        res_int[k] += Int(static_cast<unsigned long>(delta)) * mod;
      }
    }
    mod *= Int(static_cast<unsigned long>(p));
    ++got;
  }
  if (got < nprimes) return std::nullopt;

  Int denpow(1);
  {
    Int t;
    mpz_pow_ui(t.get_mpz_t(), denf.get_mpz_t(), static_cast<unsigned long>(dg));
    denpow *= t;
    mpz_pow_ui(t.get_mpz_t(), deng.get_mpz_t(), static_cast<unsigned long>(df));
    denpow *= t;
  }
  SparsePoly out = zero(f.vars);
  for (size_t k = 0; k < N; ++k) {
    Int c = res_int[k];
    if (c * 2 > mod) c -= mod;
    if (c == 0) continue;
    Rational q(c);
    q /= Rational(denpow);
    std::vector<int> e(f.vars.size(), 0);
    if (w >= 0) e[static_cast<size_t>(w)] = static_cast<int>(k);
    out.terms.emplace(std::move(e), q);
  }
  return out;
}

// subresultant PRS on inputs primitive in var, both with positive degree
SparsePoly subres_prs(SparsePoly A, SparsePoly B, int var) {
  if (degree(A, var) < degree(B, var)) std::swap(A, B);
  SparsePoly g = constant(A.vars, Rational(1));
  SparsePoly h = g;
  while (true) {
    if (degree(B, var) == 0) return constant(A.vars, Rational(1));
    const int delta = degree(A, var) - degree(B, var);
    SparsePoly r = pseudo_rem(A, B, var);
    if (r.is_zero()) return primitive_wrt(B, var);
    A = B;
    B = exact_div(r, mul(g, pow(h, delta)));
    g = lead_coeff_wrt(A, var);
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_div(pow(g, delta), pow(h, delta - 1));
    }
  }
}

SparsePoly gcd_in_var(const SparsePoly& a, const SparsePoly& b, int var) {
  if (degree(a, var) == 0) return gcd_rec(a, content_wrt(b, var));
  if (degree(b, var) == 0) return gcd_rec(b, content_wrt(a, var));
  SparsePoly ca = content_wrt(a, var), cb = content_wrt(b, var);
  SparsePoly d = gcd_rec(ca, cb);
  SparsePoly A = exact_div(a, ca), B = exact_div(b, cb);
  SparsePoly G;
  if (auto fast = fast_gcd_two_var(A, B, var))
    G = std::move(*fast);
  else
    G = subres_prs(std::move(A), std::move(B), var);
  return normalize_primitive(mul(d, G));
}

SparsePoly gcd_rec(const SparsePoly& a, const SparsePoly& b) {
  if (a.is_zero()) return normalize_primitive(b);
  if (b.is_zero()) return normalize_primitive(a);
  for (size_t i = 0; i < a.vars.size(); ++i) {
    const int v = static_cast<int>(i);
    if (degree(a, v) > 0 || degree(b, v) > 0) return gcd_in_var(a, b, v);
  }
  return constant(a.vars, Rational(1));  // both rational constants
}

}  // namespace

SparsePoly content_wrt(const SparsePoly& f, int var) {
  SparsePoly acc = zero(f.vars);
  for (const auto& [k, c] : coeffs_wrt(f, var)) acc = gcd_rec(acc, c);
  return acc;
}

SparsePoly primitive_wrt(const SparsePoly& f, int var) {
  if (f.is_zero()) return f;
  return exact_div(f, content_wrt(f, var));
}

SparsePoly pseudo_rem(const SparsePoly& a, const SparsePoly& b, int var) {
  require_same_vars(a, b);
  const int db = degree(b, var);
  if (db <= 0) throw std::invalid_argument("pseudo_rem: divisor constant in var");
  const SparsePoly lb = lead_coeff_wrt(b, var);
  SparsePoly r = a;
  int e = degree(a, var) - db + 1;
  while (!r.is_zero() && degree(r, var) >= db) {
    std::vector<int> shift(a.vars.size(), 0);
    shift[var] = degree(r, var) - db;
    SparsePoly s = mul(mul(lead_coeff_wrt(r, var), monomial(a.vars, shift, Rational(1))), b);
    r = sub(mul(lb, r), s);
    --e;
  }
  for (; e > 0; --e) r = mul(lb, r);
  return r;
}

SparsePoly gcd(const SparsePoly& f, const SparsePoly& g, const std::string& main_var) {
  require_same_vars(f, g);
  if (f.is_zero() || g.is_zero())
    throw std::invalid_argument("gcd: zero input");
  require_ordinary(f, "gcd");
  require_ordinary(g, "gcd");
  const int v = var_index(f, main_var);
  if (degree(f, v) == 0 && degree(g, v) == 0) return gcd_rec(f, g);
  return normalize_primitive(gcd_in_var(f, g, v));
}

SparsePoly gcd_any(const SparsePoly& f, const SparsePoly& g) {
  require_same_vars(f, g);
  require_ordinary(f, "gcd");
  require_ordinary(g, "gcd");
  return normalize_primitive(gcd_rec(f, g));
}

SparsePoly squarefree_part(const SparsePoly& f, const std::string& var) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_part: zero input");
  require_ordinary(f, "squarefree_part");
  const int v = var_index(f, var);
  if (degree(f, v) <= 0) return normalize_primitive(f);
  SparsePoly d = derivative(f, var);
  SparsePoly g = gcd_rec(f, d);
  return normalize_primitive(exact_div(f, g));
}

SparsePoly resultant(const SparsePoly& f, const SparsePoly& g, const std::string& var) {
  require_same_vars(f, g);
  require_ordinary(f, "resultant");
  require_ordinary(g, "resultant");
  const int v = var_index(f, var);
  const int df = degree(f, v), dg = degree(g, v);
  if (df <= 0 || dg <= 0)
    throw std::invalid_argument("resultant: input with degree 0 in " + var);
  if (auto fast = fast_resultant_two_var(f, g, v)) return *fast;
  const int n = df + dg;
  auto fc = coeffs_wrt(f, v), gc = coeffs_wrt(g, v);
  auto at = [&](std::map<int, SparsePoly>& m, int k) -> SparsePoly {
    auto it = m.find(k);
    return it == m.end() ? zero(f.vars) : it->second;
  };
  std::vector<std::vector<SparsePoly>> M(n, std::vector<SparsePoly>(n, zero(f.vars)));
  for (int i = 0; i < dg; ++i)
    for (int k = 0; k <= df; ++k) M[i][i + k] = at(fc, df - k);
  for (int i = 0; i < df; ++i)
    for (int k = 0; k <= dg; ++k) M[dg + i][i + k] = at(gc, dg - k);

  // fraction-free elimination; every division is exact
  int sign = 1;
  SparsePoly prev = constant(f.vars, Rational(1));
  for (int k = 0; k + 1 < n; ++k) {
    if (M[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i) {
        if (!M[i][k].is_zero()) {
          piv = i;
          break;
        }
      }
      if (piv == -1) return zero(f.vars);
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        SparsePoly t = sub(mul(M[k][k], M[i][j]), mul(M[i][k], M[k][j]));
        M[i][j] = exact_div(t, prev);
      }
      M[i][k] = zero(f.vars);
    }
    prev = M[k][k];
  }
  return sign == 1 ? M[n - 1][n - 1] : neg(M[n - 1][n - 1]);
}

std::vector<Rational> rational_roots(const SparsePoly& h) {
  if (h.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  require_ordinary(h, "rational_roots");
  int var = -1;
  for (size_t i = 0; i < h.vars.size(); ++i) {
    if (degree(h, static_cast<int>(i)) > 0) {
      if (var != -1)
        throw std::invalid_argument("rational_roots: more than one variable");
      var = static_cast<int>(i);
    }
  }
  if (var == -1) return {};  // nonzero constant
  zx::QPoly dense(degree(h, var) + 1, Rational(0));
  for (const auto& [e, c] : h.terms) dense[e[var]] = c;
  return zx::rational_roots(dense);
}

std::pair<int, SparsePoly> exponent_gcd_decompose(const SparsePoly& f,
                                                  const std::string& var) {
  require_ordinary(f, "exponent_gcd_decompose");
  const int v = var_index(f, var);
  if (degree(f, v) <= 0)
    throw std::invalid_argument("exponent_gcd_decompose: constant in " + var);
  long m = 0;
  for (const auto& [e, c] : f.terms) m = std::gcd(m, static_cast<long>(e[v]));
  if (m <= 1) return {1, f};
  SparsePoly out = zero(f.vars);
  for (const auto& [e, c] : f.terms) {
    std::vector<int> ne = e;
    ne[v] = e[v] / static_cast<int>(m);
    out.terms.emplace(std::move(ne), c);
  }
  return {static_cast<int>(m), out};
}

SparsePoly monomial_clear(const SparsePoly& f) {
  if (f.is_zero()) return f;
  std::vector<int> shift(f.vars.size(), 0);
  bool any = false;
  for (size_t v = 0; v < f.vars.size(); ++v) {
    int mn = min_exponent(f, static_cast<int>(v));
    if (mn < 0) {
      shift[v] = -mn;
      any = true;
    }
  }
  if (!any) return f;
  SparsePoly out = zero(f.vars);
  for (const auto& [e, c] : f.terms) {
    std::vector<int> ne = e;
    for (size_t v = 0; v < ne.size(); ++v) ne[v] += shift[v];
    out.terms.emplace(std::move(ne), c);
  }
  return out;
}

std::pair<std::vector<int>, SparsePoly> strip_monomial(const SparsePoly& f) {
  require_ordinary(f, "strip_monomial");
  std::vector<int> shift(f.vars.size(), 0);
  if (f.is_zero()) return {shift, f};
  for (size_t v = 0; v < f.vars.size(); ++v)
    shift[v] = min_exponent(f, static_cast<int>(v));
  SparsePoly out = zero(f.vars);
  for (const auto& [e, c] : f.terms) {
    std::vector<int> ne = e;
    for (size_t v = 0; v < ne.size(); ++v) ne[v] -= shift[v];
    out.terms.emplace(std::move(ne), c);
  }
  return {shift, out};
}

SparsePoly remap_vars(const SparsePoly& f,
                      const std::vector<std::pair<int, bool>>& dest) {
  if (dest.size() != f.vars.size())
    throw std::invalid_argument("remap_vars: mapping length mismatch");
  SparsePoly out = zero(f.vars);
  for (const auto& [e, c] : f.terms) {
    std::vector<int> ne(f.vars.size(), 0);
    for (size_t v = 0; v < e.size(); ++v) {
      const auto& [to, inverted] = dest[v];
      ne[to] += inverted ? -e[v] : e[v];
    }
    insert_term(out, std::move(ne), c);
  }
  return out;
}

std::string to_string(const SparsePoly& f) {
  if (f.is_zero()) return "0";
  std::vector<const std::pair<const std::vector<int>, Rational>*> order;
  for (const auto& t : f.terms) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
    return graded_lex_less(b->first, a->first);
  });
  std::string s;
  bool first = true;
  for (auto* t : order) {
    const Rational& c = t->second;
    if (first) {
      if (c < 0) s += "-";
      first = false;
    } else {
      s += c < 0 ? " - " : " + ";
    }
    Rational a = c < 0 ? Rational(-c) : c;
    std::string body = cyclopoint::to_string(a);
    for (size_t v = 0; v < f.vars.size(); ++v) {
      int e = t->first[v];
      if (e == 0) continue;
      body += "*" + f.vars[v];
      if (e != 1) body += "^" + std::to_string(e);
    }
    s += body;
  }
  return s;
}

}  // namespace cyclopoint::poly
