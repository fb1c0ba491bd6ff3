#include "cyclopoint/cycpart.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cyclopoint/cyclotomic.hpp"

namespace cyclopoint::cycpart {

namespace {

// Index of the unique variable with positive degree; -1 for constants.
int single_var(const poly::SparsePoly& f) {
  int var = -1;
  for (size_t i = 0; i < f.vars.size(); ++i) {
    if (poly::degree(f, static_cast<int>(i)) > 0) {
      if (var != -1)
        throw std::invalid_argument("univariate operation on multivariate input");
      var = static_cast<int>(i);
    }
  }
  return var;
}

zx::QPoly to_dense(const poly::SparsePoly& f, int var) {
  zx::QPoly out(std::max(poly::degree(f, var), 0) + 1, Rational(0));
  for (const auto& [e, c] : f.terms) out[var < 0 ? 0 : e[var]] = c;
  zx::normalize(out);
  return out;
}

poly::SparsePoly from_dense(const zx::ZPoly& f, const std::vector<std::string>& vars,
                            int var) {
  poly::SparsePoly out = poly::zero(vars);
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    std::vector<int> e(vars.size(), 0);
    if (var >= 0) e[var] = static_cast<int>(i);
    out.terms.emplace(std::move(e), Rational(f[i]));
  }
  return out;
}

zx::ZPoly strip_valuation(zx::ZPoly f) {
  size_t k = 0;
  while (k < f.size() && f[k] == 0) ++k;
  f.erase(f.begin(), f.begin() + k);
  return f;
}

zx::ZPoly graeffe_dense(const zx::ZPoly& f) {
  zx::ZPoly fn = f;
  for (size_t i = 1; i < fn.size(); i += 2) fn[i] = -fn[i];
  zx::ZPoly p = zx::mul(f, fn);
  zx::ZPoly g((p.size() + 1) / 2, Int(0));
  for (size_t i = 0; i < p.size(); ++i) {
    if (i % 2 == 0) {
      g[i / 2] = p[i];
    } else if (p[i] != 0) {
      throw verification_error("graeffe: odd coefficient survived");
    }
  }
  if (zx::deg(f) % 2 == 1)
    for (auto& c : g) c = -c;
  zx::normalize(g);
  return g;
}

zx::ZPoly subst_neg(const zx::ZPoly& f) {
  zx::ZPoly out = f;
  for (size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
  return out;
}

// conductors n with Phi_n dividing s, by full-window trial division
std::vector<long> divide_out_conductors(zx::ZPoly& s, long cap) {
  std::vector<long> found;
  for (long n : conductor_candidates(zx::deg(s), cap)) {
    const auto& phi_n = cyclotomic_poly(n);
    if (zx::deg(phi_n) > zx::deg(s)) continue;
    if (auto q = zx::try_exact_div(s, phi_n)) {
      found.push_back(n);
      s = std::move(*q);
    }
  }
  return found;
}

// Candidate conductors from the Graeffe/gcd filter. Superset of the true
// divisor set; callers confirm each by trial division.
void fast_candidates(const zx::ZPoly& s, long cap, std::set<long>& out) {
  if (zx::deg(s) < 1) return;
  zx::ZPoly g = graeffe_dense(s);
  zx::ZPoly c1 = zx::gcd(s, g);
  zx::ZPoly c2 = zx::gcd(s, subst_neg(g));
  for (zx::ZPoly* c : {&c1, &c2}) {
    if (zx::deg(*c) < 1) continue;
    zx::ZPoly reduced = *c;
    for (long n : divide_out_conductors(reduced, cap)) out.insert(n);
  }
  // even/odd split: roots zeta with both +-zeta present descend to zeta^2
  zx::ZPoly even, odd;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i % 2 == 0)
      even.push_back(s[i]);
    else
      odd.push_back(s[i]);
  }
  zx::normalize(even);
  zx::normalize(odd);
  zx::ZPoly h = odd.empty() ? even : zx::gcd(even, odd);
  if (zx::deg(h) >= 1) {
    std::set<long> sub;
    fast_candidates(zx::primitive_part(h), cap, sub);
    for (long m : sub) {
      out.insert(m);
      if (cap < 1 || 2 * m <= cap) out.insert(2 * m);
    }
  }
}

CyclotomicPartResult assemble(const poly::SparsePoly& input, int var,
                              const zx::QPoly& original,
                              const std::vector<long>& conductors) {
  CyclotomicPartResult res;
  res.conductors = conductors;
  std::sort(res.conductors.begin(), res.conductors.end());
  zx::ZPoly part{Int(1)};
  for (long n : res.conductors) part = zx::mul(part, cyclotomic_poly(n));
  res.part = from_dense(part, input.vars, var);
  for (long n : res.conductors) {
    for (long a = 0; a < n; ++a) {
      if (std::gcd(a == 0 ? n : a, n) != 1) continue;
      RootOfUnity z(n, a);
      if (!cyclo_eval_poly(original, cyclo_from_rou(z)).is_zero())
        throw verification_error("cyclotomic_part: root fails exact evaluation");
      res.roots.push_back(z);
    }
  }
  return res;
}

CyclotomicPartResult compute(const poly::SparsePoly& f, long cap, bool fast) {
  if (f.is_zero()) throw std::invalid_argument("cyclotomic_part: zero input");
  const int var = single_var(f);
  zx::QPoly dense = to_dense(f, var);
  if (var < 0)
    return CyclotomicPartResult{poly::constant(f.vars, Rational(1)), {}, {}};
  zx::ZPoly s = zx::squarefree_part(strip_valuation(zx::from_q(dense)));
  std::vector<long> conductors;
  if (fast) {
    std::set<long> cands;
    fast_candidates(s, cap, cands);
    for (long n : cands) {
      const auto& phi_n = cyclotomic_poly(n);
      if (zx::deg(phi_n) > zx::deg(s)) continue;
      if (auto q = zx::try_exact_div(s, phi_n)) {
        conductors.push_back(n);
        s = std::move(*q);
      }
    }
  } else {
    conductors = divide_out_conductors(s, cap);
  }
  return assemble(f, var, dense, conductors);
}

}  // namespace

std::vector<long> conductor_candidates(long d) { return conductor_candidates(d, 0); }

std::vector<long> conductor_candidates(long d, long cap) {
  if (d < 0) throw std::invalid_argument("conductor_candidates: negative bound");
  std::vector<long> out;
  if (d == 0) return out;
  long limit = 2 * d * d;
  if (limit < 2) limit = 2;
  if (cap >= 1) limit = std::min(limit, cap);
  auto phi = phi_sieve(limit);
  for (long n = 1; n <= limit; ++n)
    if (phi[n] <= d) out.push_back(n);
  return out;
}

poly::SparsePoly graeffe(const poly::SparsePoly& f) {
  if (f.is_zero()) throw std::invalid_argument("graeffe: zero input");
  const int var = single_var(f);
  if (var < 0) return poly::mul(f, f);
  zx::QPoly dense = to_dense(f, var);
  zx::ZPoly fi = zx::from_q(dense);
  // from_q scales by a positive rational only, which squares away in the
  // result shape; redo the scale to keep graeffe exact on rational input
  Rational unit = dense.back() / Rational(fi.back());
  zx::ZPoly g = graeffe_dense(fi);
  poly::SparsePoly out = from_dense(g, f.vars, var);
  return poly::scale(out, unit * unit);
}

CyclotomicPartResult cyclotomic_part_baseline(const poly::SparsePoly& f) {
  return compute(f, 0, false);
}
CyclotomicPartResult cyclotomic_part_baseline(const poly::SparsePoly& f, long cap) {
  return compute(f, cap, false);
}
CyclotomicPartResult cyclotomic_part(const poly::SparsePoly& f) {
  return compute(f, 0, true);
}
CyclotomicPartResult cyclotomic_part(const poly::SparsePoly& f, long cap) {
  return compute(f, cap, true);
}

FieldCyclotomicPartResult cyclotomic_part_over_field(const CxPoly& f) {
  return cyclotomic_part_over_field(f, 0);
}

FieldCyclotomicPartResult cyclotomic_part_over_field(const CxPoly& f, long cap) {
  if (f.empty())
    throw std::invalid_argument("cyclotomic_part_over_field: zero input");
  CxPoly s = f;
  size_t val = 0;
  while (val < s.size() && s[val].is_zero()) ++val;
  s.erase(s.begin(), s.begin() + val);
  if (cx_deg(s) >= 1) {
    CxPoly d = cx_gcd(s, cx_derivative(s));
    CxPoly q, r;
    cx_divmod(s, d, q, r);
    if (!r.empty())
      throw verification_error("cyclotomic_part_over_field: inexact squarefree step");
    s = std::move(q);
  }
  FieldCyclotomicPartResult res;
  res.part = CxPoly{cyclo_from_rational(Rational(1))};
  if (cx_deg(s) < 1) return res;

  const long N = cx_conductor(s);
  CxPoly norm{cyclo_from_rational(Rational(1))};
  for (long k = 1; k <= N; ++k) {
    if (std::gcd(k, N) != 1) continue;
    norm = cx_mul(norm, cx_galois(s, k));
  }
  auto rational_norm = cx_as_rational(norm);
  if (!rational_norm)
    throw verification_error("cyclotomic_part_over_field: norm not rational");

  poly::SparsePoly down = poly::zero({"x"});
  for (size_t i = 0; i < rational_norm->size(); ++i) {
    if ((*rational_norm)[i] == 0) continue;
    down.terms.emplace(std::vector<int>{static_cast<int>(i)}, (*rational_norm)[i]);
  }
  CyclotomicPartResult base = cyclotomic_part(down, cap);
  for (const auto& z : base.roots) {
    if (!cx_eval(f, cyclo_from_rou(z)).is_zero()) continue;
    res.roots.push_back(z);
    CxPoly lin{cyclo_neg(cyclo_from_rou(z)), cyclo_from_rational(Rational(1))};
    res.part = cx_mul(res.part, lin);
  }
  std::set<long> orders;
  for (const auto& z : res.roots) orders.insert(z.order);
  res.conductors.assign(orders.begin(), orders.end());
  return res;
}

}  // namespace cyclopoint::cycpart
