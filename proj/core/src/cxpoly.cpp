#include "cyclopoint/cxpoly.hpp"

#include <stdexcept>

namespace cyclopoint {

void cx_normalize(CxPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

CxPoly cx_from_q(const zx::QPoly& f) {
  CxPoly out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(cyclo_from_rational(c));
  cx_normalize(out);
  return out;
}

CxPoly cx_add(const CxPoly& a, const CxPoly& b) {
  CxPoly out(std::max(a.size(), b.size()), cyclo_zero());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = cyclo_add(out[i], b[i]);
  cx_normalize(out);
  return out;
}

CxPoly cx_sub(const CxPoly& a, const CxPoly& b) {
  CxPoly out(std::max(a.size(), b.size()), cyclo_zero());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = cyclo_sub(out[i], b[i]);
  cx_normalize(out);
  return out;
}

CxPoly cx_mul(const CxPoly& a, const CxPoly& b) {
  if (a.empty() || b.empty()) return {};
  CxPoly out(a.size() + b.size() - 1, cyclo_zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] = cyclo_add(out[i + j], cyclo_mul(a[i], b[j]));
    }
  }
  cx_normalize(out);
  return out;
}

CxPoly cx_neg(CxPoly a) {
  for (auto& c : a) c = cyclo_neg(std::move(c));
  return a;
}

CxPoly cx_scale(CxPoly a, const CycloElement& c) {
  if (c.is_zero()) return {};
  for (auto& x : a) x = cyclo_mul(x, c);
  cx_normalize(a);
  return a;
}

CxPoly cx_monic(const CxPoly& f) {
  if (f.empty()) throw std::invalid_argument("cx_monic: zero polynomial");
  return cx_scale(f, cyclo_inv(f.back()));
}

void cx_divmod(const CxPoly& a, const CxPoly& b, CxPoly& q, CxPoly& r) {
  if (b.empty()) throw std::domain_error("cx_divmod: division by zero");
  r = a;
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, cyclo_zero());
  const CycloElement inv_lead = cyclo_inv(b.back());
  while (cx_deg(r) >= cx_deg(b)) {
    const size_t shift = r.size() - b.size();
    CycloElement c = cyclo_mul(r.back(), inv_lead);
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i)
      r[shift + i] = cyclo_sub(r[shift + i], cyclo_mul(c, b[i]));
    r.pop_back();
    cx_normalize(r);
  }
  cx_normalize(q);
}

CxPoly cx_gcd(CxPoly a, CxPoly b) {
  while (!b.empty()) {
    CxPoly q, r;
    cx_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return cx_monic(a);
}

CxPoly cx_derivative(const CxPoly& f) {
  CxPoly out;
  for (size_t i = 1; i < f.size(); ++i)
    out.push_back(cyclo_scale(f[i], Rational(static_cast<long>(i))));
  cx_normalize(out);
  return out;
}

CycloElement cx_eval(const CxPoly& f, const CycloElement& x) {
  CycloElement acc = cyclo_zero();
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = cyclo_mul(acc, x);
    acc = cyclo_add(acc, *it);
  }
  return acc;
}

CxPoly cx_galois(const CxPoly& f, long k) {
  CxPoly out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(galois_apply(c, k));
  cx_normalize(out);
  return out;
}

std::optional<zx::QPoly> cx_as_rational(const CxPoly& f) {
  zx::QPoly out;
  out.reserve(f.size());
  for (const auto& c : f) {
    auto r = as_rational(c);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  zx::normalize(out);
  return out;
}

long cx_conductor(const CxPoly& f) {
  long n = 1;
  for (const auto& c : f) n = long_lcm(n, c.conductor);
  return n;
}

}  // namespace cyclopoint
