#include "cyclopoint/metallic.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "cyclopoint/famsolve.hpp"

namespace cyclopoint::metallic {

namespace {

// n = s^2 * d with d squarefree; n >= 1.
std::pair<Int, Int> square_decompose(Int n) {
  Int s = 1, d = 1;
  for (Int p = 2; p * p <= n; p == 2 ? p = 3 : p += 2) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e >= 2) s *= pow_int(p, static_cast<unsigned long>(e / 2));
    if (e % 2) d *= p;
  }
  if (n > 1) d *= n;
  return {std::move(s), std::move(d)};
}

long reduce_exp(long n, long e) { return ((e % n) + n) % n; }

}  // namespace

bool param_less(const MetallicParam& u, const MetallicParam& v) {
  const int c = cmp(u.a, v.a);
  if (c != 0) return c < 0;
  return u.sign > v.sign;
}

std::string to_string(const MetallicParam& p) {
  if (p.a == 0) return "0";
  // sign * sqrt(num/den) = sign * m * sqrt(d) / k with num*den = (gm)^2 * d.
  auto [s, d] = square_decompose(p.a.get_num() * p.a.get_den());
  const Int g = int_gcd(s, p.a.get_den());
  const Int m = s / g, k = p.a.get_den() / g;
  if (d == 1) return cyclopoint::to_string(make_rational(p.sign < 0 ? -m : m, k));
  std::string out = p.sign < 0 ? "-" : "";
  if (m != 1) out += cyclopoint::to_string(m) + "*";
  out += "sqrt(" + cyclopoint::to_string(d) + ")";
  if (k != 1) out += "/" + cyclopoint::to_string(k);
  return out;
}

CycloElement param_value(const MetallicParam& p) {
  CycloElement r = sqrt_nonneg_rational(p.a);
  return p.sign < 0 ? cyclo_neg(std::move(r)) : r;
}

CycloElement diagonal_length(long n, long e) {
  if (n < 1) throw std::invalid_argument("diagonal_length: n < 1");
  // 2 sin(pi e/n) >= 0 once e sits in [0, n); the two conjugate terms cancel
  // the phase of 1 - zeta_n^e.
  const long r = reduce_exp(n, e);
  return cyclo_add(cyclo_power(4 * n, n - 2 * r), cyclo_power(4 * n, 3 * n + 2 * r));
}

poly::SparsePoly build_metallic_constraint() {
  static const int rows[][4] = {
      {1, 3, 3, -1}, {0, 4, 2, 1},  {0, 3, 3, -2}, {0, 2, 4, 1},  {1, 3, 2, 2},
      {1, 2, 3, 2},  {1, 3, 1, -1}, {1, 2, 2, -4}, {1, 1, 3, -1}, {0, 3, 1, -2},
      {0, 2, 2, 4},  {0, 1, 3, -2}, {1, 2, 1, 2},  {1, 1, 2, 2},  {1, 1, 1, -1},
      {0, 2, 0, 1},  {0, 1, 1, -2}, {0, 0, 2, 1}};
  poly::SparsePoly f = poly::zero({"s", "x", "y"});
  for (const auto& r : rows) f.terms[{r[0], r[1], r[2]}] = Rational(r[3]);
  return f;
}

poly::SparsePoly derive_metallic_constraint() {
  const std::vector<std::string> vars{"s", "x", "y"};
  auto chord_sq = [&vars](int slot) {
    // (1 - v)(1 - 1/v) = 2 - v - 1/v in Laurent form.
    poly::SparsePoly c = poly::constant(vars, Rational(2));
    std::vector<int> e(3, 0);
    e[static_cast<size_t>(slot)] = 1;
    c = poly::sub(c, poly::monomial(vars, e, Rational(1)));
    e[static_cast<size_t>(slot)] = -1;
    return poly::sub(c, poly::monomial(vars, e, Rational(1)));
  };
  const poly::SparsePoly p = chord_sq(1), q = chord_sq(2);
  // r^2 + r^-2 - s - 2 with r^2 = p/q, multiplied through by p*q.
  poly::SparsePoly lhs = poly::add(poly::mul(p, p), poly::mul(q, q));
  const poly::SparsePoly s2 = poly::add(poly::variable(vars, "s"), poly::constant(vars, Rational(2)));
  lhs = poly::sub(lhs, poly::mul(s2, poly::mul(p, q)));
  const poly::SparsePoly cleared = poly::monomial_clear(lhs);
  const poly::SparsePoly target = build_metallic_constraint();
  if (cleared == target || poly::neg(cleared) == target) return target;
  throw verification_error("derive_metallic_constraint: mismatch with the transcribed polynomial");
}

std::vector<MetallicParam> classify_metallic() {
  poly::SparsePoly f = build_metallic_constraint();
  f.vars[0] = "n";  // the solver's name for the parameter slot
  std::vector<MetallicParam> out;
  for (const famsolve::SolutionFamily& fam : famsolve::solve_param_curve(f)) {
    if (fam.n.is_free) {
      // A solution for every parameter value forces both chords to vanish,
      // so the only parameter-free family is the point x = y = 1.
      const bool unit_point = !fam.coset && fam.coords.size() == 2 &&
                              !fam.coords[0].is_free && !fam.coords[1].is_free &&
                              rou_is_one(fam.coords[0].value) &&
                              rou_is_one(fam.coords[1].value);
      if (!unit_point)
        throw verification_error("classify_metallic: unexpected parameter-free family");
      continue;
    }
    const Rational& s0 = fam.n.value;
    if (s0 < 0) continue;  // squared parameter: no real mean
    out.push_back({s0, 1});
    if (s0 != 0) out.push_back({s0, -1});
  }
  std::sort(out.begin(), out.end(), param_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Rational> squared_deviation(long n, long a_exp, long b_exp) {
  if (n < 1) throw std::invalid_argument("squared_deviation: n < 1");
  const long a = reduce_exp(n, a_exp), b = reduce_exp(n, b_exp);
  if (a == 0 || b == 0) throw std::invalid_argument("squared_deviation: zero diagonal");
  // With c_e = zeta^e + zeta^-e the squared chords are 2 - c_a and 2 - c_b,
  // so (d1^2 - d2^2)^2 = c_2a + c_2b - 2(c_{a+b} + c_{a-b}) + 4 and
  // d1^2 d2^2 = 4 - 2(c_a + c_b) + c_{a+b} + c_{a-b}; the ratio is rational
  // exactly when the two coordinate vectors are proportional.
  auto sym = [n](long e) { return cyclo_add(cyclo_power(n, e), cyclo_power(n, -e)); };
  const CycloElement four = cyclo_from_rational(Rational(4));
  const CycloElement cross = cyclo_add(sym(a + b), sym(a - b));
  CycloElement v = cyclo_add(sym(2 * a), sym(2 * b));
  v = cyclo_add(cyclo_sub(v, cyclo_scale(cross, Rational(2))), four);
  CycloElement w = cyclo_sub(four, cyclo_scale(cyclo_add(sym(a), sym(b)), Rational(2)));
  w = cyclo_add(w, cross);
  size_t lead = w.coords.size();
  for (size_t i = 0; i < w.coords.size(); ++i)
    if (w.coords[i] != 0) {
      lead = i;
      break;
    }
  if (lead == w.coords.size() || v.conductor != w.conductor)
    throw verification_error("squared_deviation: vanishing chord product");
  for (size_t i = 0; i < w.coords.size(); ++i)
    if (v.coords[i] * w.coords[lead] != v.coords[lead] * w.coords[i]) return std::nullopt;
  Rational t = v.coords[lead] / w.coords[lead];
  if (t < 0) throw verification_error("squared_deviation: negative square");
  return t;
}

std::optional<MetallicParam> is_metallic_ratio(long n, long a_exp, long b_exp) {
  if (n < 1) throw std::invalid_argument("is_metallic_ratio: n < 1");
  const long a = reduce_exp(n, a_exp), b = reduce_exp(n, b_exp);
  if (a == 0 || b == 0) throw std::invalid_argument("is_metallic_ratio: zero diagonal");
  const CycloElement r = cyclo_div(diagonal_length(n, a), diagonal_length(n, b));
  const CycloElement dev = cyclo_sub(r, cyclo_inv(r));
  const std::optional<Rational> t = as_rational(cyclo_mul(dev, dev));
  if (!t) return std::nullopt;
  if (*t < 0) throw verification_error("is_metallic_ratio: negative square");
  // 2 sin(pi e/n) is strictly increasing over folded exponents, so comparing
  // them decides which root of t^2 - y0*t - 1 the ratio is.
  const long fa = std::min(a, n - a), fb = std::min(b, n - b);
  return MetallicParam{*t, *t == 0 ? 1 : (fa > fb ? 1 : -1)};
}

std::vector<std::pair<MetallicParam, Realization>> realization_table() {
  static const long rows[][5] = {
      {1, 1, 5, 2, 1},  {4, 1, 8, 3, 1},  {9, 4, 6, 3, 1},  {2, 1, 12, 5, 2},
      {5, 1, 10, 3, 1}, {12, 1, 12, 5, 1}, {1, 2, 24, 6, 4}, {1, 6, 12, 4, 3},
      {4, 3, 6, 2, 1},  {1, 12, 6, 3, 2}};
  std::vector<std::pair<MetallicParam, Realization>> out;
  for (const auto& r : rows) {
    const MetallicParam p{make_rational(r[0], r[1]), 1};
    const Realization real{r[2], r[3], r[4]};
    const CycloElement ratio =
        cyclo_div(diagonal_length(real.n, real.a_exp), diagonal_length(real.n, real.b_exp));
    CycloElement lhs = cyclo_sub(cyclo_mul(ratio, ratio), cyclo_mul(param_value(p), ratio));
    lhs = cyclo_sub(lhs, cyclo_from_rational(Rational(1)));
    if (!lhs.is_zero())
      throw verification_error("realization_table: ratio fails its quadratic for n = " +
                               std::to_string(real.n));
    out.emplace_back(p, real);
  }
  return out;
}

namespace {

// All means from coprime diagonal pairs of the single n-gon. Chord lengths
// only depend on folded exponents, so each folded pair is tested once.
std::vector<MetallicParam> scan_one(long n) {
  std::vector<MetallicParam> out;
  if (n < 2) return out;
  const long half = n / 2;
  std::vector<char> seen(static_cast<size_t>((half + 1) * (half + 1)), 0);
  for (long a = 1; a < n; ++a)
    for (long b = 1; b < n; ++b) {
      if (std::gcd(a, b) != 1) continue;
      long fa = std::min(a, n - a), fb = std::min(b, n - b);
      if (fa < fb) std::swap(fa, fb);
      char& flag = seen[static_cast<size_t>(fa * (half + 1) + fb)];
      if (flag) continue;
      flag = 1;
      if (fa == fb) {
        out.push_back({Rational(0), 1});
        continue;
      }
      if (const auto t = squared_deviation(n, fa, fb)) {
        // Both orientations of a coprime pair are coprime, so each rational
        // deviation realizes the mean and its negative-sign partner.
        out.push_back({*t, 1});
        out.push_back({*t, -1});
      }
    }
  std::sort(out.begin(), out.end(), param_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<MetallicParam> scan_metallic(long nmax, int jobs) {
  std::vector<MetallicParam> all;
  if (nmax < 2) return all;
  int workers = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  std::atomic<long> next{2};
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      const long n = next.fetch_add(1);
      if (n > nmax) return;
      std::vector<MetallicParam> local = scan_one(n);
      const std::lock_guard<std::mutex> lock(mu);
      all.insert(all.end(), local.begin(), local.end());
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  std::sort(all.begin(), all.end(), param_less);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace cyclopoint::metallic
