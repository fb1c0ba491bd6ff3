#include "cyclopoint/famsolve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "cyclopoint/cxpoly.hpp"
#include "cyclopoint/cycpart.hpp"
#include "cyclopoint/cyclotomic.hpp"

namespace cyclopoint::famsolve {

using poly::SparsePoly;

namespace {

int cmp_rat(const Rational& a, const Rational& b) { return cmp(a, b); }

struct RatLess {
  bool operator()(const Rational& a, const Rational& b) const {
    return cmp_rat(a, b) < 0;
  }
};

struct PointLess {
  bool operator()(const std::pair<Rational, RootOfUnity>& a,
                  const std::pair<Rational, RootOfUnity>& b) const {
    const int c = cmp_rat(a.first, b.first);
    return c != 0 ? c < 0 : a.second < b.second;
  }
};

Rational rational_pow(const Rational& r, long e) {
  if (e == 0) return Rational(1);
  Rational base = r;
  if (e < 0) {
    if (r == 0) throw std::invalid_argument("rational_pow: 0 to a negative power");
    base = make_rational(Int(r.get_den()), Int(r.get_num()));
    e = -e;
  }
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

// g = s*a + t*b with g = gcd(a, b) >= 0.
long ext_gcd(long a, long b, long& s, long& t) {
  long r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    std::swap(r0 -= q * r1, r1);
    std::swap(s0 -= q * s1, s1);
    std::swap(t0 -= q * t1, t1);
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return r0;
}

// The |m| solutions of z^m = t.
std::vector<RootOfUnity> rou_roots(const RootOfUnity& t, long m) {
  if (m == 0) throw std::invalid_argument("rou_roots: zero index");
  RootOfUnity base = m < 0 ? rou_inv(t) : t;
  if (m < 0) m = -m;
  std::vector<RootOfUnity> out;
  out.reserve(static_cast<size_t>(m));
  for (long k = 0; k < m; ++k)
    out.push_back(RootOfUnity(m * base.order, base.exp + k * base.order));
  return out;
}

// Transfer f onto a new variable list by name; every effective variable of f
// must appear in vars.
SparsePoly with_vars(const SparsePoly& f, std::vector<std::string> vars) {
  std::vector<int> slot(f.vars.size(), -1);
  for (size_t i = 0; i < f.vars.size(); ++i) {
    for (size_t j = 0; j < vars.size(); ++j)
      if (f.vars[i] == vars[j]) slot[i] = static_cast<int>(j);
  }
  SparsePoly out = poly::zero(std::move(vars));
  for (const auto& [e, c] : f.terms) {
    std::vector<int> ne(out.vars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (slot[i] < 0)
        throw std::invalid_argument("with_vars: effective variable dropped");
      ne[static_cast<size_t>(slot[i])] = e[i];
    }
    out.terms[std::move(ne)] = c;
  }
  return out;
}

SolutionFamily family1(ParamSlot n, CoordSlot x, std::string prov) {
  return SolutionFamily{std::move(n), {std::move(x)}, std::nullopt, std::move(prov)};
}

SolutionFamily family2(ParamSlot n, CoordSlot x, CoordSlot y, std::string prov) {
  return SolutionFamily{std::move(n), {std::move(x), std::move(y)}, std::nullopt,
                        std::move(prov)};
}

SolutionFamily coset_family(ParamSlot n, long p, long q, RootOfUnity mu,
                            std::string prov) {
  SolutionFamily f{std::move(n),
                   {CoordSlot::free_slot(), CoordSlot::free_slot()},
                   CosetRel{p, q, mu},
                   std::move(prov)};
  return f;
}

// ---------------------------------------------------------------------------
// Verification. Families are checked twice: a complete symbolic check with
// free slots kept formal, and spot instantiations drawn at random.

void verify_symbolic(const SparsePoly& f, const SolutionFamily& fam, int n_idx,
                     const std::vector<int>& coord_idx) {
  long alpha = 0, beta = 0;
  if (fam.coset) {
    long s, t;
    if (ext_gcd(fam.coset->p, fam.coset->q, s, t) != 1)
      throw verification_error("coset relation is not primitive");
    alpha = s;
    beta = t;
  }
  std::map<std::vector<long>, CycloElement> buckets;
  for (const auto& [e, c] : f.terms) {
    CycloElement val = cyclo_from_rational(c);
    std::vector<long> key;
    const long en = e[static_cast<size_t>(n_idx)];
    if (fam.n.is_free)
      key.push_back(en);
    else
      val = cyclo_scale(std::move(val), rational_pow(fam.n.value, en));
    if (fam.coset) {
      const long ex = e[static_cast<size_t>(coord_idx[0])];
      const long ey = e[static_cast<size_t>(coord_idx[1])];
      // x = mu^alpha T^q, y = mu^beta T^-p parametrizes x^p y^q = mu.
      val = cyclo_mul(val, cyclo_from_rou(rou_pow(fam.coset->mu, alpha * ex + beta * ey)));
      key.push_back(fam.coset->q * ex - fam.coset->p * ey);
    } else {
      for (size_t i = 0; i < coord_idx.size(); ++i) {
        const long ei = e[static_cast<size_t>(coord_idx[i])];
        if (fam.coords[i].is_free)
          key.push_back(ei);
        else
          val = cyclo_mul(val, cyclo_from_rou(rou_pow(fam.coords[i].value, ei)));
      }
    }
    auto it = buckets.find(key);
    if (it == buckets.end())
      buckets.emplace(std::move(key), std::move(val));
    else
      it->second = cyclo_add(it->second, val);
  }
  for (const auto& [key, v] : buckets)
    if (!v.is_zero())
      throw verification_error("family fails the symbolic check: " + to_string(fam));
}

void verify_random(const SparsePoly& f, const SolutionFamily& fam, int n_idx,
                   const std::vector<int>& coord_idx, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 9), ord(1, 12);
  long alpha = 0, beta = 0;
  if (fam.coset) ext_gcd(fam.coset->p, fam.coset->q, alpha, beta);
  for (int round = 0; round < 3; ++round) {
    const Rational nval =
        fam.n.is_free ? make_rational(num(rng), den(rng)) : fam.n.value;
    std::vector<RootOfUnity> cv(fam.coords.size());
    if (fam.coset) {
      const long o = ord(rng);
      const RootOfUnity t(o, std::uniform_int_distribution<long>(0, o - 1)(rng));
      cv[0] = rou_mul(rou_pow(fam.coset->mu, alpha), rou_pow(t, fam.coset->q));
      cv[1] = rou_mul(rou_pow(fam.coset->mu, beta), rou_pow(t, -fam.coset->p));
    } else {
      for (size_t i = 0; i < cv.size(); ++i) {
        if (fam.coords[i].is_free) {
          const long o = ord(rng);
          cv[i] = RootOfUnity(o, std::uniform_int_distribution<long>(0, o - 1)(rng));
        } else {
          cv[i] = fam.coords[i].value;
        }
      }
    }
    CycloElement acc = cyclo_zero();
    for (const auto& [e, c] : f.terms) {
      RootOfUnity w(1, 0);
      for (size_t i = 0; i < coord_idx.size(); ++i)
        w = rou_mul(w, rou_pow(cv[i], e[static_cast<size_t>(coord_idx[i])]));
      const Rational scalar =
          c * rational_pow(nval, e[static_cast<size_t>(n_idx)]);
      acc = cyclo_add(acc, cyclo_scale(cyclo_from_rou(w), scalar));
    }
    if (!acc.is_zero())
      throw verification_error("family fails a random instantiation: " + to_string(fam));
  }
}

void verify_families(const SparsePoly& f, const std::vector<SolutionFamily>& fams,
                     size_t ncoords) {
  const int n_idx = poly::var_index(f, "n");
  std::vector<int> coord_idx{poly::var_index(f, "x")};
  if (ncoords == 2) coord_idx.push_back(poly::var_index(f, "y"));
  std::mt19937_64 rng(0x5eedf00dULL);
  for (const auto& fam : fams) {
    if (fam.coords.size() != ncoords)
      throw verification_error("family has the wrong coordinate count");
    verify_symbolic(f, fam, n_idx, coord_idx);
    verify_random(f, fam, n_idx, coord_idx, rng);
  }
}

std::vector<SolutionFamily> dedup_families(std::vector<SolutionFamily> fams) {
  std::sort(fams.begin(), fams.end(), family_less);
  fams.erase(std::unique(fams.begin(), fams.end(), same_solution), fams.end());
  std::vector<SolutionFamily> out;
  for (size_t i = 0; i < fams.size(); ++i) {
    bool covered = false;
    for (size_t j = 0; j < fams.size() && !covered; ++j)
      if (j != i && subsumes(fams[j], fams[i]) && !same_solution(fams[j], fams[i]))
        covered = true;
    if (!covered) out.push_back(std::move(fams[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pseudo-remainder elimination. A common root of the input pair at a
// specialized parameter point survives every pseudo-division step verbatim
// (the fraction-free identities specialize as written), except where a
// stripped content vanishes. So the terminal degree-zero chain element plus
// the stripped contents jointly cover the zero set of the resultant; each is
// far smaller than the Sylvester determinant, and every candidate they
// produce is confirmed downstream against the curve itself.

struct Elimination {
  std::vector<SparsePoly> side;
  bool degenerate = false;  // remainder vanished: positive-degree common factor
  SparsePoly gcd;
};

Elimination prs_eliminate(SparsePoly a, SparsePoly b, int var) {
  Elimination out;
  auto push_side = [&out](const SparsePoly& p) {
    if (!poly::is_constant(p)) out.side.push_back(poly::normalize_primitive(p));
  };
  for (SparsePoly* f : {&a, &b}) {
    SparsePoly c = poly::content_wrt(*f, var);
    if (!poly::is_constant(c)) {
      push_side(c);
      *f = poly::exact_div(*f, c);
    }
  }
  if (poly::degree(a, var) < poly::degree(b, var)) std::swap(a, b);
  // With a single variable besides the eliminated one, the chain collapses to
  // one exact resultant; the modular path inside keeps coefficients small.
  int extra = -1;
  bool two_var = poly::degree(b, var) > 0;
  for (const SparsePoly* f : {&a, &b})
    for (const auto& [e, c] : f->terms)
      for (size_t i = 0; two_var && i < e.size(); ++i) {
        if (e[i] == 0 || static_cast<int>(i) == var) continue;
        if (extra == -1)
          extra = static_cast<int>(i);
        else if (extra != static_cast<int>(i))
          two_var = false;
      }
  if (two_var) {
    SparsePoly res = poly::resultant(a, b, a.vars[static_cast<size_t>(var)]);
    if (res.is_zero()) {
      out.degenerate = true;
      out.gcd = poly::normalize_primitive(poly::gcd_any(a, b));
      return out;
    }
    if (extra != -1 && poly::degree(res, extra) > 0)
      push_side(poly::squarefree_part(res, a.vars[static_cast<size_t>(extra)]));
    return out;
  }
  while (true) {
    if (poly::degree(b, var) == 0) {
      push_side(b);
      return out;
    }
    SparsePoly r = poly::pseudo_rem(a, b, var);
    if (r.is_zero()) {
      out.degenerate = true;
      out.gcd = poly::normalize_primitive(b);
      return out;
    }
    SparsePoly c = poly::content_wrt(r, var);
    if (!poly::is_constant(c)) {
      push_side(c);
      r = poly::exact_div(r, c);
    }
    a = std::move(b);
    b = std::move(r);
  }
}

// ---------------------------------------------------------------------------
// One-coordinate solver over {"n", "x"}.

std::vector<SolutionFamily> family_rec(SparsePoly f);

std::vector<SolutionFamily> family_split(const SparsePoly& f, const SparsePoly& factor) {
  std::vector<SolutionFamily> out = family_rec(factor);
  std::vector<SolutionFamily> rest = family_rec(poly::exact_div(f, factor));
  out.insert(out.end(), std::make_move_iterator(rest.begin()),
             std::make_move_iterator(rest.end()));
  return out;
}

std::vector<SolutionFamily> family_rec(SparsePoly f) {
  std::vector<SolutionFamily> out;
  if (poly::is_constant(f)) return out;
  const int n_idx = poly::var_index(f, "n");
  const int x_idx = poly::var_index(f, "x");

  // Coefficient content in the parameter direction: its rational zeros kill
  // every x-coefficient at once, leaving the coordinate unconstrained.
  SparsePoly cn = poly::content_wrt(f, x_idx);
  if (!poly::is_constant(cn)) {
    for (const Rational& r : poly::rational_roots(cn))
      out.push_back(family1(ParamSlot::fixed(r), CoordSlot::free_slot(), "parameter content"));
    f = poly::exact_div(f, cn);
  }
  // Content in the coordinate direction: cyclotomic zeros shared by every
  // power of n give families with the parameter unconstrained.
  SparsePoly cx = poly::content_wrt(f, n_idx);
  if (!poly::is_constant(cx)) {
    for (const RootOfUnity& w : cycpart::cyclotomic_part(cx).roots)
      out.push_back(family1(ParamSlot::free_slot(), CoordSlot::fixed(w), "coordinate content"));
    f = poly::exact_div(f, cx);
  }
  f = poly::strip_monomial(std::move(f)).second;
  if (poly::degree(f, x_idx) <= 0 || poly::degree(f, n_idx) <= 0) return out;

  // Exponent lattice reduction x = u^m.
  const auto [m, g] = poly::exponent_gcd_decompose(f, "x");
  if (m >= 2) {
    for (const SolutionFamily& sub : family_rec(g)) {
      if (sub.coords[0].is_free) {
        out.push_back(family1(sub.n, CoordSlot::free_slot(), "power lift"));
      } else {
        for (const RootOfUnity& w : rou_roots(sub.coords[0].value, m))
          out.push_back(family1(sub.n, CoordSlot::fixed(w), "power lift"));
      }
    }
    return out;
  }
  f = poly::squarefree_part(f, "x");

  // Elimination against the three sign/square images of the coordinate. Any
  // cyclotomic x forces a shared root with one of them, so the side
  // polynomials of the chains cover every admissible rational n.
  std::set<Rational, RatLess> candidates;
  for (poly::SignMode mode :
       {poly::SignMode::neg, poly::SignMode::square, poly::SignMode::neg_square}) {
    SparsePoly fi = poly::substitute_signed(f, "x", mode);
    Elimination elim = prs_eliminate(f, fi, x_idx);
    if (elim.degenerate) {
      if (poly::degree(elim.gcd, x_idx) >= poly::degree(f, x_idx))
        throw verification_error("family elimination: no proper factor to split on");
      std::vector<SolutionFamily> split = family_split(f, elim.gcd);
      out.insert(out.end(), std::make_move_iterator(split.begin()),
                 std::make_move_iterator(split.end()));
      return out;
    }
    for (const SparsePoly& p : elim.side)
      for (const Rational& r : poly::rational_roots(p)) candidates.insert(r);
  }
  for (const Rational& n0 : candidates) {
    SparsePoly fx = poly::eval_var(f, "n", n0);
    if (fx.is_zero())
      throw verification_error("primitive polynomial vanished on a parameter fiber");
    if (poly::degree(fx, x_idx) <= 0) continue;
    for (const RootOfUnity& w : cycpart::cyclotomic_part(fx).roots)
      out.push_back(family1(ParamSlot::fixed(n0), CoordSlot::fixed(w), "elimination"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Two-coordinate solver over {"n", "x", "y"}.

const std::vector<std::string> kNX{"n", "x"};
const std::vector<std::string> kNXY{"n", "x", "y"};

// Solve a {"n","x"}-shaped subproblem given by any polynomial whose effective
// variables are n and one coordinate (renamed to x).
std::vector<SolutionFamily> solve_nx(const SparsePoly& p, const std::string& coord) {
  SparsePoly q = poly::zero(kNX);
  const int n_from = poly::var_index(p, "n");
  const int c_from = poly::var_index(p, coord);
  for (const auto& [e, c] : p.terms) {
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0 && static_cast<int>(i) != n_from && static_cast<int>(i) != c_from)
        throw std::invalid_argument("solve_nx: unexpected effective variable");
    q.terms[{e[static_cast<size_t>(n_from)], e[static_cast<size_t>(c_from)]}] = c;
  }
  return solve_param_family(q);
}

// f(n0, w, y) as a dense polynomial over the cyclotomic field.
CxPoly point_fiber(const SparsePoly& f, const Rational& n0, const RootOfUnity& w,
                   int n_idx, int x_idx, int y_idx) {
  CxPoly out(static_cast<size_t>(std::max(poly::degree(f, y_idx), 0)) + 1, cyclo_zero());
  for (const auto& [e, c] : f.terms) {
    const Rational scalar = c * rational_pow(n0, e[static_cast<size_t>(n_idx)]);
    CycloElement v = cyclo_scale(
        cyclo_from_rou(rou_pow(w, e[static_cast<size_t>(x_idx)])), scalar);
    auto& slot = out[static_cast<size_t>(e[static_cast<size_t>(y_idx)])];
    slot = cyclo_add(slot, v);
  }
  cx_normalize(out);
  return out;
}

// Coefficient of n^j in f(n, w, y), for every j with a nonzero coefficient.
std::map<int, CxPoly> n_coefficient_fibers(const SparsePoly& f, const RootOfUnity& w,
                                           int n_idx, int x_idx, int y_idx) {
  std::map<int, CxPoly> out;
  const size_t dy = static_cast<size_t>(std::max(poly::degree(f, y_idx), 0));
  for (const auto& [e, c] : f.terms) {
    auto it = out.try_emplace(e[static_cast<size_t>(n_idx)], CxPoly(dy + 1, cyclo_zero()))
                  .first;
    CycloElement v =
        cyclo_scale(cyclo_from_rou(rou_pow(w, e[static_cast<size_t>(x_idx)])), c);
    auto& slot = it->second[static_cast<size_t>(e[static_cast<size_t>(y_idx)])];
    slot = cyclo_add(slot, v);
  }
  for (auto it = out.begin(); it != out.end();) {
    cx_normalize(it->second);
    it = it->second.empty() ? out.erase(it) : std::next(it);
  }
  return out;
}

std::vector<SolutionFamily> curve_rec(SparsePoly f);

std::vector<SolutionFamily> curve_split(const SparsePoly& f, const SparsePoly& factor) {
  std::vector<SolutionFamily> out = curve_rec(factor);
  std::vector<SolutionFamily> rest = curve_rec(poly::exact_div(f, factor));
  out.insert(out.end(), std::make_move_iterator(rest.begin()),
             std::make_move_iterator(rest.end()));
  return out;
}

// A single multiplicative constraint x^A y^B = rhs, reduced to canonical
// families: primitive the exponent pair, fan out over the k-th roots.
void expand_constraint(const ParamSlot& n, long A, long B, RootOfUnity rhs,
                       const std::string& prov, std::vector<SolutionFamily>& out) {
  if (A == 0 && B == 0) {
    if (!rou_is_one(rhs))
      throw verification_error("contradictory trivial monomial constraint");
    out.push_back(family2(n, CoordSlot::free_slot(), CoordSlot::free_slot(), prov));
    return;
  }
  long k = std::gcd(std::abs(A), std::abs(B));
  long a = A / k, b = B / k;
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
    rhs = rou_inv(rhs);
  }
  for (const RootOfUnity& r : rou_roots(rhs, k)) {
    if (a == 0)
      out.push_back(family2(n, CoordSlot::free_slot(), CoordSlot::fixed(r), prov));
    else if (b == 0)
      out.push_back(family2(n, CoordSlot::fixed(r), CoordSlot::free_slot(), prov));
    else
      out.push_back(coset_family(n, a, b, r, prov));
  }
}

std::vector<SolutionFamily> curve_rec(SparsePoly f) {
  std::vector<SolutionFamily> out;
  if (poly::is_constant(f)) return out;
  const int n_idx = poly::var_index(f, "n");
  const int x_idx = poly::var_index(f, "x");
  const int y_idx = poly::var_index(f, "y");

  // Pure parameter content: zeros free both coordinates entirely.
  SparsePoly cn = poly::content_wrt(poly::content_wrt(f, x_idx), y_idx);
  if (!poly::is_constant(cn)) {
    for (const Rational& r : poly::rational_roots(cn))
      out.push_back(family2(ParamSlot::fixed(r), CoordSlot::free_slot(),
                            CoordSlot::free_slot(), "parameter content"));
    f = poly::exact_div(f, cn);
  }
  // Content in y: a polynomial in (n, x) whose solutions leave y free.
  SparsePoly cy = poly::content_wrt(f, y_idx);
  if (!poly::is_constant(cy)) {
    for (const SolutionFamily& sub : solve_nx(cy, "x"))
      out.push_back(family2(sub.n, sub.coords[0], CoordSlot::free_slot(), "y content"));
    f = poly::exact_div(f, cy);
  }
  // Content in x, symmetrically.
  SparsePoly cx = poly::content_wrt(f, x_idx);
  if (!poly::is_constant(cx)) {
    for (const SolutionFamily& sub : solve_nx(cx, "y"))
      out.push_back(family2(sub.n, CoordSlot::free_slot(), sub.coords[0], "x content"));
    f = poly::exact_div(f, cx);
  }
  f = poly::strip_monomial(std::move(f)).second;
  const int dx = poly::degree(f, x_idx), dy = poly::degree(f, y_idx);
  if (dx <= 0 && dy <= 0) return out;
  if (dy <= 0) {
    for (const SolutionFamily& sub : solve_nx(f, "x"))
      out.push_back(family2(sub.n, sub.coords[0], CoordSlot::free_slot(), "single coordinate"));
    return out;
  }
  if (dx <= 0) {
    for (const SolutionFamily& sub : solve_nx(f, "y"))
      out.push_back(family2(sub.n, CoordSlot::free_slot(), sub.coords[0], "single coordinate"));
    return out;
  }
  {
    SparsePoly sf = poly::squarefree_part(f, "y");
    sf = poly::squarefree_part(sf, "x");
    if (poly::degree(sf, x_idx) != dx || poly::degree(sf, y_idx) != dy) {
      std::vector<SolutionFamily> sub = curve_rec(std::move(sf));
      out.insert(out.end(), std::make_move_iterator(sub.begin()),
                 std::make_move_iterator(sub.end()));
      return out;
    }
    f = std::move(sf);
  }

  const SupportLattice lattice = support_lattice(f);
  if (lattice.rank < 2) {
    // Rank 0 cannot survive the strips; rank 1 collapses onto one monomial
    // direction w = x^a y^b.
    if (lattice.rank == 0)
      throw verification_error("support lattice of rank 0 after normalization");
    long w1 = lattice.basis[0][0], w2 = lattice.basis[0][1];
    const long g = std::gcd(std::abs(w1), std::abs(w2));
    const long a = w1 / g, b = w2 / g;
    // Projection of each support point onto the direction, shifted to start
    // at zero.
    const auto& ref = f.terms.begin()->first;
    const long rx = ref[static_cast<size_t>(x_idx)], ry = ref[static_cast<size_t>(y_idx)];
    std::map<std::vector<int>, Rational> projected;
    long kmin = 0;
    bool first = true;
    for (const auto& [e, c] : f.terms) {
      const long vx = e[static_cast<size_t>(x_idx)] - rx;
      const long vy = e[static_cast<size_t>(y_idx)] - ry;
      const long k = a != 0 ? vx / a : vy / b;
      if (k * a != vx || k * b != vy)
        throw verification_error("support point off the rank-1 lattice line");
      projected[{e[static_cast<size_t>(n_idx)], static_cast<int>(k)}] = c;
      kmin = first ? k : std::min(kmin, k);
      first = false;
    }
    SparsePoly h = poly::zero(kNX);
    for (auto& [e, c] : projected)
      h.terms[{e[0], static_cast<int>(e[1] - kmin)}] = c;
    for (const SolutionFamily& sub : solve_param_family(h)) {
      if (sub.coords[0].is_free) {
        if (sub.n.is_free)
          throw verification_error("nonzero polynomial claims the full torus for all n");
        out.push_back(family2(sub.n, CoordSlot::free_slot(), CoordSlot::free_slot(),
                              "collapsed direction"));
      } else {
        expand_constraint(sub.n, a, b, sub.coords[0].value, "collapsed direction", out);
      }
    }
    return out;
  }

  const long d1 = lattice.basis[0][0], eoff = lattice.basis[0][1], d2 = lattice.basis[1][1];
  if (d1 * d2 > 1) {
    // Proper sublattice: rewrite in the basis monomials u = x^d1 y^eoff,
    // v = y^d2, solve, and pull answers back through the monomial map.
    const auto& ref = f.terms.begin()->first;
    const long rx = ref[static_cast<size_t>(x_idx)], ry = ref[static_cast<size_t>(y_idx)];
    std::vector<std::array<long, 3>> keys;
    std::vector<Rational> coefs;
    long t1min = 0, t2min = 0;
    bool first = true;
    for (const auto& [e, c] : f.terms) {
      const long vx = e[static_cast<size_t>(x_idx)] - rx;
      const long vy = e[static_cast<size_t>(y_idx)] - ry;
      const long t1 = vx / d1;
      const long t2 = (vy - t1 * eoff) / d2;
      if (t1 * d1 != vx || t1 * eoff + t2 * d2 != vy)
        throw verification_error("support point outside its own lattice");
      keys.push_back({e[static_cast<size_t>(n_idx)], t1, t2});
      coefs.push_back(c);
      t1min = first ? t1 : std::min(t1min, t1);
      t2min = first ? t2 : std::min(t2min, t2);
      first = false;
    }
    SparsePoly g = poly::zero(kNXY);
    for (size_t i = 0; i < keys.size(); ++i)
      g.terms[{static_cast<int>(keys[i][0]), static_cast<int>(keys[i][1] - t1min),
               static_cast<int>(keys[i][2] - t2min)}] = coefs[i];
    const std::array<std::array<long, 2>, 2> M{{{d1, eoff}, {0, d2}}};
    for (const SolutionFamily& sub : solve_param_curve(g)) {
      if (sub.coset) {
        expand_constraint(sub.n, sub.coset->p * d1, sub.coset->p * eoff + sub.coset->q * d2,
                          sub.coset->mu, "lattice pullback", out);
      } else if (!sub.coords[0].is_free && !sub.coords[1].is_free) {
        for (const auto& [px, py] : monomial_system_solve(
                 M, {sub.coords[0].value, sub.coords[1].value}))
          out.push_back(family2(sub.n, CoordSlot::fixed(px), CoordSlot::fixed(py),
                                "lattice pullback"));
      } else if (!sub.coords[0].is_free) {
        expand_constraint(sub.n, d1, eoff, sub.coords[0].value, "lattice pullback", out);
      } else if (!sub.coords[1].is_free) {
        expand_constraint(sub.n, 0, d2, sub.coords[1].value, "lattice pullback", out);
      } else {
        out.push_back(family2(sub.n, CoordSlot::free_slot(), CoordSlot::free_slot(),
                              "lattice pullback"));
      }
    }
    return out;
  }

  // Full-lattice case: eliminate y against the seven sign/square images of
  // the coordinate pair. Any cyclotomic solution shares its y value with one
  // of them.
  struct Branch {
    std::optional<poly::SignMode> on_x, on_y;
  };
  const Branch branches[7] = {
      {poly::SignMode::neg, std::nullopt},
      {std::nullopt, poly::SignMode::neg},
      {poly::SignMode::neg, poly::SignMode::neg},
      {poly::SignMode::square, poly::SignMode::square},
      {poly::SignMode::neg_square, poly::SignMode::square},
      {poly::SignMode::square, poly::SignMode::neg_square},
      {poly::SignMode::neg_square, poly::SignMode::neg_square},
  };
  std::vector<Elimination> elims;
  elims.reserve(7);
  for (const Branch& br : branches) {
    SparsePoly fi = f;
    if (br.on_x) fi = poly::substitute_signed(fi, "x", *br.on_x);
    if (br.on_y) fi = poly::substitute_signed(fi, "y", *br.on_y);
    elims.push_back(prs_eliminate(f, std::move(fi), y_idx));
  }
  for (const Elimination& e : elims) {
    if (e.degenerate && poly::degree(e.gcd, y_idx) < dy) {
      std::vector<SolutionFamily> split = curve_split(f, e.gcd);
      out.insert(out.end(), std::make_move_iterator(split.begin()),
                 std::make_move_iterator(split.end()));
      return out;
    }
  }
  // Branches whose image is a multiple of f itself say nothing; the lemma
  // routes every solution through some informative branch as well.
  std::vector<SparsePoly> side_polys;
  for (const Elimination& e : elims)
    if (!e.degenerate)
      for (const SparsePoly& p : e.side)
        if (std::find(side_polys.begin(), side_polys.end(), p) == side_polys.end())
          side_polys.push_back(p);

  std::set<std::pair<Rational, RootOfUnity>, PointLess> points;
  std::set<Rational, RatLess> fibers;
  std::set<RootOfUnity> omegas;
  for (const SparsePoly& p : side_polys) {
    for (const SolutionFamily& sub : solve_nx(p, "x")) {
      if (sub.n.is_free && sub.coords[0].is_free)
        throw verification_error("nonzero side polynomial solved by everything");
      if (sub.n.is_free)
        omegas.insert(sub.coords[0].value);
      else if (sub.coords[0].is_free)
        fibers.insert(sub.n.value);
      else
        points.insert({sub.n.value, sub.coords[0].value});
    }
  }
  for (const auto& [n0, w] : points) {
    CxPoly fib = point_fiber(f, n0, w, n_idx, x_idx, y_idx);
    if (fib.empty()) {
      out.push_back(family2(ParamSlot::fixed(n0), CoordSlot::fixed(w),
                            CoordSlot::free_slot(), "vanishing fiber"));
      continue;
    }
    for (const RootOfUnity& tau : cycpart::cyclotomic_part_over_field(fib).roots)
      out.push_back(family2(ParamSlot::fixed(n0), CoordSlot::fixed(w),
                            CoordSlot::fixed(tau), "elimination"));
  }
  for (const RootOfUnity& w : omegas) {
    // Families valid for every n: each n-power coefficient must vanish.
    std::map<int, CxPoly> by_n = n_coefficient_fibers(f, w, n_idx, x_idx, y_idx);
    if (by_n.empty()) {
      out.push_back(family2(ParamSlot::free_slot(), CoordSlot::fixed(w),
                            CoordSlot::free_slot(), "vanishing fiber"));
      continue;
    }
    const CxPoly* shortest = nullptr;
    for (const auto& [j, cj] : by_n)
      if (!shortest || cx_deg(cj) < cx_deg(*shortest)) shortest = &cj;
    if (cx_deg(*shortest) == 0) continue;
    for (const RootOfUnity& tau : cycpart::cyclotomic_part_over_field(*shortest).roots) {
      bool all = true;
      const CycloElement tv = cyclo_from_rou(tau);
      for (const auto& [j, cj] : by_n)
        if (!cx_eval(cj, tv).is_zero()) {
          all = false;
          break;
        }
      if (all)
        out.push_back(family2(ParamSlot::free_slot(), CoordSlot::fixed(w),
                              CoordSlot::fixed(tau), "all-parameter fiber"));
    }
  }
  for (const Rational& n0 : fibers) {
    SparsePoly ff = poly::eval_var(f, "n", n0);
    if (ff.is_zero())
      throw verification_error("parameter-primitive polynomial vanished on a fiber");
    for (SolutionFamily sub : solve_param_curve(ff)) {
      if (!sub.n.is_free)
        throw verification_error("parameter-free fiber fixed the parameter");
      sub.n = ParamSlot::fixed(n0);
      sub.provenance = "parameter fiber";
      out.push_back(std::move(sub));
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

bool same_solution(const SolutionFamily& a, const SolutionFamily& b) {
  return a.n == b.n && a.coords == b.coords && a.coset == b.coset;
}

bool subsumes(const SolutionFamily& a, const SolutionFamily& b) {
  if (a.coords.size() != b.coords.size()) return false;
  if (!a.n.is_free && (b.n.is_free || cmp_rat(a.n.value, b.n.value) != 0)) return false;
  if (a.coset) {
    if (b.coset) return *a.coset == *b.coset;
    for (const CoordSlot& c : b.coords)
      if (c.is_free) return false;
    const RootOfUnity prod = rou_mul(rou_pow(b.coords[0].value, a.coset->p),
                                     rou_pow(b.coords[1].value, a.coset->q));
    return prod == a.coset->mu;
  }
  for (size_t i = 0; i < a.coords.size(); ++i) {
    if (a.coords[i].is_free) continue;
    if (b.coset) return false;
    if (b.coords[i].is_free || !(b.coords[i].value == a.coords[i].value)) return false;
  }
  return true;
}

bool family_less(const SolutionFamily& a, const SolutionFamily& b) {
  if (a.coords.size() != b.coords.size()) return a.coords.size() < b.coords.size();
  if (a.n.is_free != b.n.is_free) return a.n.is_free;
  if (!a.n.is_free) {
    const int c = cmp_rat(a.n.value, b.n.value);
    if (c != 0) return c < 0;
  }
  for (size_t i = 0; i < a.coords.size(); ++i) {
    if (a.coords[i].is_free != b.coords[i].is_free) return a.coords[i].is_free;
    if (!a.coords[i].is_free && a.coords[i].value != b.coords[i].value)
      return a.coords[i].value < b.coords[i].value;
  }
  if (a.coset.has_value() != b.coset.has_value()) return !a.coset.has_value();
  if (a.coset) {
    if (a.coset->p != b.coset->p) return a.coset->p < b.coset->p;
    if (a.coset->q != b.coset->q) return a.coset->q < b.coset->q;
    return a.coset->mu < b.coset->mu;
  }
  return false;
}

std::string to_string(const SolutionFamily& f) {
  std::string s = "{n";
  s += f.n.is_free ? std::string(" free") : "=" + cyclopoint::to_string(f.n.value);
  const char* names[2] = {"x", "y"};
  for (size_t i = 0; i < f.coords.size(); ++i) {
    s += ", ";
    s += names[i];
    s += f.coords[i].is_free ? std::string(" free")
                             : "=" + cyclopoint::to_string(f.coords[i].value);
  }
  if (f.coset) {
    s += ", x^" + std::to_string(f.coset->p) + "*y^" + std::to_string(f.coset->q) +
         "=" + cyclopoint::to_string(f.coset->mu);
  }
  s += "}";
  return s;
}

SupportLattice support_lattice(const SparsePoly& f) {
  const int x_idx = poly::var_index(f, "x");
  const int y_idx = poly::var_index(f, "y");
  std::set<std::array<long, 2>> support;
  for (const auto& [e, c] : f.terms)
    support.insert({static_cast<long>(e[static_cast<size_t>(x_idx)]),
                    static_cast<long>(e[static_cast<size_t>(y_idx)])});
  SupportLattice out;
  if (support.size() <= 1) return out;
  const std::array<long, 2> ref = *support.begin();
  long a1 = 0, a2 = 0, b2 = 0;
  for (const auto& pt : support) {
    long v1 = pt[0] - ref[0], v2 = pt[1] - ref[1];
    // Fold (v1, v2) into the generator pair by integer row reduction.
    while (v1 != 0) {
      if (a1 == 0) {
        std::swap(a1, v1);
        std::swap(a2, v2);
        continue;
      }
      const long q = a1 / v1;
      a1 -= q * v1;
      a2 -= q * v2;
      std::swap(a1, v1);
      std::swap(a2, v2);
    }
    b2 = std::gcd(b2, v2);
  }
  if (a1 < 0) {
    a1 = -a1;
    a2 = -a2;
  }
  b2 = std::abs(b2);
  if (a1 == 0 && a2 != 0) {
    // Degenerate fold: the x-direction cancelled entirely.
    b2 = std::gcd(b2, std::abs(a2));
    a2 = 0;
  }
  if (a1 != 0 && b2 != 0) {
    a2 = ((a2 % b2) + b2) % b2;
    out.rank = 2;
    out.basis = {{a1, a2}, {0, b2}};
  } else if (a1 != 0) {
    out.rank = 1;
    out.basis = {{a1, a2}};
  } else if (b2 != 0) {
    out.rank = 1;
    out.basis = {{0, b2}};
  }
  return out;
}

std::vector<std::pair<RootOfUnity, RootOfUnity>> monomial_system_solve(
    const std::array<std::array<long, 2>, 2>& M,
    const std::pair<RootOfUnity, RootOfUnity>& targets) {
  const long det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
  if (det == 0) throw std::invalid_argument("monomial_system_solve: singular matrix");
  // Smith-style diagonalization U*M*V = diag by alternating row and column
  // Euclid (the divisibility normalization is not needed here).
  long A[2][2] = {{M[0][0], M[0][1]}, {M[1][0], M[1][1]}};
  long U[2][2] = {{1, 0}, {0, 1}}, V[2][2] = {{1, 0}, {0, 1}};
  auto swap_rows = [&] {
    for (int j = 0; j < 2; ++j) {
      std::swap(A[0][j], A[1][j]);
      std::swap(U[0][j], U[1][j]);
    }
  };
  auto swap_cols = [&] {
    for (int i = 0; i < 2; ++i) {
      std::swap(A[i][0], A[i][1]);
      std::swap(V[i][0], V[i][1]);
    }
  };
  for (int guard = 0; A[1][0] != 0 || A[0][1] != 0; ++guard) {
    if (guard > 512)
      throw verification_error("monomial system: diagonalization did not settle");
    while (A[1][0] != 0) {
      if (A[0][0] == 0) {
        swap_rows();
        continue;
      }
      const long q = A[1][0] / A[0][0];
      for (int j = 0; j < 2; ++j) {
        A[1][j] -= q * A[0][j];
        U[1][j] -= q * U[0][j];
      }
      if (A[1][0] != 0) swap_rows();
    }
    while (A[0][1] != 0) {
      if (A[0][0] == 0) {
        swap_cols();
        continue;
      }
      const long q = A[0][1] / A[0][0];
      for (int i = 0; i < 2; ++i) {
        A[i][1] -= q * A[i][0];
        V[i][1] -= q * V[i][0];
      }
      if (A[0][1] != 0) swap_cols();
    }
  }
  // Exact check of the factorization before using it.
  auto mat_mul = [](const long X[2][2], const long Y[2][2], long Z[2][2]) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) Z[i][j] = X[i][0] * Y[0][j] + X[i][1] * Y[1][j];
  };
  long Morig[2][2] = {{M[0][0], M[0][1]}, {M[1][0], M[1][1]}};
  long T[2][2], Check[2][2];
  mat_mul(U, Morig, T);
  mat_mul(T, V, Check);
  if (Check[0][0] != A[0][0] || Check[0][1] != 0 || Check[1][0] != 0 ||
      Check[1][1] != A[1][1])
    throw verification_error("monomial system: Smith reduction check failed");

  const RootOfUnity s1 =
      rou_mul(rou_pow(targets.first, U[0][0]), rou_pow(targets.second, U[0][1]));
  const RootOfUnity s2 =
      rou_mul(rou_pow(targets.first, U[1][0]), rou_pow(targets.second, U[1][1]));
  std::vector<std::pair<RootOfUnity, RootOfUnity>> out;
  for (const RootOfUnity& w1 : rou_roots(s1, A[0][0])) {
    for (const RootOfUnity& w2 : rou_roots(s2, A[1][1])) {
      const RootOfUnity zx = rou_mul(rou_pow(w1, V[0][0]), rou_pow(w2, V[0][1]));
      const RootOfUnity zy = rou_mul(rou_pow(w1, V[1][0]), rou_pow(w2, V[1][1]));
      const RootOfUnity c1 = rou_mul(rou_pow(zx, M[0][0]), rou_pow(zy, M[0][1]));
      const RootOfUnity c2 = rou_mul(rou_pow(zx, M[1][0]), rou_pow(zy, M[1][1]));
      if (!(c1 == targets.first) || !(c2 == targets.second))
        throw verification_error("monomial system: solution fails its equations");
      out.emplace_back(zx, zy);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != static_cast<size_t>(std::abs(det)))
    throw verification_error("monomial system: wrong solution count");
  return out;
}

std::vector<SolutionFamily> solve_param_family(const SparsePoly& f) {
  if (f.is_zero())
    throw std::invalid_argument("solve_param_family: zero polynomial");
  const SparsePoly g = f.vars == kNX ? f : with_vars(f, kNX);
  if (poly::min_exponent(g, 0) < 0 || poly::min_exponent(g, 1) < 0)
    throw std::invalid_argument("solve_param_family: negative exponents");
  std::vector<SolutionFamily> fams = dedup_families(family_rec(g));
  verify_families(g, fams, 1);
  return fams;
}

std::vector<SolutionFamily> solve_param_curve(const SparsePoly& f) {
  if (f.is_zero()) throw std::invalid_argument("solve_param_curve: zero polynomial");
  const SparsePoly g = f.vars == kNXY ? f : with_vars(f, kNXY);
  for (int v = 0; v < 3; ++v)
    if (poly::min_exponent(g, v) < 0)
      throw std::invalid_argument("solve_param_curve: negative exponents");
  std::vector<SolutionFamily> fams = dedup_families(curve_rec(g));
  verify_families(g, fams, 2);
  return fams;
}

}  // namespace cyclopoint::famsolve
