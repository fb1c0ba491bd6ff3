#pragma once

#include <compare>
#include <string>

#include "cyclopoint/numbers.hpp"

namespace cyclopoint {

// e^{2*pi*i*exp/order} in lowest terms: gcd(exp, order) = 1, 0 <= exp < order,
// with the identity stored as (1,0). Canonical form is established on
// construction and preserved by every operation.
struct RootOfUnity {
  long order = 1;
  long exp = 0;

  RootOfUnity() = default;
  RootOfUnity(long order_, long exp_);

  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
  auto operator<=>(const RootOfUnity&) const = default;
};

inline RootOfUnity rou(long order, long exp) { return RootOfUnity(order, exp); }

RootOfUnity rou_mul(const RootOfUnity& u, const RootOfUnity& v);
RootOfUnity rou_inv(const RootOfUnity& u);
RootOfUnity rou_pow(const RootOfUnity& u, long k);
// -u, computed as multiplication by (2,1).
RootOfUnity rou_neg(const RootOfUnity& u);

inline bool rou_is_one(const RootOfUnity& u) { return u.order == 1; }

std::string to_string(const RootOfUnity& u);

}  // namespace cyclopoint
