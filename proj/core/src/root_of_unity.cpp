#include "cyclopoint/root_of_unity.hpp"

#include <stdexcept>

namespace cyclopoint {

RootOfUnity::RootOfUnity(long order_, long exp_) {
  if (order_ <= 0) throw std::invalid_argument("root of unity: order must be positive");
  long e = exp_ % order_;
  if (e < 0) e += order_;
  long g = std::gcd(e, order_);
  if (e == 0) {
    order = 1;
    exp = 0;
  } else {
    order = order_ / g;
    exp = e / g;
  }
}

RootOfUnity rou_mul(const RootOfUnity& u, const RootOfUnity& v) {
  long n = long_lcm(u.order, v.order);
  long e = u.exp * (n / u.order) + v.exp * (n / v.order);
  return RootOfUnity(n, e);
}

RootOfUnity rou_inv(const RootOfUnity& u) {
  return RootOfUnity(u.order, u.order - u.exp);
}

RootOfUnity rou_pow(const RootOfUnity& u, long k) {
  long e = k % u.order;
  if (e < 0) e += u.order;
  // exp*e can overflow only past ~2^31 * 2^31; orders here stay far smaller.
  return RootOfUnity(u.order, u.exp * e % u.order);
}

RootOfUnity rou_neg(const RootOfUnity& u) { return rou_mul(RootOfUnity(2, 1), u); }

std::string to_string(const RootOfUnity& u) {
  return "zeta(" + std::to_string(u.order) + "," + std::to_string(u.exp) + ")";
}

}  // namespace cyclopoint
