#include "besselsym/errors.hpp"
#include "besselsym/specfun.hpp"

#include <cmath>

namespace besselsym::specfun {
namespace {

void check_pole(double x) {
  if (!std::isfinite(x)) throw DomainError("Gamma argument must be finite");
  if (x <= 0.0 && x == std::floor(x)) throw PoleError("Gamma pole at nonpositive integer");
}

}  // namespace

double lngamma(double x) {
  check_pole(x);
  int sign = 1;
  // lgamma_r is the reentrant form; plain lgamma writes the global signgam.
  return ::lgamma_r(x, &sign);
}

int gamma_sign(double x) {
  check_pole(x);
  if (x > 0.0) return 1;
  // Gamma alternates sign between consecutive negative integers and is
  // negative on (-1, 0).
  const auto cell = static_cast<long long>(std::ceil(-x));
  return (cell % 2 == 0) ? 1 : -1;
}

ScaledReal gamma_scaled(double x) {
  return ScaledReal::from_log(gamma_sign(x), lngamma(x));
}

}  // namespace besselsym::specfun
