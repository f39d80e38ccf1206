#pragma once

// Slow reference implementations in 100-digit binary floating point. They
// use the defining ascending series (and Boost quadrature for U), so they
// share no code path with the library evaluators they check.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdlib>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_100;

inline Real eps() { return Real("1e-95"); }

// sum_k sign^k (x/2)^{2k+n} / (k! (n+k)!)
inline Real ascending(int n, const Real& x, bool alternate) {
  const Real half = x / 2;
  const Real q = half * half;
  Real term = boost::multiprecision::pow(half, n);
  for (int i = 1; i <= n; ++i) term /= i;
  Real sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= q / (Real(k) * (n + k));
    if (alternate) term = -term;
    sum += term;
    if (abs(term) < eps() * abs(sum) && Real(k) * (n + k) > q) break;
  }
  return sum;
}

inline Real bessel_j(int n, const Real& x) {
  const int a = std::abs(n);
  const Real v = ascending(a, x, true);
  return (n < 0 && a % 2 == 1) ? Real(-v) : v;
}

inline Real bessel_i(int n, const Real& x) { return ascending(std::abs(n), x, false); }

// psi(k+1) + psi(n+k+1) weighted series shared by Y_n and K_n.
inline Real digamma_series(int n, const Real& x, bool alternate) {
  const Real gamma = boost::math::constants::euler<Real>();
  const Real half = x / 2;
  const Real q = half * half;
  Real term = boost::multiprecision::pow(half, n);
  for (int i = 1; i <= n; ++i) term /= i;
  Real hk = 0, hnk = 0;
  for (int i = 1; i <= n; ++i) hnk += Real(1) / i;
  Real sum = term * (-2 * gamma + hk + hnk);
  for (int k = 1; k < 10000; ++k) {
    term *= q / (Real(k) * (n + k));
    if (alternate) term = -term;
    hk += Real(1) / k;
    hnk += Real(1) / (n + k);
    const Real t = term * (-2 * gamma + hk + hnk);
    sum += t;
    if (abs(term) < eps() * abs(sum) && Real(k) * (n + k) > q) break;
  }
  return sum;
}

// sum_{k<n} (n-k-1)!/k! * (sign q)^k * (x/2)^{-n}
inline Real finite_part(int n, const Real& x, bool alternate) {
  const Real half = x / 2;
  const Real q = half * half;
  Real sum = 0;
  for (int k = 0; k < n; ++k) {
    Real t = boost::multiprecision::pow(q, k);
    for (int i = 1; i <= n - k - 1; ++i) t *= i;
    for (int i = 1; i <= k; ++i) t /= i;
    if (alternate && k % 2 == 1) t = -t;
    sum += t;
  }
  return sum / boost::multiprecision::pow(half, n);
}

inline Real bessel_y(int n, const Real& x) {
  const int a = std::abs(n);
  const Real pi = boost::math::constants::pi<Real>();
  const Real v = -finite_part(a, x, false) / pi + 2 / pi * log(x / 2) * bessel_j(a, x) -
                 digamma_series(a, x, true) / pi;
  return (n < 0 && a % 2 == 1) ? Real(-v) : v;
}

inline Real bessel_k(int n, const Real& x) {
  const int a = std::abs(n);
  const Real sign_log = (a % 2 == 0) ? Real(-1) : Real(1);  // (-1)^{n+1}
  const Real sign_tail = (a % 2 == 0) ? Real(1) : Real(-1);  // (-1)^n
  return finite_part(a, x, true) / 2 + sign_log * log(x / 2) * bessel_i(a, x) +
         sign_tail * digamma_series(a, x, false) / 2;
}

inline Real gauss_2f1(const Real& a, const Real& b, const Real& c, const Real& z) {
  Real term = 1, sum = 1;
  for (int j = 0; j < 200000; ++j) {
    term *= (a + j) * (b + j) / ((c + j) * (j + 1)) * z;
    sum += term;
    if (term == 0) break;
    if (abs(term) < eps() * abs(sum) && j > 50) {
      // require decreasing terms before stopping
      const Real ratio = abs((a + j + 1) * (b + j + 1) / ((c + j + 1) * (j + 2)) * z);
      if (ratio < 1) break;
    }
  }
  return sum;
}

inline Real hyp_3f2(const Real& a1, const Real& a2, const Real& a3, const Real& b1, const Real& b2,
                    const Real& z) {
  Real term = 1, sum = 1;
  for (int j = 0; j < 400000; ++j) {
    term *= (a1 + j) * (a2 + j) * (a3 + j) / ((b1 + j) * (b2 + j) * (j + 1)) * z;
    sum += term;
    if (term == 0) break;
    if (abs(term) < eps() * abs(sum) && j > 50) break;
  }
  return sum;
}

inline Real lngamma(const Real& x) { return boost::math::lgamma(x); }

// U(a,b,z) = 1/Gamma(a) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt by
// double-exponential quadrature in 50 digits.
inline double tricomi_u(double a, double b, double z) {
  using R = boost::multiprecision::cpp_bin_float_50;
  boost::math::quadrature::exp_sinh<R> integrator;
  const R ra(a), rb(b), rz(z);
  auto f = [&](const R& t) -> R {
    if (t <= 0) return R(0);
    return exp(-rz * t + (ra - 1) * log(t) + (rb - ra - 1) * log1p(t));
  };
  const R value = integrator.integrate(f, R("1e-30"));
  return (value / boost::math::tgamma(ra)).convert_to<double>();
}

}  // namespace oracle
