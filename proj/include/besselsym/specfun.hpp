#pragma once

// Floating-point special functions used by the identity evaluators:
// log-Gamma, integer-order Bessel J/Y/K, Gauss 2F1, 3F2, Tricomi U and
// Whittaker W.
//
// Accuracy contracts (relative error unless noted):
//   lngamma        1e-13 on [1e-3, 1e3]
//   bessel_k       1e-12 for |nu| <= 40, z in [0.05, 50]
//   bessel_j       1e-12 for |n| <= 40, x in [0.05, 50]; absolute
//                  1e-14 * max_{k<=n} |J_k(x)| within 1e-6 of a zero
//   bessel_y       1e-11 for |n| <= 40, x in [0.1, 50]; same carve-out
//   gauss_2f1      1e-11 for |z| <= 0.9
//   hyp_3f2        1e-10 for |z| <= 0.9
//   tricomi_u      1e-8  for a <= 25, |b| <= 25, z in [0.2, 20]
//   whittaker_w    1e-7  on the symmetric-sum parameter family

#include "besselsym/scaled_real.hpp"

#include <cstddef>
#include <vector>

namespace besselsym::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// ln|Gamma(x)|; throws DomainError at nonpositive integers.
double lngamma(double x);
// Sign of Gamma(x) (+1 or -1); throws DomainError at poles.
int gamma_sign(double x);
// Gamma(x) as sign * exp(lngamma(x)).
ScaledReal gamma_scaled(double x);

// K_nu(z) for integer nu (K_{-nu} = K_nu), z > 0.
ScaledReal bessel_k(int nu, double z);
// K_0 .. K_nmax in one upward-recurrence pass.
std::vector<ScaledReal> bessel_k_family(int nmax, double z);

// J_n(x), x > 0, any integer n (J_{-n} = (-1)^n J_n).
double bessel_j(int n, double x);
// J_0 .. J_nmax from one normalized Miller pass. Entries may underflow to
// zero for orders far beyond x.
std::vector<double> bessel_j_family(int nmax, double x);
std::vector<ScaledReal> bessel_j_family_scaled(int nmax, double x);

// Y_n(x), x > 0, any integer n (Y_{-n} = (-1)^n Y_n).
double bessel_y(int n, double x);
// Y_0 .. Y_nmax (upward recurrence from Y_0, Y_1).
std::vector<double> bessel_y_family(int nmax, double x);

// Outcome of a series evaluation. `cap_hit` means the iteration cap was
// reached (or extrapolation failed to settle) and the value is suspect.
struct SeriesResult {
  double value = 0.0;
  std::size_t terms = 0;
  bool cap_hit = false;
};

// Gauss 2F1(a,b;c;z) for |z| < 1.
double gauss_2f1(double a, double b, double c, double z);
SeriesResult gauss_2f1_series(double a, double b, double c, double z);

// 3F2(a1,a2,a3; b1,b2; z) for |z| < 1 or z = +-1 inside the convergence
// region. Throws DomainError for divergent combinations.
SeriesResult hyp_3f2(double a1, double a2, double a3, double b1, double b2, double z);

inline constexpr std::size_t kSeriesTermCap = 1'000'000;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t intervals = 0;
  bool cap_hit = false;
};

// Tricomi U(a,b,z) = 1/Gamma(a) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt,
// a > 0, z > 0, by adaptive Gauss-Kronrod quadrature. The value is returned
// through `log_value` scaling: U = sign * exp(log_value).
struct TricomiResult {
  ScaledReal value;
  double error_estimate = 0.0;  // relative
  bool cap_hit = false;
};
TricomiResult tricomi_u_scaled(double a, double b, double z);
double tricomi_u(double a, double b, double z);

// W_{kappa,mu}(z) = e^{-z/2} z^{mu+1/2} U(mu-kappa+1/2, 1+2mu, z).
// When mu - kappa + 1/2 <= 0 the reflected index -mu is used instead
// (W is even in mu); if both are nonpositive, throws DomainError.
TricomiResult whittaker_w(double kappa, double mu, double z);

}  // namespace besselsym::specfun
