#include "besselsym/errors.hpp"
#include "besselsym/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace besselsym::specfun {
namespace {

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError(std::string(fn) + ": argument must be positive and finite");
}

// K_0 and K_1 as scaled values.
struct KPair {
  ScaledReal k0, k1;
};

// Ascending series with the logarithmic term; accurate for z <= 2.
KPair k01_series(double z) {
  const double q = 0.25 * z * z;
  const double log_half = std::log(0.5 * z);

  // I0, I1 and the digamma-weighted sums, term by term.
  double i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
  double t0 = 1.0;        // q^k / (k!)^2
  double t1 = 0.5 * z;    // (z/2) q^k / (k!(k+1)!)
  double harmonic = 0.0;  // H_k
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      harmonic += 1.0 / k;
      t0 *= q / (static_cast<double>(k) * k);
      t1 *= q / (static_cast<double>(k) * (k + 1));
    }
    const double psi_k1 = -kEulerGamma + harmonic;             // psi(k+1)
    const double psi_k2 = psi_k1 + 1.0 / (k + 1);              // psi(k+2)
    i0 += t0;
    i1 += t1;
    s0 += t0 * harmonic;
    s1 += t1 * (psi_k1 + psi_k2);
    if (t0 < 1e-18 * i0 && t1 < 1e-18 * i1) break;
  }
  const double k0 = -(log_half + kEulerGamma) * i0 + s0;
  const double k1 = 1.0 / z + log_half * i1 - 0.5 * s1;
  return {ScaledReal(k0), ScaledReal(k1)};
}

// Steed/Temme continued fraction (CF2) for order zero; z > 2. The e^{-z}
// factor is applied in log space.
KPair k01_continued_fraction(double z) {
  constexpr double a1 = 0.25;  // 1/4 - mu^2 with mu = 0
  double b = 2.0 * (1.0 + z);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < 1e-17) break;
  }
  h *= a1;
  const double log_k0 = 0.5 * std::log(std::numbers::pi / (2.0 * z)) - z - std::log(s);
  const ScaledReal k0 = ScaledReal::from_log(1, log_k0);
  const ScaledReal k1 = k0 * ScaledReal((z + 0.5 - h) / z);
  return {k0, k1};
}

// Downward Miller recurrence for J_0..J_top. Values are stored per entry as a
// scaled real so that orders far beyond x neither overflow the working pair
// nor lose their relative accuracy.
std::vector<ScaledReal> miller_j(int top, double x) {
  constexpr int kRescaleBits = 600;
  const double rescale_at = std::ldexp(1.0, kRescaleBits);
  std::vector<double> raw(static_cast<std::size_t>(top) + 1, 0.0);
  std::vector<int> rescales_before(static_cast<std::size_t>(top) + 1, 0);

  int rescales = 0;
  double jp1 = 0.0;
  double j = 1e-300;
  const double two_over_x = 2.0 / x;
  raw[top] = j;
  for (int k = top; k > 0; --k) {
    const double jm1 = k * two_over_x * j - jp1;
    jp1 = j;
    j = jm1;
    if (std::fabs(j) > rescale_at) {
      j = std::ldexp(j, -kRescaleBits);
      jp1 = std::ldexp(jp1, -kRescaleBits);
      ++rescales;
    }
    raw[k - 1] = j;
    rescales_before[k - 1] = rescales;
  }

  // Entries stored before the final rescale carry extra negative exponent.
  std::vector<ScaledReal> family(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const std::int64_t shift = static_cast<std::int64_t>(rescales - rescales_before[k]) * kRescaleBits;
    family[k] = ScaledReal::from_parts(raw[k], -shift);
  }

  // J_0 + 2 sum J_{2k} = 1
  ScaledSum norm;
  for (std::size_t k = 2; k < family.size(); k += 2) norm.add(family[k]);
  const ScaledReal total = family[0] + ScaledReal(2.0) * norm.value();
  for (auto& v : family) v = v / total;
  return family;
}

int miller_start(int nmax, double x) {
  const double base = std::max(static_cast<double>(nmax), x);
  int start = static_cast<int>(base + 30.0 + std::sqrt(80.0 * base));
  return start + (start & 1);
}

double parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

struct YPair {
  double y0, y1;
};

// Neumann series for Y_0, Y_1 in terms of the normalized J family.
YPair y01_neumann(const std::vector<double>& j, double x) {
  const double lead = std::log(0.5 * x) + kEulerGamma;
  double sum0 = 0.0, c0 = 0.0;
  double sum1 = 0.0, c1 = 0.0;
  auto kahan = [](double& sum, double& c, double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  };
  const std::size_t top = j.size();
  for (std::size_t k = 1; 2 * k + 1 < top; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    kahan(sum0, c0, sign * j[2 * k] / static_cast<double>(k));
    kahan(sum1, c1, sign * (j[2 * k - 1] - j[2 * k + 1]) / static_cast<double>(k));
  }
  const double y0 = std::numbers::inv_pi * 2.0 * (lead * j[0] - 2.0 * sum0);
  const double y1 = -std::numbers::inv_pi * 2.0 * (j[0] / x - lead * j[1] - sum1);
  return {y0, y1};
}

}  // namespace

std::vector<ScaledReal> bessel_k_family(int nmax, double z) {
  require_positive(z, "bessel_k");
  if (nmax < 0) throw DomainError("bessel_k_family: nmax must be nonnegative");
  const KPair base = z <= 2.0 ? k01_series(z) : k01_continued_fraction(z);
  std::vector<ScaledReal> family;
  family.reserve(static_cast<std::size_t>(nmax) + 1);
  family.push_back(base.k0);
  if (nmax >= 1) family.push_back(base.k1);
  for (int nu = 1; nu < nmax; ++nu) {
    // K_{nu+1} = K_{nu-1} + (2 nu / z) K_nu, all terms positive.
    family.push_back(family[nu - 1] + ScaledReal(2.0 * nu / z) * family[nu]);
  }
  return family;
}

ScaledReal bessel_k(int nu, double z) {
  const int order = std::abs(nu);
  return bessel_k_family(order, z)[order];
}

std::vector<ScaledReal> bessel_j_family_scaled(int nmax, double x) {
  require_positive(x, "bessel_j");
  if (nmax < 0) throw DomainError("bessel_j_family: nmax must be nonnegative");
  auto family = miller_j(miller_start(nmax, x), x);
  family.resize(static_cast<std::size_t>(nmax) + 1);
  return family;
}

std::vector<double> bessel_j_family(int nmax, double x) {
  const auto scaled = bessel_j_family_scaled(nmax, x);
  std::vector<double> out;
  out.reserve(scaled.size());
  for (const auto& v : scaled) out.push_back(v.to_double());
  return out;
}

double bessel_j(int n, double x) {
  const int order = std::abs(n);
  const double value = bessel_j_family(order, x)[order];
  return n < 0 ? parity(order) * value : value;
}

std::vector<double> bessel_y_family(int nmax, double x) {
  require_positive(x, "bessel_y");
  if (nmax < 0) throw DomainError("bessel_y_family: nmax must be nonnegative");
  const auto scaled = miller_j(miller_start(1, x), x);
  std::vector<double> j;
  j.reserve(scaled.size());
  for (const auto& v : scaled) j.push_back(v.to_double());
  const YPair base = y01_neumann(j, x);

  std::vector<double> family;
  family.reserve(static_cast<std::size_t>(nmax) + 1);
  family.push_back(base.y0);
  if (nmax >= 1) family.push_back(base.y1);
  for (int n = 1; n < nmax; ++n) family.push_back(2.0 * n / x * family[n] - family[n - 1]);
  return family;
}

double bessel_y(int n, double x) {
  const int order = std::abs(n);
  const double value = bessel_y_family(order, x)[order];
  return n < 0 ? parity(order) * value : value;
}

}  // namespace besselsym::specfun
