#include "besselsym/errors.hpp"
#include "besselsym/specfun.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <queue>

namespace besselsym::specfun {
namespace {

// 15-point Kronrod nodes (nonnegative half) with the embedded 7-point Gauss
// rule on the odd-indexed nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {lo, hi, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

struct Adaptive {
  double value = 0.0, error = 0.0;
  std::size_t intervals = 0;
  bool cap_hit = false;
};

// Globally adaptive bisection of the worst segment.
Adaptive integrate(const std::function<double(double)>& f, double lo, double hi,
                   double abs_tol, double rel_tol, std::size_t max_intervals) {
  std::priority_queue<Segment> heap;
  heap.push(gk15(f, lo, hi));
  double value = heap.top().value, error = heap.top().error;
  while (error > std::max(abs_tol, rel_tol * std::fabs(value))) {
    if (heap.size() >= max_intervals) return {value, error, heap.size(), true};
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = gk15(f, worst.lo, mid);
    const Segment right = gk15(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-add from scratch to shed the drift of the incremental updates.
  value = 0.0;
  error = 0.0;
  const std::size_t count = heap.size();
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error, count, false};
}

constexpr std::size_t kMaxIntervals = 4000;
constexpr double kRelTol = 1e-13;

}  // namespace

TricomiResult tricomi_u_scaled(double a, double b, double z) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("tricomi_u: requires a > 0");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("tricomi_u: requires z > 0");
  if (!std::isfinite(b)) throw DomainError("tricomi_u: b must be finite");

  const double c = b - a - 1.0;
  // log of the integrand e^{-zt} t^{a-1} (1+t)^c
  auto log_integrand = [=](double t) { return -z * t + (a - 1.0) * std::log(t) + c * std::log1p(t); };

  // Stationary point of the log-integrand: z t^2 + (z - b + 2) t - (a - 1) = 0.
  const double lin = z - b + 2.0;
  const double disc = lin * lin + 4.0 * z * (a - 1.0);
  double t_peak = 1.0;
  if (disc >= 0.0) {
    const double root = (-lin + std::sqrt(disc)) / (2.0 * z);
    if (root > 0.0) t_peak = root;
  }
  const double shift = std::max(log_integrand(1.0), log_integrand(t_peak));

  // Past T the integrand is below e^{-60} of its peak.
  double t_cut = std::max(2.0, 2.0 * t_peak);
  while (log_integrand(t_cut) > shift - 60.0) t_cut += std::max(1.0, 5.0 / z);

  // [0, 1] with t = w^{1/a} absorbs the t^{a-1} endpoint behaviour.
  auto head = [=](double w) {
    if (w <= 0.0) return std::exp(-shift) / a;
    const double t = std::pow(w, 1.0 / a);
    return std::exp(-z * t + c * std::log1p(t) - shift) / a;
  };
  auto body = [=](double t) { return std::exp(log_integrand(t) - shift); };
  // [T, inf) with t = T - ln(v)/z.
  auto tail = [=](double v) {
    if (v <= 0.0) return 0.0;
    const double t = t_cut - std::log(v) / z;
    return std::exp(-z * t_cut + (a - 1.0) * std::log(t) + c * std::log1p(t) - shift) / z;
  };

  const double rough = gk15(head, 0.0, 1.0).value + gk15(body, 1.0, t_cut).value;
  const double abs_tol = 1e-15 * std::fabs(rough);

  const Adaptive p1 = integrate(head, 0.0, 1.0, abs_tol, kRelTol, kMaxIntervals);
  const Adaptive p2 = integrate(body, 1.0, t_cut, abs_tol, kRelTol, kMaxIntervals);
  const Adaptive p3 = integrate(tail, 0.0, 1.0, abs_tol, kRelTol, kMaxIntervals);

  const double scaled = p1.value + p2.value + p3.value;
  const double err = p1.error + p2.error + p3.error;
  TricomiResult out;
  out.value = ScaledReal::from_log(1, shift + std::log(scaled) - lngamma(a));
  out.error_estimate = err / std::fabs(scaled);
  out.cap_hit = p1.cap_hit || p2.cap_hit || p3.cap_hit || out.error_estimate > 1e-10;
  return out;
}

double tricomi_u(double a, double b, double z) {
  return tricomi_u_scaled(a, b, z).value.to_double();
}

TricomiResult whittaker_w(double kappa, double mu, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("whittaker_w: requires z > 0");
  double m = mu;
  if (!(m - kappa + 0.5 > 0.0)) {
    m = -mu;
    if (!(m - kappa + 0.5 > 0.0))
      throw DomainError("whittaker_w: needs mu - kappa + 1/2 > 0 for mu or -mu");
  }
  TricomiResult u = tricomi_u_scaled(m - kappa + 0.5, 1.0 + 2.0 * m, z);
  const double log_prefactor = -0.5 * z + (m + 0.5) * std::log(z);
  u.value = u.value * ScaledReal::from_log(1, log_prefactor);
  return u;
}

}  // namespace besselsym::specfun
