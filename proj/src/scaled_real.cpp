#include "besselsym/scaled_real.hpp"

#include <cmath>
#include <numbers>

namespace besselsym {

ScaledReal::ScaledReal(double value) : mantissa_(value), exponent_(0) {
  normalize();
}

ScaledReal ScaledReal::from_parts(double mantissa, std::int64_t exponent) {
  ScaledReal r;
  r.mantissa_ = mantissa;
  r.exponent_ = exponent;
  r.normalize();
  return r;
}

ScaledReal ScaledReal::from_log(int sign, double logmag) {
  if (sign == 0 || logmag == -std::numeric_limits<double>::infinity()) return ScaledReal{};
  // Split logmag = e*ln2 + r with |r| <= ln2/2, then mantissa = exp(r).
  const double e = std::nearbyint(logmag / std::numbers::ln2);
  const double r = std::fma(-e, std::numbers::ln2, logmag);
  return from_parts(sign * std::exp(r), static_cast<std::int64_t>(e));
}

void ScaledReal::normalize() {
  if (mantissa_ == 0.0 || !std::isfinite(mantissa_)) {
    if (mantissa_ == 0.0) exponent_ = 0;
    return;
  }
  int e = 0;
  mantissa_ = std::frexp(mantissa_, &e);
  exponent_ += e;
}

double ScaledReal::logmag() const {
  if (mantissa_ == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::fabs(mantissa_)) + static_cast<double>(exponent_) * std::numbers::ln2;
}

double ScaledReal::to_double() const {
  if (mantissa_ == 0.0) return 0.0;
  if (exponent_ > 1100) return std::copysign(std::numeric_limits<double>::infinity(), mantissa_);
  if (exponent_ < -1100) return std::copysign(0.0, mantissa_);
  return std::ldexp(mantissa_, static_cast<int>(exponent_));
}

ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
  return ScaledReal::from_parts(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

ScaledReal operator/(const ScaledReal& a, const ScaledReal& b) {
  return ScaledReal::from_parts(a.mantissa_ / b.mantissa_, a.exponent_ - b.exponent_);
}

ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const ScaledReal& hi = a.exponent_ >= b.exponent_ ? a : b;
  const ScaledReal& lo = a.exponent_ >= b.exponent_ ? b : a;
  const std::int64_t shift = hi.exponent_ - lo.exponent_;
  if (shift > 1100) return hi;
  // Only the final addition rounds; ldexp by a power of two is exact unless
  // the shifted value is below the subnormal range, where it is negligible.
  const double sum = hi.mantissa_ + std::ldexp(lo.mantissa_, -static_cast<int>(shift));
  return ScaledReal::from_parts(sum, hi.exponent_);
}

ScaledReal ScaledReal::pow(long k) const {
  if (k < 0) return ScaledReal(1.0) / pow(-k);
  ScaledReal result(1.0), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

void ScaledSum::Lane::add(double v) {
  const double t = sum + v;
  if (std::fabs(sum) >= std::fabs(v))
    comp += (sum - t) + v;
  else
    comp += (v - t) + sum;
  sum = t;
}

void ScaledSum::Lane::rescale(int shift) {
  sum = std::ldexp(sum, -shift);
  comp = std::ldexp(comp, -shift);
}

void ScaledSum::add(const ScaledReal& term) {
  ++terms_;
  if (term.is_zero()) return;
  max_logmag_ = std::max(max_logmag_, term.logmag());
  if (term.exponent() > ref_exponent_) {
    if (ref_exponent_ != std::numeric_limits<std::int64_t>::min()) {
      const auto shift = term.exponent() - ref_exponent_;
      const int s = shift > 2000 ? 2000 : static_cast<int>(shift);
      signed_.rescale(s);
      magnitude_.rescale(s);
    }
    ref_exponent_ = term.exponent();
  }
  const auto shift = ref_exponent_ - term.exponent();
  const int s = shift > 2000 ? 2000 : static_cast<int>(shift);
  const double scaled = std::ldexp(term.mantissa(), -s);
  signed_.add(scaled);
  magnitude_.add(std::fabs(scaled));
}

ScaledReal ScaledSum::value() const {
  if (terms_ == 0 || ref_exponent_ == std::numeric_limits<std::int64_t>::min()) return ScaledReal{};
  return ScaledReal::from_parts(signed_.sum + signed_.comp, ref_exponent_);
}

ScaledReal ScaledSum::abs_sum() const {
  if (terms_ == 0 || ref_exponent_ == std::numeric_limits<std::int64_t>::min()) return ScaledReal{};
  return ScaledReal::from_parts(magnitude_.sum + magnitude_.comp, ref_exponent_);
}

}  // namespace besselsym
