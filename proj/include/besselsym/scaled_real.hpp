#pragma once

#include <cstdint>
#include <limits>

namespace besselsym {

// A real number held as mantissa * 2^exponent with |mantissa| in [0.5, 1)
// (or exactly zero). The exponent is a 64-bit integer, so products of
// Bessel values and large powers never overflow or underflow.
class ScaledReal {
 public:
  constexpr ScaledReal() = default;
  explicit ScaledReal(double value);

  // sign * exp(logmag)
  static ScaledReal from_log(int sign, double logmag);
  static ScaledReal from_parts(double mantissa, std::int64_t exponent);

  int sign() const { return mantissa_ > 0 ? 1 : (mantissa_ < 0 ? -1 : 0); }
  double logmag() const;  // -inf for zero
  double mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  bool is_zero() const { return mantissa_ == 0.0; }

  // Saturates to +-inf / 0 outside the double range.
  double to_double() const;

  ScaledReal abs() const { return from_parts(mantissa_ < 0 ? -mantissa_ : mantissa_, exponent_); }
  ScaledReal operator-() const { return from_parts(-mantissa_, exponent_); }

  friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b);
  friend ScaledReal operator/(const ScaledReal& a, const ScaledReal& b);
  friend ScaledReal operator+(const ScaledReal& a, const ScaledReal& b);
  friend ScaledReal operator-(const ScaledReal& a, const ScaledReal& b) { return a + (-b); }
  ScaledReal& operator*=(const ScaledReal& o) { return *this = *this * o; }
  ScaledReal& operator+=(const ScaledReal& o) { return *this = *this + o; }

  // value^k for integer k (repeated squaring on the mantissa).
  ScaledReal pow(long k) const;

  // Exact comparison of represented values.
  friend bool operator==(const ScaledReal& a, const ScaledReal& b) {
    return a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_;
  }

 private:
  void normalize();

  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

// Compensated (Neumaier) accumulation of ScaledReal terms against a running
// reference exponent. Also tracks sum |term| and the largest term for
// conditioning diagnostics.
class ScaledSum {
 public:
  void add(const ScaledReal& term);

  ScaledReal value() const;
  ScaledReal abs_sum() const;
  // log-magnitude of the largest term added so far (-inf if none).
  double max_logmag() const { return max_logmag_; }
  std::size_t terms() const { return terms_; }

 private:
  struct Lane {
    double sum = 0.0, comp = 0.0;
    void add(double v);
    void rescale(int shift);
  };

  std::int64_t ref_exponent_ = std::numeric_limits<std::int64_t>::min();
  Lane signed_, magnitude_;
  double max_logmag_ = -std::numeric_limits<double>::infinity();
  std::size_t terms_ = 0;
};

}  // namespace besselsym
