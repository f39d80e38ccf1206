#include "besselsym/exact.hpp"
#include "besselsym/scaled_real.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using besselsym::ScaledReal;
using besselsym::ScaledSum;
using besselsym::exact::BigInt;
using besselsym::exact::BigRational;

namespace {

BigRational exact_value(const ScaledReal& v) {
  BigRational r = besselsym::exact::rational_from_double(v.mantissa());
  const BigInt p = BigInt(1) << static_cast<unsigned>(std::llabs(v.exponent()));
  if (v.exponent() >= 0) return BigRational(r * p);
  return BigRational(r / p);
}

}  // namespace

TEST_CASE("construction and accessors") {
  const ScaledReal zero;
  CHECK(zero.sign() == 0);
  CHECK(zero.logmag() == -std::numeric_limits<double>::infinity());
  CHECK(zero.to_double() == 0.0);

  const ScaledReal v(-6.0);
  CHECK(v.sign() == -1);
  CHECK(v.mantissa() == -0.75);
  CHECK(v.exponent() == 3);
  CHECK(v.logmag() == doctest::Approx(std::log(6.0)).epsilon(1e-15));
  CHECK(v.to_double() == -6.0);

  const ScaledReal big = ScaledReal::from_log(1, 5000.0);
  CHECK(big.logmag() == doctest::Approx(5000.0).epsilon(1e-15));
  CHECK(big.to_double() == std::numeric_limits<double>::infinity());
  CHECK((big / big).to_double() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ScaledReal::from_log(-1, -5000.0).to_double() == 0.0);
}

TEST_CASE("products and powers beyond the double range") {
  const ScaledReal tiny(1e-300), huge(1e300);
  CHECK((tiny * tiny * huge * huge).to_double() == doctest::Approx(1.0).epsilon(1e-14));
  const ScaledReal p = ScaledReal(0.025).pow(200);
  CHECK(p.logmag() == doctest::Approx(200 * std::log(0.025)).epsilon(1e-14));
  CHECK(ScaledReal(2.0).pow(-3).to_double() == 0.125);
  CHECK(ScaledReal(3.0).pow(0).to_double() == 1.0);
}

TEST_CASE("equal-sign addition is within 1 ulp of the exact dyadic sum") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> mant(0.5, 1.0);
  std::uniform_int_distribution<int> expo(-80, 80);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int trial = 0; trial < 2000; ++trial) {
    const double s = sign(rng) ? 1.0 : -1.0;
    const ScaledReal a = ScaledReal::from_parts(s * mant(rng), expo(rng));
    const ScaledReal b = ScaledReal::from_parts(s * mant(rng), expo(rng));
    const ScaledReal sum = a + b;
    const BigRational exact = exact_value(a) + exact_value(b);
    const BigRational err = abs(exact_value(sum) - exact);
    // ulp of the result mantissa: 2^(exponent - 53)
    const BigRational ulp = exact_value(ScaledReal::from_parts(0.5, sum.exponent() - 52));
    CHECK(err <= ulp);
    CHECK(sum.sign() == a.sign());
  }
}

TEST_CASE("ScaledSum compensates and tracks conditioning") {
  ScaledSum sum;
  sum.add(ScaledReal(1.0));
  for (int i = 0; i < 1000; ++i) sum.add(ScaledReal(1e-17));
  CHECK(sum.value().to_double() == doctest::Approx(1.0 + 1e-14).epsilon(1e-16));
  CHECK(sum.terms() == 1001);

  ScaledSum cancel;
  cancel.add(ScaledReal(1e20));
  cancel.add(ScaledReal(3.0));
  cancel.add(ScaledReal(-1e20));
  CHECK(cancel.value().to_double() == 3.0);
  CHECK(cancel.abs_sum().to_double() == doctest::Approx(2e20));
  CHECK(cancel.max_logmag() == doctest::Approx(std::log(1e20)));

  // Rescaling when a much larger term arrives keeps earlier mass.
  ScaledSum grow;
  grow.add(ScaledReal::from_log(1, -2000.0));
  grow.add(ScaledReal::from_log(1, -1990.0));
  const double expected = -1990.0 + std::log1p(std::exp(-10.0));
  CHECK(grow.value().logmag() == doctest::Approx(expected).epsilon(1e-14));

  CHECK(ScaledSum{}.value().is_zero());
}
