#include "besselsym/exact.hpp"

#include "besselsym/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cctype>
#include <cmath>
#include <string>

namespace besselsym::exact {
namespace {

const std::array<BigInt, kFactorialMemoCap + 1>& factorial_table() {
  static const auto table = [] {
    std::array<BigInt, kFactorialMemoCap + 1> t;
    t[0] = 1;
    for (long i = 1; i <= kFactorialMemoCap; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

void require_nonnegative(long v, const char* what) {
  if (v < 0) throw DomainError(std::string(what) + " must be nonnegative");
}

}  // namespace

BigInt factorial(long n) {
  require_nonnegative(n, "factorial argument");
  const auto& table = factorial_table();
  if (n <= kFactorialMemoCap) return table[n];
  BigInt r = table[kFactorialMemoCap];
  for (long i = kFactorialMemoCap + 1; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(long n, long k) {
  require_nonnegative(n, "binomial n");
  require_nonnegative(k, "binomial k");
  if (k > n) throw DomainError("binomial requires k <= n");
  k = std::min(k, n - k);
  BigInt r = 1;
  // r stays integral: after step i it equals C(n-k+i, i).
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigRational pochhammer(const BigRational& a, long k) {
  require_nonnegative(k, "pochhammer length");
  BigRational r = 1;
  for (long i = 0; i < k; ++i) r *= a + i;
  return r;
}

BigRational f_eval(long n, long p, long q) {
  require_nonnegative(n, "n");
  require_nonnegative(p, "p");
  require_nonnegative(q, "q");
  BigInt sum = 0;
  for (long k = 0; k <= p; ++k) {
    // (q+k+1)!/(k+1)! and (n+k)!/k! are both integers.
    sum += (factorial(q + k + 1) / factorial(k + 1)) * (factorial(n + k) / factorial(k));
  }
  const BigInt den = factorial(q) * factorial(q + 1);
  return BigRational(factorial(n + q + 1) * sum, den);
}

PolySample::PolySample(long n, long pmax, long qmax) : n_(n), pmax_(pmax), qmax_(qmax) {
  require_nonnegative(pmax, "pmax");
  require_nonnegative(qmax, "qmax");
  values_.reserve(static_cast<std::size_t>((pmax + 1) * (qmax + 1)));
  for (long p = 0; p <= pmax; ++p) {
    for (long q = 0; q <= qmax; ++q) {
      const BigRational scale(factorial(p) * factorial(q), factorial(p + q + 2));
      values_.push_back(scale * f_eval(n, p, q));
    }
  }
}

bool PolySample::symmetric() const {
  const long lim = std::min(pmax_, qmax_);
  for (long p = 0; p <= lim; ++p)
    for (long q = 0; q < p; ++q)
      if (at(p, q) != at(q, p)) return false;
  return true;
}

bool PolySample::vanishing_difference(long order) const {
  std::vector<BigInt> weights;
  for (long j = 0; j <= order; ++j) {
    BigInt w = binomial(order, j);
    if ((order - j) % 2 != 0) w = -w;
    weights.push_back(std::move(w));
  }
  for (long q = 0; q <= qmax_; ++q) {
    for (long p = 0; p + order <= pmax_; ++p) {
      BigRational diff = 0;
      for (long j = 0; j <= order; ++j) diff += BigRational(weights[j]) * at(p + j, q);
      if (diff != 0) return false;
    }
  }
  return true;
}

bool verify_lemma1(long n, long pmax, long qmax) {
  if (n < 1) throw PreconditionError("verify_lemma1: needs n >= 1");
  if (pmax < n + 1 || qmax < n + 1)
    throw PreconditionError("verify_lemma1: grid must satisfy pmax, qmax >= n + 1");
  const PolySample sample(n, pmax, qmax);
  return sample.symmetric() && sample.vanishing_difference(n);
}

std::pair<BigInt, BigInt> eq19_sides(long m, long n) {
  require_nonnegative(m, "m");
  require_nonnegative(n, "n");
  BigInt lhs = 0, rhs = 0;
  for (long k = 0; k <= n; ++k) lhs += binomial(m + k + 1, m);
  for (long k = 0; k <= m; ++k) rhs += binomial(n + k + 1, n);
  return {lhs, rhs};
}

bool verify_eq19(long m, long n) {
  const auto [lhs, rhs] = eq19_sides(m, n);
  return lhs == rhs;
}

std::pair<BigRational, BigRational> eq22_sides(long n, long p) {
  require_nonnegative(n, "n");
  require_nonnegative(p, "p");
  BigInt lhs = 0;
  for (long k = 0; k <= n; ++k) lhs += factorial(p + k) / factorial(k);
  BigRational rhs(factorial(n + p + 1), BigInt(p + 1) * factorial(n));
  return {BigRational(lhs), rhs};
}

bool verify_eq22(long n, long p) {
  const auto [lhs, rhs] = eq22_sides(n, p);
  return lhs == rhs;
}

namespace {

BigRational eq18_side(long m, long n, const BigRational& a) {
  const BigRational one_minus_a = 1 - a;
  const BigRational denom = pochhammer(one_minus_a, n + 1);
  if (denom == 0) throw PoleError("Pochhammer (1-a)_{n+1} vanishes");
  BigRational sum = 0;
  BigRational poch = 1;  // (1-a)_k
  for (long k = 0; k <= n; ++k) {
    if (k > 0) poch *= one_minus_a + (k - 1);
    sum += BigRational(factorial(m + k + 1), factorial(k) * factorial(k + 1)) * poch;
  }
  return BigRational(factorial(n) * factorial(n + 1)) / denom * sum;
}

}  // namespace

std::pair<BigRational, BigRational> eq18_sides(long m, long n, const BigRational& a) {
  require_nonnegative(m, "m");
  require_nonnegative(n, "n");
  return {eq18_side(m, n, a), eq18_side(n, m, a)};
}

bool verify_eq18(long m, long n, const BigRational& a) {
  const auto [lhs, rhs] = eq18_sides(m, n, a);
  return lhs == rhs;
}

BigRational g_series_coeff(long n, long p, long q) {
  const BigInt nf = factorial(n);
  return f_eval(n, p, q) / BigRational(nf * nf);
}

BigRational parse_rational(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'"); };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigRational num = parse_rational(text.substr(0, slash));
    const BigRational den = parse_rational(text.substr(slash + 1));
    if (den == 0) fail();
    return num / den;
  }

  bool negative = false;
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  BigInt digits = 0;
  long scale = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (seen_point) --scale;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) fail();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') fail();
    const std::string exponent(text.substr(i + 1));
    if (exponent.empty()) fail();
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exponent, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != exponent.size()) fail();
    scale += e;
  }
  BigRational value(digits);
  BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(scale)));
  if (scale >= 0)
    value *= ten_pow;
  else
    value /= ten_pow;
  return negative ? -value : value;
}

BigRational rational_from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot convert non-finite value to rational");
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an exact integer.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  BigRational r{BigInt(scaled)};
  const int shift = exponent - 53;
  const BigInt two_pow = BigInt(1) << std::abs(shift);
  if (shift >= 0) return BigRational(r * two_pow);
  return BigRational(r / two_pow);
}

double to_double(const BigRational& value) {
  using boost::multiprecision::cpp_bin_float_50;
  cpp_bin_float_50 num(boost::multiprecision::numerator(value));
  num /= cpp_bin_float_50(boost::multiprecision::denominator(value));
  return num.convert_to<double>();
}

}  // namespace besselsym::exact
