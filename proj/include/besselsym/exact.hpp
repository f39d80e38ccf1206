#pragma once

// Exact integer/rational arithmetic and zero-tolerance checks of the
// combinatorial identities: the F(n,p,q) sum, its symmetric polynomial
// quotient, the binomial and factorial sums, and the Pochhammer-reduced
// Gamma-ratio sum.

#include <boost/multiprecision/cpp_int.hpp>

#include <string_view>
#include <utility>
#include <vector>

namespace besselsym::exact {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Factorials up to this index are tabulated once; larger ones are computed
// on demand.
inline constexpr long kFactorialMemoCap = 64;

BigInt factorial(long n);
BigInt binomial(long n, long k);

// Rising factorial (a)_k = a (a+1) ... (a+k-1).
BigRational pochhammer(const BigRational& a, long k);

// F(n,p,q) = (n+q+1)!/(q!(q+1)!) * sum_{k=0}^p (q+k+1)!/(k+1)! * (n+k)!/k!
BigRational f_eval(long n, long p, long q);

// Lattice samples of P(p,q) = p! q! / (p+q+2)! * F(n,p,q) on
// 0 <= p <= pmax, 0 <= q <= qmax.
class PolySample {
 public:
  PolySample(long n, long pmax, long qmax);

  long order() const { return n_; }
  long pmax() const { return pmax_; }
  long qmax() const { return qmax_; }
  const BigRational& at(long p, long q) const {
    return values_[static_cast<std::size_t>(p * (qmax_ + 1) + q)];
  }

  // P(p,q) == P(q,p) wherever both points lie on the lattice.
  bool symmetric() const;
  // Order-`order` forward difference in p vanishes at every fixed q.
  bool vanishing_difference(long order) const;

 private:
  long n_, pmax_, qmax_;
  std::vector<BigRational> values_;
};

// Certifies that P(p,q) is symmetric and of degree <= n-1 in p on the grid.
// Requires n >= 1 and pmax, qmax >= n + 1.
bool verify_lemma1(long n, long pmax, long qmax);

// Both sides of sum_{k=0}^n C(m+k+1,m) = sum_{k=0}^m C(n+k+1,n).
std::pair<BigInt, BigInt> eq19_sides(long m, long n);
bool verify_eq19(long m, long n);

// sum_{k=0}^n (p+k)!/k!  vs  (n+p+1)!/((p+1) n!)
std::pair<BigRational, BigRational> eq22_sides(long n, long p);
bool verify_eq22(long n, long p);

// Gamma-ratio symmetric sum with Gamma(k+1-a) replaced by (1-a)_k and
// Gamma(n+2-a) by (1-a)_{n+1}, i.e. both sides divided by Gamma(1-a).
// Throws PoleError when a Pochhammer denominator vanishes.
std::pair<BigRational, BigRational> eq18_sides(long m, long n, const BigRational& a);
bool verify_eq18(long m, long n, const BigRational& a);

// Coefficient F(n,p,q)/(n!)^2 of z^n in G(p,q,z).
BigRational g_series_coeff(long n, long p, long q);

// Parses "7/3", "-3/4", "0.75", "2.5e-1" exactly.
BigRational parse_rational(std::string_view text);

// Exact rational value of a finite double.
BigRational rational_from_double(double value);

double to_double(const BigRational& value);

}  // namespace besselsym::exact
