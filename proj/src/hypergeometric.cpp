#include "besselsym/errors.hpp"
#include "besselsym/specfun.hpp"

#include <array>
#include <cmath>
#include <span>
#include <string>

namespace besselsym::specfun {
namespace {

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

class Neumaier {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0, comp_ = 0.0;
};

// Generic pFq power series sum_{j>=0} prod(upper)_j / prod(lower)_j z^j / j!.
// `partial_sums_at` (optional) receives S_N for N in the checkpoint list.
struct SeriesState {
  std::span<const double> upper, lower;
  double z;
};

double term_ratio(const SeriesState& s, std::size_t j) {
  double r = s.z / static_cast<double>(j + 1);
  const double jd = static_cast<double>(j);
  for (double u : s.upper) r *= u + jd;
  for (double l : s.lower) r /= l + jd;
  return r;
}

SeriesResult direct_series(const SeriesState& s, std::size_t cap) {
  Neumaier sum;
  double term = 1.0;
  std::size_t j = 0;
  for (; j < cap; ++j) {
    sum.add(term);
    const double ratio = term_ratio(s, j);
    const double next = term * ratio;
    if (next == 0.0) return {sum.value(), j + 1, false};
    // Stop once terms are negligible and shrinking.
    if (std::fabs(next) < 1e-17 * std::fabs(sum.value()) && std::fabs(ratio) < 1.0)
      return {sum.value() + next, j + 2, false};
    term = next;
  }
  return {sum.value(), j, true};
}

// z = 1: tail of sum_j t_j behaves like N^{-s}(c0 + c1/N + ...), with
// s = sum(lower) - sum(upper). Partial sums at N0 * 2^i are Richardson
// extrapolated in the exponents s, s+1, ... .
SeriesResult unit_argument_series(const SeriesState& st, double excess, std::size_t cap) {
  constexpr std::size_t kFirstCheckpoint = 512;
  std::vector<double> partial;
  Neumaier sum;
  double term = 1.0;
  std::size_t next_checkpoint = kFirstCheckpoint;
  for (std::size_t j = 0; j < cap; ++j) {
    sum.add(term);
    const double ratio = term_ratio(st, j);
    const double next = term * ratio;
    if (next == 0.0) return {sum.value(), j + 1, false};
    if (std::fabs(next) < 1e-17 * std::fabs(sum.value()) && std::fabs(ratio) < 1.0)
      return {sum.value() + next, j + 2, false};
    term = next;
    if (j + 1 == next_checkpoint) {
      partial.push_back(sum.value());
      next_checkpoint *= 2;
    }
  }
  if (partial.size() < 3) return {sum.value(), cap, true};

  // Neville-style elimination, column e removes the N^{-(excess+e)} term.
  std::vector<double> row = partial;
  double previous_best = row.back();
  double best = row.back();
  double change = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; row.size() > 1; ++e) {
    const double factor = std::pow(2.0, excess + static_cast<double>(e));
    std::vector<double> next_row;
    for (std::size_t i = 0; i + 1 < row.size(); ++i)
      next_row.push_back((factor * row[i + 1] - row[i]) / (factor - 1.0));
    row = std::move(next_row);
    previous_best = best;
    best = row.back();
    const double c = std::fabs(best - previous_best);
    if (c > change && e > 2) {
      best = previous_best;  // rounding now dominates
      break;
    }
    change = c;
  }
  const bool settled = change <= 1e-13 * std::fabs(best);
  return {best, cap, !settled};
}

// z = -1: iterated averaging of consecutive partial sums (Euler transform
// of the alternating tail).
SeriesResult minus_one_series(const SeriesState& st, std::size_t cap) {
  constexpr std::size_t kHead = 400;
  constexpr std::size_t kRounds = 60;
  std::vector<double> partial;
  Neumaier sum;
  double term = 1.0;
  for (std::size_t j = 0; j < std::min(cap, kHead + kRounds + 1); ++j) {
    sum.add(term);
    if (j >= kHead) partial.push_back(sum.value());
    const double ratio = term_ratio(st, j);
    const double next = term * ratio;
    if (next == 0.0 || (std::fabs(next) < 1e-17 * std::fabs(sum.value()) && std::fabs(ratio) < 1.0))
      return {sum.value() + next, j + 2, false};
    term = next;
  }
  if (partial.size() < 2) return {sum.value(), cap, true};
  double previous = partial.back();
  while (partial.size() > 1) {
    previous = partial.back();
    for (std::size_t i = 0; i + 1 < partial.size(); ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    partial.pop_back();
  }
  const double value = partial.front();
  const bool settled = std::fabs(value - previous) <= 1e-13 * std::fabs(value);
  return {value, kHead + kRounds + 1, !settled};
}

}  // namespace

SeriesResult gauss_2f1_series(double a, double b, double c, double z) {
  if (!(std::fabs(z) < 1.0)) throw DomainError("gauss_2f1: requires |z| < 1");
  if (is_nonpositive_integer(c)) throw PoleError("gauss_2f1: c is a nonpositive integer");
  const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (z < 0.0 && !terminating) {
    // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)); pick the branch
    // that terminates when possible.
    const double w = z / (z - 1.0);
    const bool swap = !is_nonpositive_integer(c - b) && is_nonpositive_integer(c - a);
    const double keep = swap ? b : a;
    const double other = swap ? c - a : c - b;
    const std::array<double, 2> upper{keep, other};
    const std::array<double, 1> lower{c};
    SeriesResult r = direct_series({upper, lower, w}, kSeriesTermCap);
    r.value *= std::pow(1.0 - z, -keep);
    return r;
  }
  const std::array<double, 2> upper{a, b};
  const std::array<double, 1> lower{c};
  return direct_series({upper, lower, z}, kSeriesTermCap);
}

double gauss_2f1(double a, double b, double c, double z) {
  return gauss_2f1_series(a, b, c, z).value;
}

SeriesResult hyp_3f2(double a1, double a2, double a3, double b1, double b2, double z) {
  if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2))
    throw PoleError("hyp_3f2: lower parameter is a nonpositive integer");
  const std::array<double, 3> upper{a1, a2, a3};
  const std::array<double, 2> lower{b1, b2};
  const SeriesState st{upper, lower, z};
  const bool terminating = is_nonpositive_integer(a1) || is_nonpositive_integer(a2) ||
                           is_nonpositive_integer(a3);
  if (terminating || std::fabs(z) < 1.0) return direct_series(st, kSeriesTermCap);

  const double excess = b1 + b2 - a1 - a2 - a3;
  if (z == 1.0) {
    if (!(excess > 0.0)) throw PoleError("hyp_3f2: divergent at z = 1 (needs sum(b) - sum(a) > 0)");
    return unit_argument_series(st, excess, kSeriesTermCap);
  }
  if (z == -1.0) {
    if (!(excess > -1.0)) throw PoleError("hyp_3f2: divergent at z = -1 (needs sum(b) - sum(a) > -1)");
    return minus_one_series(st, kSeriesTermCap);
  }
  throw DomainError("hyp_3f2: requires |z| < 1 or z = +-1");
}

}  // namespace besselsym::specfun
