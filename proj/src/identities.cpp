#include "besselsym/identities.hpp"

#include "besselsym/errors.hpp"
#include "besselsym/specfun.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <thread>

namespace besselsym {

using exact::BigInt;
using exact::BigRational;

namespace {

struct IdentityInfo {
  IdentityId id;
  std::string_view name;
  ParamKinds params;
};

// m n z x s a b lambda
constexpr std::array<IdentityInfo, 20> kIdentities = {{
    {IdentityId::eq1, "eq1", {false, false, true}},
    {IdentityId::theorem1, "theorem1", {true, true, true}},
    {IdentityId::eq5, "eq5", {false, true, true}},
    {IdentityId::theorem2_j, "theorem2_j", {true, true, false, true}},
    {IdentityId::theorem2_y, "theorem2_y", {true, true, false, true}},
    {IdentityId::corollary, "corollary", {false, true, false, true, false, true, true}},
    {IdentityId::eq11, "eq11", {false, true, false, false, true}},
    {IdentityId::eq14, "eq14", {false, true, false, true}},
    {IdentityId::lemma2_symmetry, "lemma2_symmetry", {true, true, true}},
    {IdentityId::lemma2_series, "lemma2_series", {true, true, true}},
    {IdentityId::eq16, "eq16", {true, true, true, true, false, false, false, true}},
    {IdentityId::eq17, "eq17", {false, true, true, true, false, false, false, true}},
    {IdentityId::eq20, "eq20", {true, true, true, false, false, true, true}},
    {IdentityId::eq21, "eq21", {false, true, false, false, false, true, true}},
    {IdentityId::eq24, "eq24", {true, true, true}},
    {IdentityId::eq24_half, "eq24_half", {true, true, true}},
    {IdentityId::lemma1, "lemma1", {false, true}},
    {IdentityId::eq18, "eq18", {true, true, false, false, false, true}},
    {IdentityId::eq19, "eq19", {true, true}},
    {IdentityId::eq22, "eq22", {true, true}},
}};

constexpr std::array<IdentityId, 20> kAllIds = [] {
  std::array<IdentityId, 20> ids{};
  for (std::size_t i = 0; i < kIdentities.size(); ++i) ids[i] = kIdentities[i].id;
  return ids;
}();

const IdentityInfo& info(IdentityId id) {
  for (const auto& i : kIdentities)
    if (i.id == id) return i;
  throw std::logic_error("unknown identity id");
}

std::string format_note(const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.6g", key, v);
  return buf;
}

ScaledReal to_scaled(const BigRational& r) {
  using boost::multiprecision::cpp_bin_float_50;
  if (r == 0) return ScaledReal{};
  cpp_bin_float_50 v(boost::multiprecision::numerator(r));
  v /= cpp_bin_float_50(boost::multiprecision::denominator(r));
  int e = 0;
  const cpp_bin_float_50 mant = boost::multiprecision::frexp(v, &e);
  return ScaledReal::from_parts(mant.convert_to<double>(), e);
}

ScaledReal to_scaled(const BigInt& i) { return to_scaled(BigRational(i)); }

// Integer power of a positive real, in scaled form.
ScaledReal power(double base, long k) { return ScaledReal(base).pow(k); }

double parity(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

SumSide side_from(const ScaledSum& sum, bool warning = false) {
  return {sum.value(), sum.abs_sum(), sum.terms(), sum.max_logmag(), warning};
}

SumSide single(const ScaledReal& v, bool warning = false) {
  ScaledSum s;
  s.add(v);
  return side_from(s, warning);
}

IdentityInstance instance(IdentityId id) {
  IdentityInstance inst;
  inst.id = id;
  return inst;
}

Residual exact_residual(const IdentityInstance& inst, const BigRational& lhs, const BigRational& rhs) {
  Residual r;
  r.params = inst;
  r.lhs = exact::to_double(lhs);
  r.rhs = exact::to_double(rhs);
  const BigRational diff = abs(lhs - rhs);
  r.abs_err = exact::to_double(diff);
  const BigRational scale = std::max(abs(lhs), abs(rhs));
  r.rel_err = scale == 0 ? 0.0 : exact::to_double(diff / scale);
  r.cond = 1.0;
  r.pass = lhs == rhs;
  r.notes.push_back("exact");
  return r;
}

// One cylinder function family evaluated at integer orders, with reflection.
class CylinderFamily {
 public:
  CylinderFamily(CylinderKind kind, int max_order, double x) {
    if (kind == CylinderKind::j) {
      values_ = specfun::bessel_j_family_scaled(max_order, x);
    } else {
      for (double v : specfun::bessel_y_family(max_order, x)) values_.emplace_back(v);
    }
  }
  ScaledReal at(long order) const {
    const long a = order < 0 ? -order : order;
    const ScaledReal v = values_[static_cast<std::size_t>(a)];
    return (order < 0 && a % 2 == 1) ? -v : v;
  }

 private:
  std::vector<ScaledReal> values_;
};

}  // namespace

std::string_view to_string(IdentityId id) { return info(id).name; }

std::optional<IdentityId> identity_from_string(std::string_view name) {
  for (const auto& i : kIdentities)
    if (i.name == name) return i.id;
  return std::nullopt;
}

std::span<const IdentityId> all_identities() { return kAllIds; }

bool is_exact(IdentityId id) {
  return id == IdentityId::lemma1 || id == IdentityId::eq18 || id == IdentityId::eq19 ||
         id == IdentityId::eq22;
}

ParamKinds required_params(IdentityId id) { return info(id).params; }

double default_tolerance(IdentityId id) {
  return (id == IdentityId::eq24 || id == IdentityId::eq24_half) ? kQuadratureTol : kDefaultTol;
}

Residual make_residual(const IdentityInstance& inst, const SumSide& lhs, const SumSide& rhs,
                       double tol_rel) {
  Residual r;
  r.params = inst;
  r.lhs = lhs.value.to_double();
  r.rhs = rhs.value.to_double();
  const ScaledReal diff = (lhs.value - rhs.value).abs();
  r.abs_err = diff.to_double();
  const ScaledReal l = lhs.value.abs(), rr = rhs.value.abs();
  const ScaledReal scale = l.exponent() > rr.exponent() || (l.exponent() == rr.exponent() && l.mantissa() > rr.mantissa()) ? l : rr;
  if (scale.is_zero()) {
    r.rel_err = diff.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
    r.cond = (lhs.abs_sum.is_zero() && rhs.abs_sum.is_zero()) ? 1.0 : std::numeric_limits<double>::infinity();
  } else {
    r.rel_err = (diff / scale).to_double();
    r.cond = std::max((lhs.abs_sum / scale).to_double(), (rhs.abs_sum / scale).to_double());
  }
  r.pass = r.rel_err <= tol_rel * std::max(1.0, r.cond);
  r.warning = lhs.warning || rhs.warning;
  r.notes.push_back("terms=" + std::to_string(lhs.terms) + "+" + std::to_string(rhs.terms));
  r.notes.push_back(format_note("max_log_term", std::max(lhs.max_logmag, rhs.max_logmag)));
  if (r.warning) r.notes.push_back("accuracy: evaluator reported cap hit or loose error estimate");
  return r;
}

// --- K sums ----------------------------------------------------------------

SumSide theorem1_side(long m, long n, double z) {
  if (m < 0 || n < 0) throw DomainError("theorem1: m, n must be nonnegative");
  const int max_order = static_cast<int>(std::max(m + 1, n - m - 1));
  const auto k_family = specfun::bessel_k_family(max_order, z);
  const BigInt np1_fact = exact::factorial(n + 1);
  ScaledSum sum;
  for (long k = 0; k <= n; ++k) {
    const BigRational coeff(np1_fact * exact::binomial(m + k + 1, m), exact::factorial(k));
    const long order = std::labs(k - m - 1);
    sum.add(to_scaled(coeff) * k_family[static_cast<std::size_t>(order)] * power(0.5 * z, k + m));
  }
  return side_from(sum);
}

ScaledReal sum_theorem1(long m, long n, double z) { return theorem1_side(m, n, z).value; }

Residual residual_eq1(double z, double tol_rel) {
  const auto k = specfun::bessel_k_family(2, z);
  ScaledSum lhs;
  lhs.add(k[0]);
  lhs.add(ScaledReal(2.0 / z) * k[1]);
  auto inst = instance(IdentityId::eq1);
  inst.z = z;
  return make_residual(inst, side_from(lhs), single(k[2]), tol_rel);
}

Residual residual_theorem1(long m, long n, double z, double tol_rel) {
  auto inst = instance(IdentityId::theorem1);
  inst.m = m;
  inst.n = n;
  inst.z = z;
  return make_residual(inst, theorem1_side(m, n, z), theorem1_side(n, m, z), tol_rel);
}

Residual residual_eq5(long n, double z, double tol_rel) {
  if (n < 0) throw DomainError("eq5: n must be nonnegative");
  const auto k_family = specfun::bessel_k_family(static_cast<int>(n + 1), z);
  ScaledSum lhs;
  for (long k = 0; k <= n; ++k) {
    const long order = std::labs(k - 1);
    lhs.add(k_family[order] * power(0.5 * z, k) / to_scaled(exact::factorial(k)));
  }
  const ScaledReal rhs = k_family[n + 1] * power(0.5 * z, n) / to_scaled(exact::factorial(n));
  auto inst = instance(IdentityId::eq5);
  inst.n = n;
  inst.z = z;
  return make_residual(inst, side_from(lhs), single(rhs), tol_rel);
}

Residual residual_eq14(long n, double x, double tol_rel) {
  if (n < 0) throw DomainError("eq14: n must be nonnegative");
  const auto k_family = specfun::bessel_k_family(static_cast<int>(2 * n), x);
  const BigInt n_fact = exact::factorial(n);
  const ScaledReal scale = power(0.5 * x, n);
  ScaledSum rhs;
  for (long k = 0; k <= n; ++k) {
    const long weight = k == 0 ? 1 : 2;
    const BigRational coeff(n_fact * weight, exact::factorial(n - k) * exact::factorial(n + k));
    const ScaledReal term = to_scaled(coeff) * k_family[2 * k] * scale;
    rhs.add(parity(k + n) > 0 ? term : -term);
  }
  auto inst = instance(IdentityId::eq14);
  inst.n = n;
  inst.x = x;
  return make_residual(inst, single(k_family[n]), side_from(rhs), tol_rel);
}

// --- J / Y sums ------------------------------------------------------------

SumSide theorem2_side(CylinderKind kind, long m, long n, double x) {
  if (m < 0 || n < 0) throw DomainError("theorem2: m, n must be nonnegative");
  const int max_order = static_cast<int>(std::max(m + 1, n - m - 1));
  const CylinderFamily family(kind, max_order, x);
  const BigInt np1_fact = exact::factorial(n + 1);
  ScaledSum sum;
  for (long k = 0; k <= n; ++k) {
    const BigRational coeff(np1_fact * exact::binomial(m + k + 1, m), exact::factorial(k));
    const ScaledReal term = to_scaled(coeff) * family.at(k - m - 1) * power(0.5 * x, k + m);
    sum.add(parity(m) > 0 ? term : -term);
  }
  return side_from(sum);
}

namespace {

Residual theorem2(IdentityId id, CylinderKind kind, long m, long n, double x, double tol_rel) {
  auto inst = instance(id);
  inst.m = m;
  inst.n = n;
  inst.x = x;
  return make_residual(inst, theorem2_side(kind, m, n, x), theorem2_side(kind, n, m, x), tol_rel);
}

}  // namespace

Residual residual_theorem2_j(long m, long n, double x, double tol_rel) {
  return theorem2(IdentityId::theorem2_j, CylinderKind::j, m, n, x, tol_rel);
}

Residual residual_theorem2_y(long m, long n, double x, double tol_rel) {
  return theorem2(IdentityId::theorem2_y, CylinderKind::y, m, n, x, tol_rel);
}

Residual residual_corollary(double a, double b, long n, double x, double tol_rel) {
  if (n < 0) throw DomainError("corollary: n must be nonnegative");
  const int max_order = static_cast<int>(n + 1);
  const CylinderFamily j(CylinderKind::j, max_order, x);
  const CylinderFamily y(CylinderKind::y, max_order, x);
  auto c = [&](long order) { return ScaledReal(a) * j.at(order) + ScaledReal(b) * y.at(order); };
  ScaledSum lhs;
  for (long k = 0; k <= n; ++k) lhs.add(c(k - 1) * power(0.5 * x, k) / to_scaled(exact::factorial(k)));
  const ScaledReal rhs = -(c(n + 1) * power(0.5 * x, n) / to_scaled(exact::factorial(n)));
  auto inst = instance(IdentityId::corollary);
  inst.a = a;
  inst.b = b;
  inst.n = n;
  inst.x = x;
  return make_residual(inst, side_from(lhs), single(rhs), tol_rel);
}

// --- Gamma sums ------------------------------------------------------------

Residual residual_eq11(double s, long n, double tol_rel) {
  if (n < 0) throw DomainError("eq11: n must be nonnegative");
  const double h = 0.5 * (s + static_cast<double>(n));
  auto gamma_at = [](double arg, const std::string& where) {
    if (arg <= 0.0 && arg == std::floor(arg)) throw PoleError("eq11: Gamma pole at " + where);
    return specfun::gamma_scaled(arg);
  };
  ScaledSum lhs;
  for (long k = 0; k <= n; ++k) {
    const std::string where = "k=" + std::to_string(k);
    const ScaledReal g = gamma_at(h - k, where) * gamma_at(h + k, where);
    const double weight = (k == 0 ? 1.0 : 2.0) * parity(k);
    lhs.add(ScaledReal(weight) * g / to_scaled(exact::factorial(n - k) * exact::factorial(n + k)));
  }
  const ScaledReal rhs = ScaledReal(parity(n)) * gamma_at(h, "rhs") *
                         gamma_at(0.5 * (s - static_cast<double>(n)), "rhs") /
                         to_scaled(exact::factorial(n));
  auto inst = instance(IdentityId::eq11);
  inst.s = s;
  inst.n = n;
  return make_residual(inst, side_from(lhs), single(rhs), tol_rel);
}

// --- Hypergeometric sums ---------------------------------------------------

namespace {

SumSide lemma2_finite_side(long p, long q, double z) {
  if (p < 0 || q < 0) throw DomainError("lemma2: p, q must be nonnegative");
  ScaledSum sum;
  bool warning = false;
  for (long k = 0; k <= p; ++k) {
    const auto f = specfun::gauss_2f1_series(static_cast<double>(k + 1), static_cast<double>(q + 2), 1.0, z);
    warning = warning || f.cap_hit;
    sum.add(to_scaled(exact::binomial(q + k + 1, q)) * ScaledReal(f.value));
  }
  return side_from(sum, warning);
}

SumSide lemma2_series_side(long p, long q, double z, long nmax) {
  if (nmax < 0) throw DomainError("lemma2: nmax must be nonnegative");
  ScaledSum sum;
  ScaledReal zpow(1.0);
  for (long n = 0; n <= nmax; ++n) {
    sum.add(to_scaled(exact::g_series_coeff(n, p, q)) * zpow);
    zpow *= ScaledReal(z);
  }
  // Flag if the first omitted term is not negligible.
  const ScaledReal next = to_scaled(exact::g_series_coeff(nmax + 1, p, q)) * zpow;
  const ScaledReal total = sum.value();
  const bool truncated = !total.is_zero() && (next.abs() / total.abs()).to_double() > 1e-12;
  return side_from(sum, truncated);
}

void check_3f2_lower(double lower, const char* what) {
  if (lower <= 0.0 && lower == std::floor(lower))
    throw PoleError(std::string(what) + ": lower parameter is a nonpositive integer");
}

// sum_{k=0}^n C(m+k+1, m) 3F2(k+1, m+2, u; 1, v; z)
SumSide hyp_symmetric_side(long m, long n, double u, double v, double z) {
  if (m < 0 || n < 0) throw DomainError("3F2 sum: m, n must be nonnegative");
  check_3f2_lower(v, "3F2 sum");
  ScaledSum sum;
  bool warning = false;
  for (long k = 0; k <= n; ++k) {
    const auto f = specfun::hyp_3f2(static_cast<double>(k + 1), static_cast<double>(m + 2), u, 1.0, v, z);
    warning = warning || f.cap_hit;
    sum.add(to_scaled(exact::binomial(m + k + 1, m)) * ScaledReal(f.value));
  }
  return side_from(sum, warning);
}

}  // namespace

double g_lemma2_finite(long p, long q, double z) { return lemma2_finite_side(p, q, z).value.to_double(); }

double g_lemma2_series(long p, long q, double z, long nmax) {
  return lemma2_series_side(p, q, z, nmax).value.to_double();
}

Residual residual_lemma2_symmetry(long p, long q, double z, double tol_rel) {
  auto inst = instance(IdentityId::lemma2_symmetry);
  inst.m = p;
  inst.n = q;
  inst.z = z;
  return make_residual(inst, lemma2_finite_side(p, q, z), lemma2_finite_side(q, p, z), tol_rel);
}

Residual residual_lemma2_series(long p, long q, double z, long nmax, double tol_rel) {
  if (!(std::fabs(z) < 1.0)) throw DomainError("lemma2: requires |z| < 1");
  auto inst = instance(IdentityId::lemma2_series);
  inst.m = p;
  inst.n = q;
  inst.z = z;
  Residual r = make_residual(inst, lemma2_finite_side(p, q, z), lemma2_series_side(p, q, z, nmax), tol_rel);
  r.notes.push_back("nmax=" + std::to_string(nmax));
  return r;
}

Residual residual_eq16(long m, long n, double x, double lambda, double z, double tol_rel) {
  auto inst = instance(IdentityId::eq16);
  inst.m = m;
  inst.n = n;
  inst.x = x;
  inst.lambda = lambda;
  inst.z = z;
  return make_residual(inst, hyp_symmetric_side(m, n, x, x + lambda, z),
                       hyp_symmetric_side(n, m, x, x + lambda, z), tol_rel);
}

Residual residual_eq17(long n, double x, double lambda, double z, double tol_rel) {
  const SumSide lhs = hyp_symmetric_side(0, n, x, x + lambda, z);
  const auto f = specfun::gauss_2f1_series(static_cast<double>(n + 2), x, x + lambda, z);
  auto inst = instance(IdentityId::eq17);
  inst.n = n;
  inst.x = x;
  inst.lambda = lambda;
  inst.z = z;
  return make_residual(inst, lhs, single(ScaledReal(static_cast<double>(n + 1) * f.value), f.cap_hit),
                       tol_rel);
}

Residual residual_eq20(long m, long n, double a, double b, double z, double tol_rel) {
  auto inst = instance(IdentityId::eq20);
  inst.m = m;
  inst.n = n;
  inst.a = a;
  inst.b = b;
  inst.z = z;
  return make_residual(inst, hyp_symmetric_side(m, n, a, a + b, z), hyp_symmetric_side(n, m, a, a + b, z),
                       tol_rel);
}

Residual residual_eq21(long n, double a, double b, double tol_rel) {
  if (n < 0) throw DomainError("eq21: n must be nonnegative");
  if (!(b > static_cast<double>(n) + 2.0))
    throw PoleError("eq21: unit-argument 3F2 diverges unless b > n + 2");
  const SumSide lhs = hyp_symmetric_side(0, n, a, a + b, 1.0);
  const double nd = static_cast<double>(n);
  const double lower = a + b - nd - 2.0;
  ScaledReal rhs;  // 1/Gamma(lower) vanishes at poles
  if (!(lower <= 0.0 && lower == std::floor(lower))) {
    rhs = ScaledReal(nd + 1.0) * specfun::gamma_scaled(b - nd - 2.0) * specfun::gamma_scaled(a + b) /
          (specfun::gamma_scaled(lower) * specfun::gamma_scaled(b));
  }
  auto inst = instance(IdentityId::eq21);
  inst.n = n;
  inst.a = a;
  inst.b = b;
  return make_residual(inst, lhs, single(rhs), tol_rel);
}

// --- Whittaker sums --------------------------------------------------------

namespace {

// sum_{k=0}^n C(m+k+1, m) z^{(k+m)/2} W_{kappa(k,m), mu(k,m)}(z)
template <class Kappa, class Mu>
SumSide whittaker_side(long m, long n, double z, Kappa kappa, Mu mu) {
  if (m < 0 || n < 0) throw DomainError("eq24: m, n must be nonnegative");
  if (!(z > 0.0)) throw DomainError("eq24: z must be positive");
  ScaledSum sum;
  bool warning = false;
  for (long k = 0; k <= n; ++k) {
    const auto w = specfun::whittaker_w(kappa(k, m), mu(k, m), z);
    warning = warning || w.cap_hit;
    const ScaledReal zpow = ScaledReal::from_log(1, 0.5 * static_cast<double>(k + m) * std::log(z));
    sum.add(to_scaled(exact::binomial(m + k + 1, m)) * zpow * w.value);
  }
  return side_from(sum, warning);
}

Residual whittaker_residual(IdentityId id, long m, long n, double z, double tol_rel, bool halved) {
  const auto kappa = [halved](long k, long m) {
    const double v = -static_cast<double>(k + m + 2);
    return halved ? 0.5 * v : v;
  };
  const auto mu = [halved](long k, long m) {
    const double v = static_cast<double>(k - m - 1);
    return halved ? 0.5 * v : v;
  };
  auto inst = instance(id);
  inst.m = m;
  inst.n = n;
  inst.z = z;
  return make_residual(inst, whittaker_side(m, n, z, kappa, mu), whittaker_side(n, m, z, kappa, mu), tol_rel);
}

}  // namespace

Residual residual_eq24(long m, long n, double z, double tol_rel) {
  return whittaker_residual(IdentityId::eq24, m, n, z, tol_rel, false);
}

Residual residual_eq24_half(long m, long n, double z, double tol_rel) {
  return whittaker_residual(IdentityId::eq24_half, m, n, z, tol_rel, true);
}

// --- Exact identities ------------------------------------------------------

Residual residual_lemma1(long n) {
  if (n < 1) throw PreconditionError("lemma1: n must be >= 1");
  const long extent = n + 1;
  const exact::PolySample sample(n, extent, extent);
  // Defect = largest asymmetry plus largest order-n difference; zero iff the
  // lattice certifies the claim.
  BigRational defect = 0;
  for (long p = 0; p <= extent; ++p)
    for (long q = 0; q <= extent; ++q) defect = std::max(defect, BigRational(abs(sample.at(p, q) - sample.at(q, p))));
  for (long q = 0; q <= extent; ++q) {
    for (long p = 0; p + n <= extent; ++p) {
      BigRational diff = 0;
      for (long j = 0; j <= n; ++j) {
        const BigRational w(exact::binomial(n, j) * ((n - j) % 2 == 0 ? 1 : -1));
        diff += w * sample.at(p + j, q);
      }
      defect = std::max(defect, BigRational(abs(diff)));
    }
  }
  auto inst = instance(IdentityId::lemma1);
  inst.n = n;
  Residual r = exact_residual(inst, defect, BigRational(0));
  r.notes.push_back("grid=" + std::to_string(extent + 1) + "x" + std::to_string(extent + 1));
  return r;
}

Residual residual_eq18(long m, long n, const BigRational& a) {
  const auto [lhs, rhs] = exact::eq18_sides(m, n, a);
  auto inst = instance(IdentityId::eq18);
  inst.m = m;
  inst.n = n;
  inst.a = exact::to_double(a);
  inst.a_exact = a;
  Residual r = exact_residual(inst, lhs, rhs);
  r.notes.push_back("a=" + a.str());
  return r;
}

Residual residual_eq19(long m, long n) {
  const auto [lhs, rhs] = exact::eq19_sides(m, n);
  auto inst = instance(IdentityId::eq19);
  inst.m = m;
  inst.n = n;
  return exact_residual(inst, BigRational(lhs), BigRational(rhs));
}

Residual residual_eq22(long n, long p) {
  const auto [lhs, rhs] = exact::eq22_sides(n, p);
  auto inst = instance(IdentityId::eq22);
  inst.m = p;
  inst.n = n;
  return exact_residual(inst, lhs, rhs);
}

// --- Dispatch --------------------------------------------------------------

Residual evaluate(const IdentityInstance& inst, std::optional<double> tol_override) {
  const ParamKinds need = required_params(inst.id);
  auto missing = [&](bool needed, bool present, const char* name) {
    if (needed && !present)
      throw PreconditionError(std::string(to_string(inst.id)) + " requires parameter " + name);
  };
  missing(need.m, inst.m.has_value(), "m");
  missing(need.n, inst.n.has_value(), "n");
  missing(need.z, inst.z.has_value(), "z");
  missing(need.x, inst.x.has_value(), "x");
  missing(need.s, inst.s.has_value(), "s");
  missing(need.a, inst.a.has_value() || inst.a_exact.has_value(), "a");
  missing(need.b, inst.b.has_value(), "b");
  missing(need.lambda, inst.lambda.has_value(), "lambda");

  const double tol = tol_override.value_or(default_tolerance(inst.id));
  const long m = inst.m.value_or(0), n = inst.n.value_or(0);
  const double z = inst.z.value_or(0.0), x = inst.x.value_or(0.0), s = inst.s.value_or(0.0);
  const double a = inst.a.value_or(0.0), b = inst.b.value_or(0.0), lambda = inst.lambda.value_or(0.0);

  switch (inst.id) {
    case IdentityId::eq1: return residual_eq1(z, tol);
    case IdentityId::theorem1: return residual_theorem1(m, n, z, tol);
    case IdentityId::eq5: return residual_eq5(n, z, tol);
    case IdentityId::theorem2_j: return residual_theorem2_j(m, n, x, tol);
    case IdentityId::theorem2_y: return residual_theorem2_y(m, n, x, tol);
    case IdentityId::corollary: return residual_corollary(a, b, n, x, tol);
    case IdentityId::eq11: return residual_eq11(s, n, tol);
    case IdentityId::eq14: return residual_eq14(n, x, tol);
    case IdentityId::lemma2_symmetry: return residual_lemma2_symmetry(m, n, z, tol);
    case IdentityId::lemma2_series: return residual_lemma2_series(m, n, z, 80, tol);
    case IdentityId::eq16: return residual_eq16(m, n, x, lambda, z, tol);
    case IdentityId::eq17: return residual_eq17(n, x, lambda, z, tol);
    case IdentityId::eq20: return residual_eq20(m, n, a, b, z, tol);
    case IdentityId::eq21: return residual_eq21(n, a, b, tol);
    case IdentityId::eq24: return residual_eq24(m, n, z, tol);
    case IdentityId::eq24_half: return residual_eq24_half(m, n, z, tol);
    case IdentityId::lemma1: return residual_lemma1(n);
    case IdentityId::eq18:
      return residual_eq18(m, n, inst.a_exact ? *inst.a_exact : exact::rational_from_double(a));
    case IdentityId::eq19: return residual_eq19(m, n);
    case IdentityId::eq22: return residual_eq22(n, m);
  }
  throw std::logic_error("unhandled identity");
}

Residual evaluate_or_skip(const IdentityInstance& inst, std::optional<double> tol_override) {
  try {
    return evaluate(inst, tol_override);
  } catch (const DomainError& e) {
    Residual r;
    r.params = inst;
    r.skipped = true;
    r.notes.push_back(std::string("skipped: ") + e.what());
    return r;
  } catch (const PreconditionError& e) {
    Residual r;
    r.params = inst;
    r.skipped = true;
    r.notes.push_back(std::string("skipped: ") + e.what());
    return r;
  }
}

std::vector<Residual> evaluate_batch(std::span<const IdentityInstance> instances,
                                     std::optional<double> tol_override, unsigned jobs) {
  std::vector<Residual> out(instances.size());
  const std::size_t count = instances.size();
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, count));
  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out[i] = evaluate_or_skip(instances[i], tol_override);
  };
  if (workers == 1) {
    run_range(0, count);
    return out;
  }
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back(run_range, lo, hi);
  }
  threads.clear();  // joins
  return out;
}

}  // namespace besselsym
