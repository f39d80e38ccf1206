#pragma once

// One evaluator per finite-sum identity. Each returns a Residual comparing
// the two sides, with a condition number that scales the pass tolerance:
//   pass <=> rel_err <= tol_rel * max(1, cond).

#include "besselsym/exact.hpp"
#include "besselsym/scaled_real.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace besselsym {

enum class IdentityId {
  eq1,              // K_0 + (2/z) K_1 = K_2
  theorem1,         // K symmetric sum
  eq5,              // m = 0 closed form of theorem1
  theorem2_j,       // J symmetric sum with (-1)^m prefactor
  theorem2_y,       // Y symmetric sum with (-1)^m prefactor
  corollary,        // C = aJ + bY single sum vs closed form
  eq11,             // weighted Gamma sum
  eq14,             // K_n as a sum of even-order K
  lemma2_symmetry,  // G(p,q,z) finite form, p <-> q
  lemma2_series,    // G(p,q,z) finite form vs exact-coefficient power series
  eq16,             // 3F2(k+1, m+2, x; 1, x+lambda; z) symmetric sum
  eq17,             // m = 0 case of eq16 with 2F1 closed form
  eq20,             // 3F2(k+1, m+2, a; 1, a+b; z) symmetric sum
  eq21,             // unit-argument 3F2 sum with Gamma closed form
  eq24,             // Whittaker W_{-k-m-2, k-m-1} symmetric sum (indices as listed)
  eq24_half,        // Whittaker W_{-(k+m+2)/2, (k-m-1)/2} symmetric sum
  lemma1,           // exact: P(p,q) symmetric polynomial of degree n-1
  eq18,             // exact: Pochhammer-reduced Gamma-ratio sum
  eq19,             // exact: binomial sum symmetry
  eq22,             // exact: factorial sum closed form
};

std::string_view to_string(IdentityId id);
std::optional<IdentityId> identity_from_string(std::string_view name);
std::span<const IdentityId> all_identities();
bool is_exact(IdentityId id);

// Parameters an identity consumes; see README for the symbol mapping.
struct ParamKinds {
  bool m = false, n = false, z = false, x = false, s = false, a = false, b = false, lambda = false;
};
ParamKinds required_params(IdentityId id);

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kQuadratureTol = 1e-6;
double default_tolerance(IdentityId id);

struct IdentityInstance {
  IdentityId id = IdentityId::theorem1;
  std::optional<long> m, n;
  std::optional<double> z, x, s, a, b, lambda;
  // Exact value of `a` for eq18 (e.g. 7/3); falls back to the double.
  std::optional<exact::BigRational> a_exact;
};

struct Residual {
  IdentityInstance params;
  double lhs = 0.0, rhs = 0.0;
  double abs_err = 0.0, rel_err = 0.0, cond = 1.0;
  bool pass = false;
  bool skipped = false;  // domain/pole instance, not evaluated
  bool warning = false;  // accuracy flag raised by an evaluator
  std::vector<std::string> notes;
};

// One side of an identity: its value plus conditioning diagnostics.
struct SumSide {
  ScaledReal value;
  ScaledReal abs_sum;
  std::size_t terms = 0;
  double max_logmag = 0.0;
  bool warning = false;
};

Residual make_residual(const IdentityInstance& inst, const SumSide& lhs, const SumSide& rhs,
                       double tol_rel);

// --- K sums -------------------------------------------------------------

// (n+1)! sum_{k=0}^n (1/k!) C(m+k+1, m) K_{k-m-1}(z) (z/2)^{k+m}
ScaledReal sum_theorem1(long m, long n, double z);
SumSide theorem1_side(long m, long n, double z);
Residual residual_eq1(double z, double tol_rel = kDefaultTol);
Residual residual_theorem1(long m, long n, double z, double tol_rel = kDefaultTol);
Residual residual_eq5(long n, double z, double tol_rel = kDefaultTol);
Residual residual_eq14(long n, double x, double tol_rel = kDefaultTol);

// --- J / Y sums ---------------------------------------------------------

enum class CylinderKind { j, y };

// (-1)^m (n+1)! sum_{k=0}^n (1/k!) C(m+k+1, m) C_{k-m-1}(x) (x/2)^{k+m}
SumSide theorem2_side(CylinderKind kind, long m, long n, double x);
Residual residual_theorem2_j(long m, long n, double x, double tol_rel = kDefaultTol);
Residual residual_theorem2_y(long m, long n, double x, double tol_rel = kDefaultTol);

// sum_{k=0}^n (1/k!) C_{k-1}(x)(x/2)^k  vs  -(1/n!) C_{n+1}(x)(x/2)^n, C = aJ + bY
Residual residual_corollary(double a, double b, long n, double x, double tol_rel = kDefaultTol);

// --- Gamma sums ---------------------------------------------------------

// Throws PoleError naming the offending k when a Gamma argument is a pole.
Residual residual_eq11(double s, long n, double tol_rel = kDefaultTol);

// --- Hypergeometric sums ------------------------------------------------

// sum_{k=0}^p C(q+k+1, q) 2F1(k+1, q+2; 1; z)
double g_lemma2_finite(long p, long q, double z);
// sum_{n=0}^{nmax} F(n,p,q)/(n!)^2 z^n with exact coefficients
double g_lemma2_series(long p, long q, double z, long nmax);
Residual residual_lemma2_symmetry(long p, long q, double z, double tol_rel = kDefaultTol);
Residual residual_lemma2_series(long p, long q, double z, long nmax = 80,
                                double tol_rel = kDefaultTol);

Residual residual_eq16(long m, long n, double x, double lambda, double z,
                       double tol_rel = kDefaultTol);
Residual residual_eq17(long n, double x, double lambda, double z, double tol_rel = kDefaultTol);
Residual residual_eq20(long m, long n, double a, double b, double z, double tol_rel = kDefaultTol);
Residual residual_eq21(long n, double a, double b, double tol_rel = kDefaultTol);

// --- Whittaker sums -----------------------------------------------------

Residual residual_eq24(long m, long n, double z, double tol_rel = kQuadratureTol);
Residual residual_eq24_half(long m, long n, double z, double tol_rel = kQuadratureTol);

// --- Exact identities (tolerance ignored; pass iff sides are equal) ------

Residual residual_lemma1(long n);
Residual residual_eq18(long m, long n, const exact::BigRational& a);
Residual residual_eq19(long m, long n);
Residual residual_eq22(long n, long p);

// --- Dispatch -----------------------------------------------------------

// Evaluates one instance. Domain errors propagate (PoleError/DomainError).
Residual evaluate(const IdentityInstance& inst, std::optional<double> tol_override = std::nullopt);

// Like evaluate(), but converts domain errors into a skipped Residual.
Residual evaluate_or_skip(const IdentityInstance& inst,
                          std::optional<double> tol_override = std::nullopt);

// Evaluates every instance with `jobs` threads over static contiguous
// partitions. Output order equals input order regardless of `jobs`.
std::vector<Residual> evaluate_batch(std::span<const IdentityInstance> instances,
                                     std::optional<double> tol_override, unsigned jobs);

}  // namespace besselsym
