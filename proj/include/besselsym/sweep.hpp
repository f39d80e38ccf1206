#pragma once

// Parameter sweeps over identity grids and their JSON/CSV reports.

#include "besselsym/identities.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace besselsym::sweep {

// Invalid flags/config; the CLI maps this to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

// Inclusive integer range "lo..hi[..step]".
struct IntRange {
  long lo = 0, hi = 0, step = 1;
  std::vector<long> values() const;
  std::string str() const;
};
IntRange parse_int_range(const std::string& text);

// Real grid: explicit list "v1,v2,..." or linspace "lo:hi:count". The
// original tokens are kept so exact identities can read "7/3" exactly.
struct RealGrid {
  std::vector<double> values;
  std::vector<std::string> tokens;
};
RealGrid parse_real_grid(const std::string& text);

struct SweepConfig {
  std::vector<IdentityId> identities;
  std::optional<IntRange> m, n;
  std::optional<RealGrid> z, x, s, a, b, lambda;
  std::optional<double> tol;
  Format format = Format::json;
  std::string out;  // empty: standard output
  unsigned jobs = 1;
  bool timing = false;
};

// Raw key/value settings as typed on the command line or in a config file
// (keys without leading dashes: identity, m, n, z, x, s, a, b, lambda, tol,
// format, out, jobs, timing).
using Settings = std::map<std::string, std::string>;

Settings parse_config_text(const std::string& text);
Settings read_config_file(const std::string& path);

// Builds and validates a config. Precedence: `file` over `flags` over the
// BESSEL_SYM_TOL environment variable (tolerance only) over defaults.
SweepConfig make_config(const Settings& flags, const Settings& file = {},
                        std::optional<std::string> env_tol = std::nullopt);

void validate(const SweepConfig& config);

// Grid points in deterministic order: identity (as listed), then m, n, z,
// x, s, a, b, lambda ascending through the given grids.
std::vector<IdentityInstance> expand_grid(const SweepConfig& config);

struct Summary {
  std::size_t total = 0, passed = 0, failed = 0, skipped_poles = 0, warnings = 0;
};

struct SweepReport {
  SweepConfig config;
  std::vector<Residual> results;
  Summary summary;
  double duration_seconds = 0.0;
};

SweepReport run_sweep(const SweepConfig& config);

std::string emit_json(const SweepReport& report);
std::string emit_csv(const SweepReport& report);
std::string emit_report(const SweepReport& report, Format format);

// 0 when nothing failed, 1 otherwise.
int exit_code(const SweepReport& report);

}  // namespace besselsym::sweep
