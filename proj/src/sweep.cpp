#include "besselsym/sweep.hpp"

#include "besselsym/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace besselsym::sweep {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& text, const std::string& sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + sep.size();
  }
  return parts;
}

long parse_long(const std::string& raw, const std::string& what) {
  const std::string t = trim(raw);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw UsageError("invalid integer for " + what + ": '" + raw + "'");
  return v;
}

double parse_double(const std::string& raw, const std::string& what) {
  const std::string t = trim(raw);
  if (t.find('/') != std::string::npos) {
    try {
      return exact::to_double(exact::parse_rational(t));
    } catch (const std::exception&) {
      throw UsageError("invalid number for " + what + ": '" + raw + "'");
    }
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
    throw UsageError("invalid number for " + what + ": '" + raw + "'");
  return v;
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

bool parse_bool(const std::string& raw, const std::string& what) {
  const std::string t = trim(raw);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw UsageError("invalid boolean for " + what + ": '" + raw + "'");
}

}  // namespace

std::vector<long> IntRange::values() const {
  std::vector<long> out;
  for (long v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

std::string IntRange::str() const {
  std::string s = std::to_string(lo) + ".." + std::to_string(hi);
  if (step != 1) s += ".." + std::to_string(step);
  return s;
}

IntRange parse_int_range(const std::string& text) {
  const auto parts = split(trim(text), "..");
  IntRange r;
  if (parts.size() == 1) {
    r.lo = r.hi = parse_long(parts[0], "range");
  } else if (parts.size() == 2 || parts.size() == 3) {
    r.lo = parse_long(parts[0], "range start");
    r.hi = parse_long(parts[1], "range end");
    if (parts.size() == 3) r.step = parse_long(parts[2], "range step");
  } else {
    throw UsageError("invalid range '" + text + "' (expected a..b[..step])");
  }
  if (r.step <= 0) throw UsageError("range step must be positive in '" + text + "'");
  if (r.lo > r.hi) throw UsageError("empty range '" + text + "'");
  return r;
}

RealGrid parse_real_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw UsageError("empty real grid");
  RealGrid grid;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ":");
    if (parts.size() != 3) throw UsageError("invalid linspace '" + text + "' (expected lo:hi:count)");
    const double lo = parse_double(parts[0], "linspace start");
    const double hi = parse_double(parts[1], "linspace end");
    const long count = parse_long(parts[2], "linspace count");
    if (count < 1) throw UsageError("linspace count must be >= 1 in '" + text + "'");
    for (long i = 0; i < count; ++i) {
      const double v = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
      grid.values.push_back(v);
      grid.tokens.push_back(shortest(v));
    }
    return grid;
  }
  for (const auto& raw : split(t, ",")) {
    const std::string token = trim(raw);
    if (token.empty()) throw UsageError("empty entry in grid '" + text + "'");
    grid.values.push_back(parse_double(token, "grid"));
    grid.tokens.push_back(token);
  }
  return grid;
}

Settings parse_config_text(const std::string& text) {
  Settings settings;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
    settings[key] = trim(t.substr(eq + 1));
  }
  return settings;
}

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

SweepConfig make_config(const Settings& flags, const Settings& file, std::optional<std::string> env_tol) {
  static const std::vector<std::string> known = {"identity", "m", "n", "z", "x", "s", "a",
                                                 "b", "lambda", "tol", "format", "out", "jobs", "timing"};
  Settings merged = flags;
  for (const auto& [k, v] : file) merged[k] = v;
  for (const auto& [k, v] : merged)
    if (std::find(known.begin(), known.end(), k) == known.end()) throw UsageError("unknown setting '" + k + "'");

  SweepConfig config;
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = merged.find(key);
    return it == merged.end() ? nullptr : &it->second;
  };

  if (const auto* v = get("identity")) {
    for (const auto& raw : split(*v, ",")) {
      const std::string name = trim(raw);
      const auto id = identity_from_string(name);
      if (!id) throw UsageError("unknown identity '" + name + "'");
      config.identities.push_back(*id);
    }
  }
  if (const auto* v = get("m")) config.m = parse_int_range(*v);
  if (const auto* v = get("n")) config.n = parse_int_range(*v);
  if (const auto* v = get("z")) config.z = parse_real_grid(*v);
  if (const auto* v = get("x")) config.x = parse_real_grid(*v);
  if (const auto* v = get("s")) config.s = parse_real_grid(*v);
  if (const auto* v = get("a")) config.a = parse_real_grid(*v);
  if (const auto* v = get("b")) config.b = parse_real_grid(*v);
  if (const auto* v = get("lambda")) config.lambda = parse_real_grid(*v);
  if (const auto* v = get("tol")) {
    config.tol = parse_double(*v, "tol");
  } else if (env_tol && !trim(*env_tol).empty()) {
    config.tol = parse_double(*env_tol, "BESSEL_SYM_TOL");
  }
  if (const auto* v = get("format")) {
    const std::string f = trim(*v);
    if (f == "json") config.format = Format::json;
    else if (f == "csv") config.format = Format::csv;
    else throw UsageError("format must be json or csv, got '" + f + "'");
  }
  if (const auto* v = get("out")) config.out = trim(*v);
  if (const auto* v = get("jobs")) {
    const long j = parse_long(*v, "jobs");
    if (j < 1 || j > 1024) throw UsageError("jobs must be between 1 and 1024");
    config.jobs = static_cast<unsigned>(j);
  }
  if (const auto* v = get("timing")) config.timing = parse_bool(*v, "timing");
  validate(config);
  return config;
}

void validate(const SweepConfig& config) {
  if (config.identities.empty()) throw UsageError("no identity requested (use --identity)");
  if (config.tol && !(*config.tol > 0.0)) throw UsageError("tolerance must be positive");
  if (config.jobs < 1) throw UsageError("jobs must be >= 1");

  ParamKinds used;
  for (IdentityId id : config.identities) {
    const ParamKinds need = required_params(id);
    auto require = [&](bool needed, bool present, const char* flag) {
      if (needed && !present)
        throw UsageError(std::string("identity ") + std::string(to_string(id)) + " requires --" + flag);
    };
    require(need.m, config.m.has_value(), "m");
    require(need.n, config.n.has_value(), "n");
    require(need.z, config.z.has_value(), "z");
    require(need.x, config.x.has_value(), "x");
    require(need.s, config.s.has_value(), "s");
    require(need.a, config.a.has_value(), "a");
    require(need.b, config.b.has_value(), "b");
    require(need.lambda, config.lambda.has_value(), "lambda");
    used.m |= need.m;
    used.n |= need.n;
    used.z |= need.z;
    used.x |= need.x;
    used.s |= need.s;
    used.a |= need.a;
    used.b |= need.b;
    used.lambda |= need.lambda;
  }
  auto unused = [](bool is_used, bool present, const char* flag) {
    if (present && !is_used) throw UsageError(std::string("--") + flag + " is not used by any requested identity");
  };
  unused(used.m, config.m.has_value(), "m");
  unused(used.n, config.n.has_value(), "n");
  unused(used.z, config.z.has_value(), "z");
  unused(used.x, config.x.has_value(), "x");
  unused(used.s, config.s.has_value(), "s");
  unused(used.a, config.a.has_value(), "a");
  unused(used.b, config.b.has_value(), "b");
  unused(used.lambda, config.lambda.has_value(), "lambda");

  for (const auto* r : {&config.m, &config.n})
    if (*r && ((*r)->step <= 0 || (*r)->lo > (*r)->hi)) throw UsageError("integer ranges must be nonempty");
  for (const auto* g : {&config.z, &config.x, &config.s, &config.a, &config.b, &config.lambda})
    if (*g && (*g)->values.empty()) throw UsageError("real grids must be nonempty");
}

std::vector<IdentityInstance> expand_grid(const SweepConfig& config) {
  std::vector<IdentityInstance> out;
  auto ints = [](bool needed, const std::optional<IntRange>& r) {
    return needed ? r->values() : std::vector<long>{-1};
  };
  auto reals = [](bool needed, const std::optional<RealGrid>& g) {
    return needed ? g->values.size() : std::size_t{1};
  };
  for (IdentityId id : config.identities) {
    const ParamKinds need = required_params(id);
    for (long m : ints(need.m, config.m))
      for (long n : ints(need.n, config.n))
        for (std::size_t iz = 0; iz < reals(need.z, config.z); ++iz)
          for (std::size_t ix = 0; ix < reals(need.x, config.x); ++ix)
            for (std::size_t is = 0; is < reals(need.s, config.s); ++is)
              for (std::size_t ia = 0; ia < reals(need.a, config.a); ++ia)
                for (std::size_t ib = 0; ib < reals(need.b, config.b); ++ib)
                  for (std::size_t il = 0; il < reals(need.lambda, config.lambda); ++il) {
                    IdentityInstance inst;
                    inst.id = id;
                    if (need.m) inst.m = m;
                    if (need.n) inst.n = n;
                    if (need.z) inst.z = config.z->values[iz];
                    if (need.x) inst.x = config.x->values[ix];
                    if (need.s) inst.s = config.s->values[is];
                    if (need.a) {
                      inst.a = config.a->values[ia];
                      if (is_exact(id)) inst.a_exact = exact::parse_rational(config.a->tokens[ia]);
                    }
                    if (need.b) inst.b = config.b->values[ib];
                    if (need.lambda) inst.lambda = config.lambda->values[il];
                    out.push_back(std::move(inst));
                  }
  }
  return out;
}

SweepReport run_sweep(const SweepConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  SweepReport report;
  report.config = config;
  const auto instances = expand_grid(config);
  report.results = evaluate_batch(instances, config.tol, config.jobs);
  for (const auto& r : report.results) {
    ++report.summary.total;
    if (r.skipped) ++report.summary.skipped_poles;
    else if (r.pass) ++report.summary.passed;
    else ++report.summary.failed;
    if (r.warning) ++report.summary.warnings;
  }
  report.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

int exit_code(const SweepReport& report) { return report.summary.failed == 0 ? 0 : 1; }

}  // namespace besselsym::sweep
