// besselsym: evaluate finite-sum Bessel/hypergeometric identities over
// parameter grids and write a JSON or CSV verification report.
//
// Exit codes: 0 all evaluated instances passed, 1 at least one failed,
// 2 usage or I/O error.

#include "besselsym/sweep.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace besselsym;
  CLI::App app{"Verify symmetric finite-sum identities for Bessel and hypergeometric functions"};
  app.set_version_flag("--version", "besselsym 0.1.0");

  sweep::Settings flags;
  std::string config_path;
  bool list = false, timing = false;
  struct FlagSpec {
    const char* name;
    const char* help;
  };
  const FlagSpec specs[] = {
      {"identity", "Identity name(s), comma separated (see --list)"},
      {"m", "Integer range a..b[..step]"},
      {"n", "Integer range a..b[..step]"},
      {"z", "Real grid: v1,v2,... or lo:hi:count"},
      {"x", "Real grid for x"},
      {"s", "Real grid for s"},
      {"a", "Real grid for a (fractions like 7/3 allowed)"},
      {"b", "Real grid for b"},
      {"lambda", "Real grid for lambda"},
      {"tol", "Relative tolerance override (fallback: BESSEL_SYM_TOL)"},
      {"format", "Report format: json or csv"},
      {"out", "Output path (default: standard output)"},
      {"jobs", "Worker threads (default 1)"},
  };
  std::map<std::string, std::string> raw;
  for (const auto& spec : specs) app.add_option(std::string("--") + spec.name, raw[spec.name], spec.help);
  app.add_option("--config", config_path, "key = value settings file; its entries override flags");
  app.add_flag("--timing", timing, "Include wall-clock duration in the JSON summary");
  app.add_flag("--list", list, "List identity names and their parameters, then exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (list) {
    for (IdentityId id : all_identities()) {
      const ParamKinds p = required_params(id);
      std::cout << to_string(id) << ":";
      if (p.m) std::cout << " m";
      if (p.n) std::cout << " n";
      if (p.z) std::cout << " z";
      if (p.x) std::cout << " x";
      if (p.s) std::cout << " s";
      if (p.a) std::cout << " a";
      if (p.b) std::cout << " b";
      if (p.lambda) std::cout << " lambda";
      std::cout << (is_exact(id) ? "  [exact]" : "") << "\n";
    }
    return 0;
  }

  for (const auto& spec : specs)
    if (app.count(std::string("--") + spec.name) > 0) flags[spec.name] = raw[spec.name];
  if (timing) flags["timing"] = "true";

  sweep::SweepConfig config;
  try {
    const sweep::Settings file = config_path.empty() ? sweep::Settings{} : sweep::read_config_file(config_path);
    const char* env = std::getenv("BESSEL_SYM_TOL");
    config = sweep::make_config(flags, file, env ? std::optional<std::string>(env) : std::nullopt);
  } catch (const sweep::UsageError& e) {
    std::cerr << "besselsym: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "besselsym: " << e.what() << "\n";
    return kExitUsage;
  }

  const sweep::SweepReport report = sweep::run_sweep(config);
  const std::string text = sweep::emit_report(report, config.format);
  if (config.out.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) return kExitUsage;
  } else {
    std::ofstream out(config.out, std::ios::binary);
    if (!out) {
      std::cerr << "besselsym: cannot write '" << config.out << "'\n";
      return kExitUsage;
    }
    out << text;
    if (!out.flush()) {
      std::cerr << "besselsym: write to '" << config.out << "' failed\n";
      return kExitUsage;
    }
  }
  std::cerr << "besselsym: " << report.summary.total << " instances, " << report.summary.passed << " passed, "
            << report.summary.failed << " failed, " << report.summary.skipped_poles << " skipped, "
            << report.summary.warnings << " warnings\n";
  return sweep::exit_code(report);
}
