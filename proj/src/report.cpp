#include "besselsym/sweep.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>

namespace besselsym::sweep {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json number_or_null(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

ordered_json params_json(const IdentityInstance& p) {
  ordered_json j = ordered_json::object();
  if (p.m) j["m"] = *p.m;
  if (p.n) j["n"] = *p.n;
  if (p.z) j["z"] = *p.z;
  if (p.x) j["x"] = *p.x;
  if (p.s) j["s"] = *p.s;
  if (p.a) j["a"] = *p.a;
  if (p.b) j["b"] = *p.b;
  if (p.lambda) j["lambda"] = *p.lambda;
  return j;
}

ordered_json grid_json(const std::optional<RealGrid>& g) {
  return g ? ordered_json(g->values) : ordered_json(nullptr);
}

ordered_json config_json(const SweepConfig& c) {
  ordered_json j;
  ordered_json ids = ordered_json::array();
  for (IdentityId id : c.identities) ids.push_back(std::string(to_string(id)));
  j["identities"] = ids;
  j["m"] = c.m ? ordered_json(c.m->str()) : ordered_json(nullptr);
  j["n"] = c.n ? ordered_json(c.n->str()) : ordered_json(nullptr);
  j["z"] = grid_json(c.z);
  j["x"] = grid_json(c.x);
  j["s"] = grid_json(c.s);
  j["a"] = grid_json(c.a);
  j["b"] = grid_json(c.b);
  j["lambda"] = grid_json(c.lambda);
  j["tol"] = c.tol ? ordered_json(*c.tol) : ordered_json(nullptr);
  j["format"] = c.format == Format::json ? "json" : "csv";
  return j;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string shortest(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_same_v<T, double>) return shortest(*v);
  else return std::to_string(*v);
}

}  // namespace

std::string emit_json(const SweepReport& report) {
  ordered_json root;
  root["config"] = config_json(report.config);
  ordered_json results = ordered_json::array();
  for (const auto& r : report.results) {
    ordered_json j;
    j["identity"] = std::string(to_string(r.params.id));
    j["params"] = params_json(r.params);
    if (r.skipped) {
      j["lhs"] = nullptr;
      j["rhs"] = nullptr;
      j["abs_err"] = nullptr;
      j["rel_err"] = nullptr;
      j["cond"] = nullptr;
      j["pass"] = nullptr;
    } else {
      j["lhs"] = number_or_null(r.lhs);
      j["rhs"] = number_or_null(r.rhs);
      j["abs_err"] = number_or_null(r.abs_err);
      j["rel_err"] = number_or_null(r.rel_err);
      j["cond"] = number_or_null(r.cond);
      j["pass"] = r.pass;
    }
    j["notes"] = r.notes;
    results.push_back(std::move(j));
  }
  root["results"] = std::move(results);
  ordered_json summary;
  summary["total"] = report.summary.total;
  summary["passed"] = report.summary.passed;
  summary["failed"] = report.summary.failed;
  summary["skipped_poles"] = report.summary.skipped_poles;
  summary["warnings"] = report.summary.warnings;
  if (report.config.timing) summary["duration_s"] = report.duration_seconds;
  root["summary"] = std::move(summary);
  return root.dump(2) + "\n";
}

std::string emit_csv(const SweepReport& report) {
  std::string out = "identity,m,n,z,x,s,a,b,lambda,lhs,rhs,abs_err,rel_err,cond,pass\n";
  for (const auto& r : report.results) {
    const auto& p = r.params;
    std::vector<std::string> fields = {std::string(to_string(p.id)), cell(p.m), cell(p.n), cell(p.z),
                                       cell(p.x), cell(p.s), cell(p.a), cell(p.b), cell(p.lambda)};
    if (r.skipped) {
      fields.insert(fields.end(), {"", "", "", "", "", "skipped"});
    } else {
      fields.insert(fields.end(), {shortest(r.lhs), shortest(r.rhs), shortest(r.abs_err), shortest(r.rel_err),
                                   shortest(r.cond), r.pass ? "true" : "false"});
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_escape(fields[i]);
    }
    out += '\n';
  }
  return out;
}

std::string emit_report(const SweepReport& report, Format format) {
  return format == Format::json ? emit_json(report) : emit_csv(report);
}

}  // namespace besselsym::sweep
