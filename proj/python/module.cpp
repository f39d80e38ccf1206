#include "besselsym/errors.hpp"
#include "besselsym/exact.hpp"
#include "besselsym/identities.hpp"
#include "besselsym/specfun.hpp"
#include "besselsym/sweep.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>

namespace py = pybind11;
using namespace besselsym;

namespace {

py::object to_pyint(const exact::BigInt& v) { return py::int_(py::str(v.str())); }

std::pair<py::object, py::object> to_ratio(const exact::BigRational& v) {
  return {to_pyint(numerator(v)), to_pyint(denominator(v))};
}

py::dict residual_dict(const Residual& r) {
  py::dict params;
  const auto& p = r.params;
  if (p.m) params["m"] = *p.m;
  if (p.n) params["n"] = *p.n;
  if (p.z) params["z"] = *p.z;
  if (p.x) params["x"] = *p.x;
  if (p.s) params["s"] = *p.s;
  if (p.a) params["a"] = *p.a;
  if (p.b) params["b"] = *p.b;
  if (p.lambda) params["lambda"] = *p.lambda;
  py::dict d;
  d["identity"] = std::string(to_string(p.id));
  d["params"] = params;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["abs_err"] = r.abs_err;
  d["rel_err"] = r.rel_err;
  d["cond"] = r.cond;
  d["pass"] = r.pass;
  d["skipped"] = r.skipped;
  d["warning"] = r.warning;
  d["notes"] = r.notes;
  return d;
}

IdentityInstance make_instance(const std::string& name, std::optional<long> m,
                               std::optional<long> n, std::optional<double> z,
                               std::optional<double> x, std::optional<double> s,
                               std::optional<std::string> a, std::optional<double> b,
                               std::optional<double> lambda) {
  const auto id = identity_from_string(name);
  if (!id) throw py::value_error("unknown identity: " + name);
  IdentityInstance inst;
  inst.id = *id;
  inst.m = m;
  inst.n = n;
  inst.z = z;
  inst.x = x;
  inst.s = s;
  inst.b = b;
  inst.lambda = lambda;
  if (a) {
    // Accept "7/3" so exact identities see the exact value.
    inst.a_exact = exact::parse_rational(*a);
    inst.a = exact::to_double(*inst.a_exact);
  }
  return inst;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Symmetric Bessel and hypergeometric index sums";

  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<PoleError>(mod, "PoleError", mod.attr("DomainError").ptr());
  py::register_exception<sweep::UsageError>(mod, "UsageError", PyExc_ValueError);

  // exact
  mod.def("factorial", [](long n) { return to_pyint(exact::factorial(n)); });
  mod.def("binomial", [](long n, long k) { return to_pyint(exact::binomial(n, k)); });
  mod.def("f_eval", [](long n, long p, long q) { return to_ratio(exact::f_eval(n, p, q)); },
          "F(n,p,q) as a (numerator, denominator) pair");
  mod.def("verify_lemma1", &exact::verify_lemma1, py::arg("n"), py::arg("pmax"), py::arg("qmax"));
  mod.def("verify_eq18", [](long m, long n, const std::string& a) {
    return exact::verify_eq18(m, n, exact::parse_rational(a));
  });
  mod.def("verify_eq19", &exact::verify_eq19);
  mod.def("verify_eq22", &exact::verify_eq22);

  // special functions
  mod.def("lngamma", &specfun::lngamma);
  mod.def("bessel_j", &specfun::bessel_j, py::arg("n"), py::arg("x"));
  mod.def("bessel_y", &specfun::bessel_y, py::arg("n"), py::arg("x"));
  mod.def("bessel_k", [](int n, double z) { return specfun::bessel_k(n, z).to_double(); },
          py::arg("n"), py::arg("z"));
  mod.def("bessel_k_log", [](int n, double z) {
    const auto v = specfun::bessel_k(n, z);
    return std::pair{v.sign(), v.logmag()};
  }, "(sign, log|K_n(z)|), usable beyond the double range");
  mod.def("gauss_2f1", &specfun::gauss_2f1);
  mod.def("hyp_3f2", [](double a1, double a2, double a3, double b1, double b2, double z) {
    return specfun::hyp_3f2(a1, a2, a3, b1, b2, z).value;
  });
  mod.def("tricomi_u", &specfun::tricomi_u);
  mod.def("whittaker_w", [](double kappa, double mu, double z) {
    return specfun::whittaker_w(kappa, mu, z).value.to_double();
  });

  // identities
  mod.def("identities", [] {
    std::vector<std::string> names;
    for (auto id : all_identities()) names.emplace_back(to_string(id));
    return names;
  });
  mod.def(
      "evaluate",
      [](const std::string& identity, std::optional<long> m, std::optional<long> n,
         std::optional<double> z, std::optional<double> x, std::optional<double> s,
         std::optional<std::string> a, std::optional<double> b, std::optional<double> lambda_,
         std::optional<double> tol) {
        const auto inst = make_instance(identity, m, n, z, x, s, a, b, lambda_);
        Residual r;
        {
          py::gil_scoped_release release;
          r = evaluate_or_skip(inst, tol);
        }
        return residual_dict(r);
      },
      py::arg("identity"), py::kw_only(), py::arg("m") = py::none(), py::arg("n") = py::none(),
      py::arg("z") = py::none(), py::arg("x") = py::none(), py::arg("s") = py::none(),
      py::arg("a") = py::none(), py::arg("b") = py::none(), py::arg("lam") = py::none(),
      py::arg("tol") = py::none());

  mod.def(
      "run_sweep",
      [](const std::map<std::string, std::string>& settings, const std::string& format) {
        auto cfg = sweep::make_config(settings);
        std::string text;
        {
          py::gil_scoped_release release;
          const auto report = sweep::run_sweep(cfg);
          text = sweep::emit_report(report, format == "csv" ? sweep::Format::csv : sweep::Format::json);
        }
        return text;
      },
      py::arg("settings"), py::arg("format") = "json",
      "Runs a sweep from CLI-style settings (keys without dashes) and returns the report text");
}
