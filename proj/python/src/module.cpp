#include "skewstab/arithmetic/diophantine.hpp"
#include "skewstab/cli/run.hpp"
#include "skewstab/dynamics/config.hpp"
#include "skewstab/dynamics/invariant.hpp"
#include "skewstab/lab/budget.hpp"
#include "skewstab/lab/counterexamples.hpp"
#include "skewstab/lab/decay.hpp"
#include "skewstab/measures/norms.hpp"
#include "skewstab/measures/serialize.hpp"
#include "skewstab/measures/w1.hpp"
#include "skewstab/util/error.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace skewstab;
using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(e.what());
  }
}

py::dict norm_dict(const measures::NormReport& r) {
  py::dict d;
  d["l1"] = r.l1;
  d["var_p"] = r.var_p;
  d["pbv"] = r.pbv;
  d["p"] = r.p;
  d["A"] = r.A;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Transfer operators and stability experiments for skew products over expanding circle maps.";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def(
      "w1_norm",
      [](std::vector<double> coords, std::vector<double> weights, int dimension) {
        if (coords.size() != weights.size() * static_cast<std::size_t>(dimension))
          throw ValidationError("coords must hold dimension entries per weight");
        return measures::w1_norm(measures::FiberMeasure(dimension, std::move(coords), std::move(weights)));
      },
      py::arg("coords"), py::arg("weights"), py::arg("dimension") = 1,
      "Bounded-Lipschitz norm of a signed atomic measure on the torus.");

  m.def(
      "norm_report",
      [](const std::string& measure, double p, double A) {
        return norm_dict(measures::pbv_norm(measures::from_json(parse(measure)), p, A));
      },
      py::arg("measure"), py::arg("p") = 1.0, py::arg("A") = measures::kDefaultRadiusCap);

  m.def(
      "transfer_step",
      [](const std::string& system, const std::string& measure) {
        const dynamics::SkewSystem sys = dynamics::parse_system(parse(system));
        return measures::to_json(dynamics::transfer_step(sys, measures::from_json(parse(measure)))).dump();
      },
      py::arg("system"), py::arg("measure"));

  m.def(
      "invariant_measure",
      [](const std::string& system, std::size_t n_cells, double tol, int n_max) {
        const dynamics::SkewSystem sys = dynamics::parse_system(parse(system));
        dynamics::InvariantResult r;
        {
          py::gil_scoped_release release;
          r = dynamics::invariant_measure(sys, n_cells, tol, n_max);
        }
        py::dict d;
        d["converged"] = r.converged;
        d["iterations"] = r.iterations;
        d["last_increment"] = r.last_increment;
        d["measure"] = measures::to_json(r.measure).dump();
        d["norm"] = norm_dict(measures::pbv_norm(r.measure, 1.0, sys.A()));
        return d;
      },
      py::arg("system"), py::arg("n_cells") = 256, py::arg("tol") = 1e-6, py::arg("n_max") = 1000);

  m.def(
      "decay",
      [](const std::string& system, std::size_t n_cells, int n_max) {
        const dynamics::SkewSystem sys = dynamics::parse_system(parse(system));
        const auto g =
            measures::Disintegration::product(n_cells, measures::FiberMeasure(1, {0.0, 0.5}, {1.0, -1.0}));
        py::gil_scoped_release release;
        return lab::equilibrium_decay(sys, g, n_max).norm;
      },
      py::arg("system"), py::arg("n_cells") = 256, py::arg("n_max") = 100,
      "||L^n g|| for g = m x (delta_0 - delta_1/2), n = 0..n_max.");

  m.def(
      "stability_bound",
      [](double C, double alpha, double M, double C_tilde, double eps) {
        return lab::stability_bound({lab::Phi::power_law(C, alpha), M, C_tilde, eps});
      },
      py::arg("C"), py::arg("alpha"), py::arg("M"), py::arg("C_tilde"), py::arg("eps"),
      "Stability bound for phi(x) = C x^-alpha.");

  m.def(
      "type_estimate",
      [](const std::string& theta, const std::string& depth) {
        const arithmetic::TypeEstimate t = arithmetic::linear_type_estimate(arithmetic::parse_angle(theta), BigInt(depth));
        py::dict d;
        d["gamma_hat"] = t.is_rational ? py::object(py::none()) : py::object(py::float_(t.gamma_hat));
        d["c0"] = t.c0;
        d["is_rational"] = t.is_rational;
        return d;
      },
      py::arg("theta"), py::arg("depth") = "1000000");

  m.def(
      "dyadic_local_exponent",
      [](const std::string& theta, int n) { return to_string(arithmetic::dyadic_local_exponent(arithmetic::parse_angle(theta), n)); },
      py::arg("theta"), py::arg("n"), "Exact local exponent along k = 2^(2^(2n)), as a rational string.");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "skewstab");
        std::vector<const char*> argv;
        for (const std::string& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line in-process; returns (exit code, stdout, stderr).");

  m.attr("__version__") = SKEWSTAB_VERSION;
}
