#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>

#include "pplab/asymptotics.hpp"
#include "pplab/buchstab.hpp"
#include "pplab/counting.hpp"
#include "pplab/errors.hpp"
#include "pplab/expsum.hpp"
#include "pplab/parallel.hpp"
#include "pplab/primes.hpp"
#include "pplab/smoothing.hpp"
#include "pplab/thresholds.hpp"

namespace py = pybind11;
using namespace pplab;

namespace {

Engine engine_from(const std::string& s) {
    if (s == "mitm" || s == "meet-in-middle") return Engine::meet_in_middle;
    if (s == "naive") return Engine::naive;
    throw DomainError("engine must be 'mitm' or 'naive'");
}

py::dict count_dict(const CountReport& r) {
    py::dict d;
    d["raw"] = r.raw;
    d["weighted"] = r.weighted;
    d["predicted"] = r.predicted;
    d["ratio"] = r.ratio;
    d["engine"] = to_string(r.engine);
    d["rechecked"] = r.rechecked;
    d["seconds"] = r.seconds;
    if (r.unordered >= 0) d["unordered"] = r.unordered;
    return d;
}

py::dict integral_dict(const IntegralResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["error"] = r.error;
    d["mc_value"] = r.mc_value;
    d["mc_sigma"] = r.mc_sigma;
    d["agree"] = r.agree;
    return d;
}

InequalityInstance ineq(int s, double c, double R, double eta, std::optional<double> X, std::optional<double> eps) {
    InequalityInstance in;
    in.s = s;
    in.c = c;
    in.R = R;
    in.eta = eta;
    in.X_override = X;
    in.eps_override = eps;
    in.validate();
    return in;
}

EquationInstance eq(int s, double c, std::int64_t r, std::optional<double> X) {
    EquationInstance in;
    in.s = s;
    in.c = c;
    in.r = r;
    in.X_override = X;
    in.validate();
    return in;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Piatetski-Shapiro prime experiments";

    static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
    static py::exception<ResourceError> resource(m, "ResourceError", base.ptr());
    static py::exception<DomainError> domain(m, "DomainError", base.ptr());
    static py::exception<NumericIntegrityError> integrity(m, "NumericIntegrityError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ResourceError& e) {
            py::set_error(resource, e.what());
        } catch (const DomainError& e) {
            py::set_error(domain, e.what());
        } catch (const NumericIntegrityError& e) {
            py::set_error(integrity, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    m.def("thread_count", &thread_count);
    m.def("set_thread_count", &set_thread_count, py::arg("n"));

    // primes and weights
    m.def("primes_up_to", &primes_up_to, py::arg("n"));
    m.def(
        "window_primes", [](std::uint64_t X) { return PrimeWindow::build(X).primes(); }, py::arg("X"),
        "primes in (X/8, X]");
    m.def(
        "weights",
        [](std::uint64_t X, const std::string& kind) {
            return build_weights(PrimeWindow::build(X), weight_kind_from(kind)).values;
        },
        py::arg("X"), py::arg("kind") = "thm4-plus", "weight values indexed by n - X/8 - 1");

    // thresholds
    m.def(
        "threshold",
        [](int t) {
            auto r = threshold_report(t);
            py::dict d;
            d["theorem"] = t;
            d["derived"] = str(r.derived);
            d["claimed"] = str(r.claimed);
            d["match"] = r.match;
            d["sides_slack"] = r.sides_slack;
            d["binding"] = r.binding;
            return d;
        },
        py::arg("theorem"));

    // Buchstab function and sieve constants
    m.def("omega", &omega, py::arg("u"));
    m.def(
        "sieve_constants",
        [](int theorem, std::uint64_t mc_samples, std::uint64_t seed) {
            QuadOptions o;
            o.mc_samples = mc_samples;
            o.seed = seed;
            auto dc = d_constants(theorem, o);
            py::dict d, ds;
            for (const auto& n : dc.d) ds[py::str(n.name)] = integral_dict(n.r);
            d["d"] = ds;
            d["u_plus"] = dc.u_plus;
            d["combination"] = dc.combination;
            if (dc.has_prose) d["d2_prose"] = integral_dict(dc.d2_prose);
            return d;
        },
        py::arg("theorem") = 2, py::arg("mc_samples") = 1'000'000, py::arg("seed") = 20240611);

    // smoothing
    py::class_<SmoothedIndicator>(m, "SmoothedIndicator")
        .def(py::init<double, int, double>(), py::arg("eps"), py::arg("k"), py::arg("plateau") = -1.0)
        .def_property_readonly("eps", &SmoothedIndicator::eps)
        .def_property_readonly("k", &SmoothedIndicator::k)
        .def_property_readonly("plateau", &SmoothedIndicator::plateau)
        .def("phi", &SmoothedIndicator::phi, py::arg("y"))
        .def("phi_hat", &SmoothedIndicator::phi_hat, py::arg("x"))
        .def("tail_mass", &SmoothedIndicator::tail_mass, py::arg("K"));
    m.def(
        "choose_smoothing",
        [](double c, double eta, double X, int k_max) {
            auto ch = choose_smoothing(c, eta, X, k_max);
            py::dict d;
            d["eps"] = ch.eps;
            d["K"] = ch.K;
            d["k"] = ch.k;
            d["tail"] = ch.tail;
            d["target"] = ch.target;
            d["admissible"] = ch.admissible;
            d["least_K"] = ch.least_K;
            d["least_K_order"] = ch.least_K_order;
            d["warning"] = ch.warning;
            return d;
        },
        py::arg("c"), py::arg("eta"), py::arg("X"), py::arg("k_max") = 16);

    // counting
    m.def(
        "count_inequality",
        [](int s, double c, double R, double eta, std::optional<double> X, std::optional<double> eps,
           const std::string& engine) { return count_dict(count_inequality(ineq(s, c, R, eta, X, eps), engine_from(engine))); },
        py::arg("s"), py::arg("c"), py::arg("R"), py::arg("eta") = 0.01, py::arg("X") = py::none(),
        py::arg("eps") = py::none(), py::arg("engine") = "mitm");
    m.def(
        "count_equation",
        [](int s, double c, std::int64_t r, std::optional<double> X, const std::string& engine) {
            return count_dict(count_equation(eq(s, c, r, X), engine_from(engine)));
        },
        py::arg("s"), py::arg("c"), py::arg("r"), py::arg("X") = py::none(), py::arg("engine") = "mitm");
    m.def(
        "sieve_lower_bound",
        [](int s, double c, std::int64_t r, std::optional<double> X, const std::string& plus) {
            auto in = eq(s, c, r, X);
            auto rep = sieve_lower_bound(Family::equation, nullptr, &in, weight_kind_from(plus));
            py::dict d;
            d["value"] = rep.value;
            d["raw"] = rep.raw;
            d["below_raw"] = rep.below_raw;
            return d;
        },
        py::arg("s"), py::arg("c"), py::arg("r"), py::arg("X") = py::none(), py::arg("plus") = "thm4-plus",
        "equation family");

    // exponential sums
    m.def(
        "expsum",
        [](std::uint64_t X, double c, const std::vector<double>& xs, const std::string& weight, const std::string& phase) {
            return ExpSum::build({X, c, sum_weight_from(weight), phase_from(phase)}).eval_many(xs);
        },
        py::arg("X"), py::arg("c"), py::arg("xs"), py::arg("weight") = "prime", py::arg("phase") = "power");
    m.def(
        "mean_value",
        [](std::uint64_t X, double c, double B, int moment, const std::string& phase) {
            auto r = mean_value(ExpSum::build({X, c, SumWeight::unit, phase_from(phase)}), B, moment);
            py::dict d;
            d["value"] = r.value;
            d["bound"] = r.bound;
            d["ratio"] = r.ratio;
            return d;
        },
        py::arg("X"), py::arg("c"), py::arg("B"), py::arg("moment") = 2, py::arg("phase") = "power");
    m.def("eval_I", [](double X, double c, double x) { return eval_I(X, c, x); }, py::arg("X"), py::arg("c"), py::arg("x"));
    m.def("eval_v1", [](double X, double c, double x) { return eval_v1(X, c, x); }, py::arg("X"), py::arg("c"),
          py::arg("x"));
    m.def("eval_v", &eval_v, py::arg("M"), py::arg("c"), py::arg("x"));

    // main terms
    m.def(
        "singular_sum",
        [](int s, double c, std::int64_t r, std::optional<double> X) {
            return X ? singular_sum_L(s, c, r, *X) : singular_sum_L(s, c, r);
        },
        py::arg("s"), py::arg("c"), py::arg("r"), py::arg("X") = py::none());
    m.def(
        "singular_integral",
        [](int s, double c, double R, double eta, int k, const std::string& method, double X, std::uint64_t samples,
           std::uint64_t seed) {
            HOptions o;
            o.X = X;
            o.mc_samples = samples;
            o.seed = seed;
            SmoothedIndicator phi(std::pow(R, -eta), k);
            auto h = singular_integral_H(s, c, R, phi, method == "grid" ? HMethod::grid : HMethod::monte_carlo, o);
            return py::make_tuple(h.value, h.error);
        },
        py::arg("s"), py::arg("c"), py::arg("R"), py::arg("eta") = 0.01, py::arg("k") = 4, py::arg("method") = "grid",
        py::arg("X") = 0.0, py::arg("samples") = 200000, py::arg("seed") = 20240611);
    m.def("predicted_main_term",
          [](const std::string& kind, int s, double c, double eta, double value) {
              return predicted_main_term(kind == "eq" ? MainTerm::equation : MainTerm::inequality, s, c, eta, value);
          },
          py::arg("kind"), py::arg("s"), py::arg("c"), py::arg("eta"), py::arg("value"));
}
