#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dagger/distribution.hpp"
#include "dagger/functions.hpp"
#include "dagger/group.hpp"
#include "dagger/mahler.hpp"
#include "dagger/suite.hpp"

namespace py = pybind11;

// Rationals cross the boundary as fractions.Fraction; int and "a/b"
// strings are accepted on input.
namespace pybind11::detail {
template <>
struct type_caster<dagger::Scalar> {
  PYBIND11_TYPE_CASTER(dagger::Scalar, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = dagger::parse_rational(src.cast<std::string>());
        return true;
      }
      if (PyBool_Check(src.ptr())) return false;
      if (PyLong_Check(src.ptr())) {
        value = dagger::Scalar(dagger::Integer(py::str(src).cast<std::string>()));
        return true;
      }
      if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator")) {
        dagger::Integer num(py::str(src.attr("numerator")).cast<std::string>());
        dagger::Integer den(py::str(src.attr("denominator")).cast<std::string>());
        if (den == 0) return false;
        value = dagger::Scalar(num, den);
        value.canonicalize();
        return true;
      }
    } catch (const std::exception&) {
      return false;
    }
    return false;
  }

  static handle cast(const dagger::Scalar& v, return_value_policy, handle) {
    auto to_int = py::module_::import("builtins").attr("int");
    auto fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_int(v.get_num().get_str()), to_int(v.get_den().get_str())).release();
  }
};
}  // namespace pybind11::detail

namespace {

using namespace dagger;
using MutableGroupPtr = std::shared_ptr<PValuedGroup>;

MutableGroupPtr unconst(const GroupPtr& g) { return std::const_pointer_cast<PValuedGroup>(g); }

MultiIndex to_index(const std::vector<unsigned>& entries) { return MultiIndex(entries); }

TruncatedSeries::Terms terms_from_dict(const std::map<std::vector<unsigned>, Scalar>& dict) {
  TruncatedSeries::Terms terms;
  for (const auto& [k, v] : dict) terms.emplace(MultiIndex(k), v);
  return terms;
}

py::dict terms_to_dict(const TruncatedSeries::Terms& terms) {
  py::dict out;
  for (const auto& [alpha, c] : terms) out[py::tuple(py::cast(alpha.entries()))] = py::cast(c);
  return out;
}

std::size_t infer_dimension(const std::map<std::vector<unsigned>, Scalar>& dict, std::optional<std::size_t> dim) {
  if (dim) return *dim;
  if (dict.empty()) throw std::invalid_argument("cannot infer the dimension of an empty polynomial; pass dim");
  return dict.begin()->first.size();
}

TruncatedSeries series_from_dict(const std::map<std::vector<unsigned>, Scalar>& dict, std::optional<std::size_t> dim) {
  return TruncatedSeries(infer_dimension(dict, dim), kNoTruncation, terms_from_dict(dict));
}

py::object exponent_or_none(const LogMag& m) { return m.is_bottom() ? py::none() : py::cast(m.exponent()); }

py::tuple norm_tuple(const NormBound& n) { return py::make_tuple(exponent_or_none(n.value), n.exact); }

GroupPoint point(const PValuedGroup& g, std::vector<Scalar> coords) { return make_point(g, std::move(coords)); }

DaggerFunction function_of(const MutableGroupPtr& g, const std::map<std::vector<unsigned>, Scalar>& body) {
  return DaggerFunction(g, TruncatedSeries(g->dimension(), kNoTruncation, terms_from_dict(body)));
}

}  // namespace

PYBIND11_MODULE(_pydagger, m) {
  m.doc() = "Exact p-adic group laws, Mahler expansions and distribution norms";

  py::register_exception<GroupValidationError>(m, "GroupValidationError", PyExc_ValueError);

  // padic_core
  m.def("is_prime", &is_prime);
  m.def(
      "valuation",
      [](const Scalar& x, unsigned p) -> py::object {
        auto v = valuation(x, p);
        return v.is_infinite() ? py::none() : py::cast(v.value());
      },
      py::arg("x"), py::arg("p"), "v_p(x), or None for x = 0");
  m.def("factorial_valuation", py::overload_cast<std::uint64_t, unsigned>(&factorial_valuation), py::arg("n"),
        py::arg("p"));
  m.def("digit_sum", &digit_sum, py::arg("n"), py::arg("p"));
  m.def("stirling_second", [](int b, int a) { return Scalar(stirling_second(b, a)); });
  m.def("falling_coeff", [](int a, int b) { return Scalar(falling_coeff(a, b)); });
  m.def("binomial", &binomial, py::arg("x"), py::arg("n"));

  // series / mahler
  m.def(
      "gauss_norm",
      [](const std::map<std::vector<unsigned>, Scalar>& f, std::vector<Scalar> rho, unsigned p) {
        const auto series = series_from_dict(f, rho.size());
        return norm_tuple(gauss_norm(series, RadiusVector(std::move(rho)), p));
      },
      py::arg("f"), py::arg("rho"), py::arg("p"), "(exponent or None, exact) of sup |c_a| p^{rho.a}");
  m.def(
      "multiply_polynomials",
      [](const std::map<std::vector<unsigned>, Scalar>& f, const std::map<std::vector<unsigned>, Scalar>& g,
         std::optional<std::size_t> dim) {
        const std::size_t d = dim ? *dim : (f.empty() ? infer_dimension(g, dim) : infer_dimension(f, dim));
        return terms_to_dict((series_from_dict(f, d) * series_from_dict(g, d)).terms());
      },
      py::arg("f"), py::arg("g"), py::arg("dim") = py::none());
  m.def(
      "taylor_to_mahler",
      [](const std::map<std::vector<unsigned>, Scalar>& f, std::optional<std::size_t> dim) {
        return terms_to_dict(taylor_to_mahler(series_from_dict(f, dim)).coeffs);
      },
      py::arg("f"), py::arg("dim") = py::none());
  m.def(
      "mahler_to_taylor",
      [](const std::map<std::vector<unsigned>, Scalar>& coeffs, std::optional<std::size_t> dim) {
        MahlerFamily fam{infer_dimension(coeffs, dim), kNoTruncation, terms_from_dict(coeffs), true};
        return terms_to_dict(mahler_to_taylor(fam).terms());
      },
      py::arg("coeffs"), py::arg("dim") = py::none());
  m.def(
      "mahler_norm",
      [](const std::map<std::vector<unsigned>, Scalar>& coeffs, std::vector<Scalar> rho, unsigned p) {
        MahlerFamily fam{rho.size(), kNoTruncation, terms_from_dict(coeffs), true};
        return norm_tuple(mahler_norm(fam, RadiusVector(std::move(rho)), p));
      },
      py::arg("coeffs"), py::arg("rho"), py::arg("p"));

  // group_model
  py::class_<PValuedGroup, MutableGroupPtr>(m, "Group")
      .def_property_readonly("name", &PValuedGroup::name)
      .def_property_readonly("p", &PValuedGroup::p)
      .def_property_readonly("d", &PValuedGroup::dimension)
      .def_property_readonly("omega", &PValuedGroup::omega)
      .def_property_readonly("law_degree", &PValuedGroup::law_degree)
      .def_property_readonly("law", [](const PValuedGroup& g) {
        py::list out;
        for (const auto& f : g.law()) out.append(terms_to_dict(f.terms()));
        return out;
      })
      .def_property_readonly("inverse", [](const PValuedGroup& g) {
        py::list out;
        for (const auto& f : g.inverse()) out.append(terms_to_dict(f.terms()));
        return out;
      })
      .def("to_json", [](const PValuedGroup& g) { return group_to_json(g); })
      .def("multiply",
           [](const PValuedGroup& g, std::vector<Scalar> x, std::vector<Scalar> y) {
             return multiply(g, point(g, std::move(x)), point(g, std::move(y))).coords;
           })
      .def("invert", [](const PValuedGroup& g, std::vector<Scalar> x) { return invert(g, point(g, std::move(x))).coords; })
      .def("omega_of",
           [](const PValuedGroup& g, std::vector<Scalar> x) -> py::object {
             auto w = omega_of(g, point(g, std::move(x)));
             return w.is_infinite() ? py::none() : py::cast(w.value());
           })
      .def("tau", [](const PValuedGroup& g, unsigned N) { return neighborhood_params(g, N).tau; }, py::arg("N"))
      .def("__repr__", [](const PValuedGroup& g) { return "<Group " + g.name() + ">"; });

  m.def("builtin_group", [](const std::string& tag) { return unconst(builtin_group(tag)); }, py::arg("tag"));
  m.def("load_group", [](const std::string& text) { return unconst(load_group(text)); }, py::arg("config"));
  m.def("resolve_group", [](const std::string& source) { return unconst(resolve_group(source)); }, py::arg("source"));

  // distributions
  py::class_<Distribution>(m, "Distribution")
      .def_property_readonly("cap", &Distribution::cap)
      .def_property_readonly("exact", &Distribution::exact)
      .def_property_readonly("support_complete", &Distribution::support_complete)
      .def_property_readonly("moments", [](const Distribution& d) { return terms_to_dict(d.moments()); })
      .def_property_readonly("dcoeffs", [](const Distribution& d) { return terms_to_dict(d.dcoeffs()); })
      .def("moment", [](const Distribution& d, const std::vector<unsigned>& beta) { return d.moment(to_index(beta)); })
      .def("total_mass", &Distribution::total_mass)
      .def("with_cap", &Distribution::with_cap)
      .def("__add__", [](const Distribution& a, const Distribution& b) { return a + b; })
      .def("__sub__", [](const Distribution& a, const Distribution& b) { return a - b; })
      .def("__rmul__", [](const Distribution& a, const Scalar& c) { return c * a; });

  m.def(
      "dirac",
      [](const MutableGroupPtr& g, std::vector<Scalar> x, unsigned cap) { return dirac(g, point(*g, std::move(x)), cap); },
      py::arg("group"), py::arg("x"), py::arg("cap"));
  m.def(
      "b_monomial",
      [](const MutableGroupPtr& g, const std::vector<unsigned>& alpha, unsigned cap) {
        return b_monomial(g, to_index(alpha), cap);
      },
      py::arg("group"), py::arg("alpha"), py::arg("cap"));
  m.def(
      "distribution_from_moments",
      [](const MutableGroupPtr& g, const std::map<std::vector<unsigned>, Scalar>& moments, unsigned cap) {
        return Distribution::from_moments(g, terms_from_dict(moments), cap);
      },
      py::arg("group"), py::arg("moments"), py::arg("cap"));
  m.def(
      "convolve",
      [](const Distribution& a, const Distribution& b, unsigned cap, bool opposite) {
        return convolve(a, b, cap, opposite ? ProductOrder::Opposite : ProductOrder::Standard);
      },
      py::arg("a"), py::arg("b"), py::arg("cap"), py::arg("opposite") = false);
  m.def("st_norm", [](const Distribution& l, const Scalar& s) { return norm_tuple(st_norm(l, s)); }, py::arg("lam"),
        py::arg("sigma"));
  m.def("st_norm_prime", [](const Distribution& l, const Scalar& s) { return norm_tuple(st_norm_prime(l, s)); },
        py::arg("lam"), py::arg("sigma"));
  m.def("dagger_seminorm", [](const Distribution& l, const Scalar& s) { return norm_tuple(dagger_seminorm(l, s)); },
        py::arg("lam"), py::arg("sigma"));
  m.def("dagger_norm", [](const Distribution& l, unsigned N) { return norm_tuple(dagger_norm(l, N)); }, py::arg("lam"),
        py::arg("N"));

  // functions
  m.def(
      "eval_at",
      [](const MutableGroupPtr& g, const std::map<std::vector<unsigned>, Scalar>& f, std::vector<Scalar> x) {
        return eval_at(function_of(g, f), point(*g, std::move(x)));
      },
      py::arg("group"), py::arg("f"), py::arg("x"));
  m.def(
      "comul",
      [](const MutableGroupPtr& g, const std::map<std::vector<unsigned>, Scalar>& f) {
        return terms_to_dict(comul(function_of(g, f)).terms());
      },
      py::arg("group"), py::arg("f"));
  m.def(
      "inv_pullback",
      [](const MutableGroupPtr& g, const std::map<std::vector<unsigned>, Scalar>& f) {
        return terms_to_dict(inv_pullback(function_of(g, f)).body().terms());
      },
      py::arg("group"), py::arg("f"));
  m.def(
      "right_translate",
      [](const MutableGroupPtr& g, const std::map<std::vector<unsigned>, Scalar>& f, std::vector<Scalar> h) {
        return terms_to_dict(right_translate(function_of(g, f), point(*g, std::move(h))).body().terms());
      },
      py::arg("group"), py::arg("f"), py::arg("h"));
  m.def(
      "pair",
      [](const Distribution& lam, const std::map<std::vector<unsigned>, Scalar>& f) {
        return pair(lam, function_of(unconst(lam.shared_group()), f));
      },
      py::arg("lam"), py::arg("f"));

  // cli
  m.def(
      "verify_json",
      [](const std::string& group, const std::vector<std::string>& suites, unsigned n_min, unsigned n_max,
         const std::vector<Scalar>& sigmas, unsigned cap, unsigned trials, std::optional<std::uint64_t> seed) {
        SuiteConfig config;
        config.group = group;
        config.suites = suites;
        config.n_min = n_min;
        config.n_max = n_max;
        config.sigmas = sigmas;
        config.cap = cap;
        config.trials = trials;
        config.seed = seed;
        Report report;
        {
          py::gil_scoped_release release;
          report = run(config);
        }
        return emit(report, ReportFormat::Json);
      },
      py::arg("group"), py::arg("suites"), py::arg("n_min") = 1, py::arg("n_max") = 8,
      py::arg("sigmas") = std::vector<Scalar>{Scalar(1, 4), Scalar(1, 2), Scalar(3, 4), Scalar(1)}, py::arg("cap") = 8,
      py::arg("trials") = kDefaultSamples, py::arg("seed") = py::none());
  m.def("suite_names", &suite_names);
}
