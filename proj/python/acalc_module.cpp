#include "acalc/calculus.hpp"
#include "acalc/io.hpp"
#include "acalc/power_series.hpp"
#include "acalc/series.hpp"
#include "acalc/transcendental.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace acalc;

namespace {

// pybind11 holders must be non-const; AlgebraSpec is immutable, so the cast
// only relaxes the pointer type.
using PyAlg = std::shared_ptr<AlgebraSpec>;

PyAlg unconst(const Algebra& a) { return std::const_pointer_cast<AlgebraSpec>(a); }

std::string element_repr(const Element& e) {
    std::ostringstream os;
    os << "Element([";
    for (int i = 0; i < e.dim(); ++i) {
        if (i) os << ", ";
        os << e.coord(i);
    }
    os << "])";
    return os.str();
}

const char* kind_name(ElementKind k) {
    switch (k) {
        case ElementKind::Unit: return "unit";
        case ElementKind::ZeroDivisor: return "zero_divisor";
        case ElementKind::Zero: return "zero";
    }
    return "?";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "calculus over finite-dimensional real unital associative algebras";

    py::register_exception<AlgebraError>(m, "AlgebraError");

    py::enum_<SumStatus>(m, "SumStatus")
        .value("converged", SumStatus::Converged)
        .value("diverged", SumStatus::Diverged)
        .value("inconclusive", SumStatus::Inconclusive);

    py::class_<AlgebraSpec, PyAlg>(m, "Algebra")
        .def_property_readonly("dim", &AlgebraSpec::dim)
        .def_property_readonly("commutative", &AlgebraSpec::commutative)
        .def_property_readonly("m_theoretical", &AlgebraSpec::m_theoretical)
        .def_property_readonly("m_empirical", &AlgebraSpec::m_empirical)
        .def_property_readonly("labels", &AlgebraSpec::basis_labels)
        .def_property_readonly("unity_coords", &AlgebraSpec::unity_coords)
        .def("unity", &AlgebraSpec::unity)
        .def("zero", &AlgebraSpec::zero)
        .def("basis", &AlgebraSpec::basis_vector, py::arg("i"))
        .def("element", &AlgebraSpec::element, py::arg("coords"))
        .def("scalar", &AlgebraSpec::scalar, py::arg("t"))
        .def("constant", &AlgebraSpec::constant, py::arg("i"), py::arg("j"), py::arg("k"))
        .def("to_json", [](const AlgebraSpec& a) { return algebra_to_json(a); })
        .def("__repr__", [](const AlgebraSpec& a) {
            return "Algebra(dim=" + std::to_string(a.dim()) + ")";
        });

    m.def(
        "preset", [](const std::string& name) { return unconst(preset(name)); },
        py::arg("name"),
        "named algebra: complex, hyperbolic, dual, H_N:n, C_N:n, Gamma_N:n, "
        "direct_product:n");
    m.def(
        "build_algebra",
        [](const std::vector<double>& constants, const Eigen::VectorXd& unity,
           std::vector<std::string> labels) {
            return unconst(build_algebra(constants, unity, std::move(labels)));
        },
        py::arg("constants"), py::arg("unity"),
        py::arg("labels") = std::vector<std::string>{},
        "validate a flattened N*N*N structure-constant tensor");
    m.def(
        "load_algebra",
        [](const std::string& path) { return unconst(load_algebra_json(path)); },
        py::arg("path"));

    py::class_<Element>(m, "Element")
        .def_property_readonly("coords",
                               [](const Element& e) { return e.coords(); })
        .def_property_readonly("algebra",
                               [](const Element& e) { return unconst(e.algebra()); })
        .def("norm", &Element::norm)
        .def("__add__", [](const Element& a, const Element& b) { return a + b; })
        .def("__sub__", [](const Element& a, const Element& b) { return a - b; })
        .def("__neg__", [](const Element& a) { return -a; })
        .def("__mul__", [](const Element& a, const Element& b) { return mul(a, b); })
        .def("__mul__", [](const Element& a, double s) { return a * s; })
        .def("__rmul__", [](const Element& a, double s) { return a * s; })
        .def("pow", &Element::pow, py::arg("n"))
        .def("__repr__", &element_repr);

    m.def("mul", &mul, py::arg("x"), py::arg("y"));
    m.def("regular_rep", &regular_rep, py::arg("x"),
          "matrix of left multiplication in the declared basis");
    m.def(
        "classify",
        [](const Element& x) { return std::string(kind_name(classify(x))); },
        py::arg("x"));
    m.def("inverse", &inverse, py::arg("x"));

    py::class_<SumResult>(m, "SumResult")
        .def_readonly("value", &SumResult::value)
        .def_readonly("status", &SumResult::status)
        .def_readonly("terms_used", &SumResult::terms_used)
        .def_readonly("tail_estimate", &SumResult::tail_estimate)
        .def("__repr__", [](const SumResult& r) {
            return std::string("SumResult(") + to_string(r.status) +
                   ", terms=" + std::to_string(r.terms_used) + ")";
        });

    m.def(
        "sum_series",
        [](const Algebra& a, std::function<Element(std::int64_t)> term, double tol,
           int window, std::int64_t max_terms) {
            return sum(TermStream{a, std::move(term), max_terms}, tol, window);
        },
        py::arg("algebra"), py::arg("term"), py::arg("tol") = 1e-10,
        py::arg("window") = 8, py::arg("max_terms") = 4000);

    py::class_<RadiusReport>(m, "RadiusReport")
        .def_readonly("alpha_root", &RadiusReport::alpha_root)
        .def_readonly("alpha_ratio", &RadiusReport::alpha_ratio)
        .def_readonly("alpha_ratio_unit", &RadiusReport::alpha_ratio_unit)
        .def_readonly("R_root", &RadiusReport::R_root)
        .def_readonly("R_ratio_unit", &RadiusReport::R_ratio_unit)
        .def_readonly("R_ratio_real", &RadiusReport::R_ratio_real)
        .def_readonly("m_used", &RadiusReport::m_used)
        .def_readonly("probe", &RadiusReport::probe)
        .def_readonly("unit_coeffs", &RadiusReport::unit_coeffs)
        .def_readonly("real_coeffs", &RadiusReport::real_coeffs)
        .def_readonly("entire", &RadiusReport::entire);

    py::class_<PowerSeries>(m, "PowerSeries")
        .def_static("with_coeffs", &PowerSeries::with_coeffs, py::arg("algebra"),
                    py::arg("coeff"), py::arg("center") = std::nullopt)
        .def_static("with_real_coeffs", &PowerSeries::with_real_coeffs,
                    py::arg("algebra"), py::arg("coeff"),
                    py::arg("center") = std::nullopt)
        .def_static("from_list", &PowerSeries::from_list, py::arg("algebra"),
                    py::arg("coeffs"), py::arg("center") = std::nullopt)
        .def_static("geometric", &PowerSeries::geometric_series, py::arg("algebra"))
        .def_static(
            "parse",
            [](const std::string& spec, const Algebra& a) {
                return parse_coefficients(spec, a);
            },
            py::arg("spec"), py::arg("algebra"),
            "coefficient mini-language: real:EXPR | element:[..] | builtin:NAME")
        .def_property_readonly(
            "algebra", [](const PowerSeries& p) { return unconst(p.algebra()); })
        .def_property_readonly("center", &PowerSeries::center)
        .def_property_readonly("real_coeffs", &PowerSeries::real_coeffs)
        .def("coeff", &PowerSeries::coeff, py::arg("n"))
        .def("shifted", &PowerSeries::shifted, py::arg("center"));

    m.def("estimate_radii", &estimate_radii, py::arg("series"), py::arg("probe") = 200,
          py::arg("use_theoretical_m") = false);
    m.def(
        "eval_series",
        [](const PowerSeries& p, const Element& z, double tol, int window,
           std::int64_t max_terms) {
            return eval(p, z, EvalOptions{tol, window, max_terms});
        },
        py::arg("series"), py::arg("z"), py::arg("tol") = 1e-10, py::arg("window") = 8,
        py::arg("max_terms") = 4000);
    m.def("eval_truncated", &eval_truncated, py::arg("series"), py::arg("z"),
          py::arg("n"));
    m.def("derivative_series", &derivative_series, py::arg("series"),
          py::arg("order") = 1);
    m.def("product_series", &product_series, py::arg("a"), py::arg("b"));
    m.def(
        "geometric_check",
        [](const Algebra& a, const Element& z, double tol) {
            const GeometricResult r = geometric(a, z, EvalOptions{tol, 8, 20000});
            return py::make_tuple(r.sum, r.inverse_mismatch);
        },
        py::arg("algebra"), py::arg("z"), py::arg("tol") = 1e-10,
        "evaluate the geometric series and compare with (1 - z)^{-1}");
    m.def("uniform_tail_bound", &uniform_tail_bound, py::arg("series"), py::arg("L"),
          py::arg("tol"), py::arg("probe") = 64, py::arg("hard_cap") = 100000);

    py::class_<RegionScan>(m, "RegionScan")
        .def_readonly("u_values", &RegionScan::u_values)
        .def_readonly("v_values", &RegionScan::v_values)
        .def_property_readonly("verdicts",
                               [](const RegionScan& s) {
                                   std::vector<std::string> out;
                                   out.reserve(s.verdicts.size());
                                   for (SumStatus v : s.verdicts)
                                       out.emplace_back(to_string(v));
                                   return out;
                               })
        .def("verdict_at",
             [](const RegionScan& s, int iu, int iv) {
                 return std::string(to_string(s.verdict_at(iu, iv)));
             })
        .def("count_converged",
             [](const RegionScan& s) { return s.count(SumStatus::Converged); })
        .def("count_diverged",
             [](const RegionScan& s) { return s.count(SumStatus::Diverged); })
        .def("to_csv", [](const RegionScan& s) {
            std::ostringstream os;
            write_region_csv(os, s);
            return os.str();
        });

    m.def(
        "region_scan",
        [](const PowerSeries& p, const Element& origin, const Element& axis_u,
           const Element& axis_v, double u_min, double u_max, double v_min,
           double v_max, int nu, int nv, double tol, std::int64_t max_terms,
           int threads) {
            return region_scan(p, Slice{origin, axis_u, axis_v},
                               GridSpec{u_min, u_max, v_min, v_max, nu, nv},
                               EvalOptions{tol, 8, max_terms}, threads);
        },
        py::arg("series"), py::arg("origin"), py::arg("axis_u"), py::arg("axis_v"),
        py::arg("u_min"), py::arg("u_max"), py::arg("v_min"), py::arg("v_max"),
        py::arg("nu"), py::arg("nv"), py::arg("tol") = 1e-8,
        py::arg("max_terms") = 4000, py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());

    m.def("exp", [](const Element& z, double tol) { return exp(z, tol); },
          py::arg("z"), py::arg("tol") = 1e-12);
    m.def("cos", [](const Element& z, double tol) { return cos(z, tol); },
          py::arg("z"), py::arg("tol") = 1e-12);
    m.def("sin", [](const Element& z, double tol) { return sin(z, tol); },
          py::arg("z"), py::arg("tol") = 1e-12);
    m.def("cosh", [](const Element& z, double tol) { return cosh(z, tol); },
          py::arg("z"), py::arg("tol") = 1e-12);
    m.def("sinh", [](const Element& z, double tol) { return sinh(z, tol); },
          py::arg("z"), py::arg("tol") = 1e-12);
    m.def("n_trig", &n_trig, py::arg("N"), py::arg("p"), py::arg("z"),
          py::arg("tol") = 1e-12);
    m.def("n_hyperbolic", &n_hyperbolic, py::arg("N"), py::arg("p"), py::arg("z"),
          py::arg("tol") = 1e-12);

    py::class_<GeneratedAlgebra>(m, "GeneratedAlgebra")
        .def_property_readonly(
            "base", [](const GeneratedAlgebra& g) { return unconst(g.base); })
        .def_readonly("generator_index", &GeneratedAlgebra::generator_index)
        .def_readonly("power_value", &GeneratedAlgebra::power_value)
        .def("generator", &GeneratedAlgebra::generator);
    m.def("detect_generated", &detect_generated, py::arg("algebra"));

    py::class_<SpecialFunctionTable>(m, "SpecialFunctionTable")
        .def_readonly("grid", &SpecialFunctionTable::grid)
        .def_readonly("samples", &SpecialFunctionTable::samples)
        .def_readonly("reconstruction_residual",
                      &SpecialFunctionTable::reconstruction_residual)
        .def("coefficient", &SpecialFunctionTable::coefficient, py::arg("i"),
             py::arg("k"));
    m.def("special_functions", &special_functions, py::arg("generated"),
          py::arg("t_grid"), py::arg("tol") = 1e-12);

    py::class_<PythagoreanEvaluation>(m, "PythagoreanEvaluation")
        .def_readonly("argument", &PythagoreanEvaluation::argument)
        .def_readonly("matrix_over_A", &PythagoreanEvaluation::matrix_over_A)
        .def_readonly("value", &PythagoreanEvaluation::value);
    m.def("pythagorean", &pythagorean, py::arg("generated"), py::arg("z"));

    py::class_<IdentityReport>(m, "IdentityReport")
        .def_property_readonly("identities",
                               [](const IdentityReport& r) {
                                   std::vector<std::pair<std::string, double>> out;
                                   for (const auto& id : r.identities)
                                       out.emplace_back(id.name, id.max_residual);
                                   return out;
                               })
        .def_readonly("trials", &IdentityReport::trials)
        .def_readonly("seed", &IdentityReport::seed)
        .def_readonly("passed", &IdentityReport::pass);
    m.def("identity_suite", &identity_suite, py::arg("algebra"), py::arg("trials") = 100,
          py::arg("tol") = 1e-8, py::arg("seed") = 0xacc01adeu);

    py::class_<CRReport>(m, "CRReport")
        .def_readonly("jacobian", &CRReport::jacobian)
        .def_readonly("projected", &CRReport::projected)
        .def_readonly("residual", &CRReport::residual)
        .def_readonly("relative_residual", &CRReport::relative_residual)
        .def_readonly("a_derivative", &CRReport::a_derivative);
    m.def(
        "cr_residual",
        [](const Algebra& a, std::function<Element(const Element&)> f, const Element& p) {
            return cr_residual(AFunction{a, std::move(f)}, p);
        },
        py::arg("algebra"), py::arg("f"), py::arg("p"),
        "project the numeric Jacobian onto the regular representation");
    m.def(
        "numeric_jacobian",
        [](const Algebra& a, std::function<Element(const Element&)> f, const Element& p,
           double h) { return numeric_jacobian(AFunction{a, std::move(f)}, p, h); },
        py::arg("algebra"), py::arg("f"), py::arg("p"), py::arg("h") = 0.0);
    m.def(
        "loop_integral_circle",
        [](const Algebra& a, std::function<Element(const Element&)> f,
           const Element& center, double radius, const Element& axis_a,
           const Element& axis_b) {
            return curve_integral(AFunction{a, std::move(f)},
                                  circle(center, radius, axis_a, axis_b));
        },
        py::arg("algebra"), py::arg("f"), py::arg("center"), py::arg("radius"),
        py::arg("axis_a"), py::arg("axis_b"));
    m.def(
        "segment_integral",
        [](const Algebra& a, std::function<Element(const Element&)> f, const Element& z0,
           const Element& z1) {
            return curve_integral(AFunction{a, std::move(f)}, segment(z0, z1));
        },
        py::arg("algebra"), py::arg("f"), py::arg("z0"), py::arg("z1"));
}
