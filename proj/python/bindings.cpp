#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "affchab/chabauty.hpp"
#include "affchab/cli.hpp"
#include "affchab/error.hpp"
#include "affchab/hyperell.hpp"
#include "affchab/modeldata.hpp"
#include "affchab/padic.hpp"
#include "affchab/selmer.hpp"

namespace py = pybind11;
using namespace affchab;

namespace {

IntPoly to_poly(const std::vector<py::int_>& coeffs) {
    IntPoly f;
    for (const auto& c : coeffs) f.emplace_back(std::string(py::str(c)));
    return f;
}

py::int_ to_py(const mpz_class& z) { return py::int_(py::reinterpret_steal<py::object>(
    PyLong_FromString(z.get_str().c_str(), nullptr, 10))); }

NumberFieldInvariants make_inv(long degree, long unit_rank, long n, long num_cusp_points, long n1, long n2, long rank,
                               long genus) {
    NumberFieldInvariants inv{degree, unit_rank, n, num_cusp_points, n1, n2, rank, genus};
    inv.validate();
    return inv;
}

HyperellipticCurve curve_of(const std::vector<py::int_>& f) { return HyperellipticCurve::from_coefficients(to_poly(f)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Affine Chabauty core";
    py::register_exception<Error>(m, "AffchabError");

    py::class_<Padic>(m, "Padic")
        .def_static("parse", &Padic::parse)
        .def_static("from_int", [](long p, const py::int_& n, long k) {
            return Padic::from_int(p, mpz_class(std::string(py::str(n))), k);
        })
        .def_static("zero", &Padic::zero)
        .def_property_readonly("prime", &Padic::prime)
        .def_property_readonly("valuation", [](const Padic& a) -> py::object {
            if (a.is_exact_zero()) return py::none();
            return py::int_(a.valuation());
        })
        .def_property_readonly("abs_prec", [](const Padic& a) -> py::object {
            if (a.is_exact_zero()) return py::none();
            return py::int_(a.abs_prec());
        })
        .def("digits", &Padic::to_digit_string)
        .def("congruent", &Padic::congruent)
        .def("__add__", [](const Padic& a, const Padic& b) { return a + b; })
        .def("__sub__", [](const Padic& a, const Padic& b) { return a - b; })
        .def("__mul__", [](const Padic& a, const Padic& b) { return a * b; })
        .def("__truediv__", [](const Padic& a, const Padic& b) { return a / b; })
        .def("__neg__", [](const Padic& a) { return -a; })
        .def("__repr__", &Padic::to_string);

    m.def("iwasawa_log", &iwasawa_log);
    m.def("hensel_sqrt", &hensel_sqrt, py::arg("a"), py::arg("seed") = std::nullopt);

    m.def("count_affine_points", [](const std::vector<py::int_>& f, long p) {
        return count_affine_points(curve_of(f), p);
    });
    m.def("affine_points_mod", [](const std::vector<py::int_>& f, long p) { return affine_points_mod(curve_of(f), p); });
    m.def("integral_points", [](const std::vector<py::int_>& f, long H, const std::vector<long>& S) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& P : brute_force_integral_points(curve_of(f), H, S)) out.emplace_back(P.x.get_str(), P.y.get_str());
        return out;
    }, py::arg("f"), py::arg("height"), py::arg("S") = std::vector<long>{});
    m.def("cusp_invariants", [](const std::vector<py::int_>& f) {
        auto c = cusp_invariants(curve_of(f));
        return py::dict(py::arg("n") = c.n, py::arg("num_cusp_points") = c.num_points, py::arg("n1") = c.n1,
                        py::arg("n2") = c.n2);
    });
    m.def("liu_star_checks", [](const std::vector<py::int_>& f) {
        auto r = liu_star_checks(to_poly(f));
        py::dict d;
        d["pass"] = r.pass;
        d["odd_primes"] = r.odd_primes;
        d["failure"] = r.failure;
        if (r.Q) {
            py::list q;
            for (const auto& c : *r.Q) q.append(to_py(c));
            d["Q"] = q;
        }
        if (r.P) {
            py::list pl;
            for (const auto& c : *r.P) pl.append(to_py(c));
            d["P"] = pl;
        }
        return d;
    });
    m.def("bound_thm61", [](const std::vector<py::int_>& f, long p, long rank) {
        return bound_thm61(curve_of(f), p, rank);
    });

    py::class_<NumberFieldInvariants>(m, "Invariants")
        .def(py::init(&make_inv), py::arg("degree") = 1, py::arg("unit_rank") = 0, py::arg("n") = 2,
             py::arg("num_cusp_points") = 2, py::arg("n1") = 2, py::arg("n2") = 0, py::arg("rank") = 0,
             py::arg("genus") = 1)
        .def_readwrite("rank", &NumberFieldInvariants::rank);
    m.def("ker_sigma_rank", &ker_sigma_rank);
    m.def("selmer_rank", &selmer_rank);
    m.def("chabauty_condition", &chabauty_condition);
    m.def("ros_condition", &ros_condition);

    m.def("normalize_fibre", [](const std::string& bytes) { return serialize_fibre(parse_fibre_file(bytes)); });
    m.def("check_d_transversal", [](const std::string& bytes) { return check_d_transversal(parse_fibre_file(bytes)); });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
