// pybind11 surface of the divint core: rings, polynomials, divisors, and the
// verification entry points.  Reports come back as plain python objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <set>

#include <nlohmann/json.hpp>

#include "divint/exterior.hpp"
#include "divint/jobs.hpp"
#include "divint/pkd.hpp"
#include "divint/universal.hpp"

namespace py = pybind11;
using namespace divint;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

py::object json_to_py(const ordered_json& j) {
  switch (j.type()) {
    case nlohmann::detail::value_t::null: return py::none();
    case nlohmann::detail::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::detail::value_t::number_integer: return py::int_(j.get<long long>());
    case nlohmann::detail::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::detail::value_t::number_float: return py::float_(j.get<double>());
    case nlohmann::detail::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::detail::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    default: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
      return out;
    }
  }
}

ordered_json py_to_json(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    ordered_json arr = ordered_json::array();
    for (const auto& item : obj) arr.push_back(py_to_json(item));
    return arr;
  }
  if (py::isinstance<py::dict>(obj)) {
    ordered_json out = ordered_json::object();
    for (const auto& [key, value] : obj.cast<py::dict>())
      out[key.cast<std::string>()] = py_to_json(value);
    return out;
  }
  throw structural_error("unsupported python value in a job document");
}

py::dict report_to_py(const VerifyReport& rep) {
  py::list rows;
  for (const auto& r : rep.rows) {
    py::dict row;
    row["degree"] = r.degree;
    row["expected"] = r.expected;
    row["computed"] = r.computed;
    row["torsion"] = r.torsion;
    row["ok"] = r.ok;
    rows.append(row);
  }
  py::dict out;
  out["check"] = rep.check;
  out["pass"] = rep.pass;
  out["first_failure"] = rep.first_failure;
  out["rows"] = rows;
  return out;
}

// pybind11 cannot hold shared_ptr<const T>, so the ring travels inside a
// tiny value wrapper
struct PyRing {
  RingPtr ptr;
};

Divisor make_divisor(const PyRing& base, unsigned degree,
                     const std::vector<std::string>& coeffs) {
  std::vector<GradedPoly> cs;
  for (const auto& c : coeffs) cs.push_back(parse_poly(base.ptr, c));
  return Divisor(base.ptr, degree, std::move(cs));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact divisor-intersection calculus over truncated graded rings";

  py::register_exception<structural_error>(m, "StructuralError");

  py::class_<PyRing>(m, "Ring")
      .def(py::init([](const std::string& coeffs,
                       const std::vector<std::pair<std::string, unsigned>>& vars,
                       unsigned trunc) {
             std::vector<VarSpec> vs;
             for (const auto& [name, deg] : vars) vs.push_back({name, deg});
             return PyRing{make_ring(CoeffField::parse(coeffs), vs, trunc)};
           }),
           py::arg("coeffs"), py::arg("vars"), py::arg("trunc"))
      .def_property_readonly("trunc", [](const PyRing& r) { return r.ptr->trunc(); })
      .def_property_readonly("nvars", [](const PyRing& r) { return r.ptr->nvars(); })
      .def("__repr__", [](const PyRing& r) { return r.ptr->to_json().dump(); })
      .def("to_json", [](const PyRing& r) { return json_to_py(r.ptr->to_json()); });

  py::class_<GradedPoly>(m, "Poly")
      .def_property_readonly("ring", [](const GradedPoly& p) { return PyRing{p.ring()}; })
      .def("is_zero", &GradedPoly::is_zero)
      .def("__add__", &GradedPoly::operator+)
      .def("__sub__",
           py::overload_cast<const GradedPoly&>(&GradedPoly::operator-, py::const_))
      .def("__mul__", &GradedPoly::operator*)
      .def("__neg__", py::overload_cast<>(&GradedPoly::operator-, py::const_))
      .def("__eq__", &GradedPoly::operator==)
      .def("__str__", [](const GradedPoly& p) { return to_string(p); })
      .def("__repr__", [](const GradedPoly& p) { return to_string(p); });

  m.def(
      "poly", [](const PyRing& r, const std::string& text) { return parse_poly(r.ptr, text); },
      py::arg("ring"), py::arg("text"),
      "parse a polynomial expression in the ring's variables");

  py::class_<Divisor>(m, "Divisor")
      .def(py::init(&make_divisor), py::arg("base"), py::arg("degree"), py::arg("coeffs"),
           "divisor x^d + c_1 x^{d-1} + ... + c_d from coefficient expressions")
      .def_readonly("degree", &Divisor::degree)
      .def_property_readonly("base", [](const Divisor& d) { return PyRing{d.base}; })
      .def("to_json", [](const Divisor& d) { return json_to_py(d.to_json()); });

  m.def("universal_divisor", &universal_divisor, py::arg("degree"), py::arg("trunc"),
        py::arg("prefix") = "c");
  m.def("divisor_sum", &divisor_sum);
  m.def("intersection_rank", &intersection_rank);
  m.def("resultant", &resultant);
  m.def("laurent_coeffs", &laurent_coeffs, py::arg("d0"), py::arg("d1"), py::arg("count"));
  m.def("thom_porteous_minor", &thom_porteous_minor, py::arg("d0"), py::arg("d1"), py::arg("r"));
  m.def(
      "obstruction_ideal",
      [](const Divisor& d0, const Divisor& d1, size_t r) {
        std::vector<std::string> out;
        std::set<std::string> seen;
        for (const auto& g : int_obstruction_ideal(d0, d1, r).gens) {
          std::string s = to_string(g), neg = to_string(-g);
          if (seen.count(s) || seen.count(neg)) continue;
          seen.insert(s);
          out.push_back(s);
        }
        return out;
      },
      py::arg("d0"), py::arg("d1"), py::arg("r"));

  m.def(
      "verify_int_basis",
      [](unsigned d0, unsigned d1, unsigned r, unsigned max_degree, const std::string& coeffs,
         unsigned trunc) {
        UniversalSetup s(d0, d1, r, trunc ? trunc : max_degree);
        return report_to_py(verify_int_basis(s, max_degree, CoeffField::parse(coeffs)));
      },
      py::arg("d0"), py::arg("d1"), py::arg("r"), py::arg("max_degree"),
      py::arg("coeffs") = "Z", py::arg("trunc") = 0);
  m.def(
      "verify_pi_split_mono",
      [](unsigned d0, unsigned d1, unsigned r, unsigned max_degree, unsigned trunc) {
        UniversalSetup s(d0, d1, r, trunc ? trunc : max_degree);
        return report_to_py(verify_pi_split_mono(s, max_degree));
      },
      py::arg("d0"), py::arg("d1"), py::arg("r"), py::arg("max_degree"), py::arg("trunc") = 0);
  m.def(
      "verify_ps_identity",
      [](unsigned d0, unsigned d1, unsigned r, unsigned max_degree) {
        auto rep = r == std::min(d0, d1) ? verify_ps_anchor(d0, d1, max_degree)
                                         : verify_ps_identity(d0, d1, r, max_degree);
        py::dict out;
        out["pass"] = rep.pass;
        out["first_failure"] = rep.first_failure;
        std::vector<std::string> lhs, rhs;
        for (const auto& x : rep.lhs) lhs.push_back(x.get_str());
        for (const auto& x : rep.rhs) rhs.push_back(x.get_str());
        out["lhs"] = lhs;
        out["rhs"] = rhs;
        return out;
      },
      py::arg("d0"), py::arg("d1"), py::arg("r"), py::arg("max_degree"));

  m.def(
      "pkd_relators",
      [](const Divisor& d, unsigned k) {
        auto ctx = division_chain(d, k);
        auto dets = pkd_relators_det(ctx);
        py::dict out;
        std::vector<std::string> a, b, dd;
        for (const auto& g : ctx.a[k]) a.push_back(to_string(g));
        for (const auto& g : ctx.b) b.push_back(to_string(g));
        for (const auto& g : dets) dd.push_back(to_string(g));
        out["a_family"] = a;
        out["b_family"] = b;
        out["b_by_determinant"] = dd;
        out["determinant_formula_matches"] = dets == ctx.b;
        return out;
      },
      py::arg("divisor"), py::arg("k"));
  m.def(
      "pkd_basis_count",
      [](const Divisor& d, unsigned k) { return pkd_basis_monomials(division_chain(d, k)).size(); },
      py::arg("divisor"), py::arg("k"));
  m.def(
      "pkd_invariant_dims",
      [](const Divisor& d, unsigned k, const std::string& coeffs, unsigned max_degree) {
        auto ctx = division_chain(d, k);
        std::vector<size_t> dims;
        for (unsigned deg = 0; deg <= max_degree; ++deg)
          dims.push_back(sigma_invariant_dim(ctx, CoeffField::parse(coeffs), deg));
        return dims;
      },
      py::arg("divisor"), py::arg("k"), py::arg("coeffs"), py::arg("max_degree"));

  m.def(
      "phi_map",
      [](const Divisor& d, unsigned k, const std::vector<unsigned>& beta) {
        return to_string(phi_map(d, k, beta));
      },
      py::arg("divisor"), py::arg("k"), py::arg("beta"));
  m.def(
      "phi_determinant",
      [](const Divisor& d, unsigned k, const std::vector<unsigned>& beta) {
        return to_string(phi_determinant(d, k, beta));
      },
      py::arg("divisor"), py::arg("k"), py::arg("beta"));
  m.def(
      "verify_phi_iso",
      [](const Divisor& d, unsigned k, unsigned max_degree) {
        return report_to_py(verify_phi_iso(d, k, max_degree));
      },
      py::arg("divisor"), py::arg("k"), py::arg("max_degree"));

  m.def(
      "run_job",
      [](const py::dict& job) {
        auto result = run_job(py_to_json(job));
        py::dict out;
        out["exit_code"] = result.exit_code;
        out["report"] = json_to_py(result.report);
        return out;
      },
      py::arg("job"), "run a JobSpec document exactly like the CLI");
}
