#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pg3q/report.hpp"
#include "pg3q/verify.hpp"

namespace py = pybind11;
using namespace pg3q;

namespace {

BinaryForm form_from_list(const std::vector<int>& z) {
    if (z.size() < 3 || z.size() > 5) throw std::invalid_argument("expected 3 to 5 coefficients");
    BinaryForm f;
    f.degree = int(z.size()) - 1;
    for (size_t i = 0; i < z.size(); ++i) {
        if (z[i] < 0) throw std::invalid_argument("coefficients are canonical indices, >= 0");
        f.z[i] = Fq(z[i]);
    }
    return f;
}

std::vector<int> form_to_list(const BinaryForm& f) {
    std::vector<int> out(f.degree + 1);
    for (int i = 0; i <= f.degree; ++i) out[i] = f.z[i];
    return out;
}

VerifyMode mode_from_string(const FieldContext& F, const std::string& mode) {
    if (mode.empty()) return default_mode(F.q());
    if (mode == "census") return VerifyMode::Census;
    if (mode == "invariant") return VerifyMode::Invariant;
    throw std::invalid_argument("mode must be 'census' or 'invariant'");
}

py::list results_to_py(const std::vector<VerificationResult>& results) {
    py::list out;
    for (auto& r : results) {
        py::dict d;
        d["id"] = r.id;
        d["q"] = r.q;
        d["expected"] = r.expected;
        d["observed"] = r.observed;
        d["pass"] = r.pass;
        d["ms"] = r.ms;
        d["notes"] = r.notes;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_pg3q, m) {
    m.doc() = "orbit classification and incidence verification for the twisted cubic in PG(3,q), q = 3^m";

    py::class_<FieldContext>(m, "FieldContext")
        .def(py::init<int>(), py::arg("q"),
             "Build the field tower for q in {9, 27, 81} with the default polynomials")
        .def_static(
            "from_config",
            [](const std::string& path) { return FieldContext(FieldConfig::from_file(path)); },
            py::arg("path"))
        .def_property_readonly("q", &FieldContext::q)
        .def_property_readonly("m", &FieldContext::m)
        .def_property_readonly("epsilon", &FieldContext::epsilon)
        .def_property_readonly("gamma", &FieldContext::gamma)
        .def("add", [](const FieldContext& F, int a, int b) { return int(F.add1(Fq(a), Fq(b))); },
             "Base-field addition on canonical indices")
        .def("sub", [](const FieldContext& F, int a, int b) { return int(F.sub1(Fq(a), Fq(b))); })
        .def("mul", [](const FieldContext& F, int a, int b) { return int(F.mul1(Fq(a), Fq(b))); })
        .def("neg", [](const FieldContext& F, int a) { return int(F.neg1(Fq(a))); })
        .def("inv", [](const FieldContext& F, int a) { return int(F.inv1(Fq(a))); })
        .def("is_square", [](const FieldContext& F, int a) { return F.is_square1(Fq(a)); })
        .def("trace_to_prime", [](const FieldContext& F, int a) { return int(F.trace_to_prime(Fq(a))); })
        .def("__repr__",
             [](const FieldContext& F) { return "FieldContext(q=" + std::to_string(F.q()) + ")"; });

    m.def("discriminant",
          [](const FieldContext& F, const std::vector<int>& z) { return int(discriminant(F, form_from_list(z))); },
          py::arg("ctx"), py::arg("coeffs"));
    m.def("j_invariant",
          [](const FieldContext& F, const std::vector<int>& z) { return int(j_invariant(F, form_from_list(z))); },
          py::arg("ctx"), py::arg("coeffs"));
    m.def("factorization_type",
          [](const FieldContext& F, const std::vector<int>& z) {
              return std::string(to_string(factorization_type(F, form_from_list(z))));
          },
          py::arg("ctx"), py::arg("coeffs"));
    m.def("canonical_invariant",
          [](const FieldContext& F, const std::vector<int>& z) {
              auto inv = canonical_invariant(F, form_from_list(z));
              return py::make_tuple(std::string(to_string(inv.type)), int(inv.lambda.level),
                                    int64_t(inv.lambda.idx));
          },
          py::arg("ctx"), py::arg("coeffs"),
          "Complete orbit invariant (type, lambda level, lambda index) for nonzero discriminant");
    m.def("act_on_form",
          [](const FieldContext& F, const std::vector<int>& g, const std::vector<int>& z) {
              if (g.size() != 4) throw std::invalid_argument("expected matrix entries (a, b, c, d)");
              auto ge = group_make(F, Fq(g[0]), Fq(g[1]), Fq(g[2]), Fq(g[3]));
              return form_to_list(act_on_form(F, ge, form_from_list(z)));
          },
          py::arg("ctx"), py::arg("g"), py::arg("coeffs"));
    m.def("rep_E",
          [](const FieldContext& F, int r) { return form_to_list(rep_E(F, Fq(r))); }, py::arg("ctx"),
          py::arg("r"), "Quartic with j-invariant r, one orbit representative per nonzero r");
    m.def("classify_j",
          [](const FieldContext& F, int r) { return int(classify_j(F, Fq(r))); }, py::arg("ctx"),
          py::arg("r"), "1, 2 or 4 according to the square/trace class of r");

    m.def("count_points",
          [](const FieldContext& F, int r) { return count_points(F, {Fq(r)}); }, py::arg("ctx"),
          py::arg("r"), "Rational point count of the elliptic curve attached to r");
    m.def("zeta", [](const FieldContext& F, const std::vector<int>& z) { return zeta(F, form_from_list(z)); },
          py::arg("ctx"), py::arg("coeffs"));

    m.def("point_tally",
          [](const FieldContext& F, const std::vector<int>& z) {
              std::array<Fq, 6> za;
              if (z.size() != 6) throw std::invalid_argument("expected 6 coordinates (z0..z5)");
              for (int i = 0; i < 6; ++i) za[i] = Fq(z[i]);
              auto t = point_line_incidence(F, line_from_z(F, za));
              return std::vector<int>(t.n.begin(), t.n.end());
          },
          py::arg("ctx"), py::arg("z"),
          "Tally of the points of the line with quadric coordinates z over (C, AX, T, RC, IC)");
    m.def("plane_tally",
          [](const FieldContext& F, const std::vector<int>& z) {
              std::array<Fq, 6> za;
              if (z.size() != 6) throw std::invalid_argument("expected 6 coordinates (z0..z5)");
              for (int i = 0; i < 6; ++i) za[i] = Fq(z[i]);
              auto t = line_plane_incidence(F, line_from_z(F, za));
              return std::vector<int>(t.n.begin(), t.n.end());
          },
          py::arg("ctx"), py::arg("z"),
          "Tally of the planes through the line with quadric coordinates z over (N1..N5)");

    m.def("verify_forms",
          [](const FieldContext& F, const std::string& mode) {
              return results_to_py(verify_forms(F, mode_from_string(F, mode)));
          },
          py::arg("ctx"), py::arg("mode") = "");
    m.def("verify_lines",
          [](const FieldContext& F, const std::string& mode) {
              return results_to_py(verify_lines(F, mode_from_string(F, mode)));
          },
          py::arg("ctx"), py::arg("mode") = "");
    m.def("verify_incidence",
          [](const FieldContext& F, const std::string& mode) {
              return results_to_py(verify_incidence(F, mode_from_string(F, mode)));
          },
          py::arg("ctx"), py::arg("mode") = "");

    m.def("form_census_json", &form_census_json, py::arg("ctx"),
          "Orbit census of quartics with nonzero discriminant as a JSON string (q <= 27)");
    m.def("emit_tables", &emit_tables, py::arg("ctx"), py::arg("format"), py::arg("outdir"),
          "Write the table reproductions; returns the file paths");
}
