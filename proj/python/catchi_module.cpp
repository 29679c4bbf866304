#include "catchi/coxeter.hpp"
#include "catchi/exotic_spaces.hpp"
#include "catchi/lattice.hpp"
#include "catchi/metric_core.hpp"
#include "catchi/model_geometry.hpp"
#include "catchi/report.hpp"
#include "catchi/singularity.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace catchi;

namespace {

py::object fraction(const Rational& x)
{
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(to_string(x));
}

py::list fractions(const LatticeVector& v)
{
    py::list out;
    for (const auto& x : v) out.append(fraction(x));
    return out;
}

Rational to_rational_any(const py::handle& h)
{
    return parse_rational(py::str(h).cast<std::string>());
}

GramLattice gram_from_rows(const std::vector<std::vector<py::object>>& rows)
{
    RationalMatrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw DimensionError("Gram matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = to_rational_any(rows[i][j]);
    }
    return GramLattice(m);
}

py::tuple signature_tuple(const Signature& s) { return py::make_tuple(s.n_plus, s.n_zero, s.n_minus); }

Arm arm_from(const std::string& s)
{
    if (s == "p") return Arm::p;
    if (s == "q") return Arm::q;
    if (s == "r") return Arm::r;
    throw DomainError("arm must be p, q or r");
}

ETypePair type_from(const std::pair<std::string, std::string>& t) { return {arm_from(t.first), arm_from(t.second)}; }

py::dict witness_dict(const CatWitness& w)
{
    py::dict d;
    d["edge1"] = w.edge1;
    d["u"] = w.u;
    d["edge2"] = w.edge2;
    d["v"] = w.v;
    d["measured"] = w.measured;
    d["comparison"] = w.comparison;
    d["violation"] = w.violation;
    return d;
}

// None on a pass, the witness otherwise.
py::object cat_result(const CatResult& r)
{
    if (passed(r)) return py::none();
    return witness_dict(std::get<CatWitness>(r));
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "CAT(k) comparison geometry and the lattice computations around cusp singularities";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InadmissibleTriangle>(m, "InadmissibleTriangle", PyExc_ValueError);
    py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

    m.def("side_from_angle",
          [](double chi, double a, double b, double gamma) { return side_from_angle(Curvature(chi), a, b, gamma); },
          py::arg("chi"), py::arg("a"), py::arg("b"), py::arg("gamma"));
    m.def("angle_from_sides",
          [](double chi, double a, double b, double c) { return angle_from_sides(Curvature(chi), a, b, c); },
          py::arg("chi"), py::arg("a"), py::arg("b"), py::arg("c"));

    m.def(
        "cone_distance",
        [](double circumference, std::pair<double, double> p, std::pair<double, double> q) {
            return CircleCone(circumference).distance({p.first, p.second}, {q.first, q.second});
        },
        py::arg("circumference"), py::arg("p"), py::arg("q"), "Points are (t, theta) pairs.");
    m.def(
        "cone_cat_test",
        [](double circumference, std::array<std::pair<double, double>, 3> v, double chi, int samples, double tol) {
            const CircleCone cone(circumference);
            const auto tri = cone.triangle({v[0].first, v[0].second}, {v[1].first, v[1].second},
                                           {v[2].first, v[2].second});
            return cat_result(cat_test(tri, Curvature(chi), cone.oracle(), {samples, tol}));
        },
        py::arg("circumference"), py::arg("vertices"), py::arg("chi") = 0.0, py::arg("samples") = 32,
        py::arg("tol") = 1e-9, "None if the triangle passes, else the worst witness as a dict.");
    m.def("crushed_distance", [](std::optional<std::pair<double, double>> p, std::optional<std::pair<double, double>> q) {
        const auto pt = [](const std::optional<std::pair<double, double>>& x) {
            return x ? CrushedPoint::at(x->first, x->second) : CrushedPoint::crushed();
        };
        return crushed_distance(pt(p), pt(q));
    });
    m.def("crushed_cat_witness", [] { return witness_dict(crushed_cat_witness().witness); });

    m.def("signature", [](const std::vector<std::vector<py::object>>& rows) {
        return signature_tuple(signature(gram_from_rows(rows)));
    });
    m.def("k3_signature", [] { return signature_tuple(signature(k3_gram())); });
    m.def("e8_norm2_count", [] {
        const auto g = e8_gram(1);
        return enumerate_norm_vectors(g, 2, norm_box_bound(g, 2)).vectors.size();
    });

    m.def("root_count", [](const std::string& label) {
        const auto [type, rank] = parse_ade(label);
        return generate_roots(type, rank).roots.size();
    });
    m.def(
        "local_subsystem",
        [](const std::string& label, const std::vector<py::object>& point) {
            const auto [type, rank] = parse_ade(label);
            LatticeVector x;
            for (const auto& c : point) x.push_back(to_rational_any(c));
            const auto loc = local_subsystem(generate_roots(type, rank), x);
            return py::make_tuple(loc.roots.size(), loc.rank);
        },
        py::arg("label"), py::arg("point"), "(root count, rank) of the roots orthogonal to the point.");

    m.def("weyl_signature", [](int p, int q, int r) { return signature_tuple(weyl_signature(p, q, r)); });
    m.def("core", [](int p, int q, int r) {
        const auto c = core_nodes(p, q, r);
        std::vector<std::string> ends;
        for (Arm a : c.free_ends) ends.push_back(to_string(a));
        return py::make_tuple(to_string(c.kind), ends);
    });
    m.def(
        "y_projection",
        [](int p, int q, int r, std::pair<std::string, std::string> type) {
            const auto y = y_projection(p, q, r, type_from(type));
            return py::make_tuple(fractions(y.y), fraction(y.norm));
        },
        py::arg("p"), py::arg("q"), py::arg("r"), py::arg("type"), "type is (plus_end, minus_end), e.g. ('p', 'q').");
    m.def("n_plus_2", [](int p, int q, int r, std::pair<std::string, std::string> type) {
        return fraction(n_plus_2(p, q, r, type_from(type)));
    });
    m.def(
        "verify_alpha_one",
        [](int max_sum) { return py::module_::import("json").attr("loads")(verify_alpha_one(max_sum).to_json()); },
        py::arg("max_sum") = 22);
    m.def("dual_cycle", [](std::vector<int> c) { return dual_cycle(CycleSeq(std::move(c))).entries; });
    m.def("cusp_row", [](int p, int q, int r) {
        const auto row = cusp_row(p, q, r);
        py::dict d;
        d["c"] = row.c.entries;
        d["c_prime"] = row.c_prime.entries;
        d["d_prime"] = row.d_prime.entries;
        d["d"] = row.d.entries;
        d["family"] = row.family;
        return d;
    });

    m.def(
        "run",
        [](std::vector<std::string> command, std::vector<std::string> args, std::uint64_t seed, int samples,
           double tol, int triangles, std::string circumference, int max_sum) {
            cli::RunConfig c;
            c.command = std::move(command);
            c.args = std::move(args);
            c.seed = seed;
            c.samples = samples;
            c.tol = tol;
            c.triangles = triangles;
            c.circumference = std::move(circumference);
            c.max_sum = max_sum;
            return cli::run(c).render("json");
        },
        py::arg("command"), py::arg("args") = std::vector<std::string>{}, py::arg("seed") = 0,
        py::arg("samples") = 32, py::arg("tol") = 1e-9, py::arg("triangles") = 0, py::arg("circumference") = "tau",
        py::arg("max_sum") = 22, "Runs a CLI subcommand and returns the JSON report.");

    m.attr("__version__") = cli::version();
}
