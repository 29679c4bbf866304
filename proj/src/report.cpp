#include "catchi/report.hpp"

#include "catchi/coxeter.hpp"
#include "catchi/exotic_spaces.hpp"
#include "catchi/lattice.hpp"
#include "catchi/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#ifndef CATCHI_VERSION
#define CATCHI_VERSION "0.0.0"
#endif

namespace catchi::cli {

using nlohmann::json;

std::string version() { return CATCHI_VERSION; }

int Report::passed() const
{
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.passed; }));
}

int Report::failed() const { return static_cast<int>(checks.size()) - passed(); }

json Report::to_json() const
{
    json cs = json::array();
    for (const auto& c : checks)
        cs.push_back({{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"data", c.data}});
    return {{"config", config},
            {"checks", cs},
            {"summary", {{"passed", passed()}, {"failed", failed()}}},
            {"seed", seed},
            {"version", version()}};
}

std::string Report::render(const std::string& format) const
{
    if (format == "json") return to_json().dump(2) + "\n";
    std::ostringstream os;
    std::string command;
    for (const auto& part : config.at("command")) command += " " + part.get<std::string>();
    os << "# catchi" << command << "\n\n";
    os << "seed " << seed << ", version " << version() << "\n\n";
    os << "| check | status |\n|---|---|\n";
    for (const auto& c : checks) os << "| " << c.name << " | " << (c.passed ? "pass" : "FAIL") << " |\n";
    os << "\n" << passed() << " passed, " << failed() << " failed\n";
    for (const auto& c : checks) {
        if (c.data.is_null()) continue;
        os << "\n## " << c.name << "\n\n```json\n" << c.data.dump(2) << "\n```\n";
    }
    return os.str();
}

int exit_status(const Report& report, bool expect_fail)
{
    const bool any_failed = report.failed() > 0;
    if (expect_fail) return any_failed ? kExitOk : kExitCheckFailed;
    return any_failed ? kExitCheckFailed : kExitOk;
}

double parse_circumference(const std::string& text)
{
    if (text == "inf" || text == "+inf" || text == "infinity") return kInfinity;
    double unit = 1.0;
    std::string number = text;
    auto strip = [&](const std::string& suffix, double value) {
        if (number.size() >= suffix.size() && number.compare(number.size() - suffix.size(), suffix.size(), suffix) == 0) {
            number.erase(number.size() - suffix.size());
            unit = value;
            return true;
        }
        return false;
    };
    if (!strip("tau", 2.0 * std::numbers::pi)) strip("pi", std::numbers::pi);
    double factor = 1.0;
    if (!number.empty()) {
        std::size_t used = 0;
        try {
            factor = std::stod(number, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad circumference \"" + text + "\"");
        }
        if (used != number.size()) throw ConfigError("bad circumference \"" + text + "\"");
    }
    const double L = factor * unit;
    if (!(L > 0.0)) throw ConfigError("circumference must be positive");
    return L;
}

namespace {

json witness_json(const CatWitness& w)
{
    return {{"edge1", w.edge1}, {"u", w.u},          {"edge2", w.edge2},
            {"v", w.v},         {"measured", w.measured}, {"comparison", w.comparison},
            {"violation", w.violation}};
}

json config_json(const RunConfig& c)
{
    return {{"command", c.command},
            {"args", c.args},
            {"chi", c.chi},
            {"samples", c.samples},
            {"tol", c.tol},
            {"format", c.format},
            {"expect_fail", c.expect_fail},
            {"triangles", c.triangles},
            {"max_sum", c.max_sum},
            {"circumference", c.circumference},
            {"sheets", c.sheets},
            {"mesh", {{"nx", c.nx}, {"nphi", c.nphi}, {"x_min", c.x_min}, {"x_max", c.x_max}, {"x0", c.x0}}},
            {"refine", c.refine},
            {"thetas", c.thetas},
            {"input", c.input},
            {"gram", c.gram},
            {"re", c.re},
            {"im", c.im},
            {"point", c.point},
            {"expect", c.expect}};
}

void validate(const RunConfig& c)
{
    if (c.command.empty()) throw ConfigError("no subcommand given");
    if (!(c.tol > 0.0)) throw ConfigError("--tol must be positive");
    if (c.samples < 8) throw ConfigError("--samples must be at least 8");
    if (c.format != "json" && c.format != "md") throw ConfigError("--format must be json or md");
    if (c.triangles < 0) throw ConfigError("--triangles must be nonnegative");
    if (c.max_sum < 6) throw ConfigError("--max-sum must be at least 6");
    if (!std::isfinite(c.chi)) throw ConfigError("--chi must be finite");
}

int parse_int(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("bad " + what + " \"" + s + "\"");
}

// Exact decimal or p/q.
Rational parse_exact(const std::string& s0)
{
    std::string s = s0;
    s.erase(std::remove_if(s.begin(), s.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }),
            s.end());
    try {
        const auto dot = s.find('.');
        if (dot == std::string::npos) return parse_rational(s);
        const bool negative = !s.empty() && s[0] == '-';
        const std::string whole = s.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
        const std::string frac = s.substr(dot + 1);
        if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos ||
            whole.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad decimal");
        Integer scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Rational value(Integer(whole.empty() ? "0" : whole) * scale + Integer(frac), scale);
        return negative ? -value : value;
    } catch (const std::exception&) {
        throw ConfigError("not an exact number: \"" + s0 + "\"");
    }
}

LatticeVector parse_vector(const std::string& text)
{
    LatticeVector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_exact(item));
    return out;
}

json vector_json(const LatticeVector& v)
{
    json out = json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CatOptions cat_options(const RunConfig& c) { return {c.samples, c.tol}; }

template <class Point>
struct CatTally {
    int passed = 0;
    int failed = 0;
    int inadmissible = 0;
    double worst_pass = -kInfinity;
    std::optional<CatWitness> worst;

    void add(const TriangleSpec<Point>& tri, Curvature chi, const MetricOracle<Point>& d, CatOptions opt)
    {
        try {
            const auto result = cat_test(tri, chi, d, opt);
            if (passed_result(result)) {
                ++passed;
                worst_pass = std::max(worst_pass, std::get<CatPass>(result).worst_violation);
            } else {
                ++failed;
                const auto& w = std::get<CatWitness>(result);
                if (!worst || w.violation > worst->violation) worst = w;
            }
        } catch (const InadmissibleTriangle&) {
            ++inadmissible;
        }
    }

    static bool passed_result(const CatResult& r) { return catchi::passed(r); }

    json to_json() const
    {
        json out{{"passed", passed}, {"failed", failed}, {"inadmissible", inadmissible}};
        if (passed > 0) out["worst_passing_violation"] = worst_pass;
        if (worst) out["witness"] = witness_json(*worst);
        return out;
    }
};

std::string format_length(double L)
{
    if (std::isinf(L)) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << L;
    return os.str();
}

// Cone over a circle of circumference L against its CAT(1) base.
void cone_checks(const RunConfig& c, double L, Report& report)
{
    const CircleCone cone(L);
    const Curvature chi(c.chi_set ? c.chi : 0.0);
    const int n = c.triangles > 0 ? c.triangles : 200;
    std::mt19937_64 rng(c.seed);

    CatTally<ConePoint> random;
    for (int k = 0; k < n; ++k) random.add(cone.random_triangle(rng), chi, cone.oracle(), cat_options(c));
    json random_data = random.to_json();
    random_data["circumference"] = format_length(L);
    report.checks.push_back({"cone_random_triangles", random.failed == 0, random_data});

    // Three points at equal angular spacing around the apex.
    const double spread = std::isinf(L) ? 2.0 * std::numbers::pi / 3.0 : L / 3.0;
    CatTally<ConePoint> probe;
    probe.add(cone.triangle({1.0, 0.0}, {1.0, spread}, {1.0, 2.0 * spread}), chi, cone.oracle(), cat_options(c));
    report.checks.push_back({"cone_symmetric_triangle", probe.failed == 0, probe.to_json()});
    const bool cone_ok = random.failed == 0 && probe.failed == 0;

    if (std::isinf(L)) return;
    const CircleSpace circle(L);
    CatTally<CirclePoint> base;
    base.add(circle.triangle(0.0, L / 3.0, 2.0 * L / 3.0), Curvature(1.0), circle.oracle(), cat_options(c));
    std::uniform_real_distribution<double> angle(0.0, L);
    for (int k = 0; k < n; ++k)
        base.add(circle.triangle(angle(rng), angle(rng), angle(rng)), Curvature(1.0), circle.oracle(), cat_options(c));
    const bool circle_ok = base.failed == 0;
    report.checks.push_back({"circle_cat1", circle_ok, base.to_json()});
    report.checks.push_back({"cone_circle_agreement", cone_ok == circle_ok,
                             {{"cone_cat0", cone_ok}, {"circle_cat1", circle_ok}}});
}

void run_cone(const RunConfig& c, Report& report) { cone_checks(c, parse_circumference(c.circumference), report); }

void run_branched_plane(const RunConfig& c, Report& report)
{
    const std::string sheets = c.args.empty() ? c.sheets : c.args.front();
    double L = kInfinity;
    if (sheets != "inf") {
        const int k = parse_int(sheets, "sheet count");
        if (k < 1) throw ConfigError("sheet count must be positive");
        L = 2.0 * std::numbers::pi * k;
    }
    cone_checks(c, L, report);

    // Balls about points off the branch point, radius half the distance to it.
    const CircleCone cone(L);
    std::vector<ConePoint> delta{{0.0, 0.0}};
    std::vector<ConePoint> probes;
    for (int k = 0; k < 4; ++k) probes.push_back({1.0 + 0.5 * k, 1.3 * k});
    const auto scan = hypothesis_c_scan<ConePoint>(cone.oracle(), delta, 0.5, probes, Curvature(0.0),
                                                   cone.ball_sampler(), 25, c.seed, cat_options(c));
    json data{{"lambda", scan.lambda}, {"passed", scan.total_passed}, {"failed", scan.total_failed}};
    if (scan.worst) data["witness"] = witness_json(*scan.worst);
    report.checks.push_back({"hypothesis_c_balls", scan.all_passed(), data});
}

void run_crushed(const RunConfig& c, Report& report)
{
    const auto w = crushed_cat_witness();
    report.checks.push_back({"crushed_witness",
                             w.witness.measured == 1.0 && w.witness.comparison == 0.5 && w.witness.violation == 0.5,
                             witness_json(w.witness)});

    const int n = c.triangles > 0 ? c.triangles : 100;
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> xs(0.05, 2.0), ys(-2.0, 2.0);
    // An edge lying in the crushed set: two vertices at 0, the third anywhere.
    CatTally<CrushedPoint> edge_at_0;
    for (int k = 0; k < n; ++k) {
        const auto p = CrushedPoint::at(xs(rng), ys(rng));
        edge_at_0.add(crushed_triangle(CrushedPoint::crushed(), CrushedPoint::crushed(), p), Curvature(0.0),
                      crushed_oracle(), cat_options(c));
    }
    report.checks.push_back({"triangles_with_edge_at_0", edge_at_0.failed == 0, edge_at_0.to_json()});
}

void run_tangent(const RunConfig& c, Report& report)
{
    // Germs leaving the crushed point horizontally at two heights.
    const Germ<CrushedPoint> g1{CrushedPoint::crushed(), [](double t) { return CrushedPoint::at(t, 0.0); }};
    const Germ<CrushedPoint> g2{CrushedPoint::crushed(), [](double t) { return CrushedPoint::at(t, 1.0); }};
    const auto est = tangent_distance_estimate(g1, g2, crushed_oracle());
    report.checks.push_back({"crushed_germs", std::abs(est.value - 2.0) <= 1e-6,
                             {{"estimate", est.value}, {"expected", 2.0}}});

    std::vector<double> thetas = c.thetas;
    if (thetas.empty()) thetas = {0.25, std::numbers::pi / 3.0, std::numbers::pi / 2.0, 2.0, std::numbers::pi};
    const CircleCone plane(2.0 * std::numbers::pi);
    for (double theta : thetas) {
        const Germ<ConePoint> r1{{0.0, 0.0}, [](double t) { return ConePoint{t, 0.0}; }};
        const Germ<ConePoint> r2{{0.0, 0.0}, [theta](double t) { return ConePoint{t, theta}; }};
        const auto e = tangent_distance_estimate(r1, r2, plane.oracle());
        const double expected = 2.0 * std::sin(theta / 2.0);
        std::ostringstream name;
        name << "euclidean_rays theta=" << theta;
        report.checks.push_back({name.str(), std::abs(e.value - std::abs(expected)) <= 1e-8,
                                 {{"theta", theta}, {"estimate", e.value}, {"expected", std::abs(expected)}}});
    }
}

std::size_t nearest_ring(const MeshSurface& mesh, double x0)
{
    const double dx = (mesh.x_max() - mesh.x_min()) / static_cast<double>(mesh.nx());
    const double pos = std::round((x0 - mesh.x_min()) / dx);
    if (pos < 0.0 || pos > static_cast<double>(mesh.nx())) throw ConfigError("--x0 lies outside the mesh");
    return static_cast<std::size_t>(pos);
}

BigonReport bigon_at(const MeshSurface& mesh, double x0)
{
    const std::size_t ring = nearest_ring(mesh, x0);
    return mesh_bigon(mesh, mesh.id(ring, 0), mesh.id(ring, mesh.nphi() / 2));
}

void run_cusp_mesh(const RunConfig& c, Report& report)
{
    if (!(c.x_min > 0.0 && c.x_max > c.x_min)) throw ConfigError("mesh needs 0 < x_min < x_max");
    if (c.nx < 8 || c.nphi < 8 || c.nphi % 4 != 0) throw ConfigError("mesh needs nx >= 8 and nphi a multiple of 4, >= 8");
    const MeshSurface mesh(c.x_min, c.x_max, c.nx, c.nphi, cusp_profile());
    if (!c.mesh_out.empty()) {
        std::ofstream out(c.mesh_out);
        if (!out) throw ConfigError("cannot write " + c.mesh_out);
        out << mesh_to_json(mesh) << "\n";
    }
    const std::size_t ring = nearest_ring(mesh, c.x0);
    const BigonReport b = bigon_at(mesh, c.x0);
    const double x_ring = mesh.vertex(mesh.id(ring, 0)).x;
    const json lengths{{"x", x_ring},
                       {"left", b.left.length},
                       {"right", b.right.length},
                       {"ratio", b.length_ratio}};
    report.checks.push_back({"bigon_lengths_agree", b.length_ratio <= 1.01, lengths});
    report.checks.push_back({"bigon_separated", b.normalized_separation > 0.1,
                             {{"max_separation", b.max_separation}, {"normalized", b.normalized_separation}}});
    if (!c.refine) return;

    const MeshSurface fine(c.x_min, c.x_max, 2 * c.nx, 2 * c.nphi, cusp_profile());
    // The doubled mesh contains every coarse ring; compare on the same one.
    const BigonReport f = bigon_at(fine, x_ring);
    const double dl = std::abs(f.left.length - b.left.length) / b.left.length;
    const double dr = std::abs(f.right.length - b.right.length) / b.right.length;
    report.checks.push_back({"refinement_stable", dl < 0.005 && dr < 0.005,
                             {{"x", fine.vertex(fine.id(nearest_ring(fine, x_ring), 0)).x},
                              {"left", f.left.length},
                              {"right", f.right.length},
                              {"relative_change_left", dl},
                              {"relative_change_right", dr}}});
}

// A space named in a cat-check file.
void run_cat_check(const RunConfig& c, Report& report)
{
    const std::string path = !c.input.empty() ? c.input : (c.args.empty() ? "" : c.args.front());
    if (path.empty()) throw ConfigError("cat-check needs a triangle file");
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad triangle file: ") + e.what());
    }
    const std::string space = doc.value("space", "");
    const auto& verts = doc.at("vertices");
    if (!verts.is_array() || verts.size() != 3) throw ConfigError("a triangle needs three vertices");
    json data{{"space", space}};

    if (space == "cone" || space == "plane") {
        const double L = space == "plane" ? 2.0 * std::numbers::pi
                                          : parse_circumference(doc.value("circumference", std::string("tau")));
        const CircleCone cone(L);
        std::array<ConePoint, 3> v;
        for (std::size_t i = 0; i < 3; ++i) v[i] = {verts[i].at(0).get<double>(), verts[i].at(1).get<double>()};
        CatTally<ConePoint> t;
        t.add(cone.triangle(v[0], v[1], v[2]), Curvature(c.chi_set ? c.chi : 0.0), cone.oracle(), cat_options(c));
        data.update(t.to_json());
        report.checks.push_back({"cat", t.failed == 0 && t.inadmissible == 0, data});
    } else if (space == "circle") {
        const double L = parse_circumference(doc.value("circumference", std::string("tau")));
        const CircleSpace circle(L);
        CatTally<CirclePoint> t;
        t.add(circle.triangle(verts[0].get<double>(), verts[1].get<double>(), verts[2].get<double>()),
              Curvature(c.chi_set ? c.chi : 1.0), circle.oracle(), cat_options(c));
        data.update(t.to_json());
        report.checks.push_back({"cat", t.failed == 0 && t.inadmissible == 0, data});
    } else if (space == "crushed") {
        std::array<CrushedPoint, 3> v;
        for (std::size_t i = 0; i < 3; ++i)
            v[i] = verts[i].is_string() ? CrushedPoint::crushed()
                                        : CrushedPoint::at(verts[i].at(0).get<double>(), verts[i].at(1).get<double>());
        CatTally<CrushedPoint> t;
        t.add(crushed_triangle(v[0], v[1], v[2]), Curvature(c.chi_set ? c.chi : 0.0), crushed_oracle(), cat_options(c));
        data.update(t.to_json());
        report.checks.push_back({"cat", t.failed == 0 && t.inadmissible == 0, data});
    } else {
        throw ConfigError("unknown space \"" + space + "\" (cone, plane, circle, crushed)");
    }
}

GramLattice named_lattice(const RunConfig& c, const std::vector<std::string>& args)
{
    if (!c.gram.empty()) return gram_from_json(read_file(c.gram));
    if (args.empty()) throw ConfigError("name a lattice (U, UU, K3, E8, E8-, A<n>, D<n>, E<n>, Y p q r) or pass --gram");
    const std::string& name = args.front();
    if (name == "U") return u_gram();
    if (name == "UU") return direct_sum(u_gram(), u_gram());
    if (name == "K3") return k3_gram();
    if (name == "E8-") return e8_gram(-1);
    if (name == "Y") {
        if (args.size() != 4) throw ConfigError("Y needs p q r");
        return ypqr_root_gram(ypqr_roots(parse_int(args[1], "p"), parse_int(args[2], "q"), parse_int(args[3], "r")));
    }
    try {
        const auto [type, rank] = parse_ade(name);
        return cartan_matrix(type, rank);
    } catch (const DomainError&) {
        throw ConfigError("unknown lattice \"" + name + "\"");
    }
}

void run_lattice(const RunConfig& c, Report& report)
{
    if (c.command.size() < 2) throw ConfigError("lattice needs signature or omega");
    const std::string& what = c.command[1];
    if (what == "signature") {
        const GramLattice g = named_lattice(c, c.args);
        const Signature s = signature(g);
        json data{{"rank", g.rank()}, {"signature", to_string(s)}, {"determinant", to_string(determinant(g.gram()))}};
        bool ok = true;
        if (!c.expect.empty()) {
            ok = to_string(s) == c.expect;
            data["expected"] = c.expect;
        }
        report.checks.push_back({"signature", ok, data});
    } else if (what == "omega") {
        const GramLattice g = c.args.empty() && c.gram.empty() ? direct_sum(u_gram(), u_gram()) : named_lattice(c, c.args);
        if (c.re.empty() || c.im.empty()) throw ConfigError("omega needs --re and --im");
        const LatticeVector re = parse_vector(c.re), im = parse_vector(c.im);
        if (re.size() != g.rank() || im.size() != g.rank()) throw ConfigError("--re and --im must have one entry per basis vector");
        bool member = false;
        try {
            member = omega_membership(g, re, im);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        report.checks.push_back({"omega_membership", member,
                                 {{"re_norm", to_string(norm(g, re))},
                                  {"im_norm", to_string(norm(g, im))},
                                  {"cross", to_string(inner(g, re, im))}}});
    } else {
        throw ConfigError("unknown lattice subcommand \"" + what + "\"");
    }
}

void run_coxeter(const RunConfig& c, Report& report)
{
    if (c.command.size() < 2) throw ConfigError("coxeter needs roots or local");
    if (c.args.empty()) throw ConfigError("name a root system, e.g. E8");
    AdeType type;
    int rank;
    try {
        std::tie(type, rank) = parse_ade(c.args.front());
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    const RootSystem rs = generate_roots(type, rank);
    const std::string& what = c.command[1];
    if (what == "roots") {
        report.checks.push_back({"root_count", rs.roots.size() == expected_root_count(type, rank),
                                 {{"type", rs.label},
                                  {"count", rs.roots.size()},
                                  {"expected", expected_root_count(type, rank)}}});
        report.checks.push_back({"reflection_closed", reflection_closed(rs.cartan, rs.roots), nullptr});
        const auto x = cross_check_with_enumeration(rs);
        report.checks.push_back({"norm_enumeration_agrees", x.same_set && x.enumeration_complete,
                                 {{"closure", x.closure_count},
                                  {"enumeration", x.enumeration_count},
                                  {"complete", x.enumeration_complete}}});
    } else if (what == "local") {
        if (c.point.empty()) throw ConfigError("coxeter local needs --point");
        const LatticeVector x = parse_vector(c.point);
        if (x.size() != rs.cartan.rank()) throw ConfigError("--point needs one coordinate per simple root");
        const RootSystem local = local_subsystem(rs, x);
        json roots = json::array();
        for (const auto& r : local.roots) roots.push_back(vector_json(r));
        report.checks.push_back({"local_subsystem_closed", true,
                                 {{"count", local.roots.size()}, {"rank", local.rank}, {"roots", roots}}});
    } else {
        throw ConfigError("unknown coxeter subcommand \"" + what + "\"");
    }
}

json cycle_json(const CycleSeq& c) { return c.entries; }

void run_singularities(const RunConfig& c, Report& report)
{
    if (c.command.size() < 2) throw ConfigError("singularities needs verify-alpha, dual-cycle, row or weights");
    const std::string& what = c.command[1];
    if (what == "verify-alpha") {
        const AlphaReport r = verify_alpha_one(c.max_sum);
        for (const auto& k : r.cases) {
            std::ostringstream name;
            name << "alpha " << k.p << "," << k.q << "," << k.r;
            AlphaReport one;
            one.cases = {k};
            report.checks.push_back({name.str(), k.ok(), json::parse(one.to_json()).at(0)});
        }
        report.checks.push_back({"alpha_one_all_cases", r.all_ok(), {{"cases", r.cases.size()}, {"max_sum", c.max_sum}}});
    } else if (what == "dual-cycle") {
        if (c.args.empty()) throw ConfigError("dual-cycle needs the cycle entries");
        std::vector<int> entries;
        for (const auto& a : c.args) entries.push_back(parse_int(a, "cycle entry"));
        const CycleSeq in(entries);
        CycleSeq dual;
        try {
            dual = dual_cycle(in);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
        const CycleSeq back = dual_cycle(dual);
        report.checks.push_back({"dual_cycle", rotation_equal(back, in),
                                 {{"input", cycle_json(in)},
                                  {"dual", cycle_json(dual)},
                                  {"dual_text", to_string(dual)},
                                  {"double_dual", cycle_json(back)}}});
    } else if (what == "row") {
        std::vector<std::array<int, 3>> triples;
        if (c.args.empty()) {
            for (int p = 2; 3 * p <= c.max_sum; ++p)
                for (int q = p; p + 2 * q <= c.max_sum; ++q)
                    for (int r = q; p + q + r <= c.max_sum; ++r)
                        if (reciprocal_sum(p, q, r) < 1) triples.push_back({p, q, r});
        } else {
            if (c.args.size() != 3) throw ConfigError("row needs p q r");
            std::array<int, 3> t{parse_int(c.args[0], "p"), parse_int(c.args[1], "q"), parse_int(c.args[2], "r")};
            std::sort(t.begin(), t.end());
            if (t[0] < 2 || reciprocal_sum(t[0], t[1], t[2]) >= 1) throw ConfigError("row needs 1/p + 1/q + 1/r < 1");
            triples.push_back(t);
        }
        for (const auto& [p, q, r] : triples) {
            const CuspRow stored = cusp_row_table(p, q, r);
            const CycleSeq cp = adjust_cycle(stored.c, CycleAdjust::raw_to_zykel);
            const CycleSeq dp = dual_cycle(cp);
            const CycleSeq d = adjust_cycle(dp, CycleAdjust::zykelstar_to_d);
            const bool ok = rotation_equal(cp, stored.c_prime) && rotation_equal(dp, stored.d_prime) &&
                            rotation_equal(d, stored.d) && rotation_equal(dual_cycle(dp), cp);
            std::ostringstream name;
            name << "row " << p << "," << q << "," << r;
            report.checks.push_back({name.str(), ok,
                                     {{"family", stored.family},
                                      {"c", cycle_json(stored.c)},
                                      {"c_prime", cycle_json(cp)},
                                      {"d_prime", cycle_json(dp)},
                                      {"d", cycle_json(d)},
                                      {"single_entry", stored.single_entry}}});
        }
    } else if (what == "weights") {
        const auto rows = table1();
        bool any = false;
        for (const auto& e : rows) {
            if (!c.args.empty() && std::find(c.args.begin(), c.args.end(), e.label) == c.args.end()) continue;
            any = true;
            const WeightCheck w = check_weights(e);
            report.checks.push_back({"weights " + e.label, w.ok,
                                     {{"degrees", w.degrees},
                                      {"degree", e.degree},
                                      {"lambda_degree", w.lambda_degree},
                                      {"offending", w.offending},
                                      {"dolgachev", e.dolgachev}}});
        }
        if (!any) throw ConfigError("no table row matches the given labels");
    } else {
        throw ConfigError("unknown singularities subcommand \"" + what + "\"");
    }
}

}  // namespace

Report run(const RunConfig& config)
{
    validate(config);
    Report report;
    report.config = config_json(config);
    report.seed = config.seed;

    static const std::map<std::string, std::function<void(const RunConfig&, Report&)>> table{
        {"cat-check", run_cat_check},
        {"cone", run_cone},
        {"branched-plane", run_branched_plane},
        {"crushed-demo", run_crushed},
        {"cusp-mesh-demo", run_cusp_mesh},
        {"tangent-estimate", run_tangent},
        {"lattice", run_lattice},
        {"coxeter", run_coxeter},
        {"singularities", run_singularities},
        {"cusp", run_singularities},
    };
    const auto it = table.find(config.command.front());
    if (it == table.end()) throw ConfigError("unknown subcommand \"" + config.command.front() + "\"");
    try {
        it->second(config, report);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    } catch (const DimensionError& e) {
        throw ConfigError(e.what());
    } catch (const json::exception& e) {
        throw ConfigError(e.what());
    }
    return report;
}

}  // namespace catchi::cli
