#include "catchi/exotic_spaces.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <numbers>
#include <random>

using namespace catchi;
using std::numbers::pi;

namespace {

// Cone distance by minimizing over the lifts of the angular difference.
double cone_reference(double L, ConePoint p, ConePoint q)
{
    double delta = std::abs(p.theta - q.theta);
    if (std::isfinite(L)) {
        delta = kInfinity;
        for (int k = -20; k <= 20; ++k) delta = std::min(delta, std::abs(p.theta - q.theta + k * L));
    }
    if (delta >= pi) return p.t + q.t;
    return std::sqrt(std::max(0.0, p.t * p.t + q.t * q.t - 2.0 * p.t * q.t * std::cos(delta)));
}

double crushed_reference(CrushedPoint p, CrushedPoint q)
{
    if (p.origin) return q.origin ? 0.0 : q.x;
    if (q.origin) return p.x;
    return std::min(p.x + q.x, std::hypot(p.x - q.x, p.y - q.y));
}

}  // namespace

TEST_CASE("circle distance")
{
    const double tau = 2.0 * pi;
    CHECK(circle_distance({0.0, tau}, {pi, tau}) == doctest::Approx(pi));
    CHECK(circle_distance({0.0, tau}, {1.5 * pi, tau}) == doctest::Approx(pi / 2));
    CHECK(circle_distance({0.0, kInfinity}, {5.0, kInfinity}) == 5.0);
    CHECK(circle_distance({7.0 * tau + 0.1, tau}, {-0.1, tau}) == doctest::Approx(0.2));
    CHECK_THROWS_AS(circle_distance({0.0, tau}, {0.0, 3.0}), DomainError);
    CHECK_THROWS_AS(CircleCone(0.0), DomainError);
    CHECK_THROWS_AS(CircleCone(-1.0), DomainError);
}

TEST_CASE("cone metric")
{
    CHECK(cone_metric(1.0, 1.0, pi) == doctest::Approx(2.0));
    CHECK(cone_metric(1.0, 1.0, pi / 2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(cone_metric(1.0, 2.0, 10.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(cone_metric(-1.0, 1.0, 0.5), DomainError);

    const MetricOracle<CirclePoint> base = circle_distance;
    const ConeOver<CirclePoint> p{1.5, {0.3, 2.0 * pi}}, apex{0.0, {2.0, 2.0 * pi}};
    CHECK(cone_distance(base, p, apex) == 1.5);
    CHECK(cone_distance(base, apex, p) == 1.5);
}

TEST_CASE("cone over a circle of length 2 pi is the plane")
{
    const CircleCone cone(2.0 * pi);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> t(0.0, 3.0), th(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const ConePoint p{t(rng), th(rng)}, q{t(rng), th(rng)};
        const oracle::Planar a{p.t * std::cos(p.theta), p.t * std::sin(p.theta)};
        const oracle::Planar b{q.t * std::cos(q.theta), q.t * std::sin(q.theta)};
        CHECK(std::abs(cone.distance(p, q) - oracle::planar_distance(a, b)) <= 1e-12 * std::max(1.0, p.t + q.t));
    }
}

TEST_CASE("cone distances against lifts")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> t(0.0, 2.0), th(-20.0, 20.0);
    for (double L : {0.9 * 2.0 * pi, 3.0 * pi, 6.0 * pi, kInfinity}) {
        const CircleCone cone(L);
        for (int i = 0; i < 300; ++i) {
            const ConePoint p{t(rng), th(rng)}, q{t(rng), th(rng)};
            CHECK(cone.distance(p, q) == doctest::Approx(cone_reference(L, p, q)).epsilon(1e-12).scale(1.0));
            CHECK(cone.distance(p, q) == cone.distance(q, p));
        }
    }
}

TEST_CASE("cone geodesic points")
{
    const CircleCone plane(2.0 * pi);
    const auto mid = plane.geodesic_point({1.0, 0.0}, {1.0, pi / 2}, 0.5);
    CHECK(mid.t == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK(mid.theta == doctest::Approx(pi / 4));

    // Angular distance exactly pi: the path runs through the apex.
    const auto through = plane.geodesic_point({1.0, 0.0}, {2.0, pi}, 1.0 / 3.0);
    CHECK(through.t == doctest::Approx(0.0).scale(1.0));

    const CircleCone cover(4.0 * pi);
    const auto apex = cover.geodesic_point({1.0, 0.0}, {1.0, 3.0 * pi}, 0.5);
    CHECK(apex.t == doctest::Approx(0.0).scale(1.0));
    CHECK(cover.distance({1.0, 0.0}, {1.0, 3.0 * pi}) == doctest::Approx(2.0));

    std::mt19937_64 rng(3);
    for (double L : {0.9 * 2.0 * pi, 2.0 * pi, 5.0 * pi, kInfinity}) {
        const CircleCone cone(L);
        for (int i = 0; i < 50; ++i) {
            const auto tri = cone.random_triangle(rng);
            for (const auto& e : tri.edges) CHECK(geodesic_contract_defect(e, cone.oracle()) <= 1e-9);
        }
    }
}

TEST_CASE("branched covers are CAT(0), small cones are not")
{
    std::mt19937_64 rng(4);
    for (double L : {2.0 * pi, 4.0 * pi, 6.0 * pi, 10.0 * pi, kInfinity}) {
        const CircleCone cone(L);
        for (int i = 0; i < 200; ++i) REQUIRE(passed(cat_test(cone.random_triangle(rng), Curvature(0.0), cone.oracle(), {24, 1e-9})));
    }
    const double L = 0.9 * 2.0 * pi;
    const CircleCone small(L);
    const auto r = cat_test(small.triangle({1.0, 0.0}, {1.0, L / 3}, {1.0, 2 * L / 3}), Curvature(0.0), small.oracle(),
                            {64, 1e-9});
    CHECK_FALSE(passed(r));
}

TEST_CASE("circle CAT(1) verdict matches the cone CAT(0) verdict")
{
    for (double factor : {0.9, 1.0, 1.5}) {
        const double L = factor * 2.0 * pi;
        const CircleSpace circle(L);
        // Three points spread evenly: perimeter L, kept below 2 pi by shrinking slightly when L >= 2 pi.
        const double span = std::min(L, 2.0 * pi) * 0.999 / 3.0;
        const auto tri = circle.triangle(0.0, span, 2.0 * span);
        bool circle_ok = true;
        try {
            circle_ok = passed(cat_test(tri, Curvature(1.0), circle.oracle(), {64, 1e-9}));
        } catch (const InadmissibleTriangle&) {
            circle_ok = true;
        }
        const CircleCone cone(L);
        const auto ctri = cone.triangle({1.0, 0.0}, {1.0, L / 3}, {1.0, 2 * L / 3});
        const bool cone_ok = passed(cat_test(ctri, Curvature(0.0), cone.oracle(), {64, 1e-9}));
        CHECK(circle_ok == cone_ok);
        CHECK(cone_ok == (factor >= 1.0));
    }
}

TEST_CASE("crushed half-plane distances")
{
    const auto o = CrushedPoint::crushed();
    CHECK(crushed_distance(CrushedPoint::at(1, 0), CrushedPoint::at(1, 3)) == 2.0);
    CHECK(crushed_distance(CrushedPoint::at(1, 0), CrushedPoint::at(1, 1)) == 1.0);
    CHECK(crushed_distance(CrushedPoint::at(0.7, 4), o) == 0.7);
    CHECK(crushed_distance(o, o) == 0.0);
    CHECK_THROWS_AS(CrushedPoint::at(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(CrushedPoint::at(-1.0, 1.0), DomainError);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> x(1e-3, 3.0), y(-4.0, 4.0), coin(0.0, 1.0);
    auto draw = [&] { return coin(rng) < 0.05 ? o : CrushedPoint::at(x(rng), y(rng)); };
    for (int i = 0; i < 100000; ++i) {
        const auto p = draw(), q = draw(), r = draw();
        const double pq = crushed_distance(p, q), qr = crushed_distance(q, r), pr = crushed_distance(p, r);
        REQUIRE(pr <= pq + qr + 1e-12);
        if (i < 2000) CHECK(pq == crushed_reference(p, q));
    }
}

TEST_CASE("crushed geodesics")
{
    const auto via0 = crushed_geodesic_point(CrushedPoint::at(1, 0), CrushedPoint::at(1, 3), 0.5);
    CHECK(via0.origin);
    const auto straight = crushed_geodesic_point(CrushedPoint::at(1, 0), CrushedPoint::at(1, 1), 0.5);
    CHECK_FALSE(straight.origin);
    CHECK(straight.x == doctest::Approx(1.0));
    CHECK(straight.y == doctest::Approx(0.5));
    const auto radial = crushed_geodesic_point(CrushedPoint::at(2, 5), CrushedPoint::crushed(), 0.5);
    CHECK(radial.x == doctest::Approx(1.0));
    CHECK(radial.y == doctest::Approx(5.0));
    // Tie between the two branches resolves to the path through 0.
    CHECK(crushed_geodesic_point(CrushedPoint::at(1, 0), CrushedPoint::at(1, 2), 0.5).origin);

    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> x(0.05, 2.0), y(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const auto s = crushed_sampler(CrushedPoint::at(x(rng), y(rng)), CrushedPoint::at(x(rng), y(rng)));
        CHECK(geodesic_contract_defect(s, crushed_oracle()) <= 1e-12);
    }
}

TEST_CASE("crushed half-plane witness")
{
    const auto w = crushed_cat_witness();
    CHECK(w.witness.measured == 1.0);
    CHECK(w.witness.comparison == 0.5);
    CHECK(w.witness.violation == 0.5);
    const auto r = cat_test(w.triangle, Curvature(0.0), crushed_oracle(), {33, 1e-9});
    REQUIRE_FALSE(passed(r));
    CHECK(std::get<CatWitness>(r).violation == doctest::Approx(0.5));
}

TEST_CASE("crushed triangles with an edge at 0")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> x(0.05, 2.0), y(-2.0, 2.0);
    const auto o = CrushedPoint::crushed();
    for (int i = 0; i < 100; ++i) {
        const auto p = CrushedPoint::at(x(rng), y(rng));
        CHECK(passed(cat_test(crushed_triangle(o, o, p), Curvature(0.0), crushed_oracle())));
        CHECK(passed(cat_test(crushed_triangle(p, o, o), Curvature(0.0), crushed_oracle())));
    }
}

TEST_CASE("tangent cone of the crushed point is discrete")
{
    auto germ = [](double y) { return Germ<CrushedPoint>{CrushedPoint::crushed(), [y](double t) { return CrushedPoint::at(t, y); }}; };
    CHECK(std::abs(tangent_distance_estimate(germ(0.0), germ(1.0), crushed_oracle()).value - 2.0) <= 1e-6);
    CHECK(std::abs(tangent_distance_estimate(germ(-3.0), germ(1e-3), crushed_oracle()).value - 2.0) <= 1e-6);
    CHECK(tangent_distance_estimate(germ(0.4), germ(0.4), crushed_oracle()).value == 0.0);
}

TEST_CASE("mesh structure")
{
    const auto mesh = revolution_mesh(0.05, 1.0, 200, 256);
    CHECK(mesh.vertex_count() == 201u * 256u);
    CHECK(mesh.connected());
    for (const auto& e : mesh.edges()) REQUIRE(e.w > 0.0);
    // Every edge appears in both adjacency lists with the same weight.
    const auto& e = mesh.edges()[12345];
    bool found = false;
    for (const auto& nb : mesh.neighbors(e.j)) found = found || (nb.to == e.i && nb.w == e.w);
    CHECK(found);

    CHECK_THROWS_AS(revolution_mesh(0.0, 1.0, 10, 10), DomainError);
    CHECK_THROWS_AS(revolution_mesh(0.5, 0.4, 10, 10), DomainError);
    CHECK_THROWS_AS(revolution_mesh(0.1, 1.0, 7, 10), DomainError);
    CHECK_THROWS_AS(mesh.id(201, 0), DomainError);
}

TEST_CASE("meridian edge weights")
{
    const auto mesh = revolution_mesh(0.05, 1.0, 200, 256);
    // Antiderivative of sqrt(1 + 4x^2).
    auto F = [](double x) { return 0.5 * x * std::sqrt(1 + 4 * x * x) + 0.25 * std::asinh(2 * x); };
    for (std::size_t i : {0u, 50u, 199u}) {
        const auto a = mesh.id(i, 3), b = mesh.id(i + 1, 3);
        double w = 0;
        for (const auto& nb : mesh.neighbors(a))
            if (nb.to == b) w = nb.w;
        const double exact = F(mesh.vertex(b).x) - F(mesh.vertex(a).x);
        CHECK(std::abs(w - exact) <= 0.01 * exact);
    }
}

TEST_CASE("mesh distances")
{
    const auto mesh = revolution_mesh(0.05, 1.0, 40, 64);
    const auto a = mesh.id(10, 5);
    CHECK(mesh_distance(mesh, a, a).length == 0.0);
    CHECK(mesh_distance(mesh, a, a).vertices.size() == 1u);
    const auto& nb = mesh.neighbors(a).front();
    CHECK(mesh_distance(mesh, a, nb.to).length <= nb.w);
    CHECK_THROWS_AS(mesh_distance(mesh, a, mesh.vertex_count()), DomainError);

    const auto path = mesh_distance(mesh, mesh.id(2, 0), mesh.id(30, 40));
    double total = 0;
    for (std::size_t k = 1; k < path.vertices.size(); ++k) {
        double w = kInfinity;
        for (const auto& n : mesh.neighbors(path.vertices[k - 1]))
            if (n.to == path.vertices[k]) w = std::min(w, n.w);
        total += w;
    }
    CHECK(total == doctest::Approx(path.length));
}

TEST_CASE("cylinder hook")
{
    const MeshSurface cyl(1.0, 2.0, 16, 128, cylinder_profile());
    const auto d = mesh_distance(cyl, cyl.id(8, 0), cyl.id(8, 64));
    CHECK(std::abs(d.length - pi) <= 0.02 * pi);
    const auto b = mesh_bigon(cyl, cyl.id(8, 0), cyl.id(8, 64));
    CHECK(std::abs(b.left.length - pi) <= 0.02 * pi);
    CHECK(std::abs(b.right.length - pi) <= 0.02 * pi);
}

TEST_CASE("cusped cone bigon")
{
    const auto mesh = revolution_mesh(0.05, 1.0, 200, 256);
    // Ring nearest x = 0.5.
    const std::size_t ring = 95;
    const auto b = mesh_bigon(mesh, mesh.id(ring, 0), mesh.id(ring, 128));
    CHECK(b.length_ratio <= 1.01);
    CHECK(b.normalized_separation > 0.1);
    CHECK_THROWS_AS(mesh_bigon(mesh, mesh.id(ring, 0), mesh.id(ring, 0)), DomainError);
    CHECK_THROWS_AS(mesh_bigon(mesh, mesh.id(ring, 0), mesh.id(ring, 100)), DomainError);
    CHECK_THROWS_AS(mesh_bigon(mesh, mesh.id(ring, 0), mesh.id(ring + 1, 128)), DomainError);
}

TEST_CASE("tangent space at the cusp is a ray")
{
    const auto mesh = revolution_mesh(0.002, 0.6, 299, 64);
    const auto from_a = mesh_distances_from(mesh, mesh.id(0, 0));
    double prev = kInfinity;
    for (double x : {0.5, 0.25, 0.12, 0.06, 0.03}) {
        const auto ring = static_cast<std::size_t>(std::lround((x - 0.002) / 0.002));
        // Germs leave the cusp ring along the meridians at phi = 0 and phi = pi.
        const double t = from_a[mesh.id(ring, 0)];
        const double apart = mesh_distance(mesh, mesh.id(ring, 0), mesh.id(ring, 32)).length;
        const double ratio = apart / t;
        CHECK(ratio < prev);
        prev = ratio;
    }
    CHECK(prev < 0.15);
}

TEST_CASE("mesh export")
{
    const auto mesh = revolution_mesh(0.1, 1.0, 8, 8);
    const auto doc = nlohmann::json::parse(mesh_to_json(mesh));
    CHECK(doc.at("vertices").size() == 72u);
    CHECK(doc.at("edges").size() == mesh.edges().size());
    CHECK(doc["vertices"][9]["x"].get<double>() == doctest::Approx(mesh.vertex(9).x));
}
