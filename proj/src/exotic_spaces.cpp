#include "catchi/exotic_spaces.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

namespace catchi {

namespace {

constexpr double kPi = std::numbers::pi;

void require_circumference(double L)
{
    if (!(L > 0.0)) throw DomainError("circumference must be positive (or +infinity)");
}

}  // namespace

// ---------------------------------------------------------------------------

double circle_distance(const CirclePoint& p, const CirclePoint& q)
{
    if (p.circumference != q.circumference) throw DomainError("circle points on different circles");
    const double diff = std::abs(p.theta - q.theta);
    if (std::isinf(p.circumference)) return diff;
    const double L = p.circumference;
    const double r = std::fmod(diff, L);
    return std::min(r, L - r);
}

double cone_metric(double tp, double tq, double base_distance)
{
    if (tp < 0.0 || tq < 0.0) throw DomainError("cone radii must be nonnegative");
    if (base_distance >= kPi) return tp + tq;
    // (tp - tq)^2 + 4 tp tq sin^2(delta/2) avoids cancellation for nearby points.
    const double h = std::sin(base_distance / 2.0);
    return std::sqrt((tp - tq) * (tp - tq) + 4.0 * tp * tq * h * h);
}

CircleCone::CircleCone(double circumference) : L_(circumference)
{
    require_circumference(circumference);
}

double CircleCone::angular_offset(double theta_p, double theta_q) const
{
    const double d = theta_q - theta_p;
    if (std::isinf(L_)) return d;
    return std::remainder(d, L_);
}

double CircleCone::distance(const ConePoint& p, const ConePoint& q) const
{
    if (p.t == 0.0) return q.t;
    if (q.t == 0.0) return p.t;
    return cone_metric(p.t, q.t, std::abs(angular_offset(p.theta, q.theta)));
}

ConePoint CircleCone::geodesic_point(const ConePoint& p, const ConePoint& q, double u) const
{
    if (u <= 0.0) return p;
    if (u >= 1.0) return q;
    if (p.t == 0.0) return {u * q.t, q.theta};
    if (q.t == 0.0) return {(1.0 - u) * p.t, p.theta};

    const double delta = angular_offset(p.theta, q.theta);
    if (std::abs(delta) >= kPi) {
        // Through the apex, parametrized by arclength.
        const double s = u * (p.t + q.t);
        if (s < p.t) return {p.t - s, p.theta};
        if (s == p.t) return {0.0, p.theta};
        return {s - p.t, q.theta};
    }
    // Develop the sector between p and q into the plane with p on the x axis.
    const double px = p.t;
    const double qx = q.t * std::cos(delta);
    const double qy = q.t * std::sin(delta);
    const double x = (1.0 - u) * px + u * qx;
    const double y = u * qy;
    const double r = std::hypot(x, y);
    if (r == 0.0) return {0.0, p.theta};
    return {r, p.theta + std::atan2(y, x)};
}

ConePoint cone_geodesic_point(double circumference, const ConePoint& p, const ConePoint& q, double u)
{
    return CircleCone(circumference).geodesic_point(p, q, u);
}

MetricOracle<ConePoint> CircleCone::oracle() const
{
    return [cone = *this](const ConePoint& p, const ConePoint& q) { return cone.distance(p, q); };
}

GeodesicSampler<ConePoint> CircleCone::sampler(const ConePoint& p, const ConePoint& q) const
{
    return {p, q, [cone = *this, p, q](double u) { return cone.geodesic_point(p, q, u); }};
}

TriangleSpec<ConePoint> CircleCone::triangle(const ConePoint& a, const ConePoint& b,
                                             const ConePoint& c) const
{
    return {{a, b, c}, {sampler(a, b), sampler(b, c), sampler(c, a)}};
}

TriangleSpec<ConePoint> CircleCone::random_triangle(std::mt19937_64& rng, double max_t,
                                                    double theta_span) const
{
    std::uniform_real_distribution<double> radius(0.0, max_t);
    std::uniform_real_distribution<double> angle =
        std::isinf(L_) ? std::uniform_real_distribution<double>(-theta_span, theta_span)
                       : std::uniform_real_distribution<double>(0.0, L_);
    std::array<ConePoint, 3> v;
    for (auto& p : v) {
        // Keep the vertices off the apex; the apex case is covered separately.
        do {
            p.t = radius(rng);
        } while (p.t == 0.0);
        p.theta = angle(rng);
    }
    return triangle(v[0], v[1], v[2]);
}

BallTriangleSampler<ConePoint> CircleCone::ball_sampler() const
{
    return [cone = *this](const ConePoint& center, double radius, std::mt19937_64& rng) {
        if (!(radius < center.t)) throw DomainError("ball must not contain the apex");
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::array<ConePoint, 3> v;
        for (auto& p : v) {
            // Uniform in the developed disk about (center.t, 0).
            const double rho = radius * std::sqrt(unit(rng));
            const double ang = 2.0 * kPi * unit(rng);
            const double x = center.t + rho * std::cos(ang);
            const double y = rho * std::sin(ang);
            p = {std::hypot(x, y), center.theta + std::atan2(y, x)};
        }
        return cone.triangle(v[0], v[1], v[2]);
    };
}

// ---------------------------------------------------------------------------

CircleSpace::CircleSpace(double circumference) : L_(circumference)
{
    require_circumference(circumference);
}

MetricOracle<CirclePoint> CircleSpace::oracle() const
{
    return [](const CirclePoint& p, const CirclePoint& q) { return circle_distance(p, q); };
}

GeodesicSampler<CirclePoint> CircleSpace::sampler(const CirclePoint& p, const CirclePoint& q) const
{
    const double offset = std::isinf(L_) ? q.theta - p.theta : std::remainder(q.theta - p.theta, L_);
    return {p, q, [p, q, offset](double u) {
                if (u <= 0.0) return p;
                if (u >= 1.0) return q;
                return CirclePoint{p.theta + u * offset, p.circumference};
            }};
}

TriangleSpec<CirclePoint> CircleSpace::triangle(double t0, double t1, double t2) const
{
    const CirclePoint a{t0, L_}, b{t1, L_}, c{t2, L_};
    return {{a, b, c}, {sampler(a, b), sampler(b, c), sampler(c, a)}};
}

// ---------------------------------------------------------------------------

CrushedPoint CrushedPoint::at(double x, double y)
{
    if (!(x > 0.0) || !std::isfinite(x) || !std::isfinite(y))
        throw DomainError("points of the open half-plane need x > 0");
    return {false, x, y};
}

double crushed_distance(const CrushedPoint& p, const CrushedPoint& q)
{
    if (p.origin) return q.origin ? 0.0 : q.x;
    if (q.origin) return p.x;
    return std::min(p.x + q.x, std::hypot(q.x - p.x, q.y - p.y));
}

CrushedPoint crushed_geodesic_point(const CrushedPoint& p, const CrushedPoint& q, double u)
{
    if (u <= 0.0) return p;
    if (u >= 1.0) return q;
    if (p.origin && q.origin) return CrushedPoint::crushed();
    if (p.origin) return CrushedPoint::at(u * q.x, q.y);
    if (q.origin) return CrushedPoint::at((1.0 - u) * p.x, p.y);

    const double through = p.x + q.x;
    const double straight = std::hypot(q.x - p.x, q.y - p.y);
    if (straight < through) return CrushedPoint::at(p.x + u * (q.x - p.x), p.y + u * (q.y - p.y));

    // Horizontal run into the crushed boundary and back out.
    const double s = u * through;
    if (s < p.x) return CrushedPoint::at(p.x - s, p.y);
    if (s == p.x) return CrushedPoint::crushed();
    return CrushedPoint::at(s - p.x, q.y);
}

MetricOracle<CrushedPoint> crushed_oracle()
{
    return [](const CrushedPoint& p, const CrushedPoint& q) { return crushed_distance(p, q); };
}

GeodesicSampler<CrushedPoint> crushed_sampler(const CrushedPoint& p, const CrushedPoint& q)
{
    return {p, q, [p, q](double u) { return crushed_geodesic_point(p, q, u); }};
}

TriangleSpec<CrushedPoint> crushed_triangle(const CrushedPoint& a, const CrushedPoint& b,
                                            const CrushedPoint& c)
{
    return {{a, b, c}, {crushed_sampler(a, b), crushed_sampler(b, c), crushed_sampler(c, a)}};
}

CrushedWitness crushed_cat_witness()
{
    const auto zero = CrushedPoint::crushed();
    const auto p = CrushedPoint::at(1.0, -0.5);
    const auto q = CrushedPoint::at(1.0, 0.5);
    auto tri = crushed_triangle(zero, p, q);

    const auto [a, b, c] = measured_sides(tri, crushed_oracle());
    const ModelTriangle model(Curvature(0.0), a, b, c);

    // v halfway along 0 -> p (edge 0), w halfway along q -> 0 (edge 2).
    const auto v = tri.edges[0].eval(0.5);
    const auto w = tri.edges[2].eval(0.5);
    CatWitness witness;
    witness.edge1 = 0;
    witness.u = 0.5;
    witness.edge2 = 2;
    witness.v = 0.5;
    witness.measured = crushed_distance(v, w);
    witness.comparison = comparison_point_distance(model, {Side::c, 0.5 * c}, {Side::b, 0.5 * b});
    witness.violation = witness.measured - witness.comparison;
    return {std::move(tri), witness};
}

BallTriangleSampler<CrushedPoint> crushed_ball_sampler()
{
    return [](const CrushedPoint& center, double radius, std::mt19937_64& rng) {
        if (center.origin || !(radius < center.x))
            throw DomainError("ball must stay inside the open half-plane");
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::array<CrushedPoint, 3> v;
        for (auto& p : v) {
            const double rho = radius * std::sqrt(unit(rng));
            const double ang = 2.0 * kPi * unit(rng);
            p = CrushedPoint::at(center.x + rho * std::cos(ang), center.y + rho * std::sin(ang));
        }
        return crushed_triangle(v[0], v[1], v[2]);
    };
}

// ---------------------------------------------------------------------------

Profile cusp_profile()
{
    return {[](double x) { return x * x; }, [](double x) { return 2.0 * x; }};
}

Profile cylinder_profile()
{
    return {[](double) { return 1.0; }, [](double) { return 0.0; }};
}

MeshSurface::MeshSurface(double x_min, double x_max, std::size_t nx, std::size_t nphi, Profile profile)
    : x_min_(x_min), x_max_(x_max), nx_(nx), nphi_(nphi), profile_(std::move(profile))
{
    if (!(x_min > 0.0) || !(x_max > x_min)) throw DomainError("need 0 < x_min < x_max");
    if (nx < 8 || nphi < 8) throw DomainError("need at least 8 intervals in each direction");

    const std::size_t rings = nx_ + 1;
    const double dx = (x_max_ - x_min_) / static_cast<double>(nx_);
    const double dphi = 2.0 * kPi / static_cast<double>(nphi_);
    vertices_.reserve(rings * nphi_);
    for (std::size_t i = 0; i < rings; ++i)
        for (std::size_t j = 0; j < nphi_; ++j)
            vertices_.push_back({x_min_ + dx * static_cast<double>(i), dphi * static_cast<double>(j)});
    adjacency_.resize(vertices_.size());

    for (std::size_t i = 0; i < rings; ++i) {
        const double x = vertices_[id(i, 0)].x;
        for (std::size_t j = 0; j < nphi_; ++j) {
            const std::size_t jn = (j + 1) % nphi_;
            add_edge(id(i, j), id(i, jn), 0.0, dphi, x);
            if (i + 1 < rings) {
                const double xm = x + dx / 2.0;
                add_edge(id(i, j), id(i + 1, j), dx, 0.0, xm);
                add_edge(id(i, j), id(i + 1, jn), dx, dphi, xm);
                add_edge(id(i, jn), id(i + 1, j), dx, dphi, xm);
            }
        }
    }
}

std::size_t MeshSurface::id(std::size_t ix, std::size_t jphi) const
{
    if (ix > nx_ || jphi >= nphi_) throw DomainError("mesh index out of range");
    return ix * nphi_ + jphi;
}

void MeshSurface::add_edge(std::size_t a, std::size_t b, double dx, double dphi, double x_mid)
{
    const double r = profile_.radius(x_mid);
    const double slope = profile_.slope(x_mid);
    const double w = std::sqrt((1.0 + slope * slope) * dx * dx + r * r * dphi * dphi);
    edges_.push_back({a, b, w});
    adjacency_[a].push_back({b, w});
    adjacency_[b].push_back({a, w});
}

bool MeshSurface::connected() const
{
    if (vertices_.empty()) return true;
    const auto dist = mesh_distances_from(*this, 0);
    return std::all_of(dist.begin(), dist.end(), [](double d) { return std::isfinite(d); });
}

MeshSurface revolution_mesh(double x_min, double x_max, std::size_t nx, std::size_t nphi)
{
    return MeshSurface(x_min, x_max, nx, nphi, cusp_profile());
}

namespace {

struct DijkstraResult {
    std::vector<double> dist;
    std::vector<std::size_t> parent;
};

constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

DijkstraResult dijkstra(const MeshSurface& mesh, const std::vector<std::size_t>& sources,
                        const std::vector<bool>* blocked, std::size_t target = kNoParent)
{
    const std::size_t n = mesh.vertex_count();
    if (blocked && blocked->size() != n) throw DomainError("blocked mask has the wrong size");
    DijkstraResult r{std::vector<double>(n, kInfinity), std::vector<std::size_t>(n, kNoParent)};
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t s : sources) {
        if (s >= n) throw DomainError("vertex id out of range");
        if (blocked && (*blocked)[s]) continue;
        r.dist[s] = 0.0;
        heap.emplace(0.0, s);
    }
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d > r.dist[v]) continue;
        if (v == target) break;
        for (const auto& nb : mesh.neighbors(v)) {
            if (blocked && (*blocked)[nb.to]) continue;
            const double nd = d + nb.w;
            if (nd < r.dist[nb.to]) {
                r.dist[nb.to] = nd;
                r.parent[nb.to] = v;
                heap.emplace(nd, nb.to);
            }
        }
    }
    return r;
}

}  // namespace

MeshPath mesh_distance(const MeshSurface& mesh, std::size_t a, std::size_t b, const std::vector<bool>* blocked)
{
    if (a >= mesh.vertex_count() || b >= mesh.vertex_count()) throw DomainError("vertex id out of range");
    if (a == b) return {0.0, {a}};
    const auto r = dijkstra(mesh, {a}, blocked, b);
    if (!std::isfinite(r.dist[b])) throw DomainError("vertices are not connected");
    MeshPath path{r.dist[b], {}};
    for (std::size_t v = b; v != kNoParent; v = r.parent[v]) path.vertices.push_back(v);
    std::reverse(path.vertices.begin(), path.vertices.end());
    return path;
}

std::vector<double> mesh_distances_from(const MeshSurface& mesh, std::size_t source,
                                        const std::vector<bool>* blocked)
{
    return dijkstra(mesh, {source}, blocked).dist;
}

BigonReport mesh_bigon(const MeshSurface& mesh, std::size_t a, std::size_t b)
{
    if (a >= mesh.vertex_count() || b >= mesh.vertex_count()) throw DomainError("vertex id out of range");
    if (a == b) throw DomainError("bigon endpoints must differ");
    const std::size_t nphi = mesh.nphi();
    if (nphi % 4 != 0) throw DomainError("bigon needs the angular resolution to be a multiple of 4");
    const std::size_t ring = mesh.ring_index(a);
    const std::size_t ja = mesh.angle_index(a);
    if (mesh.ring_index(b) != ring || mesh.angle_index(b) != (ja + nphi / 2) % nphi)
        throw DomainError("bigon endpoints must be antipodal on one ring");

    auto cut_along = [&](std::size_t column) {
        std::vector<bool> blocked(mesh.vertex_count(), false);
        for (std::size_t i = 0; i <= mesh.nx(); ++i) blocked[mesh.id(i, column)] = true;
        return blocked;
    };
    const std::size_t plus = (ja + nphi / 4) % nphi;
    const std::size_t minus = (ja + 3 * nphi / 4) % nphi;

    BigonReport report;
    const auto block_plus = cut_along(plus);
    const auto block_minus = cut_along(minus);
    report.left = mesh_distance(mesh, a, b, &block_plus);
    report.right = mesh_distance(mesh, a, b, &block_minus);

    const double l1 = report.left.length;
    const double l2 = report.right.length;
    report.length_ratio = std::max(l1, l2) / std::min(l1, l2);

    const auto to_right = dijkstra(mesh, report.right.vertices, nullptr).dist;
    for (std::size_t v : report.left.vertices) report.max_separation = std::max(report.max_separation, to_right[v]);
    report.normalized_separation = report.max_separation / (0.5 * (l1 + l2));
    return report;
}

std::string mesh_to_json(const MeshSurface& mesh)
{
    nlohmann::json doc;
    auto& vs = doc["vertices"] = nlohmann::json::array();
    for (const auto& v : mesh.vertices()) vs.push_back({{"x", v.x}, {"phi", v.phi}});
    auto& es = doc["edges"] = nlohmann::json::array();
    for (const auto& e : mesh.edges()) es.push_back({{"i", e.i}, {"j", e.j}, {"w", e.w}});
    return doc.dump();
}

}  // namespace catchi
