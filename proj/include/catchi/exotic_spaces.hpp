#pragma once

// Metric spaces with exactly computable distances: Euclidean cones over
// circles and lines (branched covers of the plane at one point), the half
// plane with its boundary crushed to a point, and graph approximations of the
// cusped surface of revolution of y = x^2.

#include "catchi/metric_core.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace catchi {

// ---------------------------------------------------------------------------
// Circles and cones over them.

/// A point on a circle of circumference L, or on the line when L = +infinity.
struct CirclePoint {
    double theta = 0.0;
    double circumference = kInfinity;
};

double circle_distance(const CirclePoint& p, const CirclePoint& q);

/// Euclidean cone metric from radii and base distance (angles truncated at pi).
double cone_metric(double tp, double tq, double base_distance);

/// A point (t, base) of the Euclidean cone over some base space. t = 0 is the apex.
template <class Base>
struct ConeOver {
    double t = 0.0;
    Base base{};
};

template <class Base>
double cone_distance(const MetricOracle<Base>& base, const ConeOver<Base>& p, const ConeOver<Base>& q)
{
    if (p.t == 0.0) return q.t;
    if (q.t == 0.0) return p.t;
    return cone_metric(p.t, q.t, base(p.base, q.base));
}

/// Point of the cone over a circle of circumference L (L = +inf: over a line).
struct ConePoint {
    double t = 0.0;
    double theta = 0.0;
};

/// The cone over a circle of circumference L. For L = 2*pi*k this is the
/// completed k-sheeted branched cover of the plane over the origin; L = +inf
/// gives the universal branched cover.
class CircleCone {
public:
    explicit CircleCone(double circumference);

    double circumference() const { return L_; }

    double distance(const ConePoint& p, const ConePoint& q) const;
    /// Shortest signed angular offset from p to q (in (-L/2, L/2]).
    double angular_offset(double theta_p, double theta_q) const;

    /// Constant-speed geodesic from p to q at parameter u in [0, 1].
    ConePoint geodesic_point(const ConePoint& p, const ConePoint& q, double u) const;

    MetricOracle<ConePoint> oracle() const;
    GeodesicSampler<ConePoint> sampler(const ConePoint& p, const ConePoint& q) const;
    TriangleSpec<ConePoint> triangle(const ConePoint& a, const ConePoint& b, const ConePoint& c) const;

    /// Vertices with t uniform in (0, max_t] and theta uniform over one period
    /// (over [-theta_span, theta_span] for the line).
    TriangleSpec<ConePoint> random_triangle(std::mt19937_64& rng, double max_t = 2.0,
                                            double theta_span = 3.0 * 3.141592653589793) const;

    /// Triangles inside the ball of the given radius about a point off the apex,
    /// for radii below the point's distance to the apex.
    BallTriangleSampler<ConePoint> ball_sampler() const;

private:
    double L_;
};

ConePoint cone_geodesic_point(double circumference, const ConePoint& p, const ConePoint& q, double u);

/// The circle itself as a one-dimensional geodesic space.
class CircleSpace {
public:
    explicit CircleSpace(double circumference);

    double circumference() const { return L_; }
    MetricOracle<CirclePoint> oracle() const;
    GeodesicSampler<CirclePoint> sampler(const CirclePoint& p, const CirclePoint& q) const;
    TriangleSpec<CirclePoint> triangle(double t0, double t1, double t2) const;

private:
    double L_;
};

// ---------------------------------------------------------------------------
// Half-plane with its boundary crushed to a point.

struct CrushedPoint {
    bool origin = true;
    double x = 0.0;
    double y = 0.0;

    static CrushedPoint crushed() { return {}; }
    static CrushedPoint at(double x, double y);
};

double crushed_distance(const CrushedPoint& p, const CrushedPoint& q);
CrushedPoint crushed_geodesic_point(const CrushedPoint& p, const CrushedPoint& q, double u);

MetricOracle<CrushedPoint> crushed_oracle();
GeodesicSampler<CrushedPoint> crushed_sampler(const CrushedPoint& p, const CrushedPoint& q);
TriangleSpec<CrushedPoint> crushed_triangle(const CrushedPoint& a, const CrushedPoint& b,
                                            const CrushedPoint& c);

struct CrushedWitness {
    TriangleSpec<CrushedPoint> triangle;
    CatWitness witness;
};

/// The triangle 0, (1, -1/2), (1, 1/2) with the pair of edge midpoints
/// (1/2, -1/2), (1/2, 1/2) at distance 1 against comparison distance 1/2.
CrushedWitness crushed_cat_witness();

/// Triangles inside the ball of the given radius about a point (x, y), x > 0.
BallTriangleSampler<CrushedPoint> crushed_ball_sampler();

// ---------------------------------------------------------------------------
// Surfaces of revolution approximated by weighted grid graphs.

struct Profile {
    std::function<double(double)> radius;
    std::function<double(double)> slope;  // radius'(x)
};

/// r(x) = x^2: the cusped cone.
Profile cusp_profile();
/// r(x) = 1: a unit cylinder, used to check distances against exact values.
Profile cylinder_profile();

struct MeshVertex {
    double x = 0.0;
    double phi = 0.0;
};

struct MeshEdge {
    std::size_t i = 0;
    std::size_t j = 0;
    double w = 0.0;
};

/// Grid (x_i, phi_j) on a surface of revolution with weighted grid and diagonal
/// edges. Weights are midpoint-rule lengths under ds^2 = (1 + r'^2) dx^2 + r^2 dphi^2.
class MeshSurface {
public:
    MeshSurface(double x_min, double x_max, std::size_t nx, std::size_t nphi, Profile profile);

    std::size_t nx() const { return nx_; }
    std::size_t nphi() const { return nphi_; }
    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t id(std::size_t ix, std::size_t jphi) const;
    std::size_t ring_index(std::size_t id) const { return id / nphi_; }
    std::size_t angle_index(std::size_t id) const { return id % nphi_; }
    const MeshVertex& vertex(std::size_t id) const { return vertices_.at(id); }
    const std::vector<MeshVertex>& vertices() const { return vertices_; }
    const std::vector<MeshEdge>& edges() const { return edges_; }

    struct Neighbor {
        std::size_t to;
        double w;
    };
    const std::vector<Neighbor>& neighbors(std::size_t id) const { return adjacency_.at(id); }

    bool connected() const;

private:
    void add_edge(std::size_t a, std::size_t b, double dx, double dphi, double x_mid);

    double x_min_, x_max_;
    std::size_t nx_, nphi_;
    Profile profile_;
    std::vector<MeshVertex> vertices_;
    std::vector<MeshEdge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
};

MeshSurface revolution_mesh(double x_min, double x_max, std::size_t nx, std::size_t nphi);

struct MeshPath {
    double length = 0.0;
    std::vector<std::size_t> vertices;
};

/// Exact shortest path in the weighted graph. `blocked` vertices are removed.
MeshPath mesh_distance(const MeshSurface& mesh, std::size_t a, std::size_t b,
                       const std::vector<bool>* blocked = nullptr);

/// Single-source distances (Dijkstra) to every vertex.
std::vector<double> mesh_distances_from(const MeshSurface& mesh, std::size_t source,
                                        const std::vector<bool>* blocked = nullptr);

struct BigonReport {
    MeshPath left;   // forced past phi - pi/2
    MeshPath right;  // forced past phi + pi/2
    double length_ratio = 0.0;      // max/min of the two lengths
    double max_separation = 0.0;    // max over left-path vertices of mesh distance to the right path
    double normalized_separation = 0.0;  // max_separation / mean length
};

/// Shortest paths between antipodal ring vertices a = (x0, phi), b = (x0, phi + pi)
/// on either side of the axis, obtained by cutting the mesh along the meridian
/// at phi + pi/2 and at phi - pi/2 in turn.
BigonReport mesh_bigon(const MeshSurface& mesh, std::size_t a, std::size_t b);

/// {vertices:[{x,phi}], edges:[{i,j,w}]}
std::string mesh_to_json(const MeshSurface& mesh);

}  // namespace catchi
