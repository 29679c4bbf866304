#pragma once

// Sampled comparison-geometry tests over an abstract metric space.
//
// The point type is a template parameter; the tests only ever see points
// through a distance function and through edge samplers.

#include "catchi/model_geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace catchi {

template <class Point>
using MetricOracle = std::function<double(const Point&, const Point&)>;

/// A constant-speed path from `from` to `to`, parametrized on [0, 1].
template <class Point>
struct GeodesicSampler {
    Point from;
    Point to;
    std::function<Point(double)> eval;
};

/// Triangle with vertices v[0], v[1], v[2] and edges
/// edge[0]: v0 -> v1, edge[1]: v1 -> v2, edge[2]: v2 -> v0.
template <class Point>
struct TriangleSpec {
    std::array<Point, 3> vertices;
    std::array<GeodesicSampler<Point>, 3> edges;
};

/// A pair of edge points that is farther apart than its comparison pair.
struct CatWitness {
    int edge1 = 0;
    double u = 0.0;
    int edge2 = 0;
    double v = 0.0;
    double measured = 0.0;
    double comparison = 0.0;
    double violation = 0.0;
};

struct CatPass {
    double worst_violation = 0.0;  // largest measured - comparison seen (<= tolerance)
    std::size_t pairs_checked = 0;
};

using CatResult = std::variant<CatPass, CatWitness>;

inline bool passed(const CatResult& r) { return std::holds_alternative<CatPass>(r); }

struct CatOptions {
    int samples = 32;  // points per edge, endpoints included
    double tolerance = 1e-9;
};

/// Sum of consecutive distances along a sampled path.
template <class Point>
double path_length(std::span<const Point> samples, const MetricOracle<Point>& d)
{
    if (samples.empty()) throw DomainError("path_length needs at least one point");
    double total = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) total += d(samples[i - 1], samples[i]);
    return total;
}

namespace detail {

// Edge k of a TriangleSpec is the comparison side opposite vertex (k+2)%3,
// traversed from its first vertex: edge0 = A->B = side c, edge1 = B->C = side a,
// edge2 = C->A = side b.
inline Side side_of_edge(int edge)
{
    static constexpr std::array<Side, 3> map{Side::c, Side::a, Side::b};
    return map.at(static_cast<std::size_t>(edge));
}

}  // namespace detail

/// Edge lengths measured through the oracle, as comparison sides (a, b, c).
template <class Point>
std::array<double, 3> measured_sides(const TriangleSpec<Point>& tri, const MetricOracle<Point>& d)
{
    const double c = d(tri.edges[0].eval(0.0), tri.edges[0].eval(1.0));
    const double a = d(tri.edges[1].eval(0.0), tri.edges[1].eval(1.0));
    const double b = d(tri.edges[2].eval(0.0), tri.edges[2].eval(1.0));
    return {a, b, c};
}

/// Compares every sampled pair of points on distinct edges with the
/// corresponding pair on the comparison triangle. Returns the pair of maximal
/// violation if it exceeds the tolerance. Throws InadmissibleTriangle when no
/// comparison triangle exists, which is not a CAT failure.
template <class Point>
CatResult cat_test(const TriangleSpec<Point>& tri, Curvature chi, const MetricOracle<Point>& d,
                   CatOptions opt = {})
{
    if (opt.samples < 2) throw DomainError("cat_test needs at least two samples per edge");
    if (!(opt.tolerance >= 0.0)) throw DomainError("tolerance must be nonnegative");

    const auto [a, b, c] = measured_sides(tri, d);
    const ModelTriangle model(chi, a, b, c);

    const auto n = static_cast<std::size_t>(opt.samples);
    std::vector<double> us(n);
    for (std::size_t i = 0; i < n; ++i) us[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    std::array<std::vector<Point>, 3> pts;
    for (std::size_t e = 0; e < 3; ++e) {
        pts[e].reserve(n);
        for (double u : us) pts[e].push_back(tri.edges[e].eval(u));
    }

    CatWitness worst;
    worst.violation = -kInfinity;
    std::size_t checked = 0;
    for (int e1 = 0; e1 < 3; ++e1) {
        for (int e2 = e1 + 1; e2 < 3; ++e2) {
            const Side s1 = detail::side_of_edge(e1);
            const Side s2 = detail::side_of_edge(e2);
            const double len1 = model.side(s1);
            const double len2 = model.side(s2);
            const auto& row1 = pts[static_cast<std::size_t>(e1)];
            const auto& row2 = pts[static_cast<std::size_t>(e2)];
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    const double measured = d(row1[i], row2[j]);
                    const double cmp =
                        comparison_point_distance(model, {s1, us[i] * len1}, {s2, us[j] * len2});
                    ++checked;
                    if (measured - cmp > worst.violation)
                        worst = {e1, us[i], e2, us[j], measured, cmp, measured - cmp};
                }
            }
        }
    }
    if (worst.violation > opt.tolerance) return worst;
    return CatPass{worst.violation, checked};
}

/// Largest amount by which a sampler breaks the constant-speed contract
/// d(eval(u), eval(v)) <= L |u - v|, with L the endpoint distance.
template <class Point>
double geodesic_contract_defect(const GeodesicSampler<Point>& g, const MetricOracle<Point>& d, int n = 16)
{
    const double len = d(g.eval(0.0), g.eval(1.0));
    double defect = std::max(d(g.eval(0.0), g.from), d(g.eval(1.0), g.to));
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const double u = static_cast<double>(i) / n;
            const double v = static_cast<double>(j) / n;
            defect = std::max(defect, d(g.eval(u), g.eval(v)) - len * (v - u));
        }
    return defect;
}

// ---------------------------------------------------------------------------
// Alexandrov subdivision.

/// A triangle P, Q, R cut by a segment from R to a point S on PQ. The two
/// pieces are (P, S, R) and (S, Q, R); they share the side RS.
struct SubdividedTriangle {
    double ps = 0.0;
    double sq = 0.0;
    double rp = 0.0;
    double rq = 0.0;
    double rs = 0.0;
};

struct AlexandrovReport {
    ModelTriangle outer;        // comparison triangle of P, Q, R with |PQ| = ps + sq
    double angle_sum_at_s = 0;  // sum of the two piece angles at S
    double min_gap = 0;         // min over the grid of straightened - glued distance
    int samples = 0;            // points per outer side
    std::size_t pairs_checked = 0;
};

class GluingAngleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Glues the comparison triangles of the two pieces along RS and straightens
/// the angle at S. Checks, on a grid of boundary points, that distances in the
/// straightened triangle dominate distances in the glued figure. Throws
/// GluingAngleError when the angle sum at S is below pi.
AlexandrovReport alexandrov_combine(Curvature chi, const SubdividedTriangle& t, int samples = 32);

// ---------------------------------------------------------------------------
// Tangent cone distance.

template <class Point>
struct Germ {
    Point base;
    std::function<Point(double)> at;  // at(t) for small t > 0
};

struct TangentEstimate {
    double value = 0.0;           // max of the tail half of the ratios
    std::vector<double> ts;       // the t sequence used
    std::vector<double> ratios;   // d(g1(t), g2(t)) / t
};

/// t_k = 2^-k for k = first..last.
std::vector<double> default_t_sequence(int first = 4, int last = 24);

template <class Point>
TangentEstimate tangent_distance_estimate(const Germ<Point>& g1, const Germ<Point>& g2,
                                          const MetricOracle<Point>& d,
                                          std::vector<double> ts = default_t_sequence())
{
    if (d(g1.base, g2.base) != 0.0) throw DomainError("germs must share a basepoint");
    if (ts.empty()) throw DomainError("empty t sequence");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!(ts[i] > 0.0)) throw DomainError("t sequence must be positive");
        if (i > 0 && !(ts[i] < ts[i - 1])) throw DomainError("t sequence must strictly decrease");
    }
    TangentEstimate out;
    out.ts = std::move(ts);
    out.ratios.reserve(out.ts.size());
    for (double t : out.ts) out.ratios.push_back(d(g1.at(t), g2.at(t)) / t);
    const std::size_t tail = out.ratios.size() / 2;
    out.value = *std::max_element(out.ratios.begin() + static_cast<std::ptrdiff_t>(tail), out.ratios.end());
    return out;
}

// ---------------------------------------------------------------------------
// Centers.

template <class Point>
struct CenterResult {
    double B = 0.0;
    Point center;
    double achieved = 0.0;
    std::size_t index = 0;  // position of the center in the sample
};

/// Minimizes d(x, c) + d(c, y) over a finite sample of the branch locus.
template <class Point>
CenterResult<Point> center_and_B(const MetricOracle<Point>& d, std::span<const Point> delta,
                                 const Point& x, const Point& y)
{
    if (delta.empty()) throw DomainError("center_and_B needs a nonempty sample");
    std::size_t best = 0;
    double best_value = kInfinity;
    for (std::size_t i = 0; i < delta.size(); ++i) {
        const double value = d(x, delta[i]) + d(delta[i], y);
        if (value < best_value) {
            best_value = value;
            best = i;
        }
    }
    return {best_value, delta[best], best_value, best};
}

/// Distance from a point to a finite sample of a set; +infinity for an empty sample.
template <class Point>
double distance_to_set(const MetricOracle<Point>& d, std::span<const Point> set, const Point& x)
{
    double best = kInfinity;
    for (const auto& c : set) best = std::min(best, d(x, c));
    return best;
}

// ---------------------------------------------------------------------------
// Local CAT scan around points off the branch locus.

template <class Point>
using BallTriangleSampler =
    std::function<TriangleSpec<Point>(const Point& center, double radius, std::mt19937_64& rng)>;

struct ProbeResult {
    double radius = 0.0;
    int passed = 0;
    int failed = 0;
    int inadmissible = 0;
    std::optional<CatWitness> worst;
};

struct HypothesisCReport {
    double lambda = 0.0;
    std::vector<ProbeResult> probes;
    int total_passed = 0;
    int total_failed = 0;
    std::optional<CatWitness> worst;

    bool all_passed() const { return total_failed == 0; }
};

/// For each probe x, runs cat_test on sampled triangles inside the ball of
/// radius lambda * d(x, delta). A falsifier, not a proof.
template <class Point>
HypothesisCReport hypothesis_c_scan(const MetricOracle<Point>& d, std::span<const Point> delta,
                                    double lambda, std::span<const Point> probes, Curvature chi,
                                    const BallTriangleSampler<Point>& sampler, int triangles_per_probe,
                                    std::uint64_t seed, CatOptions opt = {})
{
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
    if (triangles_per_probe < 1) throw DomainError("need at least one triangle per probe");
    HypothesisCReport report;
    report.lambda = lambda;
    std::mt19937_64 rng(seed);
    for (const auto& x : probes) {
        const double dx = distance_to_set(d, delta, x);
        if (!std::isfinite(dx)) throw DomainError("distance to the branch locus is infinite");
        if (dx <= 0.0) throw DomainError("probe lies in the branch locus");
        ProbeResult probe;
        probe.radius = lambda * dx;
        for (int k = 0; k < triangles_per_probe; ++k) {
            const auto tri = sampler(x, probe.radius, rng);
            try {
                const auto result = cat_test(tri, chi, d, opt);
                if (passed(result)) {
                    ++probe.passed;
                } else {
                    ++probe.failed;
                    const auto& w = std::get<CatWitness>(result);
                    if (!probe.worst || w.violation > probe.worst->violation) probe.worst = w;
                }
            } catch (const InadmissibleTriangle&) {
                ++probe.inadmissible;
            }
        }
        report.total_passed += probe.passed;
        report.total_failed += probe.failed;
        if (probe.worst && (!report.worst || probe.worst->violation > report.worst->violation))
            report.worst = probe.worst;
        report.probes.push_back(std::move(probe));
    }
    return report;
}

}  // namespace catchi
