#include "catchi/metric_core.hpp"

#include <numbers>
#include <sstream>

namespace catchi {

std::vector<double> default_t_sequence(int first, int last)
{
    if (first > last) throw DomainError("empty t sequence range");
    std::vector<double> ts;
    for (int k = first; k <= last; ++k) ts.push_back(std::ldexp(1.0, -k));
    return ts;
}

namespace {

constexpr double kAngleSlack = 1e-9;

// A point of the glued figure: which piece it lies in, and where on that
// piece's comparison triangle.
struct GluedPoint {
    int piece;  // 0 = (P, S, R), 1 = (S, Q, R)
    SidePoint at;
};

// Piece 0 has vertices A=P, B=S, C=R: side c = PS, a = SR, b = RP.
// Piece 1 has vertices A=S, B=Q, C=R: side c = SQ, a = QR, b = RS.
// The seam RS is side a of piece 0 (from S) and side b of piece 1 (from R).
class GluedFigure {
public:
    GluedFigure(const ModelTriangle& left, const ModelTriangle& right, double rs)
        : pieces_{left, right}, rs_(rs)
    {
    }

    double distance(const GluedPoint& x, const GluedPoint& y) const
    {
        if (x.piece == y.piece)
            return comparison_point_distance(pieces_[static_cast<std::size_t>(x.piece)], x.at, y.at);
        const GluedPoint& l = x.piece == 0 ? x : y;
        const GluedPoint& r = x.piece == 0 ? y : x;
        return through_seam(l.at, r.at);
    }

private:
    // Length of the shortest broken path crossing the seam at distance w from S.
    double via(double w, SidePoint l, SidePoint r) const
    {
        return comparison_point_distance(pieces_[0], l, {Side::a, w}) +
               comparison_point_distance(pieces_[1], {Side::b, rs_ - w}, r);
    }

    double through_seam(SidePoint l, SidePoint r) const
    {
        if (rs_ <= 0.0) return via(0.0, l, r);
        constexpr int coarse = 64;
        int best = 0;
        double best_value = kInfinity;
        for (int k = 0; k <= coarse; ++k) {
            const double value = via(rs_ * k / coarse, l, r);
            if (value < best_value) {
                best_value = value;
                best = k;
            }
        }
        // Golden-section refinement on the bracket around the coarse minimum.
        double lo = rs_ * std::max(best - 1, 0) / coarse;
        double hi = rs_ * std::min(best + 1, coarse) / coarse;
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double m1 = hi - g * (hi - lo);
        double m2 = lo + g * (hi - lo);
        double f1 = via(m1, l, r);
        double f2 = via(m2, l, r);
        for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, rs_); ++it) {
            if (f1 < f2) {
                hi = m2;
                m2 = m1;
                f2 = f1;
                m1 = hi - g * (hi - lo);
                f1 = via(m1, l, r);
            } else {
                lo = m1;
                m1 = m2;
                f1 = f2;
                m2 = lo + g * (hi - lo);
                f2 = via(m2, l, r);
            }
        }
        return std::min({best_value, f1, f2});
    }

    std::array<ModelTriangle, 2> pieces_;
    double rs_;
};

}  // namespace

AlexandrovReport alexandrov_combine(Curvature chi, const SubdividedTriangle& t, int samples)
{
    if (samples < 2) throw DomainError("alexandrov_combine needs at least two samples per side");
    const ModelTriangle left(chi, t.rs, t.rp, t.ps);
    const ModelTriangle right(chi, t.rq, t.rs, t.sq);

    // A piece with a zero-length side at S is collapsed, and the gluing is
    // already straight there.
    const bool collapsed = t.ps == 0.0 || t.sq == 0.0 || t.rs == 0.0;
    const double angle_sum =
        collapsed ? std::numbers::pi : left.angle_at(Side::b) + right.angle_at(Side::a);
    if (angle_sum < std::numbers::pi - kAngleSlack) {
        std::ostringstream os;
        os << "angle sum " << angle_sum << " at the subdivision point is below pi";
        throw GluingAngleError(os.str());
    }

    // Outer triangle A=P, B=Q, C=R.
    const ModelTriangle outer(chi, t.rq, t.rp, t.ps + t.sq);
    const GluedFigure glued(left, right, t.rs);

    struct BoundaryPoint {
        SidePoint outer;
        GluedPoint glued;
    };
    std::vector<BoundaryPoint> boundary;
    const auto n = static_cast<std::size_t>(samples);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(n - 1);
        const double s_pq = u * (t.ps + t.sq);
        const GluedPoint on_pq =
            s_pq <= t.ps ? GluedPoint{0, {Side::c, s_pq}} : GluedPoint{1, {Side::c, s_pq - t.ps}};
        boundary.push_back({{Side::c, s_pq}, on_pq});
        boundary.push_back({{Side::a, u * t.rq}, {1, {Side::a, u * t.rq}}});
        boundary.push_back({{Side::b, u * t.rp}, {0, {Side::b, u * t.rp}}});
    }

    double min_gap = kInfinity;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        for (std::size_t j = i + 1; j < boundary.size(); ++j) {
            const double straight = comparison_point_distance(outer, boundary[i].outer, boundary[j].outer);
            const double bent = glued.distance(boundary[i].glued, boundary[j].glued);
            min_gap = std::min(min_gap, straight - bent);
            ++checked;
        }
    }
    return {outer, angle_sum, min_gap, samples, checked};
}

}  // namespace catchi
