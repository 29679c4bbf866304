#include "catchi/model_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace catchi {

namespace {

constexpr double kClampSlack = 1e-12;

// The model "sine": sin on the sphere, sinh on the hyperbolic plane, the
// identity on the flat plane. All half-angle formulas below are written with it.
double sn(int sign, double x)
{
    if (sign > 0) return std::sin(x);
    if (sign < 0) return std::sinh(x);
    return x;
}

double arc_sn(int sign, double x)
{
    if (sign > 0) return std::asin(x);
    if (sign < 0) return std::asinh(x);
    return x;
}

double slack_for(double scale_of_terms)
{
    return kClampSlack * std::max(1.0, scale_of_terms);
}

void require_length(double x, const char* name)
{
    if (!std::isfinite(x) || x < 0.0) {
        std::ostringstream os;
        os << name << " must be a finite nonnegative length, got " << x;
        throw DomainError(os.str());
    }
}

}  // namespace

Curvature::Curvature(double chi) : chi_(chi)
{
    if (!std::isfinite(chi)) throw DomainError("curvature must be finite");
}

double Curvature::scale() const
{
    return std::sqrt(std::abs(chi_));
}

double model_circumference(Curvature chi)
{
    if (chi.value() <= 0.0) return kInfinity;
    return 2.0 * std::numbers::pi / chi.scale();
}

double side_from_angle(Curvature chi, double a, double b, double gamma)
{
    require_length(a, "side a");
    require_length(b, "side b");
    if (!(gamma >= -kClampSlack && gamma <= std::numbers::pi + kClampSlack))
        throw DomainError("angle must lie in [0, pi]");
    gamma = std::clamp(gamma, 0.0, std::numbers::pi);

    const double half_sin = std::sin(gamma / 2.0);
    const double hs2 = half_sin * half_sin;

    const int sign = chi.sign();
    if (sign == 0) return std::sqrt((a - b) * (a - b) + 4.0 * a * b * hs2);

    const double s = chi.scale();
    if (sign > 0) {
        const double limit = std::numbers::pi / s;
        if (a > limit * (1.0 + kClampSlack) || b > limit * (1.0 + kClampSlack))
            throw DomainError("sides must not exceed pi/sqrt(chi) on the sphere");
    }
    const double A = s * a;
    const double B = s * b;
    const double d = sn(sign, (A - B) / 2.0);
    double h = d * d + sn(sign, A) * sn(sign, B) * hs2;
    if (h < 0.0) {
        if (h < -kClampSlack) throw DomainError("law of cosines argument out of range");
        h = 0.0;
    }
    if (sign > 0 && h > 1.0) {
        if (h > 1.0 + kClampSlack) throw DomainError("law of cosines argument out of range");
        h = 1.0;
    }
    return 2.0 * arc_sn(sign, std::sqrt(h)) / s;
}

double angle_from_sides(Curvature chi, double a, double b, double c)
{
    require_length(a, "side a");
    require_length(b, "side b");
    require_length(c, "side c");
    if (a == 0.0 || b == 0.0) throw DomainError("angle undefined at a vertex with a zero-length side");

    std::string why;
    if (!ModelTriangle::admissible(chi, a, b, c, &why)) throw InadmissibleTriangle(why);

    // sin^2(gamma/2) and cos^2(gamma/2) are proportional to num and den; the
    // atan2 form stays accurate near both gamma = 0 and gamma = pi.
    const int sign = chi.sign();
    const double s = sign == 0 ? 1.0 : chi.scale();
    double num = sn(sign, s * (c - a + b) / 2.0) * sn(sign, s * (c + a - b) / 2.0);
    double den = sn(sign, s * (a + b - c) / 2.0) * sn(sign, s * (a + b + c) / 2.0);
    num = std::max(num, 0.0);
    den = std::max(den, 0.0);
    if (num == 0.0 && den == 0.0) return 0.0;
    return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
}

std::string to_string(Side s)
{
    switch (s) {
    case Side::a: return "a";
    case Side::b: return "b";
    case Side::c: return "c";
    }
    return "?";
}

ModelTriangle::ModelTriangle(Curvature chi, double a, double b, double c)
    : chi_(chi), a_(a), b_(b), c_(c)
{
    std::string why;
    if (!admissible(chi, a, b, c, &why)) throw InadmissibleTriangle(why);
}

bool ModelTriangle::admissible(Curvature chi, double a, double b, double c, std::string* why)
{
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (double x : {a, b, c})
        if (!std::isfinite(x) || x < 0.0) return fail("side lengths must be finite and nonnegative");

    const double perimeter = a + b + c;
    const double slack = slack_for(perimeter);
    if (a > b + c + slack || b > a + c + slack || c > a + b + slack) {
        std::ostringstream os;
        os << "sides (" << a << ", " << b << ", " << c << ") violate the triangle inequality";
        return fail(os.str());
    }
    if (chi.value() > 0.0 && !(perimeter < model_circumference(chi))) {
        std::ostringstream os;
        os << "perimeter " << perimeter << " is not below the model circumference "
           << model_circumference(chi);
        return fail(os.str());
    }
    return true;
}

double ModelTriangle::side(Side s) const
{
    switch (s) {
    case Side::a: return a_;
    case Side::b: return b_;
    case Side::c: return c_;
    }
    throw DomainError("invalid side label");
}

double ModelTriangle::angle_at(Side opposite) const
{
    switch (opposite) {
    case Side::a: return angle_from_sides(chi_, b_, c_, a_);
    case Side::b: return angle_from_sides(chi_, c_, a_, b_);
    case Side::c: return angle_from_sides(chi_, a_, b_, c_);
    }
    throw DomainError("invalid side label");
}

namespace {

// Sides in traversal order A->B (c), B->C (a), C->A (b).
Side next_side(Side s)
{
    switch (s) {
    case Side::c: return Side::a;
    case Side::a: return Side::b;
    case Side::b: return Side::c;
    }
    throw DomainError("invalid side label");
}

Side third_side(Side x, Side y)
{
    for (Side s : {Side::a, Side::b, Side::c})
        if (s != x && s != y) return s;
    throw DomainError("sides must be distinct");
}

double checked_parameter(const ModelTriangle& tri, SidePoint p)
{
    const double len = tri.side(p.side);
    const double slack = slack_for(len);
    if (!std::isfinite(p.s) || p.s < -slack || p.s > len + slack) {
        std::ostringstream os;
        os << "arclength " << p.s << " outside side " << to_string(p.side) << " of length " << len;
        throw DomainError(os.str());
    }
    return std::clamp(p.s, 0.0, len);
}

}  // namespace

double comparison_point_distance(const ModelTriangle& tri, SidePoint p1, SidePoint p2)
{
    const double s1 = checked_parameter(tri, p1);
    const double s2 = checked_parameter(tri, p2);
    if (p1.side == p2.side) return std::abs(s1 - s2);

    // Orient so that p1's side ends where p2's side starts.
    SidePoint first{p1.side, s1};
    SidePoint second{p2.side, s2};
    if (next_side(first.side) != second.side) std::swap(first, second);

    const double d1 = tri.side(first.side) - first.s;
    const double d2 = second.s;
    if (d1 <= 0.0) return d2;
    if (d2 <= 0.0) return d1;
    const double angle = tri.angle_at(third_side(first.side, second.side));
    return side_from_angle(tri.curvature(), d1, d2, angle);
}

}  // namespace catchi
