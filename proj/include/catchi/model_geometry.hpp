#pragma once

// Constant-curvature model planes: laws of cosines and comparison triangles.
//
// Triangles are carried as side lengths only. Vertices are named A, B, C and
// each side is labeled by the vertex opposite it, so side a joins B and C.
// Points on a side are addressed by arclength from the side's first vertex in
// the cyclic order A -> B -> C -> A:
//
//   side c runs A -> B,   side a runs B -> C,   side b runs C -> A.

#include <limits>
#include <stdexcept>
#include <string>

namespace catchi {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Side lengths that do not form a triangle in the requested model plane.
class InadmissibleTriangle : public DomainError {
public:
    using DomainError::DomainError;
};

/// Curvature bound of the model plane X_chi.
class Curvature {
public:
    constexpr Curvature() = default;
    explicit Curvature(double chi);

    double value() const { return chi_; }
    /// sqrt(|chi|); the factor that rescales lengths to the unit model.
    double scale() const;
    int sign() const { return chi_ > 0 ? 1 : (chi_ < 0 ? -1 : 0); }

private:
    double chi_ = 0.0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// 2*pi/sqrt(chi) for chi > 0, +infinity otherwise.
double model_circumference(Curvature chi);

/// Length of the side opposite an angle gamma between sides a and b.
double side_from_angle(Curvature chi, double a, double b, double gamma);

/// Angle between sides a and b of the triangle with third side c.
double angle_from_sides(Curvature chi, double a, double b, double c);

enum class Side { a, b, c };

std::string to_string(Side s);

struct SidePoint {
    Side side;
    double s;  // arclength from the side's first vertex
};

class ModelTriangle {
public:
    /// Throws DomainError unless the sides fit in X_chi.
    ModelTriangle(Curvature chi, double a, double b, double c);

    /// Non-throwing admissibility check; `why` receives the reason on failure.
    static bool admissible(Curvature chi, double a, double b, double c, std::string* why = nullptr);

    Curvature curvature() const { return chi_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double side(Side s) const;
    double perimeter() const { return a_ + b_ + c_; }

    /// Interior angle at vertex A, B or C (named by the opposite side).
    double angle_at(Side opposite) const;

private:
    Curvature chi_;
    double a_, b_, c_;
};

/// Distance in X_chi between two points on the comparison triangle.
double comparison_point_distance(const ModelTriangle& tri, SidePoint p1, SidePoint p2);

}  // namespace catchi
