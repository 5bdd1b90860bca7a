#pragma once

#include <array>

namespace liouville {

/// Triaxial ellipsoid x^2/a^2 + y^2/b^2 + z^2/c^2 = 1 with 0 < c < b < a.
class EllipsoidShape {
 public:
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double a2() const { return a2_; }
  double b2() const { return b2_; }
  double c2() const { return c2_; }

 private:
  friend EllipsoidShape make_shape(double a, double b, double c);
  EllipsoidShape(double a, double b, double c)
      : a_(a), b_(b), c_(c), a2_(a * a), b2_(b * b), c2_(c * c) {}

  double a_, b_, c_;
  double a2_, b2_, c2_;
};

/// Curvature-line coordinates, c^2 <= v <= b^2 <= u <= a^2.
struct CurvatureCoords {
  double u;
  double v;
};

struct Point3 {
  double x;
  double y;
  double z;

  Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const Point3&) const = default;
};

double dot(const Point3& p, const Point3& q);
double norm(const Point3& p);

/// First fundamental form in curvature-line coordinates.
struct MetricSample {
  double g11;
  double g12;
  double g22;
};

/// Throws DomainError unless 0 < c < b < a (all finite).
EllipsoidShape make_shape(double a, double b, double c);

/// f(t) = t / ((a^2 - t)(b^2 - t)(c^2 - t)); PoleError at t in {a^2, b^2, c^2}.
double f_weight(double t, const EllipsoidShape& shape);

/// Standard curvature-line parametrization, positive octant.
/// Accepts the closed rectangle; DomainError outside it.
Point3 ellipsoid_point(const CurvatureCoords& coords, const EllipsoidShape& shape);

/// g11 = (u - v) f(u) / 4, g12 = 0, g22 = -(u - v) f(v) / 4.
/// Interior of the rectangle only: the boundary is a pole of f.
MetricSample first_fundamental_form(const CurvatureCoords& coords, const EllipsoidShape& shape);

/// x^2/a^2 + y^2/b^2 + z^2/c^2 - 1.
double implicit_residual(const Point3& p, const EllipsoidShape& shape);

}  // namespace liouville
