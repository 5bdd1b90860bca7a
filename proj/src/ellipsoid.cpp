#include "liouville/ellipsoid.hpp"

#include <cmath>
#include <string>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

double clamped_sqrt(double radicand) {
  if (radicand < 0 && radicand >= -1e-14) radicand = 0;
  return std::sqrt(radicand);
}

void check_rectangle(const CurvatureCoords& p, const EllipsoidShape& s) {
  if (!(p.u >= s.b2() && p.u <= s.a2() && p.v >= s.c2() && p.v <= s.b2())) {
    throw DomainError("curvature coordinates outside c^2 <= v <= b^2 <= u <= a^2: (" +
                      std::to_string(p.u) + ", " + std::to_string(p.v) + ")");
  }
}

}  // namespace

double dot(const Point3& p, const Point3& q) { return p.x * q.x + p.y * q.y + p.z * q.z; }

double norm(const Point3& p) { return std::sqrt(dot(p, p)); }

EllipsoidShape make_shape(double a, double b, double c) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c))) {
    throw DomainError("semi-axes must be finite");
  }
  if (!(0 < c && c < b && b < a)) {
    throw DomainError("semi-axes must satisfy 0 < c < b < a, got a=" + std::to_string(a) +
                      " b=" + std::to_string(b) + " c=" + std::to_string(c));
  }
  return EllipsoidShape(a, b, c);
}

double f_weight(double t, const EllipsoidShape& shape) {
  const double den = (shape.a2() - t) * (shape.b2() - t) * (shape.c2() - t);
  if (den == 0) throw PoleError("f_weight: pole at t=" + std::to_string(t));
  return t / den;
}

Point3 ellipsoid_point(const CurvatureCoords& coords, const EllipsoidShape& shape) {
  check_rectangle(coords, shape);
  const double a2 = shape.a2(), b2 = shape.b2(), c2 = shape.c2();
  const double u = coords.u, v = coords.v;
  // Each radicand written as a product of non-negative factors.
  const double rx = a2 * (a2 - u) * (a2 - v) / ((a2 - b2) * (a2 - c2));
  const double ry = b2 * (u - b2) * (b2 - v) / ((b2 - c2) * (a2 - b2));
  const double rz = c2 * (u - c2) * (v - c2) / ((a2 - c2) * (b2 - c2));
  return {clamped_sqrt(rx), clamped_sqrt(ry), clamped_sqrt(rz)};
}

MetricSample first_fundamental_form(const CurvatureCoords& coords, const EllipsoidShape& shape) {
  check_rectangle(coords, shape);
  const double d = coords.u - coords.v;
  return {0.25 * d * f_weight(coords.u, shape), 0.0, -0.25 * d * f_weight(coords.v, shape)};
}

double implicit_residual(const Point3& p, const EllipsoidShape& shape) {
  return p.x * p.x / shape.a2() + p.y * p.y / shape.b2() + p.z * p.z / shape.c2() - 1;
}

}  // namespace liouville
