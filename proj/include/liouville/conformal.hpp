#pragma once

#include "liouville/elliptic.hpp"
#include "liouville/ellipsoid.hpp"

namespace liouville {

/// Conformal (Liouville) coordinates, 0 <= x <= X(a^2), 0 <= y <= Y(b^2).
struct LiouvilleCoords {
  double x;
  double y;
};

/// Parameters of the elliptic-integral closed forms
///   F1(t) = prefactor1 * Pi(n1; phi1(t) | m1)   (X = F1, prefactor1 imaginary)
///   F2(t) = prefactor2 * Pi(n2; phi2(t) | m2)   (Y = F2)
struct JacobiMapParams {
  double n1, m1, n2, m2;
  ComplexValue prefactor1;
  double prefactor2;

  double a2, b2, c2, c;
  double b;

  /// phi1(t) = arcsin(-i c sqrt((t - b^2) / ((b^2 - c^2) t))), purely imaginary.
  ComplexValue amplitude1(double t) const;
  /// phi2(t) = arcsin(b sqrt((t - c^2) / ((b^2 - c^2) t))), real in [0, pi/2].
  double amplitude2(double t) const;

  /// Trigonometric data of phi1(t) and phi2(t) with every Carlson argument
  /// in factored form, e.g. 1 - m1 sin^2 phi1 = b^2 (a^2 - t) / ((a^2 - b^2) t).
  AmplitudeTrig trig1(double t) const;
  AmplitudeTrig trig2(double t) const;
};

JacobiMapParams jacobi_map_params(const EllipsoidShape& shape);

/// One conformal coordinate as a function of its curvature coordinate:
///   T(t) = int_lo^t sqrt(|f(s)|) ds,   lo <= t <= hi,
/// with `other` the remaining root of the denominator of f. Both endpoint
/// singularities are removed by t = lo + s^2 on [lo, mid] and t = hi - r^2
/// on [mid, hi], leaving analytic integrands for Gauss-Kronrod.
class CoordinateIntegral {
 public:
  CoordinateIntegral(double lo, double hi, double other);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  double s_mid() const { return s_mid_; }
  double r_mid() const { return r_mid_; }
  /// T(hi), the side length of the conformal rectangle.
  double total() const { return lower_mid_ + upper_mid_; }
  /// T(mid).
  double at_mid() const { return lower_mid_; }

  /// Integrand after t = lo + s^2 (includes the Jacobian 2s).
  double lower_integrand(double s) const;
  /// Integrand after t = hi - r^2.
  double upper_integrand(double r) const;
  /// int_0^s lower_integrand.
  double lower_partial(double s) const;
  /// int_0^r upper_integrand = T(hi) - T(hi - r^2).
  double upper_partial(double r) const;

  /// T(t); DomainError outside [lo, hi].
  double operator()(double t) const;

 private:
  double lo_, hi_, other_;
  double s_mid_, r_mid_;
  double lower_mid_, upper_mid_;
};

CoordinateIntegral x_integral(const EllipsoidShape& shape);
CoordinateIntegral y_integral(const EllipsoidShape& shape);

/// Forward maps of one shape with the rectangle sides X(a^2), Y(b^2) cached.
class ConformalMap {
 public:
  explicit ConformalMap(const EllipsoidShape& shape);

  const EllipsoidShape& shape() const { return shape_; }
  const CoordinateIntegral& x() const { return x_; }
  const CoordinateIntegral& y() const { return y_; }
  double x_max() const { return x_.total(); }
  double y_max() const { return y_.total(); }

  LiouvilleCoords operator()(const CurvatureCoords& p) const { return {x_(p.u), y_(p.v)}; }

 private:
  EllipsoidShape shape_;
  CoordinateIntegral x_;
  CoordinateIntegral y_;
};

/// X(u) = int_{b^2}^u sqrt(f(t)) dt by quadrature, b^2 <= u <= a^2.
double x_of_u(double u, const EllipsoidShape& shape);
/// Y(v) = int_{c^2}^v sqrt(-f(t)) dt by quadrature, c^2 <= v <= b^2.
double y_of_v(double v, const EllipsoidShape& shape);

/// Imaginary residue above which a closed form is reported as a BranchError.
inline constexpr double kBranchTolerance = 1e-10;

/// X(u) through F1 with complex amplitude and prefactor.
double x_of_u_closed(double u, const EllipsoidShape& shape);
/// Y(v) through F2 (real arithmetic).
double y_of_v_closed(double v, const EllipsoidShape& shape);

/// Complex value of F1(u); x_of_u_closed returns its real part.
ComplexValue f1_closed(double u, const EllipsoidShape& shape);

}  // namespace liouville
