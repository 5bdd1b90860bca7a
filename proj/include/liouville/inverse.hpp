#pragma once

#include <vector>

#include "liouville/conformal.hpp"
#include "liouville/series.hpp"

namespace liouville {

struct InverseMapConfig {
  double tol = 1e-12;
  int max_iter = 80;
  int series_order_for_seed = 4;
};

/// Which side of the Liouville rectangle: U(x) on [b^2, a^2] or V(y) on [c^2, b^2].
enum class Side { u, v };

/// Root-solve inverses U(x), V(y) of the conformal coordinates.
///
/// Newton runs in the square-root variable of the half interval that holds
/// the root (t = lo + s^2 or t = hi - r^2), where the coordinate integral is
/// smooth with an analytic derivative; bisection takes over whenever a step
/// leaves the bracket. Seeds come from the truncated inverse series near
/// x = 0 and from a 64-point forward table elsewhere.
class InverseMap {
 public:
  explicit InverseMap(const EllipsoidShape& shape, const InverseMapConfig& config = {});

  const EllipsoidShape& shape() const { return map_.shape(); }
  const ConformalMap& forward() const { return map_; }
  const InverseMapConfig& config() const { return config_; }
  double x_max() const { return map_.x_max(); }
  double y_max() const { return map_.y_max(); }

  /// U(x) for 0 <= x <= X(a^2).
  double u_of_x(double x) const;
  /// V(y) for 0 <= y <= Y(b^2).
  double v_of_y(double y) const;
  double invert(Side side, double value) const;

  /// Initial guess used by the solver (exposed for diagnostics).
  double seed(Side side, double value) const;

 private:
  struct Branch {
    std::vector<double> table_value;  // T(t_k)
    std::vector<double> table_t;      // t_k
    std::vector<double> series;       // even inverse coefficients C_{2k} / D_{2k}
    double prefactor;
  };

  const Branch& branch(Side side) const { return side == Side::u ? u_branch_ : v_branch_; }
  const CoordinateIntegral& integral(Side side) const {
    return side == Side::u ? map_.x() : map_.y();
  }
  static Branch build_branch(const CoordinateIntegral& integral, std::vector<double> series,
                             double prefactor);

  ConformalMap map_;
  InverseMapConfig config_;
  Branch u_branch_;
  Branch v_branch_;
};

double u_of_x(double x, const EllipsoidShape& shape, const InverseMapConfig& config = {});
double v_of_y(double y, const EllipsoidShape& shape, const InverseMapConfig& config = {});

/// U(x) = b^2 / (1 - n1 sn^2(n1; x c sqrt(a^2 - b^2) / (2 i b^2) | m1)).
double u_of_x_closed(double x, const EllipsoidShape& shape);
/// V(y) = c^2 / (1 - n2 sn^2(n2; y b sqrt(a^2 - c^2) / (2 c^2) | m2)).
double v_of_y_closed(double y, const EllipsoidShape& shape);

/// Complex U(x) before the branch check; u_of_x_closed returns its real part.
ComplexValue u_closed_complex(double x, const EllipsoidShape& shape);

struct OdeResiduals {
  double r1;  // f(U) U'^2 - 1
  double r2;  // f(V) V'^2 + 1
};

/// Residuals of f(U) U'^2 = 1 and f(V) V'^2 = -1 with central differences
/// of the root-solve inverses. (x, y) must be interior with x +- step and
/// y +- step inside the rectangle.
OdeResiduals ode_residuals(const InverseMap& inverse, double x, double y, double step);
OdeResiduals ode_residuals(const InverseMap& inverse, double x, double y, double step_x,
                           double step_y);
OdeResiduals ode_residuals(double x, double y, const EllipsoidShape& shape, double step);

/// First fundamental form of S(x, y) = Ellipsoid(U(x), V(y)) from central
/// differences with steps hx, hy, next to the expected factor (U - V) / 4.
struct LiouvilleMetricSample {
  double e;
  double f;
  double g;
  double factor;  // (U(x) - V(y)) / 4
};

LiouvilleMetricSample liouville_metric(const InverseMap& inverse, double x, double y, double hx,
                                       double hy);

}  // namespace liouville
