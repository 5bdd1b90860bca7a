#include "liouville/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "liouville/errors.hpp"
#include "liouville/root_solve.hpp"

namespace liouville {

namespace {

constexpr int kSeedTableSize = 64;
constexpr double kSeriesSeedFraction = 0.1;
constexpr double kEndpointSnap = 1e-8;

}  // namespace

InverseMap::InverseMap(const EllipsoidShape& shape, const InverseMapConfig& config)
    : map_(shape), config_(config) {
  if (!(config.tol > 0) || config.max_iter < 1) {
    throw DomainError("InverseMapConfig: tol must be > 0 and max_iter >= 1");
  }
  std::vector<double> c_series, d_series;
  double u_pref = 0, v_pref = 0;
  if (config.series_order_for_seed >= 1) {
    const auto inv = inverse_series(forward_series(shape, config.series_order_for_seed));
    c_series = inv.c_coeffs;
    d_series = inv.d_coeffs;
    u_pref = inv.u_prefactor;
    v_pref = inv.v_prefactor;
  }
  u_branch_ = build_branch(map_.x(), std::move(c_series), u_pref);
  v_branch_ = build_branch(map_.y(), std::move(d_series), v_pref);
}

InverseMap::Branch InverseMap::build_branch(const CoordinateIntegral& integral,
                                            std::vector<double> series, double prefactor) {
  Branch br;
  br.series = std::move(series);
  br.prefactor = prefactor;
  for (int k = 0; k < kSeedTableSize; ++k) {
    const double t = k == kSeedTableSize - 1
                         ? integral.hi()
                         : integral.lo() + (integral.hi() - integral.lo()) * k / (kSeedTableSize - 1);
    br.table_t.push_back(t);
    br.table_value.push_back(integral(t));
  }
  return br;
}

double InverseMap::seed(Side side, double value) const {
  const Branch& br = branch(side);
  const CoordinateIntegral& I = integral(side);
  double t;
  if (!br.series.empty() && value <= kSeriesSeedFraction * I.total()) {
    const double x2 = value * value;
    double acc = 0;
    for (auto it = br.series.rbegin(); it != br.series.rend(); ++it) acc = acc * x2 + *it;
    t = I.lo() + br.prefactor * x2 * acc;
  } else {
    const auto it = std::upper_bound(br.table_value.begin(), br.table_value.end(), value);
    const std::size_t k = std::clamp<std::size_t>(it - br.table_value.begin(), 1, br.table_value.size() - 1);
    const double x0 = br.table_value[k - 1], x1 = br.table_value[k];
    const double w = x1 > x0 ? (value - x0) / (x1 - x0) : 0.0;
    t = br.table_t[k - 1] + w * (br.table_t[k] - br.table_t[k - 1]);
  }
  return std::clamp(t, I.lo(), I.hi());
}

double InverseMap::invert(Side side, double value) const {
  const CoordinateIntegral& I = integral(side);
  const double total = I.total();
  if (!(value >= 0 && value <= total)) {
    throw DomainError(std::string(side == Side::u ? "u_of_x" : "v_of_y") + ": argument " +
                      std::to_string(value) + " outside [0, " + std::to_string(total) + "]");
  }
  if (value <= kEndpointSnap * total) return I.lo();
  if (value >= (1 - kEndpointSnap) * total) return I.hi();

  const SolveOptions opt{config_.tol * 1e-2, config_.tol, config_.max_iter};
  const double guess = seed(side, value);
  if (value <= I.at_mid()) {
    const double s0 = std::sqrt(std::clamp(guess - I.lo(), 0.0, I.mid() - I.lo()));
    auto eval = [&I](double s) { return std::pair{I.lower_partial(s), I.lower_integrand(s)}; };
    const double s = solve_increasing(eval, value, 0.0, I.s_mid(), s0, opt).root;
    return I.lo() + s * s;
  }
  const double r0 = std::sqrt(std::clamp(I.hi() - guess, 0.0, I.hi() - I.mid()));
  auto eval = [&I](double r) { return std::pair{I.upper_partial(r), I.upper_integrand(r)}; };
  const double r = solve_increasing(eval, total - value, 0.0, I.r_mid(), r0, opt).root;
  return I.hi() - r * r;
}

double InverseMap::u_of_x(double x) const { return invert(Side::u, x); }

double InverseMap::v_of_y(double y) const { return invert(Side::v, y); }

double u_of_x(double x, const EllipsoidShape& shape, const InverseMapConfig& config) {
  return InverseMap(shape, config).u_of_x(x);
}

double v_of_y(double y, const EllipsoidShape& shape, const InverseMapConfig& config) {
  return InverseMap(shape, config).v_of_y(y);
}

ComplexValue u_closed_complex(double x, const EllipsoidShape& shape) {
  if (!(x >= 0)) throw DomainError("u_of_x_closed: argument must be >= 0");
  const JacobiMapParams p = jacobi_map_params(shape);
  const ComplexValue z =
      x * shape.c() * std::sqrt(shape.a2() - shape.b2()) / (2.0 * ComplexValue(0.0, 1.0) * shape.b2());
  const ComplexValue sn = gen_jacobi_sn(p.n1, z, p.m1);
  return shape.b2() / (1.0 - p.n1 * sn * sn);
}

double u_of_x_closed(double x, const EllipsoidShape& shape) {
  const ComplexValue u = u_closed_complex(x, shape);
  if (std::abs(u.imag()) > kBranchTolerance * (1 + std::abs(u.real()))) {
    throw BranchError("u_of_x_closed: imaginary residue " + std::to_string(u.imag()));
  }
  return u.real();
}

double v_of_y_closed(double y, const EllipsoidShape& shape) {
  if (!(y >= 0)) throw DomainError("v_of_y_closed: argument must be >= 0");
  const JacobiMapParams p = jacobi_map_params(shape);
  const double z = y * shape.b() * std::sqrt(shape.a2() - shape.c2()) / (2 * shape.c2());
  const double complete = ellint_pi({p.n2, std::numbers::pi / 2, p.m2}).real();
  if (z > complete * (1 + 1e-12)) {
    throw DomainError("v_of_y_closed: argument beyond Y(b^2)");
  }
  const double sn = gen_jacobi_sn(p.n2, std::min(z, complete), p.m2).real();
  return shape.c2() / (1 - p.n2 * sn * sn);
}

OdeResiduals ode_residuals(const InverseMap& inverse, double x, double y, double step_x,
                           double step_y) {
  if (!(step_x > 0 && step_y > 0)) throw DomainError("ode_residuals: step must be positive");
  if (!(x - step_x > 0 && x + step_x < inverse.x_max() && y - step_y > 0 &&
        y + step_y < inverse.y_max())) {
    throw DomainError("ode_residuals: stencil leaves the open Liouville rectangle");
  }
  const EllipsoidShape& shape = inverse.shape();
  const double u = inverse.u_of_x(x);
  const double du = (inverse.u_of_x(x + step_x) - inverse.u_of_x(x - step_x)) / (2 * step_x);
  const double v = inverse.v_of_y(y);
  const double dv = (inverse.v_of_y(y + step_y) - inverse.v_of_y(y - step_y)) / (2 * step_y);
  return {f_weight(u, shape) * du * du - 1, f_weight(v, shape) * dv * dv + 1};
}

OdeResiduals ode_residuals(const InverseMap& inverse, double x, double y, double step) {
  return ode_residuals(inverse, x, y, step, step);
}

OdeResiduals ode_residuals(double x, double y, const EllipsoidShape& shape, double step) {
  return ode_residuals(InverseMap(shape), x, y, step);
}

LiouvilleMetricSample liouville_metric(const InverseMap& inverse, double x, double y, double hx,
                                       double hy) {
  if (!(hx > 0 && hy > 0)) throw DomainError("liouville_metric: steps must be positive");
  if (!(x - hx >= 0 && x + hx <= inverse.x_max() && y - hy >= 0 && y + hy <= inverse.y_max())) {
    throw DomainError("liouville_metric: stencil leaves the Liouville rectangle");
  }
  const EllipsoidShape& shape = inverse.shape();
  const double u = inverse.u_of_x(x);
  const double v = inverse.v_of_y(y);
  const Point3 sx = (ellipsoid_point({inverse.u_of_x(x + hx), v}, shape) -
                     ellipsoid_point({inverse.u_of_x(x - hx), v}, shape)) *
                    (0.5 / hx);
  const Point3 sy = (ellipsoid_point({u, inverse.v_of_y(y + hy)}, shape) -
                     ellipsoid_point({u, inverse.v_of_y(y - hy)}, shape)) *
                    (0.5 / hy);
  return {dot(sx, sx), dot(sx, sy), dot(sy, sy), 0.25 * (u - v)};
}

}  // namespace liouville
