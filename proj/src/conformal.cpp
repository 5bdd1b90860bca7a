#include "liouville/conformal.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <string>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

constexpr unsigned kMaxDepth = 12;
constexpr double kQuadTol = 1e-13;

template <class F>
double integrate(F&& f, double a, double b) {
  if (a == b) return 0;
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, kMaxDepth, kQuadTol);
}

void check_closed_interval(const char* who, double t, double lo, double hi) {
  if (!(t >= lo && t <= hi)) {
    throw DomainError(std::string(who) + ": argument " + std::to_string(t) + " outside [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

}  // namespace

ComplexValue JacobiMapParams::amplitude1(double t) const {
  const double w = c * std::sqrt(std::max(0.0, (t - b2) / ((b2 - c2) * t)));
  return std::asin(ComplexValue(0.0, -w));
}

double JacobiMapParams::amplitude2(double t) const {
  const double w = b * std::sqrt(std::max(0.0, (t - c2) / ((b2 - c2) * t)));
  return std::asin(std::min(1.0, w));
}

AmplitudeTrig JacobiMapParams::trig1(double t) const {
  const double w = c * std::sqrt(std::max(0.0, (t - b2) / ((b2 - c2) * t)));
  return {{0.0, -w},
          b2 * (t - c2) / ((b2 - c2) * t),
          std::max(0.0, b2 * (a2 - t) / ((a2 - b2) * t)),
          b2 / t};
}

AmplitudeTrig JacobiMapParams::trig2(double t) const {
  const double w = std::min(1.0, b * std::sqrt(std::max(0.0, (t - c2) / ((b2 - c2) * t))));
  return {w,
          std::max(0.0, c2 * (b2 - t) / ((b2 - c2) * t)),
          c2 * (a2 - t) / ((a2 - c2) * t),
          c2 / t};
}

JacobiMapParams jacobi_map_params(const EllipsoidShape& s) {
  JacobiMapParams p{};
  p.a2 = s.a2();
  p.b2 = s.b2();
  p.c2 = s.c2();
  p.b = s.b();
  p.c = s.c();
  p.n1 = 1 - s.b2() / s.c2();
  p.m1 = s.a2() * (s.c2() - s.b2()) / (s.c2() * (s.a2() - s.b2()));
  p.n2 = 1 - s.c2() / s.b2();
  p.m2 = s.a2() * (s.b2() - s.c2()) / (s.b2() * (s.a2() - s.c2()));
  p.prefactor1 = {0.0, 2 * s.b2() / (s.c() * std::sqrt(s.a2() - s.b2()))};
  p.prefactor2 = 2 * s.c2() / (s.b() * std::sqrt(s.a2() - s.c2()));
  return p;
}

CoordinateIntegral::CoordinateIntegral(double lo, double hi, double other)
    : lo_(lo), hi_(hi), other_(other) {
  const double m = mid();
  s_mid_ = std::sqrt(m - lo_);
  r_mid_ = std::sqrt(hi_ - m);
  lower_mid_ = lower_partial(s_mid_);
  upper_mid_ = upper_partial(r_mid_);
}

double CoordinateIntegral::lower_integrand(double s) const {
  const double t = lo_ + s * s;
  return 2 * std::sqrt(t / ((hi_ - t) * std::abs(t - other_)));
}

double CoordinateIntegral::upper_integrand(double r) const {
  const double t = hi_ - r * r;
  return 2 * std::sqrt(t / ((t - lo_) * std::abs(t - other_)));
}

double CoordinateIntegral::lower_partial(double s) const {
  return integrate([this](double x) { return lower_integrand(x); }, 0.0, s);
}

double CoordinateIntegral::upper_partial(double r) const {
  return integrate([this](double x) { return upper_integrand(x); }, 0.0, r);
}

double CoordinateIntegral::operator()(double t) const {
  check_closed_interval("conformal coordinate", t, lo_, hi_);
  if (t <= mid()) return lower_partial(std::sqrt(t - lo_));
  const double r = std::sqrt(hi_ - t);
  return lower_mid_ +
         integrate([this](double x) { return upper_integrand(x); }, r, r_mid_);
}

CoordinateIntegral x_integral(const EllipsoidShape& shape) {
  return {shape.b2(), shape.a2(), shape.c2()};
}

CoordinateIntegral y_integral(const EllipsoidShape& shape) {
  return {shape.c2(), shape.b2(), shape.a2()};
}

ConformalMap::ConformalMap(const EllipsoidShape& shape)
    : shape_(shape), x_(x_integral(shape)), y_(y_integral(shape)) {}

double x_of_u(double u, const EllipsoidShape& shape) {
  check_closed_interval("x_of_u", u, shape.b2(), shape.a2());
  return x_integral(shape)(u);
}

double y_of_v(double v, const EllipsoidShape& shape) {
  check_closed_interval("y_of_v", v, shape.c2(), shape.b2());
  return y_integral(shape)(v);
}

ComplexValue f1_closed(double u, const EllipsoidShape& shape) {
  check_closed_interval("x_of_u_closed", u, shape.b2(), shape.a2());
  const JacobiMapParams p = jacobi_map_params(shape);
  return p.prefactor1 * ellint_pi_trig(p.n1, p.trig1(u));
}

double x_of_u_closed(double u, const EllipsoidShape& shape) {
  const ComplexValue value = f1_closed(u, shape);
  if (std::abs(value.imag()) > kBranchTolerance * (1 + std::abs(value.real()))) {
    throw BranchError("x_of_u_closed: imaginary residue " + std::to_string(value.imag()));
  }
  return value.real();
}

double y_of_v_closed(double v, const EllipsoidShape& shape) {
  check_closed_interval("y_of_v_closed", v, shape.c2(), shape.b2());
  const JacobiMapParams p = jacobi_map_params(shape);
  const ComplexValue value = p.prefactor2 * ellint_pi_trig(p.n2, p.trig2(v));
  if (std::abs(value.imag()) > kBranchTolerance * (1 + std::abs(value.real()))) {
    throw BranchError("y_of_v_closed: imaginary residue " + std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace liouville
