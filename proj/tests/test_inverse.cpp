#include <doctest.h>

#include <cmath>

#include "liouville/errors.hpp"
#include "liouville/inverse.hpp"
#include "oracles.hpp"

using namespace liouville;
using doctest::Approx;

namespace {

const EllipsoidShape kShape = make_shape(3, 2, 1);

const InverseMap& inverse() {
  static const InverseMap inv(kShape);
  return inv;
}

}  // namespace

TEST_CASE("root-solve inverse endpoints") {
  const InverseMap& inv = inverse();
  CHECK(inv.u_of_x(0) == 4);
  CHECK(inv.v_of_y(0) == 1);
  CHECK(inv.u_of_x(inv.x_max()) == 9);
  CHECK(inv.v_of_y(inv.y_max()) == 4);
  CHECK_THROWS_AS(inv.u_of_x(-0.1), DomainError);
  CHECK_THROWS_AS(inv.u_of_x(inv.x_max() * 1.01), DomainError);
  CHECK_THROWS_AS(inv.v_of_y(inv.y_max() * 1.01), DomainError);
}

TEST_CASE("root-solve inverse against bisection") {
  const InverseMap& inv = inverse();
  for (double x : {0.01, 0.4, 1.7, 3.0, 3.44}) {
    CHECK(inv.u_of_x(x) == Approx(oracle::u_of_x(x, 3, 2, 1)).epsilon(1e-10));
  }
  for (double y : {0.01, 0.3, 1.0, 1.95}) {
    CHECK(inv.v_of_y(y) == Approx(oracle::v_of_y(y, 3, 2, 1)).epsilon(1e-10));
  }
}

TEST_CASE("round trips") {
  const InverseMap& inv = inverse();
  double ru = 0, rv = 0;
  for (int k = 0; k < 1000; ++k) {
    const double s = k / 999.0;
    const double u = 4 + 5 * s, v = 1 + 3 * s;
    ru = std::max(ru, std::abs(inv.u_of_x(inv.forward().x()(u)) - u));
    rv = std::max(rv, std::abs(inv.v_of_y(inv.forward().y()(v)) - v));
  }
  CHECK(ru <= 1e-9 * 9);
  CHECK(rv <= 1e-9 * 4);
}

TEST_CASE("inverse is increasing") {
  const InverseMap& inv = inverse();
  double pu = 0, pv = 0;
  for (int k = 1; k <= 300; ++k) {
    const double u = inv.u_of_x(inv.x_max() * (k / 300.0)), v = inv.v_of_y(inv.y_max() * (k / 300.0));
    CHECK(u > pu);
    CHECK(v > pv);
    pu = u;
    pv = v;
  }
}

TEST_CASE("closed-form inverses") {
  const InverseMap& inv = inverse();
  CHECK(u_of_x_closed(0, kShape) == 4);
  CHECK(v_of_y_closed(0, kShape) == 1);
  CHECK(u_of_x_closed(0.4, kShape) == Approx(inv.u_of_x(0.4)).epsilon(1e-9));
  CHECK(u_of_x_closed(inv.x_max() / 2, kShape) == Approx(inv.u_of_x(inv.x_max() / 2)).epsilon(1e-9));
  CHECK(v_of_y_closed(0.3, kShape) == Approx(inv.v_of_y(0.3)).epsilon(1e-9));
  CHECK(v_of_y_closed(inv.y_max() / 2, kShape) == Approx(inv.v_of_y(inv.y_max() / 2)).epsilon(1e-9));
  for (int k = 0; k <= 40; ++k) {
    const double x = inv.x_max() * (k / 40.0), y = inv.y_max() * (k / 40.0);
    CHECK(std::abs(u_of_x_closed(x, kShape) - inv.u_of_x(x)) <= 1e-8);
    CHECK(std::abs(v_of_y_closed(y, kShape) - inv.v_of_y(y)) <= 1e-8);
  }
}

TEST_CASE("seeds stay in range") {
  const InverseMap& inv = inverse();
  for (int k = 0; k <= 20; ++k) {
    const double s = inv.seed(Side::u, inv.x_max() * (k / 20.0));
    CHECK(s >= 4);
    CHECK(s <= 9);
  }
}

TEST_CASE("differential equations") {
  const InverseMap& inv = inverse();
  for (double fx : {0.2, 0.5, 0.8}) {
    for (double fy : {0.25, 0.6}) {
      const OdeResiduals r = ode_residuals(inv, fx * inv.x_max(), fy * inv.y_max(), 1e-5);
      CHECK(std::abs(r.r1) <= 1e-5);
      CHECK(std::abs(r.r2) <= 1e-5);
    }
  }
  const OdeResiduals coarse =
      ode_residuals(inv, 0.5 * inv.x_max(), 0.5 * inv.y_max(), 0.1 * inv.x_max() * 0.45);
  const OdeResiduals fine = ode_residuals(inv, 0.5 * inv.x_max(), 0.5 * inv.y_max(), 1e-5);
  CHECK(std::abs(coarse.r1) > std::abs(fine.r1));
  CHECK_THROWS_AS(ode_residuals(inv, 1e-6, 0.5, 1e-5), DomainError);
}

TEST_CASE("conformal metric on a grid") {
  const InverseMap& inv = inverse();
  const double hx = 1e-5 * inv.x_max(), hy = 1e-5 * inv.y_max();
  double worst_e = 0, worst_g = 0, worst_f = 0;
  for (int i = 1; i <= 30; ++i) {
    for (int j = 1; j <= 30; ++j) {
      const double x = inv.x_max() * i / 31, y = inv.y_max() * j / 31;
      const LiouvilleMetricSample s = liouville_metric(inv, x, y, hx, hy);
      worst_e = std::max(worst_e, std::abs(s.e - s.factor) / s.factor);
      worst_g = std::max(worst_g, std::abs(s.g - s.factor) / s.factor);
      worst_f = std::max(worst_f, std::abs(s.f) / s.factor);
    }
  }
  CHECK(worst_e <= 1e-5);
  CHECK(worst_g <= 1e-5);
  CHECK(worst_f <= 1e-5);
}

TEST_CASE("free functions and other shapes") {
  const EllipsoidShape s = make_shape(4, 3.5, 0.5);
  const InverseMap inv(s);
  for (double t : {0.05, 0.5, 0.95}) {
    const double u = s.b2() + t * (s.a2() - s.b2());
    const double v = s.c2() + t * (s.b2() - s.c2());
    CHECK(u_of_x(x_of_u(u, s), s) == Approx(u).epsilon(1e-10));
    CHECK(v_of_y(y_of_v(v, s), s) == Approx(v).epsilon(1e-10));
    CHECK(inv.u_of_x(x_of_u(u, s)) == Approx(oracle::u_of_x(x_of_u(u, s), 4, 3.5, 0.5)).epsilon(1e-10));
  }
}
