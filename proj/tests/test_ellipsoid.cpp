#include <doctest.h>

#include <cmath>
#include <random>

#include "liouville/ellipsoid.hpp"
#include "liouville/errors.hpp"

using namespace liouville;
using doctest::Approx;

namespace {

const EllipsoidShape kShape = make_shape(3, 2, 1);

Point3 du(double u, double v, double h) {
  return (ellipsoid_point({u + h, v}, kShape) - ellipsoid_point({u - h, v}, kShape)) * (0.5 / h);
}

Point3 dv(double u, double v, double h) {
  return (ellipsoid_point({u, v + h}, kShape) - ellipsoid_point({u, v - h}, kShape)) * (0.5 / h);
}

}  // namespace

TEST_CASE("shape validation") {
  CHECK_NOTHROW(make_shape(3, 2, 1));
  CHECK_THROWS_AS(make_shape(1, 2, 3), DomainError);
  CHECK_THROWS_AS(make_shape(2, 2, 1), DomainError);
  CHECK_THROWS_AS(make_shape(3, 2, 0), DomainError);
  CHECK_THROWS_AS(make_shape(3, 2, -1), DomainError);
  CHECK_THROWS_AS(make_shape(INFINITY, 2, 1), DomainError);
  CHECK_THROWS_AS(make_shape(NAN, 2, 1), DomainError);
}

TEST_CASE("weight function") {
  CHECK(f_weight(2, kShape) == Approx(-1.0 / 7).epsilon(1e-15));
  CHECK(f_weight(8, kShape) == Approx(2.0 / 7).epsilon(1e-15));
  CHECK(f_weight(0, kShape) == 0);
  CHECK_THROWS_AS(f_weight(9, kShape), PoleError);
  CHECK_THROWS_AS(f_weight(4, kShape), PoleError);
  CHECK_THROWS_AS(f_weight(1, kShape), PoleError);
}

TEST_CASE("octant corners") {
  CHECK(ellipsoid_point({4, 1}, kShape) == Point3{3, 0, 0});
  CHECK(ellipsoid_point({9, 4}, kShape) == Point3{0, 0, 1});
  const Point3 p = ellipsoid_point({8, 2}, kShape);
  CHECK(std::abs(implicit_residual(p, kShape)) <= 1e-15);
  CHECK(p.x > 0);
  CHECK(p.y > 0);
  CHECK(p.z > 0);
  CHECK_THROWS_AS(ellipsoid_point({3.9, 2}, kShape), DomainError);
  CHECK_THROWS_AS(ellipsoid_point({8, 4.1}, kShape), DomainError);
  CHECK_THROWS_AS(ellipsoid_point({9.2, 2}, kShape), DomainError);
}

TEST_CASE("first fundamental form") {
  const MetricSample g = first_fundamental_form({8, 2}, kShape);
  CHECK(g.g11 == Approx(3.0 / 7).epsilon(1e-15));
  CHECK(g.g12 == 0);
  const Point3 pv = dv(8, 2, 1e-5);
  CHECK(g.g22 == Approx(dot(pv, pv)).epsilon(1e-6));
  CHECK_THROWS_AS(first_fundamental_form({9, 2}, kShape), PoleError);
  CHECK_THROWS_AS(first_fundamental_form({8, 1}, kShape), PoleError);
}

TEST_CASE("metric against finite differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> su(0.05, 0.95), sv(0.05, 0.95);
  double g11_err = 0, g22_err = 0, ortho = 0;
  for (int i = 0; i < 1000; ++i) {
    const double u = 4 + 5 * su(rng), v = 1 + 3 * sv(rng);
    const double hu = 1e-5 * std::min(u - 4, 9 - u), hv = 1e-5 * std::min(v - 1, 4 - v);
    const MetricSample g = first_fundamental_form({u, v}, kShape);
    const Point3 pu = du(u, v, hu), pv = dv(u, v, hv);
    g11_err = std::max(g11_err, std::abs(dot(pu, pu) - g.g11) / g.g11);
    g22_err = std::max(g22_err, std::abs(dot(pv, pv) - g.g22) / g.g22);
    ortho = std::max(ortho, std::abs(dot(pu, pv)));
    CHECK(g.g11 > 0);
    CHECK(g.g22 > 0);
  }
  CHECK(g11_err <= 1e-6);
  CHECK(g22_err <= 1e-6);
  CHECK(ortho <= 1e-8);
}

TEST_CASE("points lie on the ellipsoid") {
  const EllipsoidShape s = make_shape(5, 1.5, 0.25);
  double worst = 0;
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      const double u = s.b2() + (s.a2() - s.b2()) * i / 40;
      const double v = s.c2() + (s.b2() - s.c2()) * j / 40;
      worst = std::max(worst, std::abs(implicit_residual(ellipsoid_point({u, v}, s), s)));
    }
  }
  CHECK(worst <= 1e-12);
}
