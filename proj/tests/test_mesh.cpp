#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "liouville/errors.hpp"
#include "liouville/mesh.hpp"
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

TEST_CASE("forward samples") {
  const SampleTables t2 = sample_forward(kShape, 2);
  REQUIRE(t2.u.t.size() == 3);
  CHECK(t2.u.t[0] == 4);
  CHECK(t2.u.value[0] == 0);
  CHECK(t2.u.t[1] == 6.5);
  CHECK(t2.u.value[1] == Approx(oracle::frozen::x_at_mid).epsilon(1e-13));
  CHECK(t2.u.t[2] == 9);
  CHECK(t2.u.value[2] == Approx(oracle::frozen::x_at_a2).epsilon(1e-13));
  CHECK(t2.v.t[0] == 1);
  CHECK(t2.v.value[0] == 0);

  const SampleTables t = sample_forward(kShape, 64);
  CHECK(t.u.t.size() == 65);
  for (std::size_t k = 1; k < t.u.t.size(); ++k) {
    CHECK(t.u.t[k] > t.u.t[k - 1]);
    CHECK(t.u.value[k] > t.u.value[k - 1]);
    CHECK(t.v.t[k] > t.v.t[k - 1]);
    CHECK(t.v.value[k] > t.v.value[k - 1]);
  }
  CHECK_THROWS_AS(sample_forward(kShape, 1), DomainError);
}

TEST_CASE("monotone interpolant") {
  const SampleTable table{{0, 1, 2, 3, 4}, {0, 0.1, 3, 3.1, 10}};
  const MonotoneInterpolant p = build_interpolant(table);
  for (std::size_t k = 0; k < table.t.size(); ++k) CHECK(p(table.value[k]) == table.t[k]);
  double prev = -1;
  for (int k = 0; k <= 400; ++k) {
    const double y = p(4.0 * k / 400);
    CHECK(y >= prev);
    prev = y;
  }
  const MonotoneInterpolant two = build_interpolant({{0, 2}, {1, 5}});
  CHECK(two(1) == Approx(3.0));
  CHECK(two(0.5) > 1);
  CHECK(two(0.5) < two(1.5));
  CHECK_THROWS_AS(build_interpolant({{0, 1, 1}, {0, 1, 2}}), NonMonotoneInput);
  CHECK_THROWS_AS(build_interpolant({{0, 1, 2}, {0, 2, 1}}), NonMonotoneInput);
  CHECK_THROWS_AS(build_interpolant({{0}, {0}}), NonMonotoneInput);
}

TEST_CASE("interpolated inverse accuracy") {
  const InverseMap& inv = inverse();
  const SampleTables t = sample_forward(inv.forward(), 64);
  const MonotoneInterpolant pchip = build_interpolant(t.u);
  const AngleInterpolant angle = build_angle_interpolant(t.u, Side::u, kShape);
  for (std::size_t k = 0; k < t.u.t.size(); ++k) {
    CHECK(pchip(t.u.value[k]) == t.u.t[k]);
    CHECK(angle(t.u.value[k]) == Approx(t.u.t[k]).epsilon(1e-14));
  }
  double e_pchip = 0, e_angle = 0;
  for (int k = 0; k <= 1000; ++k) {
    const double x = inv.x_max() * k / 1000;
    const double u = inv.u_of_x(x);
    e_pchip = std::max(e_pchip, std::abs(pchip(x) - u));
    e_angle = std::max(e_angle, std::abs(angle(x) - u));
  }
  CHECK(e_pchip <= 1e-4 * 5 * 2);
  CHECK(e_angle <= 1e-4 * 5);
  CHECK(e_angle < e_pchip);
}

TEST_CASE("structured mesh") {
  const SurfaceMesh m = make_structured_mesh(
      2, 2, 1, 1, {Point3{3, 0, 0}, Point3{0, 2, 0}, Point3{0.1, 0.1, 1}, Point3{0, 0, 1}});
  CHECK(m.vertices.size() == 4);
  CHECK(m.quads.size() == 1);
  CHECK(m.cells.size() == 1);
  CHECK_THROWS_AS(make_structured_mesh(2, 2, 1, 1, {Point3{1, 0, 0}}), DomainError);
}

TEST_CASE("liouville grid vertices") {
  LiouvilleGridOptions opt;
  opt.nx = opt.ny = 33;
  const SurfaceMesh m = liouville_grid(inverse(), opt);
  CHECK(m.vertices.size() == 33u * 33u);
  CHECK(m.quads.size() == 32u * 32u);
  CHECK(max_implicit_residual(m, kShape) <= 1e-10);

  opt.source = GridSource::interpolant;
  const SurfaceMesh mi = liouville_grid(inverse(), opt);
  CHECK(max_vertex_distance(m, mi) <= 1e-3);
  // plain Fritsch-Carlson in u converges more slowly
  opt.interpolant = InterpolantKind::fritsch_carlson;
  const double d_fc = max_vertex_distance(m, liouville_grid(inverse(), opt));
  CHECK(d_fc <= 1e-2);
  CHECK(d_fc > max_vertex_distance(m, mi));

  LiouvilleGridOptions corners;
  corners.nx = corners.ny = 2;
  corners.eps = 0;
  const SurfaceMesh c = liouville_grid(inverse(), corners);
  CHECK(norm(c.vertices[0] - Point3{3, 0, 0}) <= 1e-12);
  CHECK(norm(c.vertices[3] - Point3{0, 0, 1}) <= 1e-12);

  LiouvilleGridOptions bad;
  bad.eps = 0.5;
  CHECK_THROWS_AS(liouville_grid(inverse(), bad), DomainError);
  bad.eps = 1e-3;
  bad.nx = 1;
  CHECK_THROWS_AS(liouville_grid(inverse(), bad), DomainError);
}

TEST_CASE("conformality improves with refinement") {
  LiouvilleGridOptions opt;
  opt.nx = opt.ny = 33;
  const ConformalityReport coarse = conformality_report(liouville_grid(inverse(), opt));
  opt.nx = opt.ny = 65;
  const ConformalityReport fine = conformality_report(liouville_grid(inverse(), opt));
  CHECK(fine.cells == 62u * 62u);
  CHECK(fine.median_corner_error_deg < coarse.median_corner_error_deg);
  CHECK(fine.median_corner_error_deg <= 0.5);
  CHECK(fine.median_ratio_error <= 0.05);
}

TEST_CASE("curvature grid") {
  const SurfaceMesh m = curvature_grid(kShape, 20, 30);
  CHECK(m.vertices.size() == 600);
  CHECK(max_implicit_residual(m, kShape) <= 1e-10);
  // grid lines cross at right angles away from the singular boundary
  const ConformalityReport r = conformality_report(m);
  CHECK(r.median_corner_error_deg <= 1.0);
}

TEST_CASE("full surface is a closed orientable mesh") {
  LiouvilleGridOptions opt;
  opt.nx = opt.ny = 9;
  opt.eps = 0;
  opt.full_surface = true;
  const SurfaceMesh m = liouville_grid(inverse(), opt);
  CHECK(m.full_surface);
  CHECK(max_implicit_residual(m, kShape) <= 1e-10);
  // every directed edge appears once and its reverse once
  std::map<std::pair<int, int>, int> directed;
  for (const auto& q : m.quads) {
    for (int k = 0; k < 4; ++k) {
      const int a = q[k], b = q[(k + 1) % 4];
      if (a != b) ++directed[{a, b}];
    }
  }
  bool manifold = true;
  for (const auto& [e, count] : directed) {
    if (count != 1 || directed.count({e.second, e.first}) != 1) manifold = false;
  }
  CHECK(manifold);
  const long v = static_cast<long>(m.vertices.size());
  const long e = static_cast<long>(directed.size()) / 2;
  const long f = static_cast<long>(m.quads.size());
  CHECK(v - e + f == 2);
  // outward orientation: face normal points away from the centre
  int inward = 0;
  for (const auto& q : m.quads) {
    const Point3 p0 = m.vertices[q[0]], p1 = m.vertices[q[1]], p2 = m.vertices[q[2]],
                 p3 = m.vertices[q[3]];
    const Point3 d1 = p2 - p0, d2 = p3 - p1;
    const Point3 n{d1.y * d2.z - d1.z * d2.y, d1.z * d2.x - d1.x * d2.z, d1.x * d2.y - d1.y * d2.x};
    if (dot(n, (p0 + p1 + p2 + p3) * 0.25) < 0) ++inward;
  }
  CHECK(inward == 0);
}

TEST_CASE("mesh formats") {
  CHECK(parse_mesh_format("obj") == MeshFormat::obj);
  CHECK(parse_mesh_format("csv") == MeshFormat::csv);
  CHECK(parse_mesh_format("json") == MeshFormat::json);
  CHECK_THROWS_AS(parse_mesh_format("stl"), DomainError);

  LiouvilleGridOptions opt;
  opt.nx = 5;
  opt.ny = 4;
  const SurfaceMesh m = liouville_grid(inverse(), opt);

  std::ostringstream obj;
  write_mesh(m, MeshFormat::obj, obj);
  std::istringstream in(obj.str());
  std::string line;
  std::size_t nv = 0, nf = 0;
  bool exact = true;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) {
      const char* s = line.c_str() + 2;
      char* end = nullptr;
      const double x = std::strtod(s, &end);
      const double y = std::strtod(end, &end);
      const double z = std::strtod(end, &end);
      if (!(Point3{x, y, z} == m.vertices.at(nv))) exact = false;
      ++nv;
    } else if (line.rfind("f ", 0) == 0) {
      ++nf;
    }
  }
  CHECK(nv == 20);
  CHECK(nf == 12);
  CHECK(exact);

  std::ostringstream csv;
  write_mesh(m, MeshFormat::csv, csv);
  const std::string text = csv.str();
  CHECK(text.rfind("i,j,x,y,z\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 21);

  std::ostringstream js;
  write_mesh(m, MeshFormat::json, js);
  const nlohmann::json doc = nlohmann::json::parse(js.str());
  CHECK(doc["nx"] == 5);
  CHECK(doc["ny"] == 4);
  CHECK(doc["vertices"].size() == 20);
  CHECK(doc["quads"].size() == 12);
  CHECK(doc["vertices"][7][2].get<double>() == m.vertices[7].z);

  CHECK_THROWS_AS(export_mesh(m, MeshFormat::obj, "/nonexistent-dir/mesh.obj"), IoError);
}
