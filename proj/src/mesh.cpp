#include "liouville/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

constexpr double kWeldTolerance = 1e-9;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

Point3 cross(const Point3& p, const Point3& q) {
  return {p.y * q.z - p.z * q.y, p.z * q.x - p.x * q.z, p.x * q.y - p.y * q.x};
}

double angle_deg(const Point3& p, const Point3& q) {
  const double np = norm(p), nq = norm(q);
  if (np == 0 || nq == 0) return 0;
  return std::acos(std::clamp(dot(p, q) / (np * nq), -1.0, 1.0)) * kRadToDeg;
}

SampleTable sample(const CoordinateIntegral& integral, int n) {
  SampleTable table;
  table.value.resize(n + 1);
  table.t.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    table.t[k] = k == 0 ? integral.lo() : k == n ? integral.hi()
                                                 : ((n - k) * integral.lo() + k * integral.hi()) / n;
  }
  table.value.front() = 0;
  table.value.back() = integral.total();
  for (int k = 1; k < n; ++k) table.value[k] = integral(table.t[k]);
  return table;
}

// One-sided three-point slope at an end knot, kept shape-preserving.
double end_slope(double h0, double h1, double d0, double d1) {
  double m = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (m * d0 <= 0) {
    m = 0;
  } else if (d0 * d1 <= 0 && std::abs(m) > 3 * std::abs(d0)) {
    m = 3 * d0;
  }
  return m;
}

// Scales slope pairs back into the monotonicity region alpha^2 + beta^2 <= 9.
void limit_slopes(const std::vector<double>& x, const std::vector<double>& y, std::vector<double>& m) {
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const double d = (y[k + 1] - y[k]) / (x[k + 1] - x[k]);
    if (d == 0) {
      m[k] = m[k + 1] = 0;
      continue;
    }
    const double alpha = m[k] / d;
    const double beta = m[k + 1] / d;
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9) {
      const double tau = 3 / std::sqrt(r2);
      m[k] = tau * alpha * d;
      m[k + 1] = tau * beta * d;
    }
  }
}

std::vector<double> fritsch_carlson_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), d(n - 1), m(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    d[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    m[0] = m[1] = d[0];
    return m;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    m[k] = (d[k - 1] * d[k] <= 0) ? 0.0 : (h[k] * d[k - 1] + h[k - 1] * d[k]) / (h[k - 1] + h[k]);
  }
  m[0] = end_slope(h[0], h[1], d[0], d[1]);
  m[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  limit_slopes(x, y, m);
  return m;
}

void check_table(const SampleTable& table) {
  const auto& x = table.value;
  const auto& y = table.t;
  if (x.size() != y.size() || x.size() < 2) {
    throw NonMonotoneInput("build_interpolant: need at least two rows of equal length");
  }
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    if (!(x[k + 1] > x[k]) || !(y[k + 1] > y[k])) {
      throw NonMonotoneInput("build_interpolant: table not strictly increasing at row " +
                             std::to_string(k + 1));
    }
  }
}

void check_grid(int nx, int ny, double eps) {
  if (nx < 2 || ny < 2) throw DomainError("grid sizes must be at least 2");
  if (!(eps >= 0 && eps < 0.5)) throw DomainError("eps must lie in [0, 1/2)");
}

std::vector<double> uniform(double lo, double hi, double eps, int n) {
  std::vector<double> out(n);
  const double a = lo + eps * (hi - lo);
  const double b = hi - eps * (hi - lo);
  for (int i = 0; i < n; ++i) out[i] = i == n - 1 ? b : a + (b - a) * i / (n - 1);
  return out;
}

// Derivative along a grid line at position k of n points, second order
// (one-sided at the ends when n >= 3).
template <class At>
Point3 line_tangent(At&& at, int k, int n) {
  if (n == 2) return at(1) - at(0);
  if (k == 0) return at(1) * 2.0 - at(0) * 1.5 - at(2) * 0.5;
  if (k == n - 1) return at(n - 1) * 1.5 - at(n - 2) * 2.0 + at(n - 3) * 0.5;
  return (at(k + 1) - at(k - 1)) * 0.5;
}

// |angle - 90| between the grid lines at every vertex.
std::vector<double> vertex_angle_errors(int nx, int ny, const std::vector<Point3>& v) {
  std::vector<double> err(v.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Point3 ti = line_tangent([&](int k) { return v[j * nx + k]; }, i, nx);
      const Point3 tj = line_tangent([&](int k) { return v[k * nx + i]; }, j, ny);
      err[j * nx + i] = std::abs(angle_deg(ti, tj) - 90);
    }
  }
  return err;
}

CellDiagnostics diagnose(const std::array<Point3, 4>& ring, const std::array<double, 4>& vertex_error,
                         double hx, double hy) {
  const auto& [p00, p10, p11, p01] = ring;
  const Point3 di = (p10 + p11 - p00 - p01) * 0.5;
  const Point3 dj = (p01 + p11 - p00 - p10) * 0.5;
  CellDiagnostics cell{};
  const double li = norm(di), lj = norm(dj);
  cell.length_ratio = lj > 0 ? (li / lj) / (hx / hy) : 0.0;
  double edge = 0, corner = 0;
  for (int c = 0; c < 4; ++c) {
    const Point3& here = ring[c];
    const double a = angle_deg(ring[(c + 1) % 4] - here, ring[(c + 3) % 4] - here);
    edge = std::max(edge, std::abs(a - 90));
    corner = std::max(corner, vertex_error[c]);
  }
  cell.edge_error_deg = edge;
  cell.corner_error_deg = corner;
  return cell;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + mid));
  return m;
}

struct WeldKey {
  std::int64_t x, y, z;
  bool operator==(const WeldKey&) const = default;
};

struct WeldHash {
  std::size_t operator()(const WeldKey& k) const {
    std::size_t h = std::hash<std::int64_t>{}(k.x);
    h = h * 1000003u ^ std::hash<std::int64_t>{}(k.y);
    h = h * 1000003u ^ std::hash<std::int64_t>{}(k.z);
    return h;
  }
};

WeldKey weld_key(const Point3& p) {
  return {std::llround(p.x / kWeldTolerance), std::llround(p.y / kWeldTolerance),
          std::llround(p.z / kWeldTolerance)};
}

}  // namespace

SampleTables sample_forward(const ConformalMap& map, int n) {
  if (n < 2) throw DomainError("sample_forward: n must be at least 2");
  return {sample(map.x(), n), sample(map.y(), n)};
}

SampleTables sample_forward(const EllipsoidShape& shape, int n) {
  return sample_forward(ConformalMap(shape), n);
}

MonotoneInterpolant::MonotoneInterpolant(std::vector<double> knots, std::vector<double> values,
                                         std::vector<double> slopes)
    : knots_(std::move(knots)), values_(std::move(values)), slopes_(std::move(slopes)) {
  if (knots_.size() < 2 || values_.size() != knots_.size() || slopes_.size() != knots_.size()) {
    throw DomainError("MonotoneInterpolant: inconsistent knot data");
  }
}

std::size_t MonotoneInterpolant::segment(double x) const {
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const std::ptrdiff_t k = (it - knots_.begin()) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(k, 0, knots_.size() - 2));
}

double MonotoneInterpolant::operator()(double x) const {
  if (!(x >= lower() && x <= upper())) {
    throw DomainError("MonotoneInterpolant: argument outside the knot range");
  }
  const std::size_t k = segment(x);
  if (x == knots_[k]) return values_[k];
  if (x == knots_[k + 1]) return values_[k + 1];
  const double h = knots_[k + 1] - knots_[k];
  const double s = (x - knots_[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * values_[k] + h10 * h * slopes_[k] + h01 * values_[k + 1] + h11 * h * slopes_[k + 1];
}

double MonotoneInterpolant::derivative(double x) const {
  if (!(x >= lower() && x <= upper())) {
    throw DomainError("MonotoneInterpolant: argument outside the knot range");
  }
  const std::size_t k = segment(x);
  const double h = knots_[k + 1] - knots_[k];
  const double s = (x - knots_[k]) / h;
  const double s2 = s * s;
  const double d00 = (6 * s2 - 6 * s) / h;
  const double d10 = 3 * s2 - 4 * s + 1;
  const double d01 = (-6 * s2 + 6 * s) / h;
  const double d11 = 3 * s2 - 2 * s;
  return d00 * values_[k] + d10 * slopes_[k] + d01 * values_[k + 1] + d11 * slopes_[k + 1];
}

MonotoneInterpolant build_interpolant(const SampleTable& table) {
  check_table(table);
  return MonotoneInterpolant(table.value, table.t, fritsch_carlson_slopes(table.value, table.t));
}

double AngleInterpolant::operator()(double x) const {
  const double s = std::sin(theta_(x));
  return t0_ + (t1_ - t0_) * s * s;
}

AngleInterpolant build_angle_interpolant(const SampleTable& table, Side side,
                                         const EllipsoidShape& shape) {
  check_table(table);
  const double t0 = side == Side::u ? shape.b2() : shape.c2();
  const double t1 = side == Side::u ? shape.a2() : shape.b2();
  std::vector<double> theta, slope;
  theta.reserve(table.t.size());
  slope.reserve(table.t.size());
  for (double t : table.t) {
    theta.push_back(std::asin(std::sqrt(std::clamp((t - t0) / (t1 - t0), 0.0, 1.0))));
    slope.push_back(side == Side::u ? 0.5 * std::sqrt((t - shape.c2()) / t)
                                    : 0.5 * std::sqrt((shape.a2() - t) / t));
  }
  limit_slopes(table.value, theta, slope);
  return AngleInterpolant(MonotoneInterpolant(table.value, std::move(theta), std::move(slope)), t0, t1);
}

SurfaceMesh make_structured_mesh(int nx, int ny, double hx, double hy, std::vector<Point3> vertices) {
  if (nx < 2 || ny < 2) throw DomainError("make_structured_mesh: grid sizes must be at least 2");
  if (vertices.size() != static_cast<std::size_t>(nx) * ny) {
    throw DomainError("make_structured_mesh: vertex count does not match the grid");
  }
  SurfaceMesh mesh;
  mesh.nx = nx;
  mesh.ny = ny;
  mesh.hx = hx;
  mesh.hy = hy;
  mesh.vertices = std::move(vertices);
  mesh.labels.reserve(mesh.vertices.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) mesh.labels.push_back({i, j});
  }

  auto at = [&](int i, int j) { return j * nx + i; };
  const std::vector<double> vertex_error = vertex_angle_errors(nx, ny, mesh.vertices);
  double orientation = 0;
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const std::array<int, 4> q{at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      const auto& v = mesh.vertices;
      const Point3 centre = (v[q[0]] + v[q[1]] + v[q[2]] + v[q[3]]) * 0.25;
      orientation += dot(cross(v[q[2]] - v[q[0]], v[q[3]] - v[q[1]]), centre);
      mesh.quads.push_back(q);
      CellDiagnostics cell =
          diagnose({v[q[0]], v[q[1]], v[q[2]], v[q[3]]},
                   {vertex_error[q[0]], vertex_error[q[1]], vertex_error[q[2]], vertex_error[q[3]]}, hx, hy);
      cell.interior = i >= 1 && i <= nx - 3 && j >= 1 && j <= ny - 3;
      mesh.cells.push_back(cell);
    }
  }
  if (orientation < 0) {
    for (auto& q : mesh.quads) std::swap(q[1], q[3]);
  }
  return mesh;
}

SurfaceMesh liouville_grid(const InverseMap& inverse, const LiouvilleGridOptions& options) {
  check_grid(options.nx, options.ny, options.eps);
  const EllipsoidShape& shape = inverse.shape();
  const std::vector<double> xs = uniform(0, inverse.x_max(), options.eps, options.nx);
  const std::vector<double> ys = uniform(0, inverse.y_max(), options.eps, options.ny);

  std::vector<double> us(options.nx), vs(options.ny);
  if (options.source == GridSource::exact_inverse) {
    for (int i = 0; i < options.nx; ++i) us[i] = inverse.u_of_x(xs[i]);
    for (int j = 0; j < options.ny; ++j) vs[j] = inverse.v_of_y(ys[j]);
  } else {
    const SampleTables tables = sample_forward(inverse.forward(), options.samples);
    auto fill = [](const auto& interp, const std::vector<double>& at, std::vector<double>& out,
                   double lo, double hi) {
      for (std::size_t k = 0; k < at.size(); ++k) {
        out[k] = std::clamp(interp(std::min(at[k], interp.upper())), lo, hi);
      }
    };
    if (options.interpolant == InterpolantKind::angle_hermite) {
      fill(build_angle_interpolant(tables.u, Side::u, shape), xs, us, shape.b2(), shape.a2());
      fill(build_angle_interpolant(tables.v, Side::v, shape), ys, vs, shape.c2(), shape.b2());
    } else {
      fill(build_interpolant(tables.u), xs, us, shape.b2(), shape.a2());
      fill(build_interpolant(tables.v), ys, vs, shape.c2(), shape.b2());
    }
  }

  std::vector<Point3> vertices;
  vertices.reserve(static_cast<std::size_t>(options.nx) * options.ny);
  for (int j = 0; j < options.ny; ++j) {
    for (int i = 0; i < options.nx; ++i) vertices.push_back(ellipsoid_point({us[i], vs[j]}, shape));
  }
  const double hx = (xs.back() - xs.front()) / (options.nx - 1);
  const double hy = (ys.back() - ys.front()) / (options.ny - 1);
  SurfaceMesh mesh = make_structured_mesh(options.nx, options.ny, hx, hy, std::move(vertices));
  return options.full_surface ? reflect_to_full_surface(mesh) : mesh;
}

SurfaceMesh liouville_grid(const EllipsoidShape& shape, const LiouvilleGridOptions& options) {
  return liouville_grid(InverseMap(shape), options);
}

SurfaceMesh curvature_grid(const EllipsoidShape& shape, int nu, int nv, double eps, bool full_surface) {
  check_grid(nu, nv, eps);
  const std::vector<double> us = uniform(shape.b2(), shape.a2(), eps, nu);
  const std::vector<double> vs = uniform(shape.c2(), shape.b2(), eps, nv);
  std::vector<Point3> vertices;
  vertices.reserve(static_cast<std::size_t>(nu) * nv);
  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i < nu; ++i) vertices.push_back(ellipsoid_point({us[i], vs[j]}, shape));
  }
  const double hu = (us.back() - us.front()) / (nu - 1);
  const double hv = (vs.back() - vs.front()) / (nv - 1);
  SurfaceMesh mesh = make_structured_mesh(nu, nv, hu, hv, std::move(vertices));
  return full_surface ? reflect_to_full_surface(mesh) : mesh;
}

SurfaceMesh reflect_to_full_surface(const SurfaceMesh& octant) {
  if (octant.full_surface) throw DomainError("reflect_to_full_surface: mesh is already complete");
  SurfaceMesh out;
  out.nx = octant.nx;
  out.ny = octant.ny;
  out.hx = octant.hx;
  out.hy = octant.hy;
  out.full_surface = true;

  std::unordered_map<WeldKey, int, WeldHash> index;
  auto weld = [&](const Point3& p, const std::array<int, 2>& label) {
    const WeldKey key = weld_key(p);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          const auto it = index.find({key.x + dx, key.y + dy, key.z + dz});
          if (it == index.end()) continue;
          const Point3& q = out.vertices[it->second];
          if (std::abs(p.x - q.x) <= kWeldTolerance && std::abs(p.y - q.y) <= kWeldTolerance &&
              std::abs(p.z - q.z) <= kWeldTolerance) {
            return it->second;
          }
        }
      }
    }
    const int id = static_cast<int>(out.vertices.size());
    out.vertices.push_back(p);
    out.labels.push_back(label);
    index.emplace(key, id);
    return id;
  };

  for (int flips = 0; flips < 8; ++flips) {
    const double sx = (flips & 1) ? -1.0 : 1.0;
    const double sy = (flips & 2) ? -1.0 : 1.0;
    const double sz = (flips & 4) ? -1.0 : 1.0;
    const bool odd = (sx * sy * sz) < 0;
    std::vector<int> remap(octant.vertices.size());
    for (std::size_t k = 0; k < octant.vertices.size(); ++k) {
      const Point3& p = octant.vertices[k];
      // 0.0 - x keeps reflected zeros as +0
      const Point3 r{sx > 0 ? p.x : 0.0 - p.x, sy > 0 ? p.y : 0.0 - p.y, sz > 0 ? p.z : 0.0 - p.z};
      remap[k] = weld(r, octant.labels[k]);
    }
    for (std::size_t f = 0; f < octant.quads.size(); ++f) {
      std::array<int, 4> q;
      for (int c = 0; c < 4; ++c) q[c] = remap[octant.quads[f][c]];
      if (odd) std::swap(q[1], q[3]);
      out.quads.push_back(q);
      out.cells.push_back(octant.cells[f]);
    }
  }
  return out;
}

ConformalityReport conformality_report(const SurfaceMesh& mesh) {
  std::vector<double> corner, ratio, edge;
  for (const CellDiagnostics& cell : mesh.cells) {
    if (!cell.interior) continue;
    corner.push_back(cell.corner_error_deg);
    ratio.push_back(std::abs(cell.length_ratio - 1));
    edge.push_back(cell.edge_error_deg);
  }
  ConformalityReport report;
  report.cells = corner.size();
  if (corner.empty()) return report;
  report.max_corner_error_deg = *std::max_element(corner.begin(), corner.end());
  report.max_ratio_error = *std::max_element(ratio.begin(), ratio.end());
  report.max_edge_error_deg = *std::max_element(edge.begin(), edge.end());
  report.median_corner_error_deg = median(std::move(corner));
  report.median_ratio_error = median(std::move(ratio));
  report.median_edge_error_deg = median(std::move(edge));
  return report;
}

double max_implicit_residual(const SurfaceMesh& mesh, const EllipsoidShape& shape) {
  double worst = 0;
  for (const Point3& p : mesh.vertices) worst = std::max(worst, std::abs(implicit_residual(p, shape)));
  return worst;
}

double max_vertex_distance(const SurfaceMesh& a, const SurfaceMesh& b) {
  if (a.vertices.size() != b.vertices.size()) {
    throw DomainError("max_vertex_distance: meshes differ in vertex count");
  }
  double worst = 0;
  for (std::size_t k = 0; k < a.vertices.size(); ++k) {
    worst = std::max(worst, norm(a.vertices[k] - b.vertices[k]));
  }
  return worst;
}

MeshFormat parse_mesh_format(const std::string& name) {
  if (name == "obj") return MeshFormat::obj;
  if (name == "csv") return MeshFormat::csv;
  if (name == "json") return MeshFormat::json;
  throw DomainError("unknown mesh format '" + name + "' (expected obj, csv or json)");
}

void write_mesh(const SurfaceMesh& mesh, MeshFormat format, std::ostream& out) {
  char line[128];
  switch (format) {
    case MeshFormat::obj:
      out << "# liouville mesh " << mesh.nx << "x" << mesh.ny
          << (mesh.full_surface ? " full surface" : " octant") << "\n";
      for (const Point3& p : mesh.vertices) {
        std::snprintf(line, sizeof line, "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
        out << line;
      }
      for (const auto& q : mesh.quads) {
        out << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
      }
      break;
    case MeshFormat::csv:
      out << "i,j,x,y,z\n";
      for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
        const Point3& p = mesh.vertices[k];
        std::snprintf(line, sizeof line, "%d,%d,%.17g,%.17g,%.17g\n", mesh.labels[k][0],
                      mesh.labels[k][1], p.x, p.y, p.z);
        out << line;
      }
      break;
    case MeshFormat::json: {
      nlohmann::json doc;
      doc["nx"] = mesh.nx;
      doc["ny"] = mesh.ny;
      doc["hx"] = mesh.hx;
      doc["hy"] = mesh.hy;
      doc["full_surface"] = mesh.full_surface;
      auto& vertices = doc["vertices"] = nlohmann::json::array();
      for (const Point3& p : mesh.vertices) vertices.push_back({p.x, p.y, p.z});
      doc["labels"] = mesh.labels;
      doc["quads"] = mesh.quads;
      auto& cells = doc["cells"] = nlohmann::json::array();
      for (const CellDiagnostics& c : mesh.cells) {
        cells.push_back({{"length_ratio", c.length_ratio},
                         {"corner_error_deg", c.corner_error_deg},
                         {"edge_error_deg", c.edge_error_deg},
                         {"interior", c.interior}});
      }
      out << doc.dump() << '\n';
      break;
    }
  }
}

void export_mesh(const SurfaceMesh& mesh, MeshFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_mesh(mesh, format, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace liouville
