#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "liouville/ellipsoid.hpp"
#include "liouville/inverse.hpp"

namespace liouville {

/// Forward samples (T(t_k), t_k), t_k = ((n - k) t_0 + k t_n) / n, k = 0..n.
struct SampleTable {
  std::vector<double> value;  // X(u_k) or Y(v_k)
  std::vector<double> t;      // u_k or v_k
};

struct SampleTables {
  SampleTable u;
  SampleTable v;
};

/// Samples both coordinate functions with n + 1 knots each; n >= 2.
SampleTables sample_forward(const ConformalMap& map, int n);
SampleTables sample_forward(const EllipsoidShape& shape, int n);

/// Monotone piecewise-cubic Hermite interpolant of t as a function of the
/// sampled coordinate value (Fritsch-Carlson slope limiting).
class MonotoneInterpolant {
 public:
  MonotoneInterpolant(std::vector<double> knots, std::vector<double> values,
                      std::vector<double> slopes);

  double operator()(double x) const;
  double derivative(double x) const;
  double lower() const { return knots_.front(); }
  double upper() const { return knots_.back(); }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& slopes() const { return slopes_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// Throws NonMonotoneInput unless both columns are strictly increasing and
/// the table has at least two rows.
MonotoneInterpolant build_interpolant(const SampleTable& table);

/// Inverse coordinate interpolated in the angle variable
///   u = b^2 + (a^2 - b^2) sin^2(theta),  v = c^2 + (b^2 - c^2) sin^2(theta),
/// in which the surface point is analytic. The Hermite slopes at the knots are
///   dtheta/dx = sqrt((u - c^2) / u) / 2,  dtheta/dy = sqrt((a^2 - v) / v) / 2,
/// which follow from f(U) U'^2 = 1 and f(V) V'^2 = -1, passed through the
/// Fritsch-Carlson limiter.
class AngleInterpolant {
 public:
  AngleInterpolant(MonotoneInterpolant theta, double t0, double t1)
      : theta_(std::move(theta)), t0_(t0), t1_(t1) {}

  double operator()(double x) const;
  double lower() const { return theta_.lower(); }
  double upper() const { return theta_.upper(); }
  const MonotoneInterpolant& theta() const { return theta_; }

 private:
  MonotoneInterpolant theta_;
  double t0_, t1_;
};

/// Throws NonMonotoneInput like build_interpolant.
AngleInterpolant build_angle_interpolant(const SampleTable& table, Side side,
                                         const EllipsoidShape& shape);

/// Per-cell shape diagnostics.
struct CellDiagnostics {
  // |d_i| / |d_j| over the parameter aspect h_i / h_j, where d_i, d_j are the
  // bimedians (segments joining midpoints of opposite edges)
  double length_ratio;
  // max over the four corners of |angle - 90| between the grid lines through
  // the corner, with tangents from central differences of neighbouring vertices
  double corner_error_deg;
  // max over the four corners of |angle - 90| between the two cell edges
  double edge_error_deg;
  bool interior;  // not in the outer ring of cells
};

struct SurfaceMesh {
  int nx = 0;  // grid size of one octant patch
  int ny = 0;
  double hx = 0;  // parameter spacing of the patch
  double hy = 0;
  bool full_surface = false;
  std::vector<Point3> vertices;
  std::vector<std::array<int, 2>> labels;  // grid index (i, j) of each vertex
  std::vector<std::array<int, 4>> quads;   // 0-based, counter-clockwise seen from outside
  std::vector<CellDiagnostics> cells;      // one per quad
};

/// Structured nx x ny patch with quads (i, j) -> (i + 1, j) -> (i + 1, j + 1) -> (i, j + 1),
/// reordered if needed so that faces point away from the centre.
/// `vertices` is row-major in j: index = j * nx + i.
SurfaceMesh make_structured_mesh(int nx, int ny, double hx, double hy,
                                 std::vector<Point3> vertices);

enum class GridSource { interpolant, exact_inverse };

/// Interpolant used by GridSource::interpolant.
enum class InterpolantKind { angle_hermite, fritsch_carlson };

struct LiouvilleGridOptions {
  int nx = 65;
  int ny = 65;
  double eps = 1e-3;  // fraction of each rectangle side clipped at both ends
  GridSource source = GridSource::exact_inverse;
  int samples = 64;   // n for the interpolant source
  InterpolantKind interpolant = InterpolantKind::angle_hermite;
  bool full_surface = false;
};

/// Ellipsoid(U(x_i), V(y_j)) with x, y uniform on the clipped Liouville rectangle.
/// 0 <= eps < 1/2; eps = 0 places the patch boundary on the coordinate planes.
SurfaceMesh liouville_grid(const InverseMap& inverse, const LiouvilleGridOptions& options);
SurfaceMesh liouville_grid(const EllipsoidShape& shape, const LiouvilleGridOptions& options);

/// Ellipsoid(u_i, v_j) with (u, v) uniform on the clipped curvature-line rectangle.
SurfaceMesh curvature_grid(const EllipsoidShape& shape, int nu, int nv, double eps = 1e-3,
                           bool full_surface = false);

/// Eight sign-reflected copies of an octant patch. Coincident vertices
/// (within 1e-9 per coordinate) are merged; faces of copies with an odd
/// number of sign flips are reversed to keep a consistent orientation.
SurfaceMesh reflect_to_full_surface(const SurfaceMesh& octant);

struct ConformalityReport {
  std::size_t cells = 0;  // interior cells evaluated
  double median_corner_error_deg = 0;
  double max_corner_error_deg = 0;
  double median_ratio_error = 0;
  double max_ratio_error = 0;
  double median_edge_error_deg = 0;
  double max_edge_error_deg = 0;
};

/// Statistics of the cell diagnostics over interior cells.
ConformalityReport conformality_report(const SurfaceMesh& mesh);

/// Largest |implicit residual| over the vertices.
double max_implicit_residual(const SurfaceMesh& mesh, const EllipsoidShape& shape);

/// Largest distance between corresponding vertices; meshes must have equal vertex counts.
double max_vertex_distance(const SurfaceMesh& a, const SurfaceMesh& b);

enum class MeshFormat { obj, csv, json };

/// "obj", "csv" or "json"; DomainError otherwise.
MeshFormat parse_mesh_format(const std::string& name);

void write_mesh(const SurfaceMesh& mesh, MeshFormat format, std::ostream& out);
/// Throws IoError when the file cannot be written.
void export_mesh(const SurfaceMesh& mesh, MeshFormat format, const std::string& path);

}  // namespace liouville
