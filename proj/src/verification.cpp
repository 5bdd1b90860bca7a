#include "liouville/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "liouville/conformal.hpp"
#include "liouville/errors.hpp"
#include "liouville/inverse.hpp"
#include "liouville/mesh.hpp"

namespace liouville {

namespace {

using Clock = std::chrono::steady_clock;

struct Sizes {
  int grid;          // criterion 2 grid points
  int roundtrips;    // criterion 3 samples
  int metric_grid;   // criterion 4 grid per side
  int ode_points;    // criterion 5 points
  int series_points; // criterion 6 points per family
  std::vector<int> mesh_levels;    // criterion 7 grid sizes
  std::vector<int> sample_levels;  // criterion 8 sample counts
};

Sizes sizes(Profile profile) {
  if (profile == Profile::quick) return {100, 1000, 30, 100, 50, {65, 129}, {64, 128}};
  return {1000, 10000, 60, 1000, 500, {65, 129, 257}, {64, 128, 256}};
}

EllipsoidShape to_shape(const SemiAxes<Rational>& axes) {
  return make_shape(static_cast<double>(axes.a), static_cast<double>(axes.b),
                    static_cast<double>(axes.c));
}

// Closed-form coefficient expressions, substituted exactly.
struct Fixtures {
  std::vector<Rational> a, b, c, d, alpha, beta, gamma, delta;
};

Fixtures published_fixtures(const SemiAxes<Rational>& axes) {
  const Rational& a = axes.a;
  const Rational& b = axes.b;
  const Rational& c = axes.c;
  const Rational a2 = a * a, b2 = b * b, c2 = c * c;
  const Rational a4 = a2 * a2, b4 = b2 * b2, c4 = c2 * c2;
  const Rational b8 = b4 * b4, c8 = c4 * c4;
  const Rational p3 = b4 - a2 * c2;
  const Rational q3 = c4 - a2 * b2;
  const Rational p5 = -a4 * c4 + 4 * a4 * b2 * c2 - 10 * a2 * b4 * c2 + 4 * a2 * b2 * c4 + 3 * b8;
  const Rational q5 = -a4 * b4 + 4 * a4 * b2 * c2 + 4 * a2 * b4 * c2 - 10 * a2 * b2 * c4 + 3 * c8;
  const Rational p6 = 11 * a4 * c4 - 9 * a4 * b2 * c2 - 9 * a2 * b2 * c4 + 5 * a2 * b4 * c2 + 2 * b8;
  const Rational q6 = 11 * a4 * b4 - 9 * a4 * b2 * c2 - 9 * a2 * b4 * c2 + 5 * a2 * b2 * c4 + 2 * c8;

  Fixtures f;
  f.a = {2 * b, p3 / (3 * b), p5 / (20 * b * b2)};
  f.b = {2 * c, -q3 / (3 * c), q5 / (20 * c * c2)};
  f.c = {1 / (4 * b2), -p3 / (48 * b2 * b4), p6 / (2880 * b8 * b2)};
  f.d = {1 / (4 * c2), q3 / (48 * c2 * c4), q6 / (2880 * c8 * c2)};
  f.alpha = {Rational(1), p3, p5 / 3};
  f.beta = {Rational(1), q3, q5 / 3};
  f.gamma = {Rational(1), p3, p6 / 2};
  f.delta = {Rational(1), q3, q6 / 2};
  return f;
}

double count_mismatches(const std::vector<Rational>& expected, const std::vector<Rational>& got,
                        std::size_t offset = 0) {
  double bad = 0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (k + offset >= got.size() || got[k + offset] != expected[k]) ++bad;
  }
  return bad;
}

void criterion1(const SemiAxes<Rational>& axes, const Sizes&, CriterionResult& r) {
  const int order = 3;
  const ForwardSeries<Rational> fwd = forward_series(axes, order);
  const InverseSeries<Rational> inv = inverse_series(fwd);
  const NormalizedCoefficients<Rational> norm = normalized_coefficients(fwd, inv);
  const Fixtures f = published_fixtures(axes);
  double bad = 0;
  bad += count_mismatches(f.a, fwd.a_coeffs);
  bad += count_mismatches(f.b, fwd.b_coeffs);
  bad += count_mismatches(f.c, inv.c_coeffs);
  bad += count_mismatches(f.d, inv.d_coeffs);
  bad += count_mismatches(f.alpha, norm.alpha);
  bad += count_mismatches(f.beta, norm.beta);
  bad += count_mismatches(f.gamma, norm.gamma);
  bad += count_mismatches(f.delta, norm.delta);
  r.metrics.push_back({"mismatches/24", bad, 0});
}

void criterion2(const EllipsoidShape& shape, const Sizes& z, CriterionResult& r) {
  double dx = 0, dy = 0, im = 0;
  for (int k = 0; k < z.grid; ++k) {
    const double s = static_cast<double>(k) / (z.grid - 1);
    const double u = shape.b2() + s * (shape.a2() - shape.b2());
    const double v = shape.c2() + s * (shape.b2() - shape.c2());
    const ComplexValue f1 = f1_closed(u, shape);
    im = std::max(im, std::abs(f1.imag()) / (1 + std::abs(f1.real())));
    dx = std::max(dx, std::abs(x_of_u_closed(u, shape) - x_of_u(u, shape)));
    dy = std::max(dy, std::abs(y_of_v_closed(v, shape) - y_of_v(v, shape)));
  }
  r.metrics.push_back({"max|X_closed-X|", dx, 1e-9});
  r.metrics.push_back({"max|Y_closed-Y|", dy, 1e-9});
  r.metrics.push_back({"imag_residue", im, 1e-10});
}

void criterion3(const EllipsoidShape& shape, const Sizes& z, CriterionResult& r) {
  const InverseMap inv(shape);
  double ru = 0, rv = 0, cu = 0, cv = 0, im = 0;
  for (int k = 0; k < z.roundtrips; ++k) {
    const double s = static_cast<double>(k) / (z.roundtrips - 1);
    const double u = shape.b2() + s * (shape.a2() - shape.b2());
    const double v = shape.c2() + s * (shape.b2() - shape.c2());
    const double x = inv.forward().x()(u);
    const double y = inv.forward().y()(v);
    const double uu = inv.u_of_x(x);
    const double vv = inv.v_of_y(y);
    ru = std::max(ru, std::abs(uu - u));
    rv = std::max(rv, std::abs(vv - v));
    const ComplexValue uc = u_closed_complex(x, shape);
    im = std::max(im, std::abs(uc.imag()) / (1 + std::abs(uc.real())));
    cu = std::max(cu, std::abs(uc.real() - uu));
    cv = std::max(cv, std::abs(v_of_y_closed(y, shape) - vv));
  }
  r.metrics.push_back({"max|U(X(u))-u|", ru, 1e-9 * shape.a2()});
  r.metrics.push_back({"max|V(Y(v))-v|", rv, 1e-9 * shape.b2()});
  r.metrics.push_back({"max|U_closed-U|", cu, 1e-8});
  r.metrics.push_back({"max|V_closed-V|", cv, 1e-8});
  r.metrics.push_back({"imag_residue", im, 1e-10});
}

void criterion4(const EllipsoidShape& shape, const Sizes& z, CriterionResult& r) {
  const InverseMap inv(shape);
  const double hx = 1e-5 * inv.x_max();
  const double hy = 1e-5 * inv.y_max();
  double f = 0, eg = 0, ef = 0;
  for (int i = 1; i <= z.metric_grid; ++i) {
    for (int j = 1; j <= z.metric_grid; ++j) {
      const double x = inv.x_max() * i / (z.metric_grid + 1);
      const double y = inv.y_max() * j / (z.metric_grid + 1);
      const LiouvilleMetricSample m = liouville_metric(inv, x, y, hx, hy);
      f = std::max(f, std::abs(m.f) / m.e);
      eg = std::max(eg, std::abs(m.e - m.g) / m.e);
      ef = std::max(ef, std::abs(m.e - m.factor) / m.e);
    }
  }
  r.metrics.push_back({"max|F|/E", f, 1e-5});
  r.metrics.push_back({"max|E-G|/E", eg, 1e-5});
  r.metrics.push_back({"max|E-(U-V)/4|/E", ef, 1e-5});
}

void criterion5(const EllipsoidShape& shape, const Sizes& z, CriterionResult& r) {
  const InverseMap inv(shape);
  double r1 = 0, r2 = 0;
  for (int k = 1; k <= z.ode_points; ++k) {
    const double x = inv.x_max() * k / (z.ode_points + 1);
    const double y = inv.y_max() * k / (z.ode_points + 1);
    const OdeResiduals res = ode_residuals(inv, x, y, 1e-5 * inv.x_max(), 1e-5 * inv.y_max());
    r1 = std::max(r1, std::abs(res.r1));
    r2 = std::max(r2, std::abs(res.r2));
  }
  r.metrics.push_back({"max|f(U)U'^2-1|", r1, 1e-5});
  r.metrics.push_back({"max|f(V)V'^2+1|", r2, 1e-5});
}

void criterion6(const EllipsoidShape& shape, const Sizes& z, CriterionResult& r) {
  const InverseMap inv(shape);
  const ForwardSeries<double> fwd = forward_series(shape, 8);
  const InverseSeries<double> rev = inverse_series(fwd);
  const double du = 0.01 * (shape.a2() - shape.b2());
  const double dv = 0.01 * (shape.b2() - shape.c2());
  const double x_end = inv.forward().x()(shape.b2() + du);
  const double y_end = inv.forward().y()(shape.c2() + dv);
  double fu = 0, fv = 0, iu = 0, iv = 0;
  for (int k = 0; k <= z.series_points; ++k) {
    const double s = static_cast<double>(k) / z.series_points;
    const double u = shape.b2() + s * du;
    const double v = shape.c2() + s * dv;
    fu = std::max(fu, std::abs(eval_forward_series(fwd, SeriesFamily::u, u).value - inv.forward().x()(u)));
    fv = std::max(fv, std::abs(eval_forward_series(fwd, SeriesFamily::v, v).value - inv.forward().y()(v)));
    const double x = s * x_end;
    const double y = s * y_end;
    iu = std::max(iu, std::abs(eval_inverse_series(rev, SeriesFamily::u, x).value - inv.u_of_x(x)));
    iv = std::max(iv, std::abs(eval_inverse_series(rev, SeriesFamily::v, y).value - inv.v_of_y(y)));
  }
  r.metrics.push_back({"max|X_series-X|", fu, 1e-12});
  r.metrics.push_back({"max|Y_series-Y|", fv, 1e-12});
  r.metrics.push_back({"max|U_series-U|", iu, 1e-12});
  r.metrics.push_back({"max|V_series-V|", iv, 1e-12});
}

void criterion7(const EllipsoidShape& shape, const Sizes& z, CriterionResult& r) {
  const InverseMap inv(shape);
  std::vector<double> medians;
  double residual = 0;
  for (int n : z.mesh_levels) {
    LiouvilleGridOptions opt;
    opt.nx = opt.ny = n;
    const SurfaceMesh mesh = liouville_grid(inv, opt);
    residual = std::max(residual, max_implicit_residual(mesh, shape));
    const ConformalityReport rep = conformality_report(mesh);
    medians.push_back(rep.median_corner_error_deg);
    if (n == z.mesh_levels.front()) {
      r.metrics.push_back({"median_angle_err_deg@" + std::to_string(n), rep.median_corner_error_deg, 0.1});
      r.metrics.push_back({"median_ratio_err@" + std::to_string(n), rep.median_ratio_error, 1e-2});
    }
  }
  r.metrics.insert(r.metrics.begin(), {"max_vertex_residual", residual, 1e-10});
  for (std::size_t k = 1; k < medians.size(); ++k) {
    const double drop = medians[k] > 0 ? medians[k - 1] / medians[k] : INFINITY;
    r.metrics.push_back({"angle_drop_" + std::to_string(z.mesh_levels[k - 1]) + "->" +
                             std::to_string(z.mesh_levels[k]),
                         drop, 3.0, true});
  }
}

void criterion8(const EllipsoidShape& shape, const Sizes& z, CriterionResult& r) {
  const InverseMap inv(shape);
  LiouvilleGridOptions opt;
  opt.nx = opt.ny = 65;
  const SurfaceMesh exact = liouville_grid(inv, opt);
  opt.source = GridSource::interpolant;
  std::vector<double> dist, plain;
  for (int n : z.sample_levels) {
    opt.samples = n;
    opt.interpolant = InterpolantKind::angle_hermite;
    dist.push_back(max_vertex_distance(liouville_grid(inv, opt), exact));
    opt.interpolant = InterpolantKind::fritsch_carlson;
    plain.push_back(max_vertex_distance(liouville_grid(inv, opt), exact));
  }
  r.metrics.push_back({"max_dist@n=" + std::to_string(z.sample_levels.front()), dist.front(), 1e-3});
  for (std::size_t k = 1; k < dist.size(); ++k) {
    r.metrics.push_back({"drop_" + std::to_string(z.sample_levels[k - 1]) + "->" +
                             std::to_string(z.sample_levels[k]),
                         dist[k - 1] / dist[k], 4.0, true});
  }
  Metric info{"pchip_u_dist@n=" + std::to_string(z.sample_levels.front()), plain.front(), 1e-3};
  info.gating = false;
  r.metrics.push_back(info);
  Metric info_drop{"pchip_u_drop", plain[0] / plain[1], 4.0, true};
  info_drop.gating = false;
  r.metrics.push_back(info_drop);
}

struct Entry {
  const char* title;
  double time_limit;
};

const Entry kEntries[] = {
    {"coefficient fixtures (exact)", 5},
    {"closed form vs quadrature", 5},
    {"inversion roundtrips", 10},
    {"Liouville metric", 10},
    {"coordinate differential equations", 5},
    {"series near expansion points", 5},
    {"mesh validity and conformality", 20},
    {"interpolant mesh fidelity", 20},
};

}  // namespace

Profile parse_profile(const std::string& name) {
  if (name == "quick") return Profile::quick;
  if (name == "full") return Profile::full;
  throw DomainError("unknown profile '" + name + "' (expected quick or full)");
}

bool CriterionResult::passed() const {
  if (!error.empty() || seconds > time_limit) return false;
  return std::all_of(metrics.begin(), metrics.end(),
                     [](const Metric& m) { return !m.gating || m.ok(); });
}

bool VerificationReport::passed() const {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const CriterionResult& c) { return c.passed(); });
}

CriterionResult run_criterion(int id, const SemiAxes<Rational>& axes, Profile profile) {
  if (id < 1 || id > 8) throw DomainError("criterion id must be 1..8");
  const Entry& entry = kEntries[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = entry.title;
  r.time_limit = entry.time_limit;
  const Sizes z = sizes(profile);
  const auto start = Clock::now();
  try {
    const EllipsoidShape shape = to_shape(axes);
    switch (id) {
      case 1: criterion1(axes, z, r); break;
      case 2: criterion2(shape, z, r); break;
      case 3: criterion3(shape, z, r); break;
      case 4: criterion4(shape, z, r); break;
      case 5: criterion5(shape, z, r); break;
      case 6: criterion6(shape, z, r); break;
      case 7: criterion7(shape, z, r); break;
      case 8: criterion8(shape, z, r); break;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

VerificationReport run_verification(const SemiAxes<Rational>& axes, Profile profile) {
  VerificationReport report;
  for (int id = 1; id <= 8; ++id) report.criteria.push_back(run_criterion(id, axes, profile));
  return report;
}

std::string format_result(const CriterionResult& r) {
  std::string line = std::string(r.passed() ? "PASS" : "FAIL") + " " + std::to_string(r.id) + " " +
                     r.title + ":";
  char buf[160];
  for (const Metric& m : r.metrics) {
    std::snprintf(buf, sizeof buf, " %s=%.3g (%s %.3g%s)", m.name.c_str(), m.value,
                  m.at_least ? ">=" : "<=", m.limit, m.gating ? "" : ", info");
    line += buf;
  }
  if (!r.error.empty()) line += " error: " + r.error;
  std::snprintf(buf, sizeof buf, " [%.2f s / %.0f s]", r.seconds, r.time_limit);
  line += buf;
  return line;
}

}  // namespace liouville
