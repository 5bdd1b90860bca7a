#include "liouville/cli.hpp"

#include <cstdio>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liouville/conformal.hpp"
#include "liouville/errors.hpp"
#include "liouville/inverse.hpp"
#include "liouville/mesh.hpp"
#include "liouville/series.hpp"
#include "liouville/verification.hpp"

namespace liouville::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Axes {
  SemiAxes<Rational> exact;
  bool rational = true;
  EllipsoidShape shape;
};

Axes parse_axes(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--axes expects three comma-separated values a,b,c");
  std::vector<double> values;
  std::vector<Rational> exact;
  bool rational = true;
  for (const std::string& p : parts) {
    try {
      exact.push_back(parse_rational(p));
      values.push_back(static_cast<double>(exact.back()));
    } catch (const DomainError&) {
      rational = false;
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(p, &used);
      } catch (const std::exception&) {
        throw UsageError("--axes: cannot parse '" + p + "'");
      }
      if (used != p.size()) throw UsageError("--axes: cannot parse '" + p + "'");
      values.push_back(v);
      exact.emplace_back(0);
    }
  }
  EllipsoidShape shape = make_shape(values[0], values[1], values[2]);
  return {{exact[0], exact[1], exact[2]}, rational, shape};
}

std::string fmt(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::pair<int, int> parse_grid(const std::string& text) {
  static const std::regex pattern(R"(^(\d+)[xX](\d+)$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw UsageError("--grid expects NXxNY, e.g. 65x65");
  const int nx = std::stoi(m[1].str());
  const int ny = std::stoi(m[2].str());
  if (nx < 2 || ny < 2) throw UsageError("--grid sizes must be at least 2");
  return {nx, ny};
}

template <class T>
void push_family(nlohmann::ordered_json& list, const char* family, const std::vector<T>& coeffs, int first,
                 int step) {
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    nlohmann::ordered_json entry{{"family", family}, {"k", first + step * static_cast<int>(k)}};
    if constexpr (std::is_same_v<T, Rational>) {
      entry["numerator"] = boost::multiprecision::numerator(coeffs[k]).str();
      entry["denominator"] = boost::multiprecision::denominator(coeffs[k]).str();
    } else {
      entry["float"] = coeffs[k];
    }
    list.push_back(std::move(entry));
  }
}

template <class T>
nlohmann::ordered_json coefficient_table(const SemiAxes<T>& axes, int order) {
  const ForwardSeries<T> fwd = forward_series(axes, order);
  const InverseSeries<T> inv = inverse_series(fwd);
  const NormalizedCoefficients<T> norm = normalized_coefficients(fwd, inv);
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  push_family(list, "A", fwd.a_coeffs, 1, 2);
  push_family(list, "B", fwd.b_coeffs, 1, 2);
  push_family(list, "C", inv.c_coeffs, 2, 2);
  push_family(list, "D", inv.d_coeffs, 2, 2);
  push_family(list, "alpha", norm.alpha, 1, 2);
  push_family(list, "beta", norm.beta, 1, 2);
  push_family(list, "gamma", norm.gamma, 2, 2);
  push_family(list, "delta", norm.delta, 2, 2);
  return list;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Liouville (conformal) parametrization of a triaxial ellipsoid"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string axes_text = "3,2,1";
  int digits = 17;
  app.add_option("--axes", axes_text, "Semi-axes a,b,c with a > b > c > 0")->capture_default_str();
  app.add_option("--digits", digits, "Significant digits of numeric output")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();

  auto* forward = app.add_subcommand("forward", "Evaluate X(u) or Y(v)");
  std::optional<double> fwd_u, fwd_v;
  std::string fwd_method = "quadrature";
  auto* opt_u = forward->add_option("--u", fwd_u, "u in [b^2, a^2]");
  auto* opt_v = forward->add_option("--v", fwd_v, "v in [c^2, b^2]");
  opt_u->excludes(opt_v);
  forward->add_option("--method", fwd_method, "quadrature, closed or series")
      ->check(CLI::IsMember({"quadrature", "closed", "series"}))
      ->capture_default_str();

  auto* inverse = app.add_subcommand("inverse", "Evaluate U(x) or V(y)");
  std::optional<double> inv_x, inv_y;
  std::string inv_method = "root";
  auto* opt_x = inverse->add_option("--x", inv_x, "x in [0, X(a^2)]");
  auto* opt_y = inverse->add_option("--y", inv_y, "y in [0, Y(b^2)]");
  opt_x->excludes(opt_y);
  inverse->add_option("--method", inv_method, "root, closed or series")
      ->check(CLI::IsMember({"root", "closed", "series"}))
      ->capture_default_str();

  auto* coeffs = app.add_subcommand("coeffs", "Print series coefficient tables as JSON");
  int order = kDefaultSeriesOrder;
  bool exact = false;
  coeffs->add_option("--order", order, "Truncation order K")->capture_default_str();
  coeffs->add_flag("--exact", exact, "Exact rational arithmetic (rational semi-axes only)");

  auto* mesh = app.add_subcommand("mesh", "Export a surface mesh");
  std::string kind = "liouville", grid = "65x65", out_path, format = "obj", source = "exact";
  double eps = -1;
  int samples = 64;
  bool full_surface = false;
  mesh->add_option("--kind", kind, "liouville or curvature")
      ->check(CLI::IsMember({"liouville", "curvature"}))
      ->capture_default_str();
  mesh->add_option("--grid", grid, "Grid size NXxNY")->capture_default_str();
  mesh->add_option("--out", out_path, "Output file")->required();
  mesh->add_option("--format", format, "obj, csv or json")
      ->check(CLI::IsMember({"obj", "csv", "json"}))
      ->capture_default_str();
  mesh->add_option("--eps", eps,
                   "Clipped fraction of each rectangle side (default 1e-3, or 0 with --full-surface)");
  mesh->add_option("--source", source, "exact or interpolant (Liouville meshes)")
      ->check(CLI::IsMember({"exact", "interpolant"}))
      ->capture_default_str();
  mesh->add_option("--samples", samples, "Forward samples n for the interpolant source")
      ->capture_default_str();
  mesh->add_flag("--full-surface", full_surface, "Reflect the octant patch to the whole ellipsoid");

  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  std::string profile = "quick";
  verify->add_option("--profile", profile, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const Axes axes = parse_axes(axes_text);
    const EllipsoidShape& shape = axes.shape;

    if (forward->parsed()) {
      if (!fwd_u && !fwd_v) throw UsageError("forward: give --u or --v");
      double value;
      if (fwd_method == "series") {
        const ForwardSeries<double> s = forward_series(shape);
        const SeriesValue r = fwd_u ? eval_forward_series(s, SeriesFamily::u, *fwd_u)
                                    : eval_forward_series(s, SeriesFamily::v, *fwd_v);
        if (r.beyond_half) err << "warning: |w| > 1/2, outside the checked series region\n";
        value = r.value;
      } else if (fwd_method == "closed") {
        value = fwd_u ? x_of_u_closed(*fwd_u, shape) : y_of_v_closed(*fwd_v, shape);
      } else {
        value = fwd_u ? x_of_u(*fwd_u, shape) : y_of_v(*fwd_v, shape);
      }
      out << fmt(value, digits) << '\n';
      return kExitOk;
    }

    if (inverse->parsed()) {
      if (!inv_x && !inv_y) throw UsageError("inverse: give --x or --y");
      double value;
      std::string tag;
      if (inv_method == "series") {
        const InverseSeries<double> s = inverse_series(forward_series(shape));
        const SeriesValue r = inv_x ? eval_inverse_series(s, SeriesFamily::u, *inv_x)
                                    : eval_inverse_series(s, SeriesFamily::v, *inv_y);
        if (r.beyond_half) err << "warning: |w| > 1/2, outside the checked series region\n";
        value = r.value;
        tag = "series";
      } else if (inv_method == "closed") {
        value = inv_x ? u_of_x_closed(*inv_x, shape) : v_of_y_closed(*inv_y, shape);
        tag = "closed-form";
      } else {
        const InverseMap map(shape);
        value = inv_x ? map.u_of_x(*inv_x) : map.v_of_y(*inv_y);
        tag = "root-solve";
      }
      out << fmt(value, digits) << ' ' << tag << '\n';
      return kExitOk;
    }

    if (coeffs->parsed()) {
      nlohmann::ordered_json doc;
      doc["axes"] = axes_text;
      doc["order"] = order;
      doc["exact"] = exact;
      if (exact) {
        if (!axes.rational) throw UsageError("coeffs --exact needs rational semi-axes");
        doc["coefficients"] = coefficient_table(axes.exact, order);
      } else {
        doc["coefficients"] =
            coefficient_table(SemiAxes<double>{shape.a(), shape.b(), shape.c()}, order);
      }
      out << doc.dump(2) << '\n';
      return kExitOk;
    }

    if (mesh->parsed()) {
      const auto [nx, ny] = parse_grid(grid);
      const double clip = eps >= 0 ? eps : (full_surface ? 0.0 : 1e-3);
      SurfaceMesh m;
      if (kind == "curvature") {
        m = curvature_grid(shape, nx, ny, clip, full_surface);
      } else {
        LiouvilleGridOptions opt;
        opt.nx = nx;
        opt.ny = ny;
        opt.eps = clip;
        opt.full_surface = full_surface;
        opt.samples = samples;
        opt.source = source == "interpolant" ? GridSource::interpolant : GridSource::exact_inverse;
        m = liouville_grid(shape, opt);
      }
      export_mesh(m, parse_mesh_format(format), out_path);
      const ConformalityReport rep = conformality_report(m);
      out << "wrote " << out_path << ": " << m.vertices.size() << " vertices, " << m.quads.size()
          << " faces\n";
      out << "max implicit residual " << fmt(max_implicit_residual(m, shape), 3) << '\n';
      out << "interior cells " << rep.cells << ": median angle error "
          << fmt(rep.median_corner_error_deg, 3) << " deg, median length-ratio error "
          << fmt(rep.median_ratio_error, 3) << '\n';
      return kExitOk;
    }

    if (verify->parsed()) {
      if (!axes.rational) throw UsageError("verify needs rational semi-axes");
      const VerificationReport report = run_verification(axes.exact, parse_profile(profile));
      for (const CriterionResult& c : report.criteria) out << format_result(c) << '\n';
      out << (report.passed() ? "all criteria passed" : "verification FAILED") << '\n';
      return report.passed() ? kExitOk : kExitFailure;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OrderTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace liouville::cli
