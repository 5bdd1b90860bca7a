#include "liouville/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxDuplications = 100;

bool on_branch_cut(ComplexValue z) { return z.imag() == 0 && z.real() < 0; }

bool is_finite(ComplexValue z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_args(const char* who, std::initializer_list<ComplexValue> args) {
  int zeros = 0;
  for (auto a : args) {
    if (!is_finite(a)) throw DomainError(std::string(who) + ": non-finite argument");
    if (on_branch_cut(a)) throw DomainError(std::string(who) + ": argument on the branch cut");
    if (a == 0.0) ++zeros;
  }
  if (zeros > 1) throw DomainError(std::string(who) + ": more than one zero argument");
}

// Radicands that should be exactly zero at a branch endpoint but come out a
// few ulps negative.
double clamp_tiny(double v, double scale) {
  return (v < 0 && v > -16 * kEps * scale) ? 0.0 : v;
}

// Pi(n; r | m) for |r| <= pi/2 with a real, pole-free path.
double pi_principal(double n, double r, double m) {
  const double s = std::sin(r);
  const double s2 = s * s;
  const double c = std::cos(r);
  const AmplitudeTrig trig{s, c * c, clamp_tiny(1 - m * s2, 1 + std::abs(m)), 1 - n * s2};
  return ellint_pi_trig(n, trig).real();
}

double pi_complete(double n, double m) {
  double value = carlson_rf(0.0, 1 - m, 1.0).real();
  if (n != 0) value += n / 3 * carlson_rj(0.0, 1 - m, 1.0, 1 - n).real();
  return value;
}

double pi_real(double n, double phi, double m) {
  if (phi == 0) return 0;
  const double sign = phi < 0 ? -1.0 : 1.0;
  phi = std::abs(phi);
  const double max_s2 = phi >= std::numbers::pi / 2 ? 1.0 : std::pow(std::sin(phi), 2);
  if (n * max_s2 >= 1) throw DomainError("ellint_pi: pole of the integrand on the path");
  if (m * max_s2 > 1 + 16 * kEps) throw DomainError("ellint_pi: 1 - m sin^2 < 0 on the path");

  const double k = std::nearbyint(phi / std::numbers::pi);
  const double r = phi - k * std::numbers::pi;
  double value = pi_principal(n, r, m);
  if (k != 0) value += 2 * k * pi_complete(n, m);
  return sign * value;
}

// Imaginary part of Pi(n; i psi | m); sin(i psi) = i sinh(psi).
double pi_imaginary(double n, double psi, double m) {
  if (psi == 0) return 0;
  const double sign = psi < 0 ? -1.0 : 1.0;
  const double s = std::sinh(std::abs(psi));
  const double s2 = s * s;
  const double p = 1 + n * s2;
  if (p <= 0) throw DomainError("ellint_pi: pole of the integrand on the imaginary path");
  const double y = clamp_tiny(1 + m * s2, 1 + std::abs(m * s2));
  if (y < 0) throw DomainError("ellint_pi: 1 + m sinh^2 < 0 on the imaginary path");
  const AmplitudeTrig trig{{0.0, s}, 1 + s2, y, p};
  return sign * ellint_pi_trig(n, trig).imag();
}

// Values at the end of a branch where delta2 vanishes (m sin^2 = 1, resp.
// m sinh^2 = -1), with the zero passed exactly.
double pi_real_branch_end(double n, double m) {
  const double s2 = 1 / m;
  return ellint_pi_trig(n, {std::sqrt(s2), 1 - s2, 0.0, 1 - n * s2}).real();
}

double pi_imaginary_branch_end(double n, double m) {
  const double s2 = -1 / m;
  return ellint_pi_trig(n, {{0.0, std::sqrt(s2)}, 1 + s2, 0.0, 1 + n * s2}).imag();
}

enum class Axis { real, imaginary };

Axis classify(ComplexValue z, const char* who) {
  if (!is_finite(z)) throw DomainError(std::string(who) + ": non-finite argument");
  const double re = std::abs(z.real());
  const double im = std::abs(z.imag());
  if (im <= 4 * kEps * re) return Axis::real;
  if (re <= 4 * kEps * im) return Axis::imaginary;
  throw DomainError(std::string(who) + ": only real or purely imaginary arguments are supported");
}

// Upper end of a branch on which the integrand stays positive but blows up
// at `end`: walk towards it until the integral passes the target.
template <class F>
double bracket_towards_pole(F&& integral, double end, double target) {
  for (int j = 1; j < 60; ++j) {
    const double hi = end * (1 - std::ldexp(1.0, -j));
    if (integral(hi) >= target) return hi;
  }
  throw NonConvergence("gen_jacobi_am: could not bracket the amplitude near the pole");
}

double am_real(double n, double z, double m, const SolveOptions& opt) {
  if (z == 0) return 0;
  const double sign = z < 0 ? -1.0 : 1.0;
  const double t = std::abs(z);

  auto eval = [n, m](double phi) {
    const double s2 = std::pow(std::sin(phi), 2);
    const double w = 1 - m * s2;
    const double d = w > 0 ? 1 / ((1 - n * s2) * std::sqrt(w))
                           : std::numeric_limits<double>::infinity();
    return std::pair{pi_real(n, phi, m), d};
  };

  if (n < 1 && m < 1) {
    const double period = 2 * pi_complete(n, m);
    const double k = std::floor(t / period);
    const double r = t - k * period;
    const auto sol = solve_increasing(eval, r, 0.0, std::numbers::pi, r, opt);
    return sign * (k * std::numbers::pi + sol.root);
  }

  double s2max = 1;
  if (n >= 1) s2max = std::min(s2max, 1 / n);
  if (m >= 1) s2max = std::min(s2max, 1 / m);
  const double phi_max = std::asin(std::sqrt(s2max));
  const bool unbounded = n * s2max >= 1 || m == 1;
  double hi = phi_max;
  if (unbounded) {
    hi = bracket_towards_pole([&](double phi) { return pi_real(n, phi, m); }, phi_max, t);
  } else {
    const double zmax = m * s2max == 1 ? pi_real_branch_end(n, m) : pi_real(n, phi_max, m);
    if (t > zmax * (1 + 1e-12)) {
      throw DomainError("gen_jacobi_am: argument beyond the end of the monotone branch");
    }
    if (t >= std::min(zmax, pi_real(n, phi_max, m))) return sign * phi_max;
  }
  return sign * solve_increasing(eval, t, 0.0, hi, std::min(t, hi), opt).root;
}

double am_imaginary(double n, double zeta, double m, const SolveOptions& opt) {
  if (zeta == 0) return 0;
  const double sign = zeta < 0 ? -1.0 : 1.0;
  const double t = std::abs(zeta);

  auto integral = [n, m](double psi) { return pi_imaginary(n, psi, m); };
  auto eval = [n, m](double psi) {
    const double s2 = std::pow(std::sinh(psi), 2);
    const double w = 1 + m * s2;
    const double d = w > 0 ? 1 / ((1 + n * s2) * std::sqrt(w))
                           : std::numeric_limits<double>::infinity();
    return std::pair{pi_imaginary(n, psi, m), d};
  };

  const double inf = std::numeric_limits<double>::infinity();
  const double pole_s2 = n < 0 ? -1 / n : inf;
  const double branch_s2 = m < 0 ? -1 / m : inf;
  double hi;
  if (std::isfinite(pole_s2) && pole_s2 <= branch_s2) {
    hi = bracket_towards_pole(integral, std::asinh(std::sqrt(pole_s2)), t);
  } else if (std::isfinite(branch_s2)) {
    hi = std::asinh(std::sqrt(branch_s2));
    const double zmax = pi_imaginary_branch_end(n, m);
    if (t > zmax * (1 + 1e-12)) {
      throw DomainError("gen_jacobi_am: argument beyond the end of the monotone branch");
    }
    if (t >= std::min(zmax, integral(hi))) return sign * hi;
  } else {
    hi = 1;
    while (integral(hi) < t) {
      hi *= 2;
      if (hi > 700) throw DomainError("gen_jacobi_am: argument beyond the limit of the branch");
    }
  }
  return sign * solve_increasing(eval, t, 0.0, hi, std::min(t, hi), opt).root;
}

}  // namespace

ComplexValue carlson_rf(ComplexValue x, ComplexValue y, ComplexValue z) {
  check_args("carlson_rf", {x, y, z});
  const ComplexValue x0 = x, y0 = y;
  const ComplexValue a0 = (x + y + z) / 3.0;
  const double q = std::pow(3 * kEps, -1.0 / 6) *
                   std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
  ComplexValue a = a0;
  double scale = 1;  // 4^-m
  int iter = 0;
  while (scale * q >= std::abs(a)) {
    if (++iter > kMaxDuplications) throw NonConvergence("carlson_rf: duplication did not converge");
    const ComplexValue sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const ComplexValue lambda = sx * sy + sx * sz + sy * sz;
    a = (a + lambda) / 4.0;
    x = (x + lambda) / 4.0;
    y = (y + lambda) / 4.0;
    z = (z + lambda) / 4.0;
    scale /= 4;
  }
  const ComplexValue X = (a0 - x0) * scale / a;
  const ComplexValue Y = (a0 - y0) * scale / a;
  const ComplexValue Z = -X - Y;
  const ComplexValue e2 = X * Y - Z * Z;
  const ComplexValue e3 = X * Y * Z;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

ComplexValue carlson_rc(ComplexValue x, ComplexValue y) {
  check_args("carlson_rc", {x, y});
  if (y == 0.0) throw DomainError("carlson_rc: y must be nonzero");
  const ComplexValue y0 = y;
  const ComplexValue a0 = (x + 2.0 * y) / 3.0;
  const double q = std::pow(3 * kEps, -1.0 / 8) * std::abs(a0 - x);
  ComplexValue a = a0;
  double scale = 1;
  int iter = 0;
  while (scale * q >= std::abs(a)) {
    if (++iter > kMaxDuplications) throw NonConvergence("carlson_rc: duplication did not converge");
    const ComplexValue lambda = 2.0 * std::sqrt(x) * std::sqrt(y) + y;
    a = (a + lambda) / 4.0;
    x = (x + lambda) / 4.0;
    y = (y + lambda) / 4.0;
    scale /= 4;
  }
  const ComplexValue s = (y0 - a0) * scale / a;
  const ComplexValue s2 = s * s;
  const ComplexValue poly =
      1.0 + s2 * (3.0 / 10 + s * (1.0 / 7 + s * (3.0 / 8 + s * (9.0 / 22 + s * (159.0 / 208 + s * (9.0 / 8))))));
  return poly / std::sqrt(a);
}

ComplexValue carlson_rj(ComplexValue x, ComplexValue y, ComplexValue z, ComplexValue p) {
  check_args("carlson_rj", {x, y, z});
  if (!is_finite(p) || p == 0.0 || on_branch_cut(p)) {
    throw DomainError("carlson_rj: p must be finite, nonzero and off the negative real axis");
  }
  const ComplexValue x0 = x, y0 = y, z0 = z;
  const ComplexValue a0 = (x + y + z + 2.0 * p) / 5.0;
  const ComplexValue delta = (p - x) * (p - y) * (p - z);
  const double q = std::pow(kEps / 4, -1.0 / 6) *
                   std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z), std::abs(a0 - p)});
  ComplexValue a = a0;
  ComplexValue sum = 0;
  double scale = 1;
  int iter = 0;
  while (scale * q >= std::abs(a)) {
    if (++iter > kMaxDuplications) throw NonConvergence("carlson_rj: duplication did not converge");
    const ComplexValue sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z), sp = std::sqrt(p);
    const ComplexValue lambda = sx * sy + sx * sz + sy * sz;
    const ComplexValue d = (sp + sx) * (sp + sy) * (sp + sz);
    const ComplexValue e = delta * (scale * scale * scale) / (d * d);
    sum += scale / d * carlson_rc(1.0, 1.0 + e);
    a = (a + lambda) / 4.0;
    x = (x + lambda) / 4.0;
    y = (y + lambda) / 4.0;
    z = (z + lambda) / 4.0;
    p = (p + lambda) / 4.0;
    scale /= 4;
  }
  const ComplexValue X = (a0 - x0) * scale / a;
  const ComplexValue Y = (a0 - y0) * scale / a;
  const ComplexValue Z = (a0 - z0) * scale / a;
  const ComplexValue P = -(X + Y + Z) / 2.0;
  const ComplexValue xyz = X * Y * Z;
  const ComplexValue p2 = P * P;
  const ComplexValue e2 = X * Y + X * Z + Y * Z - 3.0 * p2;
  const ComplexValue e3 = xyz + 2.0 * e2 * P + 4.0 * p2 * P;
  const ComplexValue e4 = (2.0 * xyz + e2 * P + 3.0 * p2 * P) * P;
  const ComplexValue e5 = xyz * p2;
  const ComplexValue series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                              9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
  return scale * series / (a * std::sqrt(a)) + 6.0 * sum;
}

ComplexValue ellint_pi_trig(double n, const AmplitudeTrig& t) {
  const ComplexValue s = t.sin_phi;
  if (s == 0.0) return 0.0;
  ComplexValue value = s * carlson_rf(t.cos2, t.delta2, 1.0);
  if (n != 0) value += n / 3 * s * s * s * carlson_rj(t.cos2, t.delta2, 1.0, t.one_minus_n_sin2);
  return value;
}

ComplexValue ellint_pi(const EllipticArgs& args) {
  if (!std::isfinite(args.n) || !std::isfinite(args.m)) throw DomainError("ellint_pi: non-finite n or m");
  if (args.phi == 0.0) return 0.0;
  if (classify(args.phi, "ellint_pi") == Axis::real) return pi_real(args.n, args.phi.real(), args.m);
  return {0.0, pi_imaginary(args.n, args.phi.imag(), args.m)};
}

ComplexValue gen_jacobi_am(double n, ComplexValue z, double m, const SolveOptions& opt) {
  if (!std::isfinite(n) || !std::isfinite(m)) throw DomainError("gen_jacobi_am: non-finite n or m");
  if (z == 0.0) return 0.0;
  if (classify(z, "gen_jacobi_am") == Axis::real) return am_real(n, z.real(), m, opt);
  return {0.0, am_imaginary(n, z.imag(), m, opt)};
}

ComplexValue gen_jacobi_sn(double n, ComplexValue z, double m, const SolveOptions& opt) {
  return std::sin(gen_jacobi_am(n, z, m, opt));
}

}  // namespace liouville
