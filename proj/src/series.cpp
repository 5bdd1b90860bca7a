#include "liouville/series.hpp"

#include <cmath>
#include <regex>

#include "liouville/errors.hpp"

namespace liouville {

namespace series_ops {

template <class T>
Poly<T> multiply(const Poly<T>& p, const Poly<T>& q, std::size_t terms) {
  Poly<T> out(terms, T(0));
  for (std::size_t i = 0; i < p.size() && i < terms; ++i) {
    if (p[i] == 0) continue;
    for (std::size_t j = 0; j < q.size() && i + j < terms; ++j) out[i + j] += p[i] * q[j];
  }
  return out;
}

template <class T>
Poly<T> reciprocal(const Poly<T>& p, std::size_t terms) {
  if (p.empty() || p[0] == 0) throw ReversionDegenerate("reciprocal: zero constant term");
  Poly<T> out(terms, T(0));
  out[0] = T(1) / p[0];
  for (std::size_t n = 1; n < terms; ++n) {
    T acc(0);
    for (std::size_t k = 1; k <= n && k < p.size(); ++k) acc += p[k] * out[n - k];
    out[n] = -acc / p[0];
  }
  return out;
}

template <class T>
Poly<T> sqrt_unit(const Poly<T>& p, std::size_t terms) {
  if (p.empty() || p[0] != 1) throw DomainError("sqrt_unit: constant term must be 1");
  Poly<T> out(terms, T(0));
  out[0] = T(1);
  for (std::size_t n = 1; n < terms; ++n) {
    T acc = n < p.size() ? p[n] : T(0);
    for (std::size_t k = 1; k < n; ++k) acc -= out[k] * out[n - k];
    out[n] = acc / 2;
  }
  return out;
}

// Lagrange inversion: [z^n] g = (1/n) [w^(n-1)] (w / f(w))^n.
template <class T>
Poly<T> revert(const Poly<T>& f, std::size_t terms) {
  if (f.size() < 2 || f[0] != 0 || f[1] == 0) {
    throw ReversionDegenerate("revert: series must start with a nonzero linear term");
  }
  const Poly<T> shifted(f.begin() + 1, f.end());
  const Poly<T> h = reciprocal(shifted, terms);  // w / f(w)
  Poly<T> g(terms, T(0));
  Poly<T> power = h;
  for (std::size_t n = 1; n < terms; ++n) {
    if (n > 1) power = multiply(power, h, terms);
    g[n] = power[n - 1] / T(static_cast<long>(n));
  }
  return g;
}

}  // namespace series_ops

namespace {

using series_ops::Poly;

template <class T>
T power(const T& base, int exponent) {
  T out(1);
  const bool invert = exponent < 0;
  for (int i = 0; i < std::abs(exponent); ++i) out *= base;
  return invert ? T(1) / out : out;
}

template <class T>
T factorial(int n) {
  T out(1);
  for (int i = 2; i <= n; ++i) out *= T(i);
  return out;
}

template <class T>
T binomial(int n, int k) {
  return factorial<T>(n) / (factorial<T>(k) * factorial<T>(n - k));
}

// Geometric series of 1 / (1 - ratio * q).
template <class T>
Poly<T> geometric(const T& ratio, std::size_t terms) {
  Poly<T> out(terms, T(0));
  T term(1);
  for (std::size_t i = 0; i < terms; ++i) {
    out[i] = term;
    term *= ratio;
  }
  return out;
}

// Odd coefficients of T(t) = int_lo^t sqrt(t' / ((hi - t') |t' - other|)) dt'
// in the variable w = sqrt(t - lo) / sqrt(scale), scale = (hi - lo) |lo - other|.
// With q = t - lo the integrand is sqrt(g(0)) * sqrt(g(q)/g(0)) where
//   g(q)/g(0) = (1 + q/lo) / ((1 - q/(hi - lo)) (1 + sigma q/|lo - other|)).
template <class T>
std::vector<T> odd_coefficients(const T& root_lo, const T& lo, const T& hi, const T& other, int order) {
  const std::size_t terms = static_cast<std::size_t>(order) + 1;
  const T span = hi - lo;
  const T gap = other < lo ? lo - other : other - lo;
  const T sigma = other < lo ? T(1) : T(-1);
  const T scale = span * gap;

  Poly<T> g = series_ops::multiply(Poly<T>{T(1), T(1) / lo}, geometric<T>(T(1) / span, terms), terms);
  g = series_ops::multiply(g, geometric<T>(T(-sigma / gap), terms), terms);
  const Poly<T> root = series_ops::sqrt_unit(g, terms);

  std::vector<T> out(terms);
  T scale_power(1);
  for (int k = 0; k <= order; ++k) {
    out[k] = T(2) * root_lo * root[k] * scale_power / T(2 * k + 1);
    scale_power *= scale;
  }
  return out;
}

// Even coefficients E_{2k}, k = 1..K, of w(x)^2 where x = sum A_{2k+1} w^{2k+1}.
template <class T>
std::vector<T> even_inverse_coefficients(const std::vector<T>& odd, int order) {
  const std::size_t terms = 2 * static_cast<std::size_t>(order) + 1;
  Poly<T> f(terms, T(0));
  for (std::size_t k = 0; k < odd.size() && 2 * k + 1 < terms; ++k) f[2 * k + 1] = odd[k];
  const Poly<T> w = series_ops::revert(f, terms);
  const Poly<T> w2 = series_ops::multiply(w, w, terms);
  std::vector<T> out(order);
  for (int k = 1; k <= order; ++k) out[k - 1] = w2[2 * k];
  return out;
}

template <class T>
T forward_factor(int k) {
  return binomial<T>(2 * k, k) / (power(T(2), 2 * k - 1) * T(2 * k + 1));
}

template <class T>
T inverse_factor(int k) {
  const T sign = (k - 1) % 2 == 0 ? T(1) : T(-1);
  return sign / (T(2) * factorial<T>(2 * k));
}

template <class T>
T abs_value(const T& v) {
  return v < 0 ? T(-v) : v;
}

template <class T>
void check_axes(const SemiAxes<T>& axes) {
  if (!(T(0) < axes.c && axes.c < axes.b && axes.b < axes.a)) {
    throw DomainError("semi-axes must satisfy 0 < c < b < a");
  }
}

double horner_even(const std::vector<double>& coeffs, double z2) {
  double acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z2 + *it;
  return acc;
}

}  // namespace

constexpr int kMaxDecimalExponent = 1000;

Rational parse_rational(const std::string& text) {
  static const std::regex fraction(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
  static const std::regex decimal(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, fraction)) {
    const boost::multiprecision::cpp_int den(m[2].str());
    if (den == 0) throw DomainError("parse_rational: zero denominator in '" + text + "'");
    return Rational(boost::multiprecision::cpp_int(m[1].str()), den);
  }
  if (std::regex_match(text, m, decimal) && (m[2].length() + m[3].length()) > 0) {
    const std::string digits = m[2].str() + m[3].str();
    Rational value{boost::multiprecision::cpp_int(digits)};
    int exponent = 0;
    if (m[4].matched) {
      if (m[4].length() > 6) throw DomainError("parse_rational: exponent out of range in '" + text + "'");
      exponent = std::stoi(m[4].str());
    }
    exponent -= static_cast<int>(m[3].length());
    if (std::abs(exponent) > kMaxDecimalExponent) {
      throw DomainError("parse_rational: exponent out of range in '" + text + "'");
    }
    const Rational ten(10);
    for (int i = 0; i < std::abs(exponent); ++i) {
      if (exponent > 0) {
        value *= ten;
      } else {
        value /= ten;
      }
    }
    return m[1].str() == "-" ? Rational(-value) : value;
  }
  throw DomainError("parse_rational: cannot parse '" + text + "'");
}

template <class T>
ForwardSeries<T> forward_series(const SemiAxes<T>& axes, int order, int max_order) {
  if (order < 1) throw DomainError("forward_series: order must be >= 1");
  if (order > max_order) {
    throw OrderTooLarge("forward_series: order " + std::to_string(order) + " exceeds limit " +
                        std::to_string(max_order));
  }
  check_axes(axes);
  const T a2 = axes.a * axes.a, b2 = axes.b * axes.b, c2 = axes.c * axes.c;
  ForwardSeries<T> s;
  s.order = order;
  s.axes = axes;
  s.u_scale = (a2 - b2) * (b2 - c2);
  s.v_scale = (a2 - c2) * (b2 - c2);
  s.a_coeffs = odd_coefficients(axes.b, b2, a2, c2, order);
  s.b_coeffs = odd_coefficients(axes.c, c2, b2, a2, order);
  return s;
}

ForwardSeries<double> forward_series(const EllipsoidShape& shape, int order, int max_order) {
  return forward_series(SemiAxes<double>{shape.a(), shape.b(), shape.c()}, order, max_order);
}

template <class T>
InverseSeries<T> inverse_series(const ForwardSeries<T>& forward) {
  if (forward.order < 1) throw ReversionDegenerate("inverse_series: empty forward series");
  const T a2 = forward.axes.a * forward.axes.a;
  const T b2 = forward.axes.b * forward.axes.b;
  const T c2 = forward.axes.c * forward.axes.c;
  InverseSeries<T> s;
  s.order = forward.order;
  s.axes = forward.axes;
  s.u_prefactor = (a2 - b2) * (b2 - c2);
  s.v_prefactor = (c2 - a2) * (c2 - b2);
  s.c_coeffs = even_inverse_coefficients(forward.a_coeffs, forward.order);
  s.d_coeffs = even_inverse_coefficients(forward.b_coeffs, forward.order);
  return s;
}

template <class T>
NormalizedCoefficients<T> normalized_coefficients(const ForwardSeries<T>& forward,
                                                  const InverseSeries<T>& inverse) {
  if (forward.order != inverse.order) {
    throw DomainError("normalized_coefficients: truncation orders differ");
  }
  const int order = forward.order;
  const T& b = forward.axes.b;
  const T& c = forward.axes.c;
  NormalizedCoefficients<T> n;
  n.order = order;
  for (int k = 0; k <= order; ++k) {
    const T h = forward_factor<T>(k);
    const T sign = k % 2 == 0 ? T(1) : T(-1);
    n.forward_factor.push_back(h);
    n.alpha.push_back(forward.a_coeffs[k] * power(b, 2 * k - 1) / h);
    n.beta.push_back(sign * forward.b_coeffs[k] * power(c, 2 * k - 1) / h);
  }
  for (int k = 1; k <= order; ++k) {
    const T g = inverse_factor<T>(k);
    n.inverse_factor.push_back(g);
    n.gamma.push_back(inverse.c_coeffs[k - 1] * power(b, 2 * (2 * k - 1)) / g);
    n.delta.push_back(inverse.d_coeffs[k - 1] * power(c, 2 * (2 * k - 1)) / abs_value(g));
  }
  return n;
}

template <class T>
ForwardSeries<T> rebuild_forward(const NormalizedCoefficients<T>& n, const SemiAxes<T>& axes) {
  ForwardSeries<T> s;
  s.order = n.order;
  s.axes = axes;
  const T a2 = axes.a * axes.a, b2 = axes.b * axes.b, c2 = axes.c * axes.c;
  s.u_scale = (a2 - b2) * (b2 - c2);
  s.v_scale = (a2 - c2) * (b2 - c2);
  for (int k = 0; k <= n.order; ++k) {
    const T h = forward_factor<T>(k);
    const T sign = k % 2 == 0 ? T(1) : T(-1);
    s.a_coeffs.push_back(h * n.alpha[k] / power(axes.b, 2 * k - 1));
    s.b_coeffs.push_back(h * sign * n.beta[k] / power(axes.c, 2 * k - 1));
  }
  return s;
}

template <class T>
InverseSeries<T> rebuild_inverse(const NormalizedCoefficients<T>& n, const SemiAxes<T>& axes) {
  InverseSeries<T> s;
  s.order = n.order;
  s.axes = axes;
  const T a2 = axes.a * axes.a, b2 = axes.b * axes.b, c2 = axes.c * axes.c;
  s.u_prefactor = (a2 - b2) * (b2 - c2);
  s.v_prefactor = (c2 - a2) * (c2 - b2);
  for (int k = 1; k <= n.order; ++k) {
    const T g = inverse_factor<T>(k);
    s.c_coeffs.push_back(g * n.gamma[k - 1] / power(axes.b, 2 * (2 * k - 1)));
    s.d_coeffs.push_back(abs_value(g) * n.delta[k - 1] / power(axes.c, 2 * (2 * k - 1)));
  }
  return s;
}

namespace {

std::vector<double> to_double(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(static_cast<double>(x));
  return out;
}

SemiAxes<double> to_double(const SemiAxes<Rational>& a) {
  return {static_cast<double>(a.a), static_cast<double>(a.b), static_cast<double>(a.c)};
}

}  // namespace

ForwardSeries<double> to_double(const ForwardSeries<Rational>& s) {
  return {s.order, to_double(s.axes), to_double(s.a_coeffs), to_double(s.b_coeffs),
          static_cast<double>(s.u_scale), static_cast<double>(s.v_scale)};
}

InverseSeries<double> to_double(const InverseSeries<Rational>& s) {
  return {s.order, to_double(s.axes), to_double(s.c_coeffs), to_double(s.d_coeffs),
          static_cast<double>(s.u_prefactor), static_cast<double>(s.v_prefactor)};
}

SeriesValue eval_forward_series(const ForwardSeries<double>& s, SeriesFamily family, double t) {
  const bool is_u = family == SeriesFamily::u;
  const double root = is_u ? s.axes.b : s.axes.c;
  const double offset = t - root * root;
  if (offset < 0) throw DomainError("eval_forward_series: argument below the expansion point");
  const double w = std::sqrt(offset / (is_u ? s.u_scale : s.v_scale));
  const double value = w * horner_even(is_u ? s.a_coeffs : s.b_coeffs, w * w);
  return {value, w, w > 0.5};
}

SeriesValue eval_inverse_series(const InverseSeries<double>& s, SeriesFamily family, double x) {
  const bool is_u = family == SeriesFamily::u;
  const double root = is_u ? s.axes.b : s.axes.c;
  if (x < 0) throw DomainError("eval_inverse_series: negative argument");
  const double x2 = x * x;
  const double sum = x2 * horner_even(is_u ? s.c_coeffs : s.d_coeffs, x2);
  const double value = root * root + (is_u ? s.u_prefactor : s.v_prefactor) * sum;
  // Leading forward term x = 2 root w.
  const double w = x / (2 * root);
  return {value, w, w > 0.5};
}

namespace series_ops {
template Poly<double> multiply(const Poly<double>&, const Poly<double>&, std::size_t);
template Poly<Rational> multiply(const Poly<Rational>&, const Poly<Rational>&, std::size_t);
template Poly<double> reciprocal(const Poly<double>&, std::size_t);
template Poly<Rational> reciprocal(const Poly<Rational>&, std::size_t);
template Poly<double> sqrt_unit(const Poly<double>&, std::size_t);
template Poly<Rational> sqrt_unit(const Poly<Rational>&, std::size_t);
template Poly<double> revert(const Poly<double>&, std::size_t);
template Poly<Rational> revert(const Poly<Rational>&, std::size_t);
}  // namespace series_ops

template ForwardSeries<double> forward_series(const SemiAxes<double>&, int, int);
template ForwardSeries<Rational> forward_series(const SemiAxes<Rational>&, int, int);
template InverseSeries<double> inverse_series(const ForwardSeries<double>&);
template InverseSeries<Rational> inverse_series(const ForwardSeries<Rational>&);
template NormalizedCoefficients<double> normalized_coefficients(const ForwardSeries<double>&,
                                                                const InverseSeries<double>&);
template NormalizedCoefficients<Rational> normalized_coefficients(const ForwardSeries<Rational>&,
                                                                  const InverseSeries<Rational>&);
template ForwardSeries<double> rebuild_forward(const NormalizedCoefficients<double>&,
                                               const SemiAxes<double>&);
template ForwardSeries<Rational> rebuild_forward(const NormalizedCoefficients<Rational>&,
                                                 const SemiAxes<Rational>&);
template InverseSeries<double> rebuild_inverse(const NormalizedCoefficients<double>&,
                                               const SemiAxes<double>&);
template InverseSeries<Rational> rebuild_inverse(const NormalizedCoefficients<Rational>&,
                                                 const SemiAxes<Rational>&);

}  // namespace liouville
