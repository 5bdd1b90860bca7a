#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "liouville/ellipsoid.hpp"

namespace liouville {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-7/2", "2.5" or "1.25e-3" exactly.
Rational parse_rational(const std::string& text);

template <class T>
struct SemiAxes {
  T a, b, c;
};

/// Truncated odd expansions about the umbilic-side corners u0 = b^2, v0 = c^2:
///   X(u) = sum_k A_{2k+1} w_u^{2k+1},  w_u = sqrt(u - b^2) / sqrt((a^2-b^2)(b^2-c^2))
///   Y(v) = sum_k B_{2k+1} w_v^{2k+1},  w_v = sqrt(v - c^2) / sqrt((a^2-c^2)(b^2-c^2))
template <class T>
struct ForwardSeries {
  int order = 0;  // K; coefficients A_1 .. A_{2K+1}
  SemiAxes<T> axes;
  std::vector<T> a_coeffs;  // a_coeffs[k] = A_{2k+1}
  std::vector<T> b_coeffs;  // b_coeffs[k] = B_{2k+1}
  T u_scale;                // (a^2 - b^2)(b^2 - c^2)
  T v_scale;                // (a^2 - c^2)(b^2 - c^2)

  /// Access by subscript as written in the expansion, A(1), A(3), ...
  const T& A(int odd_index) const { return a_coeffs.at((odd_index - 1) / 2); }
  const T& B(int odd_index) const { return b_coeffs.at((odd_index - 1) / 2); }
};

/// Reversed even expansions
///   U(x) = b^2 + (a^2-b^2)(b^2-c^2) sum_{k>=1} C_{2k} x^{2k}
///   V(y) = c^2 + (c^2-a^2)(c^2-b^2) sum_{k>=1} D_{2k} y^{2k}
template <class T>
struct InverseSeries {
  int order = 0;  // K; coefficients C_2 .. C_{2K}
  SemiAxes<T> axes;
  std::vector<T> c_coeffs;  // c_coeffs[k-1] = C_{2k}
  std::vector<T> d_coeffs;  // d_coeffs[k-1] = D_{2k}
  T u_prefactor;            // (a^2 - b^2)(b^2 - c^2)
  T v_prefactor;            // (c^2 - a^2)(c^2 - b^2)

  const T& C(int even_index) const { return c_coeffs.at(even_index / 2 - 1); }
  const T& D(int even_index) const { return d_coeffs.at(even_index / 2 - 1); }
};

/// Coefficients with the haversine factors divided out:
///   A_{2k+1} = h_k alpha_{2k+1} / b^{2k-1},       h_k = binom(2k,k) / (2^{2k-1} (2k+1))
///   B_{2k+1} = h_k (-1)^k beta_{2k+1} / c^{2k-1}
///   C_{2k}   = g_k gamma_{2k} / b^{2(2k-1)},      g_k = (-1)^{k-1} / (2 (2k)!)
///   D_{2k}   = |g_k| delta_{2k} / c^{2(2k-1)}
/// h_k are the Maclaurin coefficients of hav^-1 in sqrt(z), g_k those of hav.
template <class T>
struct NormalizedCoefficients {
  int order = 0;
  std::vector<T> alpha;          // alpha[k] = alpha_{2k+1}
  std::vector<T> beta;           // beta[k] = beta_{2k+1}
  std::vector<T> gamma;          // gamma[k-1] = gamma_{2k}
  std::vector<T> delta;          // delta[k-1] = delta_{2k}
  std::vector<T> forward_factor; // h_k, k = 0..K
  std::vector<T> inverse_factor; // g_k, k = 1..K (index k-1)

  const T& alpha_at(int odd_index) const { return alpha.at((odd_index - 1) / 2); }
  const T& beta_at(int odd_index) const { return beta.at((odd_index - 1) / 2); }
  const T& gamma_at(int even_index) const { return gamma.at(even_index / 2 - 1); }
  const T& delta_at(int even_index) const { return delta.at(even_index / 2 - 1); }
};

inline constexpr int kDefaultSeriesOrder = 8;
inline constexpr int kMaxSeriesOrder = 16;

/// Taylor-expands the integrand after t = b^2 + s^2 (resp. c^2 + s^2) and
/// integrates termwise. Throws OrderTooLarge if K > max_order.
template <class T>
ForwardSeries<T> forward_series(const SemiAxes<T>& axes, int order, int max_order = kMaxSeriesOrder);

ForwardSeries<double> forward_series(const EllipsoidShape& shape, int order = kDefaultSeriesOrder,
                                     int max_order = kMaxSeriesOrder);

/// Lagrange reversion of X(w) followed by squaring w(x).
template <class T>
InverseSeries<T> inverse_series(const ForwardSeries<T>& forward);

template <class T>
NormalizedCoefficients<T> normalized_coefficients(const ForwardSeries<T>& forward,
                                                  const InverseSeries<T>& inverse);

/// Inverse of normalized_coefficients: rebuild A/B and C/D from alpha..delta.
template <class T>
ForwardSeries<T> rebuild_forward(const NormalizedCoefficients<T>& norm, const SemiAxes<T>& axes);
template <class T>
InverseSeries<T> rebuild_inverse(const NormalizedCoefficients<T>& norm, const SemiAxes<T>& axes);

ForwardSeries<double> to_double(const ForwardSeries<Rational>& s);
InverseSeries<double> to_double(const InverseSeries<Rational>& s);

enum class SeriesFamily { u, v };

struct SeriesValue {
  double value;
  double w;           // scaled distance from the expansion point
  bool beyond_half;   // |w| > 1/2: outside the region where accuracy is checked
};

/// X(u) (family u) or Y(v) (family v) from the truncated series.
SeriesValue eval_forward_series(const ForwardSeries<double>& s, SeriesFamily family, double t);
/// U(x) (family u) or V(y) (family v) from the truncated series.
SeriesValue eval_inverse_series(const InverseSeries<double>& s, SeriesFamily family, double x);

namespace series_ops {

// Dense truncated power series: p[i] is the coefficient of z^i.
template <class T>
using Poly = std::vector<T>;

template <class T>
Poly<T> multiply(const Poly<T>& p, const Poly<T>& q, std::size_t terms);
template <class T>
Poly<T> reciprocal(const Poly<T>& p, std::size_t terms);
/// sqrt of a series with p[0] == 1.
template <class T>
Poly<T> sqrt_unit(const Poly<T>& p, std::size_t terms);
/// g with f(g(z)) = z; f[0] must be 0 and f[1] nonzero.
template <class T>
Poly<T> revert(const Poly<T>& f, std::size_t terms);

}  // namespace series_ops

extern template ForwardSeries<double> forward_series(const SemiAxes<double>&, int, int);
extern template ForwardSeries<Rational> forward_series(const SemiAxes<Rational>&, int, int);
extern template InverseSeries<double> inverse_series(const ForwardSeries<double>&);
extern template InverseSeries<Rational> inverse_series(const ForwardSeries<Rational>&);
extern template NormalizedCoefficients<double> normalized_coefficients(const ForwardSeries<double>&,
                                                                       const InverseSeries<double>&);
extern template NormalizedCoefficients<Rational> normalized_coefficients(
    const ForwardSeries<Rational>&, const InverseSeries<Rational>&);
extern template ForwardSeries<double> rebuild_forward(const NormalizedCoefficients<double>&,
                                                      const SemiAxes<double>&);
extern template ForwardSeries<Rational> rebuild_forward(const NormalizedCoefficients<Rational>&,
                                                        const SemiAxes<Rational>&);
extern template InverseSeries<double> rebuild_inverse(const NormalizedCoefficients<double>&,
                                                      const SemiAxes<double>&);
extern template InverseSeries<Rational> rebuild_inverse(const NormalizedCoefficients<Rational>&,
                                                        const SemiAxes<Rational>&);

}  // namespace liouville
