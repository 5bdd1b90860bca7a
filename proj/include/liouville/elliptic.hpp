#pragma once

#include <complex>

#include "liouville/root_solve.hpp"

namespace liouville {

using ComplexValue = std::complex<double>;

/// Arguments of the incomplete elliptic integral of the third kind
/// Pi(n; phi | m) = int_0^phi dtheta / ((1 - n sin^2) sqrt(1 - m sin^2)).
struct EllipticArgs {
  double n = 0;       // characteristic
  ComplexValue phi;   // amplitude (radians); real or purely imaginary
  double m = 0;       // parameter
};

// Carlson symmetric integrals on the principal branch. Arguments may be
// complex but must avoid the closed negative real axis; at most one of
// x, y, z may vanish.
//
//   RF(x,y,z)   = 1/2 int_0^inf dt / sqrt((t+x)(t+y)(t+z))
//   RJ(x,y,z,p) = 3/2 int_0^inf dt / ((t+p) sqrt((t+x)(t+y)(t+z)))
ComplexValue carlson_rf(ComplexValue x, ComplexValue y, ComplexValue z);
ComplexValue carlson_rj(ComplexValue x, ComplexValue y, ComplexValue z, ComplexValue p);

/// Degenerate RC(x, y) = RF(x, y, y).
ComplexValue carlson_rc(ComplexValue x, ComplexValue y);

/// Incomplete elliptic integral of the third kind, evaluated through RF/RJ.
///
/// Real amplitudes of any size are supported through quasi-periodicity when
/// n < 1 and m < 1. Purely imaginary amplitudes phi = i psi are mapped to
///   Pi(n; i psi | m) = i int_0^psi dtau / ((1 + n sinh^2) sqrt(1 + m sinh^2)).
/// Throws DomainError when a pole n sin^2 = 1 lies on the path, when the
/// square root turns imaginary on the path, or for general complex phi.
ComplexValue ellint_pi(const EllipticArgs& args);

/// Trigonometric data of an amplitude phi on the principal strip |Re phi| <= pi/2.
/// Callers that know these quantities in factored form (so that a vanishing
/// delta2 is exactly zero) avoid the sqrt(eps) loss near branch endpoints.
struct AmplitudeTrig {
  ComplexValue sin_phi;
  ComplexValue cos2;              // cos^2 phi
  ComplexValue delta2;            // 1 - m sin^2 phi
  ComplexValue one_minus_n_sin2;  // 1 - n sin^2 phi
};

/// Pi = sin RF(cos2, delta2, 1) + (n/3) sin^3 RJ(cos2, delta2, 1, 1 - n sin^2).
ComplexValue ellint_pi_trig(double n, const AmplitudeTrig& trig);

/// Generalized Jacobi amplitude: am(n; z | m) = phi with Pi(n; phi | m) = z.
///
/// z must be real or purely imaginary; the result lies on the monotone
/// branch through the origin (real resp. purely imaginary). At n = 0 this is
/// the classical Jacobi amplitude.
ComplexValue gen_jacobi_am(double n, ComplexValue z, double m, const SolveOptions& opt = {});

/// sn(n; z | m) = sin(am(n; z | m)).
ComplexValue gen_jacobi_sn(double n, ComplexValue z, double m, const SolveOptions& opt = {});

}  // namespace liouville
