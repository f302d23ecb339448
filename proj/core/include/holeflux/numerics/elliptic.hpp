#pragma once

namespace holeflux::num {

// Complete elliptic integrals in the modulus convention:
//   K(x) = int_0^{pi/2} dtheta / sqrt(1 - x^2 sin^2 theta),  0 <= x < 1
//   E(x) = int_0^{pi/2} sqrt(1 - x^2 sin^2 theta) dtheta,    0 <= x <= 1
// The argument is the modulus x, not the parameter m = x^2.
double elliptic_K(double x);
double elliptic_E(double x);

}  // namespace holeflux::num
