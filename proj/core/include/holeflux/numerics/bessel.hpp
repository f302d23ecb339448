#pragma once

namespace holeflux::num {

// Bessel functions of the first kind, orders 0 and 1, accurate to better than
// 1e-13 absolute on [0, 1e3].
double bessel_J0(double x);
double bessel_J1(double x);

}  // namespace holeflux::num
