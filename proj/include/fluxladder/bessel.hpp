#pragma once

namespace fluxladder {

// Bessel function of the first kind J_m(x) for integer orders 0..20.
// Absolute error <= 1e-12 over |x| <= 20 (validated against the C++17
// special-function reference in the test suite).
double bessel_j(int m, double x);

inline double bessel_j0(double x) { return bessel_j(0, x); }
inline double bessel_j1(double x) { return bessel_j(1, x); }

}  // namespace fluxladder
