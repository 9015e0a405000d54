#include "fluxladder/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace fluxladder {

namespace {

// Ascending power series (x/2)^m/m! * sum_k (-x^2/4)^k / (k! (k+m)!),
// accumulated in long double.  Used for |x| <= 12, where the largest term is
// ~4e3 so alternating-series cancellation costs at most ~4 of the 18-19
// digits available, leaving comfortably more than the 1e-12 target.
long double series_jm(int m, long double x) {
    const long double half = x / 2;
    long double term = 1.0L;
    for (int i = 1; i <= m; ++i) term *= half / i;
    long double sum = term;
    const long double mx2 = -half * half;
    for (int k = 1; k < 400; ++k) {
        term *= mx2 / (static_cast<long double>(k) * (k + m));
        sum += term;
        if (std::fabs(term) <= 1e-20L * (std::fabs(sum) + 1e-30L)) break;
    }
    return sum;
}

// Miller's backward recurrence: run J_{n-1} = (2n/x) J_n - J_{n+1} downward
// from a start order well above both m and x, then normalise with
// J_0 + 2 sum_{k>=1} J_{2k} = 1.  Stable for the larger arguments where the
// series would lose digits.
double miller_jm(int m, double x) {
    int top = (std::max(m, static_cast<int>(x)) + 26);
    if (top % 2) ++top;
    long double jnp1 = 0.0L;
    long double jn = 1e-30L;  // arbitrary seed for J_top
    long double out = 0.0L;
    long double even_sum = jn;  // top is even
    for (int n = top; n >= 1; --n) {
        const long double jnm1 = (2.0L * n / x) * jn - jnp1;
        jnp1 = jn;
        jn = jnm1;  // now holds J_{n-1}
        if (std::fabs(jn) > 1e18L) {
            jn *= 1e-18L;
            jnp1 *= 1e-18L;
            even_sum *= 1e-18L;
            out *= 1e-18L;
        }
        const int order = n - 1;
        if (order == m) out = jn;
        if (order > 0 && order % 2 == 0) even_sum += jn;
    }
    const long double norm = 2.0L * even_sum + jn;  // jn is now the J_0 proxy
    return static_cast<double>(out / norm);
}

}  // namespace

double bessel_j(int m, double x) {
    if (m < 0 || m > 20)
        throw std::invalid_argument("bessel_j: order must be in 0..20");
    if (!std::isfinite(x))
        throw std::invalid_argument("bessel_j: argument must be finite");
    double sign = 1.0;
    if (x < 0) {
        x = -x;
        if (m % 2) sign = -1.0;  // J_m(-x) = (-1)^m J_m(x)
    }
    if (x == 0.0) return m == 0 ? 1.0 : 0.0;
    if (x <= 12.0) return sign * static_cast<double>(series_jm(m, x));
    return sign * miller_jm(m, x);
}

}  // namespace fluxladder
