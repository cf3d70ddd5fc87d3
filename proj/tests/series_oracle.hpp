#pragma once

// Power series for spherical Bessel functions in 100-digit arithmetic.
// Independent of everything in src/: used as ground truth.

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

namespace oracle {

using big = boost::multiprecision::cpp_dec_float_100;

// j_nu(x) = sqrt(pi)/2 (x/2)^nu sum_k (-x^2/4)^k / (k! Gamma(nu + k + 3/2)), nu = l or -l-1
inline big j_series(int nu, const big& x) {
    const big q = -x * x / 4;
    big term = 1 / boost::math::tgamma(big(nu) + big(1.5));
    big sum = term;
    for (int k = 1; k < 2000; ++k) {
        term *= q / (big(k) * (big(nu) + big(k) + big(0.5)));
        sum += term;
        if (abs(term) < abs(sum) * big("1e-90") && k > 5) break;
    }
    return boost::math::constants::root_pi<big>() / 2 * pow(x / 2, nu) * sum;
}

inline double j(int l, double x) { return static_cast<double>(j_series(l, big(x))); }

// y_l = (-1)^(l+1) j_{-l-1}
inline double y(int l, double x) {
    const big v = j_series(-l - 1, big(x));
    return static_cast<double>((l % 2 == 0) ? -v : v);
}

// derivative from j_l' = j_{l-1} - (l+1)/x j_l (l >= 1), j_0' = -j_1
inline double dj(int l, double x) {
    const big bx(x);
    if (l == 0) return static_cast<double>(-j_series(1, bx));
    return static_cast<double>(j_series(l - 1, bx) - big(l + 1) / bx * j_series(l, bx));
}

inline double dy(int l, double x) {
    const big bx(x);
    auto yb = [&](int n) {
        const big v = j_series(-n - 1, bx);
        return (n % 2 == 0) ? big(-v) : v;
    };
    if (l == 0) return static_cast<double>(-yb(1));
    return static_cast<double>(yb(l - 1) - big(l + 1) / bx * yb(l));
}

} // namespace oracle
