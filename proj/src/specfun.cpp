#include "sonoqed/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sonoqed/errors.hpp"

namespace sonoqed {

namespace {

constexpr int kRescaleBits = 300;
const double kRescaleAbove = std::ldexp(1.0, kRescaleBits);

void check_order(int l) {
    if (l < 0) throw DomainError("spherical Bessel order must be >= 0, got " + std::to_string(l));
}

// Bring the pair to a mantissa of order one, folding the scale into exp2.
ScaledPair normalized(double v, double d, int e) {
    double big = std::max(std::abs(v), std::abs(d));
    if (big == 0.0 || !std::isfinite(big)) return {v, d, e};
    int k = 0;
    std::frexp(big, &k);
    return {std::ldexp(v, -k), std::ldexp(d, -k), e + k};
}

// Ascending series, fine for x*x much smaller than 4l+6 and used for x < 1e-3
// (any l) and for j_1 below x = 1 where the closed form cancels.
ScaledPair j_series(int l, double x) {
    // prefactor x^l / (2l+1)!!, carried with its own exponent
    double pre = 1.0;
    int e = 0;
    for (int k = 1; k <= l; ++k) {
        pre *= x / (2 * k + 1);
        if (std::abs(pre) < 1e-200) {
            int s = 0;
            pre = std::frexp(pre, &s);
            e += s;
        }
    }
    const double t = x * x;
    double term = 1.0, sum = 1.0, dsum = l;
    for (int k = 1; k < 60; ++k) {
        term *= -0.5 * t / (k * (2.0 * l + 2.0 * k + 1.0));
        sum += term;
        dsum += term * (l + 2.0 * k);
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return normalized(pre * sum, pre * dsum / x, e);
}

double j1_closed(double x) {
    if (x < 1.0) {
        auto s = j_series(1, x);
        return std::ldexp(s.value, s.exp2);
    }
    return std::sin(x) / (x * x) - std::cos(x) / x;
}

// Miller's backward recurrence, normalised by least squares against j0, j1.
ScaledPair j_miller(int l, double x) {
    const int start = l + static_cast<int>(std::ceil(1.5 * std::sqrt(40.0 * l))) + 20;
    double fk1 = 0.0; // f_{k+1}
    double fk = 1.0;  // f_k
    int shift = 0;
    double fl = 0.0, flm1 = 0.0;
    int saved_shift = 0;
    for (int k = start; k >= 1; --k) {
        double fkm1 = (2.0 * k + 1.0) / x * fk - fk1;
        fk1 = fk;
        fk = fkm1;
        if (k == l) {
            fl = fk1;
            flm1 = fk;
            saved_shift = shift;
        }
        if (std::abs(fk) > kRescaleAbove) {
            fk = std::ldexp(fk, -kRescaleBits);
            fk1 = std::ldexp(fk1, -kRescaleBits);
            shift += kRescaleBits;
        }
    }
    // now fk = f_0, fk1 = f_1
    const double j0 = std::sin(x) / x;
    const double j1 = j1_closed(x);
    const double lambda = (j0 * fk + j1 * fk1) / (fk * fk + fk1 * fk1);
    const double v = fl * lambda;
    const double d = (flm1 - (l + 1.0) / x * fl) * lambda;
    return normalized(v, d, saved_shift - shift);
}

ScaledPair j_upward(int l, double x) {
    double jm1 = std::sin(x) / x;
    double j = j1_closed(x);
    for (int k = 1; k < l; ++k) {
        double jp1 = (2.0 * k + 1.0) / x * j - jm1;
        jm1 = j;
        j = jp1;
    }
    return normalized(j, jm1 - (l + 1.0) / x * j, 0);
}

} // namespace

BesselOrder BesselOrder::from_l(int l) {
    check_order(l);
    return BesselOrder{l};
}

ScaledPair spherical_j_scaled(int l, double x) {
    check_order(l);
    if (!std::isfinite(x) || x < 0.0)
        throw DomainError("spherical_j: argument must be finite and >= 0, got " + std::to_string(x));
    if (x == 0.0) {
        if (l == 0) return {1.0, 0.0, 0};
        return {0.0, l == 1 ? 1.0 / 3.0 : 0.0, 0};
    }
    if (l == 0) {
        double d = -j1_closed(x);
        return normalized(std::sin(x) / x, d, 0);
    }
    if (x < 1e-3) return j_series(l, x);
    if (x > l) return j_upward(l, x);
    return j_miller(l, x);
}

ScaledPair spherical_y_scaled(int l, double x) {
    check_order(l);
    if (!std::isfinite(x) || !(x > 0.0))
        throw DomainError("spherical_y: argument must be finite and > 0, got " + std::to_string(x));
    const double c = std::cos(x), s = std::sin(x);
    const double y0 = -c / x;
    int shift = 0;
    std::frexp(y0 == 0.0 ? 1.0 : y0, &shift);
    double ym1 = std::ldexp(y0, -shift);
    double y = std::ldexp(y0 - s, -shift) / x; // y1 = (y0 - sin x)/x
    if (l == 0) return normalized(ym1, -y, shift);
    const bool tiny = x < 1e-100;
    for (int k = 1; k < l; ++k) {
        double yp1 = (2.0 * k + 1.0) * (y / x) - ym1;
        ym1 = y;
        y = yp1;
        if (tiny || std::abs(y) > kRescaleAbove) {
            int e = 0;
            std::frexp(y, &e);
            y = std::ldexp(y, -e);
            ym1 = std::ldexp(ym1, -e);
            shift += e;
        }
    }
    return normalized(y, ym1 - (l + 1.0) / x * y, shift);
}

double spherical_j(int l, double x) {
    auto p = spherical_j_scaled(l, x);
    return std::ldexp(p.value, p.exp2);
}

double spherical_y(int l, double x) {
    auto p = spherical_y_scaled(l, x);
    return std::ldexp(p.value, p.exp2);
}

double spherical_j_derivative(int l, double x) {
    auto p = spherical_j_scaled(l, x);
    return std::ldexp(p.derivative, p.exp2);
}

double spherical_y_derivative(int l, double x) {
    auto p = spherical_y_scaled(l, x);
    return std::ldexp(p.derivative, p.exp2);
}

CylinderValue cylinder_j(BesselOrder order, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("cylinder_j: argument must be finite and > 0, got " + std::to_string(x));
    auto p = spherical_j_scaled(order.l, x);
    const double f = std::sqrt(2.0 * x / std::numbers::pi);
    // J'_nu = J_{nu-1} - nu/x J_nu, which in spherical terms is sqrt(2x/pi)(j' + j/(2x))
    return {std::ldexp(f * p.value, p.exp2), std::ldexp(f * (p.derivative + p.value / (2.0 * x)), p.exp2)};
}

WronskianSample cylinder_pair_at(BesselOrder order, double a, double b, double r) {
    if (!(a > 0.0) || !(b > 0.0) || !(r > 0.0))
        throw DomainError("cylinder_pair_at: a, b, r must be > 0");
    const double nu = order.nu();
    const auto A = cylinder_j(order, a * r);
    const auto B = cylinder_j(order, b * r);
    const double xb = b * r;
    // Bessel's equation gives J''
    const double ddb = -B.derivative / xb - (1.0 - nu * nu / (xb * xb)) * B.value;
    // products grouped so that a == b cancels exactly
    const double value = b * (A.value * B.derivative) - a * (A.derivative * B.value);
    const double d_db = A.value * B.derivative + b * r * A.value * ddb - a * r * A.derivative * B.derivative;
    return {value, d_db};
}

double wronskian_kernel(BesselOrder order, double a, double b, double r) {
    if (!(a > 0.0) || !(b > 0.0) || !(r > 0.0))
        throw DomainError("wronskian_kernel: a, b, r must be > 0");
    if (std::abs(a - b) < kWronskianWindow * std::max(a, b)) {
        const double m = 0.5 * (a + b);
        const auto J = cylinder_j(order, m * r);
        const double x = m * r, nu = order.nu();
        return 0.5 * r * ((1.0 - nu * nu / (x * x)) * J.value * J.value + J.derivative * J.derivative);
    }
    const auto A = cylinder_j(order, a * r);
    const auto B = cylinder_j(order, b * r);
    return wronskian_kernel_from_values(order.nu(), a, A.value, A.derivative, b, B.value, B.derivative, r);
}

double log_sinh(double x) {
    if (!(x >= 0.0)) throw DomainError("log_sinh: argument must be >= 0");
    if (x == 0.0) return -INFINITY;
    if (x < 0.1) {
        // sinh x / x = 1 + x^2/6 + x^4/120 + ...
        const double t = x * x;
        double term = 1.0, s = 0.0;
        for (int k = 1; k < 12; ++k) {
            term *= t / ((2.0 * k) * (2.0 * k + 1.0));
            s += term;
        }
        return std::log(x) + std::log1p(s);
    }
    if (x < 20.0) return std::log(std::sinh(x));
    return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}

} // namespace sonoqed
