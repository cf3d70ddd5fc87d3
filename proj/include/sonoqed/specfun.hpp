#pragma once

namespace sonoqed {

struct BesselOrder {
    int l = 0;
    constexpr double nu() const { return l + 0.5; }
    static BesselOrder from_l(int l);
};

// Value and first derivative share one binary exponent: f = ldexp(value, exp2).
// The exterior problem needs j_l of tiny arguments and y_l of the same, which
// leave double range long before l reaches the interesting values.
struct ScaledPair {
    double value = 0.0;
    double derivative = 0.0;
    int exp2 = 0;
};

ScaledPair spherical_j_scaled(int l, double x);
ScaledPair spherical_y_scaled(int l, double x);

double spherical_j(int l, double x);
double spherical_y(int l, double x);
double spherical_j_derivative(int l, double x);
double spherical_y_derivative(int l, double x);

// J_{l+1/2}(x) and its derivative.
struct CylinderValue {
    double value;
    double derivative;
};
CylinderValue cylinder_j(BesselOrder order, double x);

struct WronskianSample {
    double value; // b J(ar) J'(br) - a J'(ar) J(br)
    double d_db;  // partial derivative of value with respect to b
};

WronskianSample cylinder_pair_at(BesselOrder order, double a, double b, double r);

// Relative window around b = a inside which the analytic limit is used.
inline constexpr double kWronskianWindow = 1e-6;

double wronskian_kernel(BesselOrder order, double a, double b, double r);

// Same quotient from precomputed J, J' at a*r and b*r. Inputs may carry any
// common normalisation per side (the kernel is bilinear in the two sides).
inline double wronskian_kernel_from_values(double nu, double a, double ja, double dja, double b, double jb,
                                           double djb, double r) {
    const double hi = a > b ? a : b;
    const double gap = a > b ? a - b : b - a;
    if (gap < kWronskianWindow * hi) {
        // -(dW/db)/(2a) at b = a is r[(1 - nu^2/x^2) J^2 + J'^2]/2; written symmetrically
        // in the two sides so that the error is second order in (a - b)
        const double xa = a * r, xb = b * r;
        return 0.5 * r * ((1.0 - nu * nu / (xa * xb)) * ja * jb + dja * djb);
    }
    const double w = b * (ja * djb) - a * (dja * jb);
    return w / ((a - b) * (a + b));
}

double log_sinh(double x);

} // namespace sonoqed
