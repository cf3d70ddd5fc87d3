#include "sonoqed/modes.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "sonoqed/errors.hpp"
#include "sonoqed/units.hpp"

namespace sonoqed {

namespace {

double second_derivative(int l, double x, double f, double df) {
    return -2.0 / x * df - (1.0 - l * (l + 1.0) / (x * x)) * f;
}

// ldexp with a possibly odd exponent halved
// in units of the scan step
constexpr double kBroadResonance = 2.0;

double ldexp_half(double v, int twice_e) {
    double r = std::ldexp(v, twice_e / 2);
    if (twice_e % 2 != 0) r *= (twice_e > 0) ? std::numbers::sqrt2 : 1.0 / std::numbers::sqrt2;
    return r;
}

} // namespace

double MatchParts::c_scale() const { return std::ldexp(1.0, eC - eB); }

double MatchParts::rho_sq_reduced() const {
    const double s = c_scale();
    return b * b + (s * c) * (s * c);
}

MatchParts match_parts(int l, double x, double n_inside, double n_outside) {
    if (l < 0) throw DomainError("match_parts: l must be >= 0");
    if (!(x > 0.0) || !(n_inside > 0.0) || !(n_outside > 0.0))
        throw DomainError("match_parts: x and indices must be > 0");
    const double X = n_inside * x, z = n_outside * x, m = n_inside / n_outside;
    const auto jX = spherical_j_scaled(l, X);
    const auto jz = spherical_j_scaled(l, z);
    const auto yz = spherical_y_scaled(l, z);
    const double ddjX = second_derivative(l, X, jX.value, jX.derivative);
    const double ddjz = second_derivative(l, z, jz.value, jz.derivative);
    const double ddyz = second_derivative(l, z, yz.value, yz.derivative);

    // from continuity of f and f' at the wall (the Wronskian of j, y is 1/z^2)
    const double b0 = jX.value * yz.derivative - m * jX.derivative * yz.value;
    const double c0 = m * jX.derivative * jz.value - jX.value * jz.derivative;
    const double db0 = n_outside * jX.value * ddyz - m * n_inside * ddjX * yz.value;
    const double dc0 = m * n_inside * ddjX * jz.value - n_outside * jX.value * ddjz;

    MatchParts p;
    p.l = l;
    p.x = x;
    p.n_inside = n_inside;
    p.n_outside = n_outside;
    p.b = z * z * b0;
    p.c = z * z * c0;
    p.db = 2.0 * n_outside * z * b0 + z * z * db0;
    p.dc = 2.0 * n_outside * z * c0 + z * z * dc0;
    p.eB = jX.exp2 + yz.exp2;
    p.eC = jX.exp2 + jz.exp2;
    p.interior = jX;
    return p;
}

double a_nu_sq(const MatchParts& p) {
    return std::ldexp(p.n_outside / (p.n_inside * p.rho_sq_reduced()), -2 * p.eB);
}

InteriorValue normalized_interior(const MatchParts& p) {
    const double X = p.n_inside * p.x;
    const double amp = std::sqrt(p.n_outside / (p.n_inside * p.rho_sq_reduced())) * std::sqrt(2.0 * X / std::numbers::pi);
    const int e = p.interior.exp2 - p.eB;
    return {std::ldexp(amp * p.interior.value, e),
            std::ldexp(amp * (p.interior.derivative + p.interior.value / (2.0 * X)), e)};
}

ModeMatch match_modes(int l, double omega, double n_inside, double n_outside, double radius) {
    if (l < 1) throw ValidationError("l", "must be >= 1");
    if (!(omega > 0.0)) throw ValidationError("omega", "must be > 0");
    if (!(n_inside > 0.0)) throw ValidationError("n_inside", "must be > 0");
    if (!(n_outside > 0.0)) throw ValidationError("n_outside", "must be > 0");
    if (!(radius > 0.0)) throw ValidationError("radius", "must be > 0");
    double w = omega;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const double x = w * radius / units::speed_of_light;
        const auto p = match_parts(l, x, n_inside, n_outside);
        const double rho = p.rho_sq_reduced();
        if (rho > 0.0 && std::isfinite(rho)) {
            return {l, w, n_inside, n_outside, std::ldexp(p.b, p.eB), std::ldexp(p.c, p.eC), a_nu_sq(p)};
        }
        w *= 1.0 + 1e-12;
    }
    throw NumericalError("match_modes: degenerate matching at l = " + std::to_string(l) +
                         ", omega = " + std::to_string(omega));
}

JunctionResiduals junction_residuals(int l, double x, double n_inside, double n_outside) {
    const auto p = match_parts(l, x, n_inside, n_outside);
    const double z = n_outside * x;
    const auto jz = spherical_j_scaled(l, z);
    const auto yz = spherical_y_scaled(l, z);
    // everything relative to 2^eX, the scale of the interior solution
    const int eX = p.interior.exp2;
    const double bj = std::ldexp(p.b * jz.value, p.eB + jz.exp2 - eX);
    const double cy = std::ldexp(p.c * yz.value, p.eC + yz.exp2 - eX);
    const double bdj = std::ldexp(p.b * jz.derivative, p.eB + jz.exp2 - eX) * n_outside;
    const double cdy = std::ldexp(p.c * yz.derivative, p.eC + yz.exp2 - eX) * n_outside;
    const double f_in = p.interior.value, df_in = n_inside * p.interior.derivative;
    const double sv = std::abs(f_in) + std::abs(bj) + std::abs(cy);
    const double sd = std::abs(df_in) + std::abs(bdj) + std::abs(cdy);
    return {std::abs(f_in - bj - cy) / sv, std::abs(df_in - bdj - cdy) / sd};
}

std::vector<Resonance> find_resonances(int l, double n_inside, double n_outside, double x_lo, double x_hi) {
    std::vector<Resonance> out;
    if (!(x_hi > x_lo)) return out;
    // half the log-derivative of B^2 + C^2; invariant under the scaling
    auto g = [&](double x) {
        const auto p = match_parts(l, x, n_inside, n_outside);
        const double s = p.c_scale();
        const double rho = p.rho_sq_reduced();
        // B hit zero exactly with C below the double range: a root of g
        if (rho == 0.0) return 0.0;
        return (p.b * p.db + s * s * p.c * p.dc) / rho;
    };
    const double step = 0.05 / std::max(n_inside, n_outside);
    const long n = std::max(1L, static_cast<long>(std::ceil((x_hi - x_lo) / step)));
    double xa = x_lo, ga = g(xa);
    for (long k = 1; k <= n; ++k) {
        const double xb = (k == n) ? x_hi : x_lo + (x_hi - x_lo) * static_cast<double>(k) / n;
        const double gb = g(xb);
        if (ga < 0.0 && gb > 0.0) {
            boost::uintmax_t iters = 200;
            auto r = boost::math::tools::toms748_solve(g, xa, xb, ga, gb,
                                                       boost::math::tools::eps_tolerance<double>(52), iters);
            const double xr = 0.5 * (r.first + r.second);
            const auto p = match_parts(l, xr, n_inside, n_outside);
            const double s = p.c_scale();
            const double dhat = std::abs(p.b * p.dc - p.c * p.db);
            Resonance res;
            res.x = xr;
            res.width = s * dhat / (p.db * p.db + (s * p.dc) * (s * p.dc));
            // Only narrow Lorentzian dips count. At a zero of j_l(n_inside x) both
            // B' and C' vanish and the minimum is flat; broad minima like that
            // are left to the ordinary panels.
            if (!(res.width < kBroadResonance * step) || !(dhat > 0.0)) {
                xa = xb;
                ga = gb;
                continue;
            }
            const double base = std::numbers::pi * n_outside / (n_inside * dhat);
            res.weight = std::ldexp(base, -(p.eB + p.eC));
            const double X = n_inside * xr;
            const double amp = std::sqrt(base) * std::sqrt(2.0 * X / std::numbers::pi);
            const int twice = 2 * p.interior.exp2 - (p.eB + p.eC);
            res.point = {ldexp_half(amp * p.interior.value, twice),
                         ldexp_half(amp * (p.interior.derivative + p.interior.value / (2.0 * X)), twice)};
            out.push_back(res);
        }
        xa = xb;
        ga = gb;
    }
    return out;
}

} // namespace sonoqed
