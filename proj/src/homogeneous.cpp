#include "sonoqed/homogeneous.hpp"

#include <cmath>

#include "sonoqed/errors.hpp"
#include "sonoqed/specfun.hpp"
#include "sonoqed/units.hpp"

namespace sonoqed {

namespace {

void check_consistent(const MediumTransition& t, const BubbleGeometry& g) {
    if (std::abs(t.n_out() - g.n_out) > 1e-12 * t.n_out())
        throw ValidationError("geometry", "built with n_out different from the transition's n_out");
}

} // namespace

double epsilon_profile(const MediumTransition& t, double tau) {
    const double a = t.n_in() * t.n_in(), b = t.n_out() * t.n_out();
    return 0.5 * (a + b) + 0.5 * (b - a) * std::tanh(tau / t.tau0());
}

BetaDensity beta_sq_density(const MediumTransition& t, double omega_out) {
    if (!(omega_out > 0.0) || !std::isfinite(omega_out))
        throw DomainError("beta_sq_density: omega_out must be > 0");
    const double nin = t.n_in(), nout = t.n_out();
    const double s = units::pi * omega_out * t.t0() / t.n_sq_mean();
    // n_in^2 w_in = n_in n_out w_out on shell
    const double num = 0.5 * s * nout * std::abs(nin - nout);
    if (num == 0.0) return {0.0, -INFINITY, false};
    const double lv = 2.0 * log_sinh(num) - log_sinh(s * nin * nout) - log_sinh(s * nout * nout);
    if (lv < -700.0) return {0.0, lv, true};
    return {std::exp(lv), lv, false};
}

double beta_sq_log_slope(const MediumTransition& t) {
    return -2.0 * units::pi * t.n_out() * std::min(t.n_in(), t.n_out()) * t.t0() / t.n_sq_mean();
}

double sudden_beta_sq(const MediumTransition& t) {
    const double d = t.n_in() - t.n_out();
    return 0.25 * d * d / (t.n_in() * t.n_out());
}

SuddenApproxScale omega_sudden(const MediumTransition& t) {
    const double nin = t.n_in(), nout = t.n_out();
    return {(nin * nin + nout * nout) / (2.0 * units::pi * t.t0() * nout * std::max(nin, nout))};
}

double spectrum_infinite(const MediumTransition& t, const BubbleGeometry& g, double omega_out) {
    if (!(omega_out >= 0.0) || !std::isfinite(omega_out))
        throw DomainError("spectrum_infinite: omega_out must be >= 0");
    check_consistent(t, g);
    const double c = units::speed_of_light;
    const double k = t.n_out() * omega_out / c;
    if (k > g.k_gas_cutoff) return 0.0;
    const double d = t.n_out() - t.n_in();
    const double density = d * d / (t.n_out() * t.n_in());
    const double phase_space = g.volume / std::pow(units::two_pi, 3) * 4.0 * units::pi * k * k;
    return t.n_out() / (2.0 * c) * density * phase_space;
}

SpectralDensity spectrum_infinite(const MediumTransition& t, const BubbleGeometry& g,
                                  const std::vector<double>& grid) {
    SpectralDensity s;
    s.grid = grid;
    s.values.resize(grid.size());
    std::vector<double> x(grid.size());
    const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        s.values[i] = spectrum_infinite(t, g, grid[i]);
        x[i] = t.n_out() * grid[i] * g.radius / units::speed_of_light;
    }
    s.dimensionless_x = std::move(x);
    s.check();
    return s;
}

double total_photons_closed_form(const MediumTransition& t, const BubbleGeometry& g) {
    check_consistent(t, g);
    const double d = t.n_out() - t.n_in();
    const double rk = g.radius * g.k_gas_cutoff;
    return d * d / (t.n_out() * t.n_in()) * rk * rk * rk / (9.0 * units::pi);
}

EmissionSummary totals_closed_form(const MediumTransition& t, const BubbleGeometry& g) {
    const double n = total_photons_closed_form(t, g);
    const double d = t.n_out() - t.n_in();
    const double K = g.k_gas_cutoff;
    const double e = d * d / (t.n_in() * t.n_out() * t.n_out()) * units::hbar * units::speed_of_light * K *
                     g.volume * K * K * K / (16.0 * units::pi * units::pi);
    return make_summary(n, e, units::speed_of_light * K / t.n_out());
}

double photons_from_kr(double n_in, double n_out, double n_liquid, double k_obs_r) {
    const double d = n_out - n_in;
    const double c0 = k_obs_r * k_obs_r * k_obs_r / (9.0 * units::pi);
    return c0 / (n_liquid * n_liquid * n_liquid) * d * d * n_out * n_out / n_in;
}

} // namespace sonoqed
