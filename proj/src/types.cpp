#include "sonoqed/types.hpp"

#include <cmath>
#include <string>

#include "sonoqed/errors.hpp"
#include "sonoqed/numeric.hpp"
#include "sonoqed/units.hpp"

namespace sonoqed {

namespace {

void require_positive(const char* field, double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError(field, "must be a finite positive number, got " + std::to_string(v));
}

} // namespace

MediumTransition::MediumTransition(double n_in, double n_out, double t0)
    : n_in_(n_in), n_out_(n_out), t0_(t0) {
    require_positive("n_in", n_in);
    require_positive("n_out", n_out);
    require_positive("t0", t0);
}

MediumTransition MediumTransition::from_pseudo_time(double n_in, double n_out, double tau0) {
    require_positive("tau0", tau0);
    return MediumTransition(n_in, n_out, 0.5 * tau0 * (n_in * n_in + n_out * n_out));
}

BubbleGeometry build_geometry(double radius, double n_liquid, double lambda_obs, double n_out) {
    require_positive("radius", radius);
    require_positive("lambda_obs", lambda_obs);
    require_positive("n_out", n_out);
    if (!(n_liquid >= 1.0) || !std::isfinite(n_liquid))
        throw ValidationError("n_liquid", "must be >= 1, got " + std::to_string(n_liquid));

    BubbleGeometry g{};
    g.radius = radius;
    g.n_liquid = n_liquid;
    g.n_out = n_out;
    g.lambda_obs = lambda_obs;
    g.k_observed = units::two_pi / lambda_obs;
    g.omega_max = units::speed_of_light * g.k_observed / n_liquid;
    g.k_gas_cutoff = g.k_observed * n_out / n_liquid;
    g.volume = 4.0 / 3.0 * units::pi * radius * radius * radius;
    return g;
}

BubbleGeometry build_geometry_from_kr(double radius, double n_liquid, double k_obs_r, double n_out) {
    require_positive("k_obs_R", k_obs_r);
    require_positive("radius", radius);
    auto g = build_geometry(radius, n_liquid, units::two_pi * radius / k_obs_r, n_out);
    // keep K_obs R bit-exact; the wavelength round trip can lose an ulp
    g.k_observed = k_obs_r / radius;
    g.omega_max = units::speed_of_light * g.k_observed / n_liquid;
    g.k_gas_cutoff = g.k_observed * n_out / n_liquid;
    return g;
}

EmissionSummary make_summary(double photon_count, double total_energy, double omega_max) {
    EmissionSummary s;
    s.photon_count = photon_count;
    s.total_energy = total_energy;
    if (photon_count > 0.0) {
        s.mean_energy = total_energy / photon_count;
        s.mean_over_cutoff = s.mean_energy / (units::hbar * omega_max);
    }
    return s;
}

void SpectralDensity::check() const {
    if (grid.size() != values.size())
        throw ValidationError("spectrum", "grid and values differ in length");
    if (dimensionless_x && dimensionless_x->size() != grid.size())
        throw ValidationError("spectrum", "dimensionless_x differs in length");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ValidationError("spectrum", "grid must be strictly increasing");
}

double SpectralDensity::trapezoid() const {
    NeumaierSum s;
    for (std::size_t i = 1; i < grid.size(); ++i)
        s.add(0.5 * (grid[i] - grid[i - 1]) * (values[i] + values[i - 1]));
    return s.value();
}

double SpectralDensity::trapezoid_first_moment() const {
    NeumaierSum s;
    for (std::size_t i = 1; i < grid.size(); ++i)
        s.add(0.5 * (grid[i] - grid[i - 1]) * (grid[i] * values[i] + grid[i - 1] * values[i - 1]));
    return s.value();
}

std::vector<double> open_uniform_grid(double omega_hi, int points) {
    if (points < 2)
        throw ValidationError("grid_points", "must be >= 2, got " + std::to_string(points));
    require_positive("omega_hi", omega_hi);
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = omega_hi * (i + 1) / points;
    return g;
}

} // namespace sonoqed
