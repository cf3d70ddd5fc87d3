#pragma once

#include <optional>
#include <vector>

namespace sonoqed {

// Refractive index before and after the change, plus its physical timescale.
class MediumTransition {
  public:
    MediumTransition(double n_in, double n_out, double t0);

    // Build from the pseudo-time scale instead of physical time.
    static MediumTransition from_pseudo_time(double n_in, double n_out, double tau0);

    double n_in() const { return n_in_; }
    double n_out() const { return n_out_; }
    double t0() const { return t0_; }
    double n_sq_mean() const { return 0.5 * (n_in_ * n_in_ + n_out_ * n_out_); }
    // t0 = tau0 <n^2>
    double tau0() const { return t0_ / n_sq_mean(); }
    double delta_n() const { return n_in_ - n_out_; }

  private:
    double n_in_;
    double n_out_;
    double t0_;
};

struct BubbleGeometry {
    double radius;       // m
    double n_liquid;
    double n_out;        // gas index the cutoff was translated with
    double lambda_obs;   // m, in the liquid
    double k_observed;   // 1/m
    double omega_max;    // rad/s
    double k_gas_cutoff; // 1/m
    double volume;       // m^3

    double k_observed_radius() const { return k_observed * radius; }
    double cutoff_radius() const { return k_gas_cutoff * radius; }
};

BubbleGeometry build_geometry(double radius, double n_liquid, double lambda_obs, double n_out);

// Same, but parametrised by the dimensionless product K_observed R.
BubbleGeometry build_geometry_from_kr(double radius, double n_liquid, double k_obs_r, double n_out);

struct EmissionSummary {
    double photon_count = 0.0;
    double total_energy = 0.0; // J
    double mean_energy = 0.0;  // J
    double mean_over_cutoff = 0.0;
};

EmissionSummary make_summary(double photon_count, double total_energy, double omega_max);

struct SpectralDensity {
    std::vector<double> grid;   // omega_out, rad/s
    std::vector<double> values; // dN/domega_out, s
    std::optional<std::vector<double>> dimensionless_x;

    // Throws ValidationError when the lists disagree or the grid is not increasing.
    void check() const;
    double trapezoid() const;
    double trapezoid_first_moment() const;
};

// Uniform grid on (0, omega_hi]; the first point is omega_hi/n, not 0.
std::vector<double> open_uniform_grid(double omega_hi, int points);

} // namespace sonoqed
