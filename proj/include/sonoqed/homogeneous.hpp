#pragma once

#include <vector>

#include "sonoqed/types.hpp"

namespace sonoqed {

// Polarisations summed in every spectrum-level quantity (never in beta_sq_density).
inline constexpr double kPolarizationFactor = 2.0;

struct SuddenApproxScale {
    double omega_sudden; // rad/s
};

// eps(tau) for the tanh profile in pseudo-time.
double epsilon_profile(const MediumTransition& t, double tau);

struct BetaDensity {
    double value;     // 0 when underflow is set
    double log_value; // always finite unless value is exactly 0 by symmetry
    bool underflow;
};

// |beta|^2 density per mode, on shell (n_in w_in = n_out w_out), one polarisation.
BetaDensity beta_sq_density(const MediumTransition& t, double omega_out);

// Large-omega slope of ln(beta_sq_density) per unit omega_out.
double beta_sq_log_slope(const MediumTransition& t);

double sudden_beta_sq(const MediumTransition& t);

// Bosonic normalisation; |alpha|^2 - |beta|^2 = 1 by construction.
inline double alpha_sq_from_beta_sq(double beta_sq) { return 1.0 + beta_sq; }

SuddenApproxScale omega_sudden(const MediumTransition& t);

// dN/domega_out in seconds.
double spectrum_infinite(const MediumTransition& t, const BubbleGeometry& g, double omega_out);
SpectralDensity spectrum_infinite(const MediumTransition& t, const BubbleGeometry& g,
                                  const std::vector<double>& grid);

double total_photons_closed_form(const MediumTransition& t, const BubbleGeometry& g);
EmissionSummary totals_closed_form(const MediumTransition& t, const BubbleGeometry& g);

// N = (K_obs R)^3/(9 pi) (n_out - n_in)^2 n_out^2 / (n_in n_liquid^3); with K_obs R = 15
// the prefactor is the familiar 119.
double photons_from_kr(double n_in, double n_out, double n_liquid, double k_obs_r);

} // namespace sonoqed
