#pragma once

#include <optional>
#include <vector>

#include "sonoqed/mode_rule.hpp"
#include "sonoqed/types.hpp"

namespace sonoqed {

struct FiniteSpectrumConfig {
    std::optional<int> l_max; // empty means AUTO
    double quad_rel_tol = 1e-6;
    double l_tail_tol = 1e-4;
    int grid_points = 200;
    // Outgoing frequencies are integrated (and sampled) up to
    // output_window * c K / n_out. The finite-volume spectrum spills past the
    // sharp cut; 1 restricts it to the cut itself.
    double output_window = 1.5;
    int max_refinements = 10;
    bool parallel = true;
    RuleOptions rule;

    void validate() const;
};

struct FiniteDiagnostics {
    int l_last = 0;
    double last_l_fraction = 0.0; // contribution of the last l relative to the total
    int refinement_passes = 0;
    double estimated_rel_error = 0.0;
    std::vector<double> per_l; // photon count per l, starting at l = 1
};

// omega_in integrand of dN/domega_out for one l, in s^2. The caller applies
// (2l+1), the polarisation factor and (n_in - n_out)^2 / 4.
double finite_kernel(int l, double omega_in, double omega_out, double n_gas_in, double n_gas_out, double n_liquid,
                     double radius);

// Dimensionless form: x = omega R / c on both sides.
double finite_kernel_dimensionless(int l, double x_in, double x_out, double n_gas_in, double n_gas_out,
                                   double n_liquid);

SpectralDensity spectrum_finite(const MediumTransition& gas, const BubbleGeometry& g, const FiniteSpectrumConfig& cfg,
                                FiniteDiagnostics* diag = nullptr);

EmissionSummary totals_finite(const MediumTransition& gas, const BubbleGeometry& g, const FiniteSpectrumConfig& cfg,
                              FiniteDiagnostics* diag = nullptr);

// Reference path for tests: same rules, but every pair goes through
// finite_kernel_dimensionless (fresh mode matching per pair), no threads and
// no refinement. Only practical for small bubbles.
EmissionSummary totals_finite_direct(const MediumTransition& gas, const BubbleGeometry& g,
                                     const FiniteSpectrumConfig& cfg);

} // namespace sonoqed
