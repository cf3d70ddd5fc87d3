#pragma once

#include <vector>

namespace sonoqed {

struct BranchPair {
    double n_in_low;
    double n_in_high;
    double discriminant;
};

// Both n_in that give N_target photons for the given n_out in the closed-form count.
BranchPair solve_n_in(double n_out, double n_target, double n_liquid, double k_obs_r);

// |N(n_in) - N_target| / N_target using the closed-form count.
double back_substitution_residual(double n_in, double n_out, double n_target, double n_liquid,
                                  double k_obs_r);

struct Figure1Row {
    double n_out;
    BranchPair roots;
    double residual_low;
    double residual_high;
};

std::vector<Figure1Row> sweep_figure1(double n_target, double n_liquid, double k_obs_r,
                                      const std::vector<double>& n_out_grid);

std::vector<double> linear_grid(double lo, double hi, int points);

} // namespace sonoqed
