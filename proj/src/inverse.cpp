#include "sonoqed/inverse.hpp"

#include <cmath>
#include <string>

#include "sonoqed/errors.hpp"
#include "sonoqed/homogeneous.hpp"
#include "sonoqed/units.hpp"

namespace sonoqed {

BranchPair solve_n_in(double n_out, double n_target, double n_liquid, double k_obs_r) {
    if (!(n_out > 0.0) || !std::isfinite(n_out)) throw ValidationError("n_out", "must be > 0");
    if (!(n_target >= 0.0) || !std::isfinite(n_target)) throw ValidationError("target", "must be >= 0");
    if (!(n_liquid >= 1.0)) throw ValidationError("n_liquid", "must be >= 1");
    if (!(k_obs_r > 0.0)) throw ValidationError("k_obs_R", "must be > 0");

    const double c0 = k_obs_r * k_obs_r * k_obs_r / (9.0 * units::pi);
    const double lambda = n_target * n_liquid * n_liquid * n_liquid / (c0 * n_out * n_out);
    // n^2 - (2 n_out + L) n + n_out^2 = 0; discriminant factorises as L (4 n_out + L)
    const double disc = lambda * (4.0 * n_out + lambda);
    if (disc < 0.0) throw NumericalError("solve_n_in: negative discriminant");
    const double high = 0.5 * ((2.0 * n_out + lambda) + std::sqrt(disc));
    // the smaller root from the product of roots avoids cancellation
    const double low = n_out * n_out / high;
    return {low, high, disc};
}

double back_substitution_residual(double n_in, double n_out, double n_target, double n_liquid,
                                  double k_obs_r) {
    const double n = photons_from_kr(n_in, n_out, n_liquid, k_obs_r);
    if (n_target == 0.0) return std::abs(n);
    return std::abs(n - n_target) / n_target;
}

std::vector<Figure1Row> sweep_figure1(double n_target, double n_liquid, double k_obs_r,
                                      const std::vector<double>& grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) throw ValidationError("n_out grid", "values must be > 0");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw ValidationError("n_out grid", "must be strictly increasing");
    }
    std::vector<Figure1Row> rows(grid.size());
    const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        auto r = solve_n_in(grid[i], n_target, n_liquid, k_obs_r);
        rows[i] = {grid[i], r, back_substitution_residual(r.n_in_low, grid[i], n_target, n_liquid, k_obs_r),
                   back_substitution_residual(r.n_in_high, grid[i], n_target, n_liquid, k_obs_r)};
    }
    for (const auto& row : rows) {
        const double p = row.roots.n_in_low * row.roots.n_in_high;
        if (std::abs(p - row.n_out * row.n_out) > 1e-10 * row.n_out * row.n_out)
            throw NumericalError("sweep: root product drifted from n_out^2 at n_out = " +
                                 std::to_string(row.n_out));
    }
    return rows;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (points < 2) throw ValidationError("grid_points", "must be >= 2");
    if (!(hi > lo)) throw ValidationError("grid", "upper end must exceed lower end");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
    g.back() = hi;
    return g;
}

} // namespace sonoqed
