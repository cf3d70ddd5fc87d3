// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "box_oracle.hpp"
#include "series_oracle.hpp"
#include "sonoqed/bubble.hpp"
#include "sonoqed/homogeneous.hpp"
#include "sonoqed/inverse.hpp"
#include "sonoqed/modes.hpp"
#include "sonoqed/specfun.hpp"
#include "sonoqed/units.hpp"

using namespace sonoqed;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail, double seconds) {
    std::printf("%s [%d] %s: %s (%.1f s)\n", ok ? "PASS" : "FAIL", id, name, detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

void criterion(int id, const char* name, const std::function<bool(std::ostringstream&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    detail.precision(4);
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << "threw: " << e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, name, ok, detail.str(), s);
}

constexpr double kRadius = 500e-9;
constexpr double kLiquid = 1.3;
constexpr double kKobsR = 15.0;

bool typical_cases(std::ostringstream& d) {
    struct Row {
        double n_in, n_out, photons, ratio;
    };
    const Row rows[] = {{2e4, 1, 1.06e6, 0.803}, {71, 25, 1.00e6, 0.750}, {68, 34, 1.06e6, 0.751},
                        {9, 25, 0.955e6, 0.750}, {1, 12, 0.98e6, 0.765}};
    bool ok = true;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& r : rows) {
        const MediumTransition gas(r.n_in, r.n_out, 1e-15);
        const auto g = build_geometry_from_kr(kRadius, kLiquid, kKobsR, r.n_out);
        const auto s = totals_finite(gas, g, {});
        const double dn = s.photon_count / r.photons - 1.0;
        const double dr = s.mean_over_cutoff - r.ratio;
        const bool row_ok = std::abs(dn) <= 0.10 && std::abs(dr) <= 0.02;
        ok = ok && row_ok;
        d << "(" << r.n_in << "," << r.n_out << ") N=" << s.photon_count << " [" << (dn >= 0 ? "+" : "") << 100 * dn
          << "%] <E>/hw=" << s.mean_over_cutoff << " [" << (dr >= 0 ? "+" : "") << dr << "]; ";
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    d << "total " << total << " s";
    return ok && total < 300.0;
}

bool closed_forms(std::ostringstream& d) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> n(1.0, 100.0), r(50e-9, 5000e-9), lam(100e-9, 800e-9), liq(1.0, 2.0);
    double worst_e = 0.0, worst_n = 0.0;
    for (int i = 0; i < 100; ++i) {
        const MediumTransition t(n(rng), n(rng), 1e-15);
        const double nl = liq(rng);
        const auto g = build_geometry(r(rng), nl, lam(rng), t.n_out());
        const auto s = totals_closed_form(t, g);
        worst_e = std::max(worst_e, std::abs(s.total_energy / (0.75 * s.photon_count * units::hbar * g.omega_max) - 1));
        const auto g15 = build_geometry_from_kr(g.radius, nl, kKobsR, t.n_out());
        const double a = total_photons_closed_form(t, g15);
        const double b = photons_from_kr(t.n_in(), t.n_out(), nl, kKobsR);
        worst_n = std::max(worst_n, std::abs(a / b - 1));
    }
    // the familiar prefactor: 15^3 / (9 pi) = 119.4
    const double pre = photons_from_kr(2.0, 1.0, 1.0, kKobsR) / 0.5;
    d << "max |E/(3/4 N hw) - 1| = " << worst_e << ", max form disagreement = " << worst_n << ", prefactor "
      << pre;
    return worst_e < 1e-12 && worst_n < 1e-12 && std::abs(pre - 119.366) < 0.01;
}

bool sudden_limit(std::ostringstream& d) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> n(1.0, 100.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const MediumTransition t(n(rng), n(rng), 1e-15);
        const double ws = omega_sudden(t).omega_sudden;
        for (double f : {1e-3, 1e-4, 1e-6, 1e-9}) {
            const double b = beta_sq_density(t, f * ws).value;
            worst = std::max(worst, std::abs(b / sudden_beta_sq(t) - 1));
        }
    }
    d << "max relative deviation " << worst << " over 50 pairs, omega <= 1e-3 Omega_sudden";
    return worst < 1e-4;
}

bool exponential_tail(std::ostringstream& d) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> n(1.0, 100.0);
    std::vector<std::pair<double, double>> pairs{{1, 12}, {2e4, 1}, {71, 25}, {68, 34}, {9, 25}};
    for (int i = 0; i < 25; ++i) pairs.emplace_back(n(rng), n(rng));
    double worst = 0.0;
    bool monotone = true;
    for (auto [ni, no] : pairs) {
        const MediumTransition t(ni, no, 1e-15);
        const double ws = omega_sudden(t).omega_sudden;
        // fit window: from 10 Omega_sudden, or later if a sinh argument is still below 5
        // there (Omega_sudden is set by the larger index, the slope by the smaller ones)
        const double s_per_w = units::pi * t.t0() / t.n_sq_mean();
        const double smallest = no * std::min({ni, no, 0.5 * std::abs(ni - no)});
        const double w0 = std::max(10.0 * ws, 5.0 / (s_per_w * smallest));
        const int m = 41;
        double sx = 0, sy = 0, sxx = 0, sxy = 0, prev = INFINITY;
        for (int k = 0; k < m; ++k) {
            const double w = w0 * (1.0 + k / (m - 1.0));
            const double y = beta_sq_density(t, w).log_value;
            if (!(y < prev)) monotone = false;
            prev = y;
            sx += w;
            sy += y;
            sxx += w * w;
            sxy += w * y;
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        worst = std::max(worst, std::abs(slope / beta_sq_log_slope(t) - 1));
    }
    d << "max slope deviation " << worst << " over " << pairs.size() << " pairs, monotone " << (monotone ? "yes" : "no");
    return worst < 0.02 && monotone;
}

bool spectrum_shape(std::ostringstream& d) {
    const MediumTransition gas(2e4, 1.0, 1e-15);
    const auto g = build_geometry(kRadius, kLiquid, 200e-9, 1.0);
    FiniteSpectrumConfig cfg;
    const auto fin = spectrum_finite(gas, g, cfg);
    const auto inf = spectrum_infinite(gas, g, fin.grid);
    const double kr = g.cutoff_radius();
    const auto& x = *inf.dimensionless_x;
    // x^2 below the cut, nothing above
    double c0 = -1.0, worst_shape = 0.0;
    bool cut_ok = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < kr * (1 - 1e-12)) {
            const double c = inf.values[i] / (x[i] * x[i]);
            if (c0 < 0) c0 = c;
            worst_shape = std::max(worst_shape, std::abs(c / c0 - 1));
        } else if (x[i] > kr * (1 + 1e-12) && inf.values[i] != 0.0) {
            cut_ok = false;
        }
    }
    double peak = 0.0, jump = 0.0;
    for (std::size_t i = 0; i < fin.values.size(); ++i) {
        peak = std::max(peak, fin.values[i]);
        if (i) jump = std::max(jump, std::abs(fin.values[i] - fin.values[i - 1]));
    }
    const double n_fin = fin.trapezoid();
    const double n_inf = total_photons_closed_form(gas, g);
    // the quoted x = 11.5 is K R for K_obs R = 15
    const double kr15 = build_geometry_from_kr(kRadius, kLiquid, kKobsR, 1.0).cutoff_radius();
    d << "x^2 deviation " << worst_shape << ", cut at x = " << kr << " (K_obs R = 15: " << kr15
      << "), max adjacent step " << 100 * jump / peak << "% of peak, N finite/infinite = " << n_fin / n_inf;
    return worst_shape < 1e-12 && cut_ok && jump < 0.05 * peak && std::abs(n_fin / n_inf - 1) < 0.10 &&
           std::abs(kr15 - 11.5) < 0.05;
}

bool two_branch(std::ostringstream& d) {
    const auto a = solve_n_in(12.0, 1e6, kLiquid, kKobsR);
    const auto b = solve_n_in(25.0, 1e6, kLiquid, kKobsR);
    double res = 0.0;
    for (auto [n, no] : {std::pair{a.n_in_low, 12.0}, {a.n_in_high, 12.0}, {b.n_in_low, 25.0}, {b.n_in_high, 25.0}})
        res = std::max(res, back_substitution_residual(n, no, 1e6, kLiquid, kKobsR));
    d << "n_out=12: (" << a.n_in_low << ", " << a.n_in_high << "), n_out=25: (" << b.n_in_low << ", " << b.n_in_high
      << "), max residual " << res;
    return std::abs(a.n_in_low - 0.95) < 0.01 && std::abs(a.n_in_high / 151 - 1) < 0.01 &&
           std::abs(b.n_in_low - 8.8) < 0.1 && std::abs(b.n_in_high - 70.7) < 0.2 && res < 1e-8 &&
           std::lround(b.n_in_low) == 9 && std::lround(b.n_in_high) == 71;
}

bool special_functions(std::ostringstream& d) {
    double cross = 0.0;
    for (int l = 1; l <= 30; ++l)
        for (double x = 0.1; x <= 100.0; x *= 1.05) {
            const auto a = spherical_j_scaled(l, x), b = spherical_y_scaled(l - 1, x);
            const auto c = spherical_j_scaled(l - 1, x), e = spherical_y_scaled(l, x);
            const double lhs = std::ldexp(a.value * b.value, a.exp2 + b.exp2) - std::ldexp(c.value * e.value, c.exp2 + e.exp2);
            cross = std::max(cross, std::abs(lhs * x * x - 1));
        }
    double series = 0.0;
    for (int l = 0; l <= 30; ++l)
        for (double x : {0.1, 0.37, 1.0, 2.9, 7.5, 12.0, 26.0, 41.0, 63.0, 100.0}) {
            const double jw = oracle::j(l, x), yw = oracle::y(l, x);
            // past the turning point compare against the modulus: zeros have no relative accuracy
            const double mod = x > l + 1.0 ? std::hypot(jw, yw) : 0.0;
            series = std::max(series, std::abs(spherical_j(l, x) - jw) / std::max(std::abs(jw), mod));
            series = std::max(series, std::abs(spherical_y(l, x) - yw) / std::max(std::abs(yw), mod));
        }
    double cont = 0.0;
    for (int l : {1, 3, 8, 20})
        for (double a : {0.5, 2.0, 7.0, 15.0}) {
            const auto o = BesselOrder::from_l(l);
            const double at = wronskian_kernel(o, a, a, 1.0);
            const double h = a * 1e-4;
            const double slope = (wronskian_kernel(o, a, a + h, 1.0) - wronskian_kernel(o, a, a - h, 1.0)) / (2 * h);
            for (double e : {-3e-6, -1.0001e-6, -0.9999e-6, -1e-8, 1e-8, 0.9999e-6, 1.0001e-6, 3e-6}) {
                const double b = a * (1 + e);
                const double scale = std::abs(at) + std::abs(slope) * a;
                cont = std::max(cont, std::abs(wronskian_kernel(o, a, b, 1.0) - at - slope * (b - a)) / scale);
            }
        }
    d << "cross-product " << cross << ", series oracle " << series << ", kernel continuity " << cont;
    return cross < 1e-10 && series < 1e-12 && cont < 1e-5;
}

bool mode_matching(std::ostringstream& d) {
    double junction = 0.0;
    for (int l : {1, 2, 5, 12, 40, 150})
        for (double ni : {1.0, 9.0, 71.0, 2e4})
            for (double nl : {1.3, 12.0})
                for (double x : {0.01, 0.3, 1.0, 4.0, 11.5}) {
                    const auto r = junction_residuals(l, x, ni, nl);
                    junction = std::max({junction, r.value, r.derivative});
                }
    bool free_ok = true;
    for (int l : {1, 4, 25})
        for (double x : {0.2, 3.0, 40.0}) {
            const auto m = match_modes(l, x * units::speed_of_light / kRadius, 1.3, 1.3, kRadius);
            free_ok = free_ok && m.amp_irregular == 0.0 && std::abs(m.amp_regular - 1) < 1e-12 &&
                      std::abs(m.a_nu_sq - 1) < 1e-12;
        }
    struct Case {
        int l;
        double ni, nl, x;
    };
    const Case cases[] = {{1, 1.5, 1.3, 2.0}, {2, 1.0, 12.0, 0.8}, {3, 9.0, 25.0, 0.6}, {2, 3.0, 1.3, 1.7}, {5, 1.3, 1.0, 4.0}};
    double box_worst = 0.0;
    for (const auto& c : cases) {
        const auto r = box::amplitude(c.l, c.ni, c.nl, c.x, 1500.0);
        const double analytic = a_nu_sq(match_parts(c.l, r.x, c.ni, c.nl)) * 2.0 * c.ni * r.x * r.x / std::numbers::pi;
        box_worst = std::max(box_worst, std::abs(r.a_sq_box / analytic - 1));
    }
    d << "junction residual " << junction << ", free case " << (free_ok ? "exact" : "wrong")
      << ", box normalisation max deviation " << 100 * box_worst << "%";
    return junction < 1e-10 && free_ok && box_worst < 0.01;
}

} // namespace

int main() {
    criterion(1, "typical-case totals", typical_cases);
    criterion(2, "closed-form identities", closed_forms);
    criterion(3, "sudden-limit equivalence", sudden_limit);
    criterion(4, "exponential tail", exponential_tail);
    criterion(5, "spectrum shape at the cutoff", spectrum_shape);
    criterion(6, "two-branch inverse", two_branch);
    criterion(7, "special-function suite", special_functions);
    criterion(8, "mode-matching properties", mode_matching);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
