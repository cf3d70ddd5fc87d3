#include "sonoqed/bubble.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sonoqed/errors.hpp"
#include "sonoqed/homogeneous.hpp"
#include "sonoqed/numeric.hpp"
#include "sonoqed/specfun.hpp"
#include "sonoqed/units.hpp"

namespace sonoqed {

void FiniteSpectrumConfig::validate() const {
    if (l_max && *l_max < 1) throw ValidationError("lmax", "must be >= 1 (or AUTO)");
    if (!(quad_rel_tol > 0.0 && quad_rel_tol < 1.0)) throw ValidationError("tol", "must lie in (0, 1)");
    if (!(l_tail_tol > 0.0 && l_tail_tol < 1.0)) throw ValidationError("l_tail_tol", "must lie in (0, 1)");
    if (grid_points < 2) throw ValidationError("grid_points", "must be >= 2");
    if (!(output_window >= 1.0 && output_window <= 10.0))
        throw ValidationError("output_window", "must lie in [1, 10]");
    if (max_refinements < 0) throw ValidationError("max_refinements", "must be >= 0");
    if (!(rule.panel_width > 0.0)) throw ValidationError("panel_width", "must be > 0");
}

namespace {

constexpr double kLowerEdge = 1e-6; // integration starts at this fraction of the cutoff

// The whole dimensionless pair integrand, given A J and A J' on both sides.
// Branch-free on purpose (the near-diagonal limit is a select) so the inner
// loops vectorise.
inline double pair_value(double nu, double n_o, double xo, double go, double dgo, double n_i, double xi, double gi,
                         double dgi) {
    const double a = n_o * xo, b = n_i * xi;
    const double hi = a > b ? a : b;
    const double gap = a > b ? a - b : b - a;
    const bool near = gap < kWronskianWindow * hi;
    const double den = near ? 1.0 : (a - b) * (a + b);
    const double w = b * (go * dgi) - a * (dgo * gi);
    const double lim = 0.5 * ((1.0 - nu * nu / (a * b)) * go * gi + dgo * dgi);
    const double k = near ? lim : w / den;
    const double num = (n_o * xo * xo + n_i * xi * xi) / (xo + xi);
    const double v = num * k;
    return v * v;
}

// Panels and nodes whose |A J| is this far below the largest one on their side
// are dropped; their share of the integral is below 1e-20 of the total.
constexpr double kNegligible = 1e-13;

// QUADPACK's mapping of |Kronrod - Gauss| to an error estimate.
inline double qp_error(double delta, double resasc) {
    const double d = std::abs(delta);
    if (!(resasc > 0.0)) return d;
    const double r = 200.0 * d / resasc;
    return resasc * std::min(1.0, r * std::sqrt(r));
}

struct Ranges {
    double in_lo, in_hi, out_lo, out_hi;
};

Ranges ranges_for(const MediumTransition& gas, const BubbleGeometry& g, double window) {
    const double kr = g.cutoff_radius();
    return {kLowerEdge * kr / gas.n_in(), kr / gas.n_in(), kLowerEdge * kr / gas.n_out(),
            window * kr / gas.n_out()};
}

void check_inputs(const MediumTransition& gas, const BubbleGeometry& g, const FiniteSpectrumConfig& cfg) {
    cfg.validate();
    if (std::abs(gas.n_out() - g.n_out) > 1e-12 * gas.n_out())
        throw ValidationError("geometry", "built with n_out different from the gas n_out");
}

int l_ceiling(const BubbleGeometry& g) { return static_cast<int>(std::ceil(g.cutoff_radius())); }

int l_hard_cap(const BubbleGeometry& g) { return 4 * l_ceiling(g) + 60; }

struct PairSums {
    std::vector<double> s;       // integral over the in side, per out node
    std::vector<double> in_err;  // per (out node, in panel), already mapped by qp_error
};

// For every out node: sum over in nodes plus per-panel error terms.
// The in side is the shared rule, optionally with one panel replaced per out
// node (replace_panel >= 0) by the nodes in extra[o].
void pair_sums(int l, double n_i, double n_o, const RuleNodes& in, std::size_t in_panels,
               const std::vector<double>& xo, const std::vector<double>& go, const std::vector<double>& dgo,
               const std::vector<int>* replace_panel, const std::vector<RuleNodes>* extra, bool parallel,
               PairSums& out) {
    const double nu = l + 0.5;
    const long no = static_cast<long>(xo.size());
    out.s.assign(xo.size(), 0.0);
    out.in_err.assign(xo.size() * in_panels, 0.0);
#pragma omp parallel if (parallel)
    {
        std::vector<double> dp(in_panels), rp(in_panels);
#pragma omp for schedule(dynamic, 8)
        for (long o = 0; o < no; ++o) {
            std::fill(dp.begin(), dp.end(), 0.0);
            std::fill(rp.begin(), rp.end(), 0.0);
            const int skip = replace_panel ? (*replace_panel)[o] : -1;
            double sk = 0.0;
            auto accumulate = [&](const RuleNodes& nodes) {
                const std::size_t n = nodes.size();
                for (std::size_t i = 0; i < n; ++i) {
                    const int p = nodes.panel[i];
                    if (&nodes == &in && p == skip && p >= 0) continue;
                    const double v = pair_value(nu, n_o, xo[o], go[o], dgo[o], n_i, nodes.x[i], nodes.g[i],
                                                nodes.dg[i]);
                    const double wv = nodes.wk[i] * v;
                    sk += wv;
                    if (p >= 0) {
                        dp[p] += wv - nodes.wg[i] * v;
                        rp[p] += wv;
                    }
                }
            };
            accumulate(in);
            if (skip >= 0) accumulate((*extra)[o]);
            out.s[o] = sk;
            double* row = out.in_err.data() + static_cast<std::size_t>(o) * in_panels;
            for (std::size_t p = 0; p < in_panels; ++p) row[p] = qp_error(dp[p], rp[p]);
        }
    }
}

struct LTotals {
    double n = 0.0, e = 0.0, err = 0.0;
    int passes = 0;
};

// Kronrod and Gauss sums of the pair integrand per (out node, in panel), plus
// the point-node part per out node. Kept across refinement passes so that only
// fresh panels are integrated again.
struct PanelTable {
    std::size_t npi = 0;
    std::vector<double> kp, gp, pt;
};

double rule_magnitude(const ModeRule& r) {
    double m = 0.0;
    for (std::size_t p = 0; p < r.panels().size(); ++p) m = std::max(m, r.panel_magnitude(p));
    const auto& n = r.nodes();
    for (std::size_t i = 0; i < r.point_count(); ++i) m = std::max({m, std::abs(n.g[i]), std::abs(n.dg[i])});
    return m;
}

// Fill row o of the table. Only in panels with fresh[p] set are recomputed
// (all of them when fresh is null); the point part is recomputed with them.
void fill_row(int l, double n_i, double n_o, const ModeRule& rin, double in_floor, double xo, double go, double dgo,
              const std::vector<char>* fresh, bool do_points, double* kp, double* gp, double& pt) {
    const double nu = l + 0.5;
    const auto& in = rin.nodes();
    if (do_points) {
        double s = 0.0;
        for (std::size_t i = 0; i < rin.point_count(); ++i)
            s += pair_value(nu, n_o, xo, go, dgo, n_i, in.x[i], in.g[i], in.dg[i]);
        pt = s;
    }
    const std::size_t npi = rin.panels().size();
    const double* X = in.x.data();
    const double* G = in.g.data();
    const double* DG = in.dg.data();
    const double* WK = in.wk.data();
    const double* WG = in.wg.data();
    for (std::size_t p = 0; p < npi; ++p) {
        if (fresh && !(*fresh)[p]) continue;
        if (rin.panel_magnitude(p) < in_floor) {
            kp[p] = gp[p] = 0.0;
            continue;
        }
        const std::size_t off = rin.panel_offset(p);
        double sk = 0.0, sg = 0.0;
        for (std::size_t j = off; j < off + 15; ++j) {
            const double v = pair_value(nu, n_o, xo, go, dgo, n_i, X[j], G[j], DG[j]);
            sk += WK[j] * v;
            sg += WG[j] * v;
        }
        kp[p] = sk;
        gp[p] = sg;
    }
}

LTotals totals_for_l(int l, const MediumTransition& gas, double n_liq, const Ranges& rg,
                     const FiniteSpectrumConfig& cfg) {
    const double n_i = gas.n_in(), n_o = gas.n_out();
    ModeRule rin(l, n_i, n_liq, rg.in_lo, rg.in_hi, cfg.rule, cfg.parallel);
    ModeRule rout(l, n_o, n_liq, rg.out_lo, rg.out_hi, cfg.rule, cfg.parallel);
    const double in_floor = kNegligible * rule_magnitude(rin);
    const double out_floor = kNegligible * rule_magnitude(rout);

    auto out_live = [&](std::size_t o) {
        const auto& O = rout.nodes();
        return std::max(std::abs(O.g[o]), std::abs(O.dg[o])) >= out_floor;
    };

    PanelTable T;
    {
        const auto& O = rout.nodes();
        T.npi = rin.panels().size();
        T.kp.assign(O.size() * T.npi, 0.0);
        T.gp.assign(O.size() * T.npi, 0.0);
        T.pt.assign(O.size(), 0.0);
        const long no = static_cast<long>(O.size());
#pragma omp parallel for schedule(dynamic, 8) if (cfg.parallel)
        for (long o = 0; o < no; ++o) {
            if (!out_live(o)) continue;
            fill_row(l, n_i, n_o, rin, in_floor, O.x[o], O.g[o], O.dg[o], nullptr, true, &T.kp[o * T.npi],
                     &T.gp[o * T.npi], T.pt[o]);
        }
    }

    for (int pass = 0;; ++pass) {
        const auto& O = rout.nodes();
        const std::size_t npi = T.npi, npo = rout.panels().size();
        NeumaierSum sn, se;
        std::vector<double> dq(npo, 0.0), rq(npo, 0.0), e_in(npi, 0.0);
        for (std::size_t o = 0; o < O.size(); ++o) {
            const double* kp = &T.kp[o * npi];
            const double* gp = &T.gp[o * npi];
            double s = T.pt[o];
            for (std::size_t p = 0; p < npi; ++p) {
                s += kp[p];
                e_in[p] += O.wk[o] * qp_error(kp[p] - gp[p], kp[p]);
            }
            const double w = O.wk[o] * s;
            sn.add(w);
            se.add(w * O.x[o]);
            const int q = O.panel[o];
            if (q >= 0) {
                dq[q] += w - O.wg[o] * s;
                rq[q] += w;
            }
        }
        std::vector<double> e_out(npo);
        double err = 0.0;
        for (std::size_t p = 0; p < npi; ++p) err += e_in[p];
        for (std::size_t q = 0; q < npo; ++q) err += (e_out[q] = qp_error(dq[q], rq[q]));

        LTotals t{sn.value(), se.value(), err, pass};
        if (!(t.n > 0.0) || err <= cfg.quad_rel_tol * t.n) return t;
        if (pass >= cfg.max_refinements)
            throw NumericalError("totals: quadrature did not converge at l = " + std::to_string(l) +
                                 " (estimated relative error " + std::to_string(err / t.n) + ")");
        const double cut = cfg.quad_rel_tol * t.n / static_cast<double>(npi + npo);
        std::vector<int> si, so;
        for (std::size_t p = 0; p < npi; ++p)
            if (e_in[p] > cut) si.push_back(static_cast<int>(p));
        for (std::size_t q = 0; q < npo; ++q)
            if (e_out[q] > cut) so.push_back(static_cast<int>(q));

        const std::size_t old_points_out = rout.point_count();
        const auto origin_in = rin.split(si);
        const auto origin_out = rout.split(so);

        // carry over everything that did not change
        const auto& O2 = rout.nodes();
        PanelTable N;
        N.npi = rin.panels().size();
        N.kp.assign(O2.size() * N.npi, 0.0);
        N.gp.assign(O2.size() * N.npi, 0.0);
        N.pt.assign(O2.size(), 0.0);
        std::vector<char> fresh_in(N.npi, 0);
        for (std::size_t p = 0; p < N.npi; ++p) fresh_in[p] = origin_in[p] < 0;
        std::vector<long> old_row(O2.size(), -1);
        for (std::size_t o = 0; o < rout.point_count(); ++o) old_row[o] = static_cast<long>(o);
        for (std::size_t q = 0; q < origin_out.size(); ++q) {
            if (origin_out[q] < 0) continue;
            for (int j = 0; j < 15; ++j)
                old_row[rout.panel_offset(q) + j] = static_cast<long>(old_points_out + 15 * origin_out[q] + j);
        }
        const long no = static_cast<long>(O2.size());
#pragma omp parallel for schedule(dynamic, 8) if (cfg.parallel)
        for (long o = 0; o < no; ++o) {
            if (!out_live(o)) continue;
            double* kp = &N.kp[o * N.npi];
            double* gp = &N.gp[o * N.npi];
            if (old_row[o] < 0) {
                fill_row(l, n_i, n_o, rin, in_floor, O2.x[o], O2.g[o], O2.dg[o], nullptr, true, kp, gp, N.pt[o]);
                continue;
            }
            const double* okp = &T.kp[old_row[o] * npi];
            const double* ogp = &T.gp[old_row[o] * npi];
            for (std::size_t p = 0; p < N.npi; ++p)
                if (origin_in[p] >= 0) {
                    kp[p] = okp[origin_in[p]];
                    gp[p] = ogp[origin_in[p]];
                }
            N.pt[o] = T.pt[old_row[o]];
            fill_row(l, n_i, n_o, rin, in_floor, O2.x[o], O2.g[o], O2.dg[o], &fresh_in, false, kp, gp, N.pt[o]);
        }
        T = std::move(N);
    }
}

// A J and A J' at sampled outgoing frequencies.
void out_values(int l, double n_o, double n_liq, const std::vector<double>& xo, std::vector<double>& g,
                std::vector<double>& dg, bool parallel) {
    g.resize(xo.size());
    dg.resize(xo.size());
    const long n = static_cast<long>(xo.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
    for (long o = 0; o < n; ++o) {
        auto p = match_parts(l, xo[o], n_o, n_liq);
        if (!(p.rho_sq_reduced() > 0.0)) p = match_parts(l, xo[o] * (1.0 + 1e-12), n_o, n_liq);
        const auto v = normalized_interior(p);
        g[o] = v.g;
        dg[o] = v.dg;
    }
}

// Per-grid-point in-side integral for one l, the diagonal always a panel edge.
std::vector<double> spectrum_for_l(int l, const MediumTransition& gas, double n_liq, const Ranges& rg,
                                   const std::vector<double>& xo, const FiniteSpectrumConfig& cfg, int& passes) {
    const double n_i = gas.n_in(), n_o = gas.n_out();
    ModeRule rin(l, n_i, n_liq, rg.in_lo, rg.in_hi, cfg.rule, cfg.parallel);
    std::vector<double> go, dgo;
    out_values(l, n_o, n_liq, xo, go, dgo, cfg.parallel);
    PairSums ps;
    for (int pass = 0;; ++pass) {
        const auto& panels = rin.panels();
        const std::size_t npi = panels.size();
        std::vector<int> replace(xo.size(), -1);
        std::vector<RuleNodes> extra(xo.size());
        const long no = static_cast<long>(xo.size());
#pragma omp parallel for schedule(dynamic, 4) if (cfg.parallel)
        for (long o = 0; o < no; ++o) {
            const double xd = n_o * xo[o] / n_i;
            for (std::size_t p = 0; p < npi; ++p) {
                const Panel& pn = panels[p];
                if (pn.map == PanelMap::linear && pn.contains_x(xd)) {
                    Panel a = pn, b = pn;
                    a.t1 = xd;
                    b.t0 = xd;
                    rin.evaluate_panel(a, static_cast<int>(p), extra[o]);
                    rin.evaluate_panel(b, static_cast<int>(p), extra[o]);
                    replace[o] = static_cast<int>(p);
                    break;
                }
            }
        }
        pair_sums(l, n_i, n_o, rin.nodes(), npi, xo, go, dgo, &replace, &extra, cfg.parallel, ps);

        std::vector<char> flag(npi, 0);
        bool ok = true;
        double worst = 0.0;
        for (std::size_t o = 0; o < xo.size(); ++o) {
            const double s = ps.s[o];
            if (!(s > 0.0)) continue;
            const double* row = ps.in_err.data() + o * npi;
            double err = 0.0;
            for (std::size_t p = 0; p < npi; ++p) err += row[p];
            worst = std::max(worst, err / s);
            if (err <= cfg.quad_rel_tol * s) continue;
            ok = false;
            const double cut = cfg.quad_rel_tol * s / static_cast<double>(npi);
            for (std::size_t p = 0; p < npi; ++p)
                if (row[p] > cut) flag[p] = 1;
        }
        passes = std::max(passes, pass);
        if (ok) return ps.s;
        if (pass >= cfg.max_refinements)
            throw NumericalError("spectrum: quadrature did not converge at l = " + std::to_string(l) +
                                 " (worst relative error " + std::to_string(worst) + ")");
        std::vector<int> ids;
        for (std::size_t p = 0; p < npi; ++p)
            if (flag[p]) ids.push_back(static_cast<int>(p));
        rin.split(ids);
    }
}

double prefactor(const MediumTransition& gas, int l) {
    const double d = gas.n_in() - gas.n_out();
    return kPolarizationFactor * 0.25 * d * d * (2.0 * l + 1.0);
}

bool keep_going(int l, double contribution, double running, const BubbleGeometry& g,
                const FiniteSpectrumConfig& cfg) {
    if (cfg.l_max) return l < *cfg.l_max;
    if (l >= l_ceiling(g) && !(contribution >= cfg.l_tail_tol * running)) return false;
    if (l >= l_hard_cap(g))
        throw NumericalError("angular momentum sum did not settle by l = " + std::to_string(l));
    return true;
}

} // namespace

double finite_kernel_dimensionless(int l, double x_in, double x_out, double n_gas_in, double n_gas_out,
                                   double n_liquid) {
    if (l < 1) throw DomainError("finite_kernel: l must be >= 1");
    const auto pi = match_parts(l, x_in, n_gas_in, n_liquid);
    const auto po = match_parts(l, x_out, n_gas_out, n_liquid);
    const auto vi = normalized_interior(pi);
    const auto vo = normalized_interior(po);
    return pair_value(l + 0.5, n_gas_out, x_out, vo.g, vo.dg, n_gas_in, x_in, vi.g, vi.dg);
}

double finite_kernel(int l, double omega_in, double omega_out, double n_gas_in, double n_gas_out, double n_liquid,
                     double radius) {
    if (!(omega_in > 0.0) || !(omega_out > 0.0) || !(radius > 0.0))
        throw DomainError("finite_kernel: frequencies and radius must be > 0");
    const double t = radius / units::speed_of_light;
    return t * t * finite_kernel_dimensionless(l, omega_in * t, omega_out * t, n_gas_in, n_gas_out, n_liquid);
}

SpectralDensity spectrum_finite(const MediumTransition& gas, const BubbleGeometry& g, const FiniteSpectrumConfig& cfg,
                                FiniteDiagnostics* diag) {
    check_inputs(gas, g, cfg);
    const double c = units::speed_of_light;
    const Ranges rg = ranges_for(gas, g, cfg.output_window);
    SpectralDensity out;
    out.grid = open_uniform_grid(cfg.output_window * c * g.k_gas_cutoff / gas.n_out(), cfg.grid_points);
    std::vector<double> xo(out.grid.size()), xs(out.grid.size());
    for (std::size_t i = 0; i < xo.size(); ++i) {
        xo[i] = out.grid[i] * g.radius / c;
        xs[i] = gas.n_out() * xo[i];
    }
    std::vector<double> dndx(xo.size(), 0.0);
    FiniteDiagnostics d;
    if (gas.n_in() != gas.n_out()) {
        double running = 0.0;
        for (int l = 1;; ++l) {
            int passes = 0;
            const auto s = spectrum_for_l(l, gas, g.n_liquid, rg, xo, cfg, passes);
            d.refinement_passes = std::max(d.refinement_passes, passes);
            const double pf = prefactor(gas, l);
            double contribution = 0.0;
            for (std::size_t i = 0; i < xo.size(); ++i) {
                dndx[i] += pf * s[i];
                contribution += pf * s[i];
            }
            running += contribution;
            d.per_l.push_back(contribution);
            d.l_last = l;
            d.last_l_fraction = running > 0.0 ? contribution / running : 0.0;
            if (!keep_going(l, contribution, running, g, cfg)) break;
        }
    }
    out.values.resize(xo.size());
    for (std::size_t i = 0; i < xo.size(); ++i) out.values[i] = dndx[i] * g.radius / c;
    out.dimensionless_x = std::move(xs);
    out.check();
    if (diag) *diag = d;
    return out;
}

EmissionSummary totals_finite(const MediumTransition& gas, const BubbleGeometry& g, const FiniteSpectrumConfig& cfg,
                              FiniteDiagnostics* diag) {
    check_inputs(gas, g, cfg);
    const Ranges rg = ranges_for(gas, g, cfg.output_window);
    NeumaierSum n_sum, e_sum;
    FiniteDiagnostics d;
    double err = 0.0;
    if (gas.n_in() != gas.n_out()) {
        for (int l = 1;; ++l) {
            const auto t = totals_for_l(l, gas, g.n_liquid, rg, cfg);
            const double pf = prefactor(gas, l);
            n_sum.add(pf * t.n);
            e_sum.add(pf * t.e);
            err += pf * t.err;
            d.per_l.push_back(pf * t.n);
            d.refinement_passes = std::max(d.refinement_passes, t.passes);
            d.l_last = l;
            const double running = n_sum.value();
            d.last_l_fraction = running > 0.0 ? pf * t.n / running : 0.0;
            if (!keep_going(l, pf * t.n, running, g, cfg)) break;
        }
    }
    const double n = n_sum.value();
    d.estimated_rel_error = n > 0.0 ? err / n : 0.0;
    if (diag) *diag = d;
    const double energy = units::hbar * units::speed_of_light / g.radius * e_sum.value();
    return make_summary(n, energy, units::speed_of_light * g.k_gas_cutoff / gas.n_out());
}

EmissionSummary totals_finite_direct(const MediumTransition& gas, const BubbleGeometry& g,
                                     const FiniteSpectrumConfig& cfg) {
    check_inputs(gas, g, cfg);
    const Ranges rg = ranges_for(gas, g, cfg.output_window);
    NeumaierSum n_sum, e_sum;
    const double n_i = gas.n_in(), n_o = gas.n_out(), n_liq = g.n_liquid;
    if (gas.n_in() != gas.n_out()) {
        for (int l = 1;; ++l) {
            ModeRule rin(l, n_i, n_liq, rg.in_lo, rg.in_hi, cfg.rule, false);
            ModeRule rout(l, n_o, n_liq, rg.out_lo, rg.out_hi, cfg.rule, false);
            const auto& I = rin.nodes();
            const auto& O = rout.nodes();
            NeumaierSum nl, el;
            for (std::size_t o = 0; o < O.size(); ++o) {
                double s = 0.0;
                for (std::size_t i = 0; i < I.size(); ++i) {
                    double v;
                    if (I.panel[i] >= 0 && O.panel[o] >= 0)
                        v = finite_kernel_dimensionless(l, I.x[i], O.x[o], n_i, n_o, n_liq);
                    else
                        v = pair_value(l + 0.5, n_o, O.x[o], O.g[o], O.dg[o], n_i, I.x[i], I.g[i], I.dg[i]);
                    s += I.wk[i] * v;
                }
                nl.add(O.wk[o] * s);
                el.add(O.wk[o] * O.x[o] * s);
            }
            const double pf = prefactor(gas, l);
            n_sum.add(pf * nl.value());
            e_sum.add(pf * el.value());
            if (!keep_going(l, pf * nl.value(), n_sum.value(), g, cfg)) break;
        }
    }
    const double energy = units::hbar * units::speed_of_light / g.radius * e_sum.value();
    return make_summary(n_sum.value(), energy, units::speed_of_light * g.k_gas_cutoff / gas.n_out());
}

} // namespace sonoqed
