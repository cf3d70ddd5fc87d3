#include <doctest.h>

#include <cmath>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sonoqed/bubble.hpp"
#include "sonoqed/errors.hpp"
#include "sonoqed/homogeneous.hpp"
#include "sonoqed/modes.hpp"
#include "sonoqed/units.hpp"

using namespace sonoqed;

namespace {

// small bubble: K_obs R = 3 keeps the l sum and the node count tiny
const BubbleGeometry kSmall = build_geometry_from_kr(100e-9, 1.3, 3.0, 1.5);
const MediumTransition kGas(2.5, 1.5, 1e-15);

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("config validation") {
    FiniteSpectrumConfig c;
    CHECK_NOTHROW(c.validate());
    c.quad_rel_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.l_max = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.output_window = 0.5;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("kernel vanishes without a change of index and is symmetric in form") {
    const double k = finite_kernel_dimensionless(2, 1.0, 1.2, 1.5, 1.5, 1.3);
    CHECK(std::isfinite(k));
    CHECK(k >= 0.0);
    const auto s = totals_finite(MediumTransition(1.5, 1.5, 1e-15), kSmall, {});
    CHECK(s.photon_count == 0.0);
}

TEST_CASE("kernel is continuous through the diagonal") {
    // a = n_o x_o equals b = n_i x_i at x_i = n_o x_o / n_i
    const double xo = 1.7, no = 1.5, ni = 2.5;
    const double xd = no * xo / ni;
    const double at = finite_kernel_dimensionless(3, xd, xo, ni, no, 1.3);
    const double near = finite_kernel_dimensionless(3, xd * (1 + 1e-5), xo, ni, no, 1.3);
    CHECK(near == doctest::Approx(at).epsilon(1e-3));
}

TEST_CASE("SI kernel is the dimensionless one times (R/c)^2") {
    const double R = 200e-9, c = units::speed_of_light;
    const double xi = 0.8, xo = 1.4;
    const double si = finite_kernel(2, xi * c / R, xo * c / R, 2.0, 1.2, 1.3, R);
    CHECK(si == doctest::Approx(finite_kernel_dimensionless(2, xi, xo, 2.0, 1.2, 1.3) * (R / c) * (R / c)).epsilon(1e-13));
}

TEST_CASE("fast path agrees with the pairwise reference") {
    FiniteSpectrumConfig cfg;
    // same nodes on both paths: no refinement
    cfg.max_refinements = 0;
    cfg.quad_rel_tol = 0.5;
    cfg.l_max = 6;
    const auto ref = totals_finite_direct(kGas, kSmall, cfg);
    const auto fast = totals_finite(kGas, kSmall, cfg);
    CHECK(fast.photon_count == doctest::Approx(ref.photon_count).epsilon(1e-10));
    CHECK(fast.total_energy == doctest::Approx(ref.total_energy).epsilon(1e-10));
}

TEST_CASE("parallel and serial kernels give identical bits") {
#ifdef _OPENMP
    omp_set_num_threads(4);
#endif
    FiniteSpectrumConfig par, ser;
    ser.parallel = false;
    const auto a = totals_finite(kGas, kSmall, par), b = totals_finite(kGas, kSmall, ser);
    CHECK(same_bits(a.photon_count, b.photon_count));
    CHECK(same_bits(a.total_energy, b.total_energy));
    par.grid_points = ser.grid_points = 40;
    const auto sa = spectrum_finite(kGas, kSmall, par), sb = spectrum_finite(kGas, kSmall, ser);
    for (std::size_t i = 0; i < sa.values.size(); ++i) CHECK(same_bits(sa.values[i], sb.values[i]));
}

TEST_CASE("repeat runs are deterministic") {
    FiniteSpectrumConfig cfg;
    const auto a = totals_finite(kGas, kSmall, cfg), b = totals_finite(kGas, kSmall, cfg);
    CHECK(same_bits(a.photon_count, b.photon_count));
}

TEST_CASE("totals do not depend on the output grid, spectrum integrates to them") {
    FiniteSpectrumConfig cfg;
    const auto t1 = totals_finite(kGas, kSmall, cfg);
    cfg.grid_points = 50;
    const auto t2 = totals_finite(kGas, kSmall, cfg);
    CHECK(same_bits(t1.photon_count, t2.photon_count));
    cfg.grid_points = 2000;
    const auto s = spectrum_finite(kGas, kSmall, cfg);
    CHECK(s.trapezoid() == doctest::Approx(t1.photon_count).epsilon(2e-3));
}

TEST_CASE("converged tolerances") {
    FiniteSpectrumConfig cfg;
    FiniteDiagnostics d;
    const auto a = totals_finite(kGas, kSmall, cfg, &d);
    CHECK(d.estimated_rel_error < 1e-5);
    CHECK(d.l_last >= 3);
    CHECK(d.last_l_fraction < cfg.l_tail_tol);
    cfg.quad_rel_tol = 1e-9;
    cfg.l_tail_tol = 1e-7;
    const auto b = totals_finite(kGas, kSmall, cfg);
    CHECK(a.photon_count == doctest::Approx(b.photon_count).epsilon(1e-3));
}

TEST_CASE("finite volume tracks the closed form for a large bubble") {
    // K_obs R = 15 with weak contrast on both sides: few resonances
    const auto g = build_geometry_from_kr(500e-9, 1.3, 15.0, 1.2);
    const MediumTransition t(1.6, 1.2, 1e-15);
    const auto fin = totals_finite(t, g, {});
    const auto inf = totals_closed_form(t, g);
    CHECK(fin.photon_count / inf.photon_count > 0.8);
    CHECK(fin.photon_count / inf.photon_count < 1.2);
}
