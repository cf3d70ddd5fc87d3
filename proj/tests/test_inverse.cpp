#include <doctest.h>

#include "sonoqed/errors.hpp"
#include "sonoqed/homogeneous.hpp"
#include "sonoqed/inverse.hpp"

using namespace sonoqed;

TEST_CASE("two branches at n_out = 25 and 12") {
    const auto a = solve_n_in(25.0, 1e6, 1.3, 15.0);
    CHECK(a.n_in_low == doctest::Approx(8.85).epsilon(1e-3));
    CHECK(a.n_in_high == doctest::Approx(70.6).epsilon(1e-3));
    const auto b = solve_n_in(12.0, 1e6, 1.3, 15.0);
    CHECK(b.n_in_low == doctest::Approx(0.9545).epsilon(1e-3));
    CHECK(b.n_in_high == doctest::Approx(150.86).epsilon(1e-3));
    for (double n : {a.n_in_low, a.n_in_high})
        CHECK(back_substitution_residual(n, 25.0, 1e6, 1.3, 15.0) < 1e-12);
}

TEST_CASE("vieta: n_low n_high = n_out^2") {
    for (double n_out : {1.0, 3.3, 47.0, 100.0}) {
        const auto r = solve_n_in(n_out, 1e6, 1.3, 15.0);
        CHECK(r.n_in_low * r.n_in_high == doctest::Approx(n_out * n_out).epsilon(1e-12));
        CHECK(r.n_in_low <= n_out);
        CHECK(r.n_in_high >= n_out);
    }
}

TEST_CASE("zero target collapses both branches to n_out") {
    const auto r = solve_n_in(4.0, 0.0, 1.3, 15.0);
    CHECK(r.n_in_low == doctest::Approx(4.0));
    CHECK(r.n_in_high == doctest::Approx(4.0));
}

TEST_CASE("sweep is ordered and consistent") {
    const auto grid = linear_grid(1.0, 100.0, 200);
    CHECK(grid.size() == 200);
    CHECK(grid.front() == 1.0);
    CHECK(grid.back() == 100.0);
    const auto rows = sweep_figure1(1e6, 1.3, 15.0, grid);
    REQUIRE(rows.size() == grid.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].n_out == grid[i]);
        CHECK(rows[i].residual_low < 1e-8);
        CHECK(rows[i].residual_high < 1e-8);
    }
}

TEST_CASE("inverse validation") {
    CHECK_THROWS_AS(solve_n_in(-1.0, 1e6, 1.3, 15.0), ValidationError);
    CHECK_THROWS_AS(solve_n_in(2.0, -1.0, 1.3, 15.0), ValidationError);
    CHECK_THROWS_AS(linear_grid(2.0, 1.0, 10), ValidationError);
    CHECK_THROWS_AS(sweep_figure1(1e6, 1.3, 15.0, {2.0, 1.0}), ValidationError);
}
