#include <doctest.h>

#include <cmath>

#include "qfpt/propagator.hpp"
#include "qfpt/rational_laplace.hpp"
#include "qfpt/volterra.hpp"

using namespace qfpt;

namespace {

VolterraProblem two_site_problem() {
    // Pu = cos^2 t, K = sin^2 tau, analytic derivatives.
    VolterraProblem p;
    p.survival = [](double t) { return std::cos(t) * std::cos(t); };
    p.kernel = [](double t) { return std::sin(t) * std::sin(t); };
    p.survival_deriv = [](double t) { return -std::sin(2.0 * t); };
    p.kernel_deriv = [](double t) { return std::sin(2.0 * t); };
    return p;
}

double max_err_vs_two_site(const VolterraSolution& sol) {
    const double s2 = std::sqrt(2.0);
    double err = 0.0;
    for (std::int64_t i = 0; i < sol.grid.node_count(); ++i) {
        const double t = sol.grid.node(i);
        err = std::max(err, std::abs(sol.first_passage[static_cast<std::size_t>(i)] -
                                     s2 * std::sin(s2 * t)));
    }
    return err;
}

} // namespace

TEST_CASE("time grid construction") {
    const TimeGrid grid = TimeGrid::from_step(1.0, 1e-3);
    CHECK(grid.node_count() == 1001);
    CHECK(grid.node(1000) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(TimeGrid::from_step(1.0, 0.0003), SolverError); // not a divisor
    CHECK_THROWS_AS(TimeGrid::from_step(-1.0, 0.1), SolverError);
}

TEST_CASE("2-site quantum problem matches the closed form") {
    const auto sol = solve_volterra(two_site_problem(), TimeGrid::from_step(1.0, 1e-3));
    CHECK(max_err_vs_two_site(sol) < 1e-5);
}

TEST_CASE("convergence is second order") {
    const auto coarse = solve_volterra(two_site_problem(), TimeGrid::from_step(2.0, 1e-3));
    const auto fine = solve_volterra(two_site_problem(), TimeGrid::from_step(2.0, 5e-4));
    const double ratio = max_err_vs_two_site(coarse) / max_err_vs_two_site(fine);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("survival identically 1 gives zero density") {
    VolterraProblem p;
    p.survival = [](double) { return 1.0; };
    p.kernel = [](double t) { return 0.5 * (1.0 - std::exp(-t)); };
    const auto sol = solve_volterra(p, TimeGrid::from_step(2.0, 1e-3));
    for (std::int64_t i = 0; i < sol.grid.node_count(); ++i) {
        CHECK(std::abs(sol.first_passage[static_cast<std::size_t>(i)]) < 1e-12);
        CHECK(std::abs(sol.restricted[static_cast<std::size_t>(i)] - 1.0) < 1e-12);
    }
}

TEST_CASE("classical two-site hopping") {
    SUBCASE("rate 1 reproduces the exponential density") {
        const auto sol = classical_two_site(1.0, TimeGrid::from_step(10.0, 1e-3));
        double err = 0.0;
        for (std::int64_t i = 0; i < sol.grid.node_count(); ++i) {
            const double t = sol.grid.node(i);
            err = std::max(err, std::abs(sol.first_passage[static_cast<std::size_t>(i)] -
                                         std::exp(-t)));
        }
        CHECK(err < 1e-5);
        CHECK(sol.first_passage[0] == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("rate 2 restricted probability at t = ln2/2") {
        const double t_half = 0.5 * std::log(2.0);
        // pick a grid whose nodes land near t_half
        const auto sol = classical_two_site(2.0, TimeGrid::from_step(1.0, 1e-4));
        const auto i = static_cast<std::size_t>(std::llround(t_half / 1e-4));
        CHECK(sol.restricted[i] == doctest::Approx(0.5).epsilon(1e-4));
    }
    SUBCASE("density is normalized over a long window") {
        const auto sol = classical_two_site(1.0, TimeGrid::from_step(20.0, 1e-3));
        double mass = 0.0;
        for (std::int64_t i = 1; i < sol.grid.node_count(); ++i) {
            mass += 0.5 * sol.grid.step *
                    (sol.first_passage[static_cast<std::size_t>(i)] +
                     sol.first_passage[static_cast<std::size_t>(i - 1)]);
        }
        CHECK(std::abs(mass - 1.0) < 1e-6);
        for (double v : sol.first_passage) CHECK(v >= 0.0);
    }
    CHECK_THROWS_AS(classical_two_site(0.0, TimeGrid::from_step(1.0, 0.01)), SolverError);
}

TEST_CASE("restricted probability is the cumulative complement by construction") {
    const auto sol = solve_volterra(two_site_problem(), TimeGrid::from_step(1.0, 1e-3));
    double integral = 0.0;
    for (std::int64_t i = 1; i < sol.grid.node_count(); ++i) {
        integral += 0.5 * sol.grid.step *
                    (sol.first_passage[static_cast<std::size_t>(i)] +
                     sol.first_passage[static_cast<std::size_t>(i - 1)]);
        CHECK(std::abs(sol.restricted[static_cast<std::size_t>(i)] + integral - 1.0) < 1e-10);
    }
}

TEST_CASE("finite-difference derivative fallback agrees with analytic derivatives") {
    VolterraProblem fd;
    fd.survival = [](double t) { return std::cos(t) * std::cos(t); };
    fd.kernel = [](double t) { return std::sin(t) * std::sin(t); };
    const auto grid = TimeGrid::from_step(1.0, 1e-3);
    const auto analytic = solve_volterra(two_site_problem(), grid);
    const auto numeric = solve_volterra(fd, grid);
    double diff = 0.0;
    for (std::size_t i = 0; i < analytic.first_passage.size(); ++i) {
        diff = std::max(diff, std::abs(analytic.first_passage[i] - numeric.first_passage[i]));
    }
    CHECK(diff < 1e-6);
}

TEST_CASE("precondition and range failures") {
    VolterraProblem bad_start = two_site_problem();
    bad_start.survival = [](double t) { return 0.9 * std::cos(t) * std::cos(t); };
    CHECK_THROWS_WITH_AS(solve_volterra(bad_start, TimeGrid::from_step(1.0, 0.01)),
                         doctest::Contains("PRECONDITION"), SolverError);

    VolterraProblem out_of_range = two_site_problem();
    out_of_range.survival = [](double t) { return std::cos(t) * std::cos(t) * (1.0 + 0.01 * t); };
    CHECK_THROWS_WITH_AS(solve_volterra(out_of_range, TimeGrid::from_step(4.0, 0.01)),
                         doctest::Contains("CALLABLE_RANGE"), SolverError);
}

TEST_CASE("coarse grids on fast kernels are rejected") {
    // A stiff oscillation: frequencies ~12 with h = 0.25 leaves the trapezoid
    // rule far outside its asymptotic regime.
    VolterraProblem p;
    p.survival = [](double t) { return std::cos(6.0 * t) * std::cos(6.0 * t); };
    p.kernel = [](double t) { return std::sin(6.0 * t) * std::sin(6.0 * t); };
    p.survival_deriv = [](double t) { return -6.0 * std::sin(12.0 * t); };
    p.kernel_deriv = [](double t) { return 6.0 * std::sin(12.0 * t); };
    CHECK_THROWS_WITH_AS(solve_volterra(p, TimeGrid::from_step(4.0, 0.25)),
                         doctest::Contains("GRID_TOO_COARSE"), SolverError);
}

TEST_CASE("volterra agrees with the exact pipeline on the 3-site system") {
    const TightBindingChain chain = TightBindingChain::uniform(3);
    const Partition partition{2};
    const InitialState start{1};
    const auto grid = TimeGrid::from_step(2.0, 1e-3);

    const auto exact = solve_exact(chain, partition, start);
    const auto numeric = solve_volterra(
        VolterraProblem::from_trigsums(survival_trigsum(chain, partition, start),
                                       return_kernel_trigsum(chain, partition)),
        grid);
    double diff = 0.0;
    for (std::int64_t i = 0; i < grid.node_count(); ++i) {
        const double t = grid.node(i);
        diff = std::max(diff, std::abs(exact.first_passage(t) -
                                       numeric.first_passage[static_cast<std::size_t>(i)]));
        diff = std::max(diff, std::abs(exact.restricted(t) -
                                       numeric.restricted[static_cast<std::size_t>(i)]));
    }
    CHECK(diff < 1e-5);
}
