// Timed comparison of the OpenMP kernels against their serial references:
// trig-sum grid evaluation, the Volterra convolution solve, and Laplace
// inversion over a grid.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "qfpt/lattice.hpp"
#include "qfpt/model.hpp"
#include "qfpt/parallel.hpp"
#include "qfpt/propagator.hpp"
#include "qfpt/trigsum.hpp"
#include "qfpt/volterra.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

void print_row(const char* name, double serial_s, double parallel_s, double diff) {
    std::printf("%-28s %10.3f ms %10.3f ms %8.2fx   max|diff| %.3g\n", name, serial_s * 1e3,
                parallel_s * 1e3, serial_s / parallel_s, diff);
}

} // namespace

int main() {
    using namespace qfpt;
    std::printf("threads: %d (openmp %s)\n\n", par::max_threads(),
                par::enabled() ? "on" : "off");
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    { // trig-sum grid evaluation on a 16-site chain survival probability
        const TightBindingChain chain = TightBindingChain::uniform(16);
        const TrigSum sum = survival_trigsum(chain, Partition{8}, InitialState{1});
        const std::size_t n = 2'000'000;
        std::vector<double> t(n), a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = 1e-5 * static_cast<double>(i);

        auto t0 = Clock::now();
        eval_grid_serial(sum, t, a);
        const double serial_s = seconds_since(t0);
        t0 = Clock::now();
        eval_grid(sum, t, b);
        const double parallel_s = seconds_since(t0);
        print_row("trigsum eval_grid", serial_s, parallel_s, max_abs_diff(a, b));
    }

    { // Volterra convolution solve on the lattice problem
        const TimeGrid grid = TimeGrid::from_step(16.0, 1e-3);
        const VolterraProblem problem = lattice_volterra_problem();

        auto t0 = Clock::now();
        const VolterraSolution ref = solve_volterra_reference(problem, grid);
        const double serial_s = seconds_since(t0);
        t0 = Clock::now();
        const VolterraSolution par_sol = solve_volterra(problem, grid, true);
        const double parallel_s = seconds_since(t0);
        print_row("volterra solve", serial_s, parallel_s,
                  max_abs_diff(ref.first_passage, par_sol.first_passage));
    }

    { // Laplace inversion of the lattice first-passage transform
        auto pfp = [](std::complex<double> s) { return lattice_laplace_pfp(s); };
        const std::size_t n = 256;
        std::vector<double> t(n), a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = 0.05 + 3.0 * static_cast<double>(i) / n;

        auto t0 = Clock::now();
        invert_grid_serial(pfp, t, a, InversionMethod::FourierEuler, 32);
        const double serial_s = seconds_since(t0);
        t0 = Clock::now();
        invert_grid(pfp, t, b, InversionMethod::FourierEuler, 32);
        const double parallel_s = seconds_since(t0);
        print_row("laplace invert_grid", serial_s, parallel_s, max_abs_diff(a, b));
    }

    return 0;
}
