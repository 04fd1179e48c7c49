#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qfpt/errors.hpp"
#include "qfpt/trigsum.hpp"

namespace qfpt {

/// Uniform time grid t_i = i*h, i = 0..N, with N*h = t_max.
struct TimeGrid {
    double t_max = 0.0;
    double step = 0.0;

    static TimeGrid from_step(double t_max, double step);

    std::int64_t node_count() const noexcept { return count_; } // N + 1
    double node(std::int64_t i) const noexcept { return static_cast<double>(i) * step; }
    std::vector<double> nodes() const;

private:
    std::int64_t count_ = 0;
};

/// Inputs of the renewal equation: the unrestricted survival probability
/// Pu(t) of omega and the doorway return kernel K(tau). Derivatives may be
/// supplied analytically; when absent they are formed by second-order
/// differences with step h/10.
struct VolterraProblem {
    std::function<double(double)> survival;
    std::function<double(double)> kernel;
    std::function<double(double)> survival_deriv; // optional
    std::function<double(double)> kernel_deriv;   // optional

    static VolterraProblem from_trigsums(const TrigSum& survival, const TrigSum& kernel);
    static VolterraProblem from_callables(std::function<double(double)> survival,
                                          std::function<double(double)> kernel);
};

struct VolterraSolution {
    TimeGrid grid;
    std::vector<double> restricted;    // P_r at the nodes, P_r(0) = 1
    std::vector<double> first_passage; // P_fp at the nodes
    double residual_max = 0.0;         // a posteriori residual of the first-kind equation
};

/// Direct numerical solution of the renewal equation on the grid.
///
/// Differentiating Pu(t) = Pr(t) + int_0^t K(t-t') Pfp(t') dt' and using
/// K(0) = 0 gives the second-kind equation
///   -Pu'(t) = Pfp(t) - int_0^t K'(t-t') Pfp(t') dt'
/// which is discretized by trapezoidal product integration (order 2). P_r
/// follows from the cumulative trapezoid of -P_fp starting at 1, and the
/// original first-kind equation is re-checked on every node; a residual
/// above 10*h^2 raises Err::GridTooCoarse.
///
/// The convolution sums use fixed-chunk accumulation, so results are
/// identical for the parallel and serial settings and for any thread count.
VolterraSolution solve_volterra(const VolterraProblem& problem, const TimeGrid& grid,
                                bool parallel = true);

/// Plain nested-loop serial implementation, kept as the reference the
/// production kernel is tested and benchmarked against.
VolterraSolution solve_volterra_reference(const VolterraProblem& problem, const TimeGrid& grid);

/// Classical two-site hopping baseline at rate p: master-equation survival
/// probabilities fed through the same solver. Expected P_r = e^{-pt},
/// P_fp = p e^{-pt}.
VolterraSolution classical_two_site(double rate, const TimeGrid& grid);

} // namespace qfpt
