#include "qfpt/volterra.hpp"

#include <cmath>
#include <string>

#include "qfpt/parallel.hpp"

namespace qfpt {

TimeGrid TimeGrid::from_step(double t_max, double step) {
    require(t_max > 0.0 && step > 0.0, Err::Precondition, "t_max and step must be positive");
    TimeGrid grid;
    grid.t_max = t_max;
    grid.step = step;
    const double n_real = t_max / step;
    const std::int64_t n = static_cast<std::int64_t>(std::llround(n_real));
    require(n >= 1 && std::abs(static_cast<double>(n) * step - t_max) <= 1e-12 * std::max(1.0, t_max),
            Err::Precondition, "t_max must be an integer multiple of step");
    grid.count_ = n + 1;
    return grid;
}

std::vector<double> TimeGrid::nodes() const {
    std::vector<double> t(static_cast<std::size_t>(node_count()));
    for (std::int64_t i = 0; i < node_count(); ++i) t[static_cast<std::size_t>(i)] = node(i);
    return t;
}

VolterraProblem VolterraProblem::from_trigsums(const TrigSum& survival, const TrigSum& kernel) {
    VolterraProblem p;
    p.survival = [survival](double t) { return survival(t); };
    p.kernel = [kernel](double t) { return kernel(t); };
    const TrigSum ds = survival.derivative();
    const TrigSum dk = kernel.derivative();
    p.survival_deriv = [ds](double t) { return ds(t); };
    p.kernel_deriv = [dk](double t) { return dk(t); };
    return p;
}

VolterraProblem VolterraProblem::from_callables(std::function<double(double)> survival,
                                                std::function<double(double)> kernel) {
    VolterraProblem p;
    p.survival = std::move(survival);
    p.kernel = std::move(kernel);
    return p;
}

namespace {

// Second-order difference; one-sided at t=0 where the functions are only
// defined for t >= 0.
double numeric_deriv(const std::function<double(double)>& f, double t, double d) {
    if (t >= d) return (f(t + d) - f(t - d)) / (2.0 * d);
    return (-3.0 * f(t) + 4.0 * f(t + d) - f(t + 2.0 * d)) / (2.0 * d);
}

void check_range(double value, double t, const char* name) {
    if (value < -1e-6 || value > 1.0 + 1e-6) {
        fail(Err::CallableRange, std::string(name) + " left [0,1] at t=" + std::to_string(t) +
                                     " (value " + std::to_string(value) + ")");
    }
}

VolterraSolution solve_impl(const VolterraProblem& problem, const TimeGrid& grid,
                            bool chunked, bool parallel) {
    require(static_cast<bool>(problem.survival) && static_cast<bool>(problem.kernel),
            Err::Precondition, "survival and kernel callables are required");
    const double h = grid.step;
    const std::int64_t nodes = grid.node_count();

    require(std::abs(problem.survival(0.0) - 1.0) <= 1e-9, Err::Precondition,
            "survival probability must start at 1");
    require(std::abs(problem.kernel(0.0)) <= 1e-9, Err::Precondition,
            "return kernel must vanish at tau = 0");

    auto survival_deriv = problem.survival_deriv;
    auto kernel_deriv = problem.kernel_deriv;
    const double fd_step = h / 10.0;
    if (!survival_deriv) {
        survival_deriv = [&problem, fd_step](double t) {
            return numeric_deriv(problem.survival, t, fd_step);
        };
    }
    if (!kernel_deriv) {
        kernel_deriv = [&problem, fd_step](double t) {
            return numeric_deriv(problem.kernel, t, fd_step);
        };
    }

    // Sampled inputs. g = -Pu', k = K'; Pu and K are kept for the residual.
    std::vector<double> g(static_cast<std::size_t>(nodes));
    std::vector<double> k(static_cast<std::size_t>(nodes));
    std::vector<double> pu(static_cast<std::size_t>(nodes));
    std::vector<double> kv(static_cast<std::size_t>(nodes));
    for (std::int64_t i = 0; i < nodes; ++i) {
        const double t = grid.node(i);
        const std::size_t n = static_cast<std::size_t>(i);
        g[n] = -survival_deriv(t);
        k[n] = kernel_deriv(t);
        pu[n] = problem.survival(t);
        kv[n] = problem.kernel(t);
        check_range(pu[n], t, "survival");
        check_range(kv[n], t, "kernel");
    }

    VolterraSolution sol;
    sol.grid = grid;
    auto& f = sol.first_passage;
    f.assign(static_cast<std::size_t>(nodes), 0.0);
    f[0] = g[0];

    const double diag = 1.0 - 0.5 * h * k[0];
    for (std::int64_t i = 1; i < nodes; ++i) {
        const std::size_t n = static_cast<std::size_t>(i);
        double conv;
        if (chunked) {
            conv = par::chunked_sum(
                i - 1, [&](std::int64_t j) { return k[n - 1 - static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(j) + 1]; },
                parallel);
        } else {
            conv = 0.0;
            for (std::int64_t j = 1; j < i; ++j) {
                conv += k[n - static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(j)];
            }
        }
        f[n] = (g[n] + h * (0.5 * k[n] * f[0] + conv)) / diag;
    }

    // P_r by cumulative trapezoid of -P_fp; the consistency
    // P_r + int_0^t P_fp = 1 then holds to rounding by construction.
    auto& pr = sol.restricted;
    pr.assign(static_cast<std::size_t>(nodes), 1.0);
    for (std::int64_t i = 1; i < nodes; ++i) {
        const std::size_t n = static_cast<std::size_t>(i);
        pr[n] = pr[n - 1] - 0.5 * h * (f[n - 1] + f[n]);
    }

    // A posteriori check of the original first-kind equation
    //   Pu(t_i) = Pr(t_i) + int_0^{t_i} K(t_i - t') Pfp(t') dt'.
    std::vector<double> residual(static_cast<std::size_t>(nodes), 0.0);
    auto residual_at = [&](std::int64_t i) {
        const std::size_t n = static_cast<std::size_t>(i);
        double acc = 0.5 * kv[n] * f[0] + 0.5 * kv[0] * f[n];
        for (std::int64_t j = 1; j < i; ++j) {
            acc += kv[n - static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(j)];
        }
        residual[n] = pu[n] - pr[n] - h * acc;
    };
    if (parallel) {
        par::for_each(nodes, residual_at);
    } else {
        par::for_each_serial(nodes, residual_at);
    }
    residual[0] = pu[0] - pr[0];
    for (double r : residual) sol.residual_max = std::max(sol.residual_max, std::abs(r));

    if (sol.residual_max > 10.0 * h * h) {
        fail(Err::GridTooCoarse, "first-kind residual " + std::to_string(sol.residual_max) +
                                     " exceeds 10*h^2 = " + std::to_string(10.0 * h * h));
    }
    return sol;
}

} // namespace

VolterraSolution solve_volterra(const VolterraProblem& problem, const TimeGrid& grid,
                                bool parallel) {
    return solve_impl(problem, grid, /*chunked=*/true, parallel);
}

VolterraSolution solve_volterra_reference(const VolterraProblem& problem, const TimeGrid& grid) {
    return solve_impl(problem, grid, /*chunked=*/false, /*parallel=*/false);
}

VolterraSolution classical_two_site(double rate, const TimeGrid& grid) {
    require(rate > 0.0, Err::Precondition, "hop rate must be positive");
    VolterraProblem p;
    p.survival = [rate](double t) { return 0.5 * (1.0 + std::exp(-2.0 * rate * t)); };
    p.kernel = [rate](double t) { return 0.5 * (1.0 - std::exp(-2.0 * rate * t)); };
    p.survival_deriv = [rate](double t) { return -rate * std::exp(-2.0 * rate * t); };
    p.kernel_deriv = [rate](double t) { return rate * std::exp(-2.0 * rate * t); };
    return solve_volterra(p, grid);
}

} // namespace qfpt
