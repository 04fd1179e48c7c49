#include "qfpt/pipelines.hpp"

#include <cmath>
#include <string>

#include "qfpt/propagator.hpp"

namespace qfpt {

namespace {

std::string chain_descriptor(const TightBindingChain& chain, const Partition& partition,
                             const InitialState& start) {
    return "chain n=" + std::to_string(chain.n_sites) + " b=" + std::to_string(partition.boundary) +
           " start=" + std::to_string(start.site);
}

} // namespace

FptSolution run_exact_pipeline(const TightBindingChain& chain, const Partition& partition,
                               const InitialState& start, const TimeGrid& grid,
                               double search_max) {
    const ExactSolution exact = solve_exact(chain, partition, start);
    FptSolution sol;
    sol.system = chain_descriptor(chain, partition, start);
    sol.times = grid.nodes();
    sol.restricted = eval_grid(exact.restricted, sol.times);
    sol.first_passage = eval_grid(exact.first_passage, sol.times);
    sol.restricted_form = exact.restricted;
    sol.first_passage_form = exact.first_passage;
    const auto T = find_time_domain(exact.restricted, search_max);
    sol.report = check_conditions(exact.restricted, exact.first_passage, T);
    if (T.has_value()) sol.mean = mean_fpt(exact.first_passage, *T);
    return sol;
}

FptSolution run_volterra_pipeline(const TightBindingChain& chain, const Partition& partition,
                                  const InitialState& start, const TimeGrid& grid,
                                  double search_max) {
    const TrigSum survival = survival_trigsum(chain, partition, start);
    const TrigSum kernel = return_kernel_trigsum(chain, partition);
    const VolterraSolution vs = solve_volterra(VolterraProblem::from_trigsums(survival, kernel), grid);

    FptSolution sol;
    sol.system = chain_descriptor(chain, partition, start);
    sol.times = grid.nodes();
    sol.restricted = vs.restricted;
    sol.first_passage = vs.first_passage;
    auto T = find_time_domain(sol.times, sol.restricted);
    if (T.has_value() && *T > search_max) T.reset();
    sol.report = check_conditions(sol.times, sol.restricted, sol.first_passage, T);
    if (T.has_value()) {
        sol.mean = mean_fpt(sol.times, sol.first_passage, T);
    }
    return sol;
}

FptSolution run_classical_pipeline(double rate, const TimeGrid& grid) {
    const VolterraSolution vs = classical_two_site(rate, grid);
    FptSolution sol;
    sol.system = "classical2 rate=" + std::to_string(rate);
    sol.times = grid.nodes();
    sol.restricted = vs.restricted;
    sol.first_passage = vs.first_passage;
    const auto T = find_time_domain(sol.times, sol.restricted);
    sol.report = check_conditions(sol.times, sol.restricted, sol.first_passage, T);
    if (T.has_value()) {
        sol.mean = mean_fpt(sol.times, sol.first_passage, T);
    } else {
        // Exponential tails thin out fast; report the mean when the grid
        // already holds essentially all of the mass.
        try {
            sol.mean = mean_fpt(sol.times, sol.first_passage, std::nullopt);
        } catch (const SolverError&) {
            sol.mean.reset();
        }
    }
    return sol;
}

FptSolution run_lattice_pipeline(LatticeMethod method, const TimeGrid& grid, int series_order,
                                 int inversion_nodes) {
    const LatticeSolution ls = solve_lattice(grid, method, series_order, inversion_nodes);
    FptSolution sol;
    switch (method) {
        case LatticeMethod::Series: sol.system = "lattice series"; break;
        case LatticeMethod::NumericInversion: sol.system = "lattice inversion"; break;
        case LatticeMethod::Volterra: sol.system = "lattice volterra"; break;
    }
    sol.times = grid.nodes();
    sol.restricted = ls.restricted;
    sol.first_passage = ls.first_passage;
    const auto T = find_time_domain(sol.times, sol.restricted);
    sol.report = check_conditions(sol.times, sol.restricted, sol.first_passage, T);
    if (T.has_value()) sol.mean = mean_fpt(sol.times, sol.first_passage, T);
    return sol;
}

} // namespace qfpt
