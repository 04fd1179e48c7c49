#pragma once

#include "qfpt/fptcore.hpp"
#include "qfpt/lattice.hpp"
#include "qfpt/model.hpp"
#include "qfpt/rational_laplace.hpp"
#include "qfpt/volterra.hpp"

namespace qfpt {

/// Exact pipeline: spectral trig sums -> rational Laplace algebra -> closed
/// forms, sampled on the grid, with validity report and mean.
FptSolution run_exact_pipeline(const TightBindingChain& chain, const Partition& partition,
                               const InitialState& start, const TimeGrid& grid,
                               double search_max = 50.0);

/// Numerical pipeline: the same trig-sum inputs solved directly on the grid.
FptSolution run_volterra_pipeline(const TightBindingChain& chain, const Partition& partition,
                                  const InitialState& start, const TimeGrid& grid,
                                  double search_max = 50.0);

FptSolution run_classical_pipeline(double rate, const TimeGrid& grid);

FptSolution run_lattice_pipeline(LatticeMethod method, const TimeGrid& grid,
                                 int series_order = 12, int inversion_nodes = 32);

} // namespace qfpt
