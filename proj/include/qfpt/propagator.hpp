#pragma once

#include <complex>

#include "qfpt/model.hpp"
#include "qfpt/trigsum.hpp"

namespace qfpt {

/// <to_site| exp(-i H t) |from_site>, sites 1-based.
std::complex<double> evolve_amplitude(const SpectralDecomposition& decomp,
                                      int from_site, int to_site, double t);

/// Occupation probability of the site range [first_site, last_site] at time t
/// for a particle started at start_site, expanded exactly into a cosine sum
/// whose frequencies are the distinct eigenvalue differences.
TrigSum occupation_trigsum(const SpectralDecomposition& decomp,
                           int first_site, int last_site, int start_site);

/// Unrestricted survival probability of omega for a start inside omega.
TrigSum survival_trigsum(const TightBindingChain& chain, const Partition& partition,
                         const InitialState& start);

/// Return kernel K(tau): occupation of omega a time tau after the particle
/// was placed at the omega_bar-side doorway site. K(0) = 0.
TrigSum return_kernel_trigsum(const TightBindingChain& chain, const Partition& partition);

} // namespace qfpt
