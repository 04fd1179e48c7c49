#include "qfpt/propagator.hpp"

#include <cmath>

namespace qfpt {

std::complex<double> evolve_amplitude(const SpectralDecomposition& decomp,
                                      int from_site, int to_site, double t) {
    const int n = static_cast<int>(decomp.eigenvalues.size());
    require(from_site >= 1 && from_site <= n && to_site >= 1 && to_site <= n,
            Err::Precondition, "site index out of range");
    std::complex<double> amp = 0.0;
    for (int j = 0; j < n; ++j) {
        const double w = decomp.eigenvectors(to_site - 1, j) * decomp.eigenvectors(from_site - 1, j);
        const double phase = -decomp.eigenvalues(j) * t;
        amp += w * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return amp;
}

TrigSum occupation_trigsum(const SpectralDecomposition& decomp,
                           int first_site, int last_site, int start_site) {
    const int n = static_cast<int>(decomp.eigenvalues.size());
    require(first_site >= 1 && last_site <= n && first_site <= last_site,
            Err::Precondition, "site range out of bounds");
    require(start_site >= 1 && start_site <= n, Err::Precondition, "start site out of range");

    // |<m|e^{-iHt}|nu>|^2 = sum_{j,k} w_j w_k cos((E_j - E_k) t) with real
    // weights w_j = U[m][j] U[nu][j]; collecting over m gives a cosine sum on
    // the eigenvalue differences.
    TrigSum sum;
    for (int m = first_site - 1; m < last_site; ++m) {
        for (int j = 0; j < n; ++j) {
            const double wj = decomp.eigenvectors(m, j) * decomp.eigenvectors(start_site - 1, j);
            sum.constant += wj * wj;
            for (int k = j + 1; k < n; ++k) {
                const double wk = decomp.eigenvectors(m, k) * decomp.eigenvectors(start_site - 1, k);
                const double nu = std::abs(decomp.eigenvalues(j) - decomp.eigenvalues(k));
                add_cosine(sum, 2.0 * wj * wk, nu);
            }
        }
    }
    sum.canonicalize();
    return sum;
}

TrigSum survival_trigsum(const TightBindingChain& chain, const Partition& partition,
                         const InitialState& start) {
    require(!chain.is_infinite(), Err::UnsupportedFiniteOp,
            "finite-chain survival; use the lattice routines for the infinite lattice");
    chain.validate();
    validate_doorway(chain, partition);
    require(start.site >= 1 && start.site <= partition.omega_last(), Err::Precondition,
            "start site must lie inside omega");
    const SpectralDecomposition decomp = spectral_decompose(build_hamiltonian(chain));
    return occupation_trigsum(decomp, 1, partition.omega_last(), start.site);
}

TrigSum return_kernel_trigsum(const TightBindingChain& chain, const Partition& partition) {
    require(!chain.is_infinite(), Err::UnsupportedFiniteOp,
            "finite-chain kernel; use the lattice routines for the infinite lattice");
    chain.validate();
    validate_doorway(chain, partition);
    const SpectralDecomposition decomp = spectral_decompose(build_hamiltonian(chain));
    return occupation_trigsum(decomp, 1, partition.omega_last(), partition.omega_bar_first());
}

} // namespace qfpt
