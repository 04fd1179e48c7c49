#include "qfpt/model.hpp"

#include <cmath>
#include <string>

namespace qfpt {

TightBindingChain TightBindingChain::uniform(int n_sites) {
    TightBindingChain chain;
    chain.n_sites = n_sites;
    chain.validate();
    return chain;
}

TightBindingChain TightBindingChain::infinite() {
    TightBindingChain chain;
    chain.n_sites = kInfinite;
    return chain;
}

double TightBindingChain::energy(int site) const {
    if (site_energies.empty()) return 0.0;
    return site_energies[static_cast<std::size_t>(site - 1)];
}

double TightBindingChain::coupling(int bond) const {
    if (couplings.empty()) return 1.0;
    return couplings[static_cast<std::size_t>(bond - 1)];
}

void TightBindingChain::validate_structure() const {
    if (is_infinite()) {
        require(site_energies.empty() && couplings.empty(), Err::Precondition,
                "the infinite lattice is uniform; per-site parameters are not supported");
        return;
    }
    require(n_sites >= 1, Err::Precondition, "n_sites must be positive");
    require(site_energies.empty() ||
                site_energies.size() == static_cast<std::size_t>(n_sites),
            Err::Precondition, "site_energies length must equal n_sites");
    require(couplings.empty() ||
                couplings.size() == static_cast<std::size_t>(n_sites - 1),
            Err::Precondition, "couplings length must equal n_sites - 1");
}

void TightBindingChain::validate() const {
    validate_structure();
    for (std::size_t i = 0; i < couplings.size(); ++i) {
        require(couplings[i] != 0.0, Err::Precondition,
                "coupling " + std::to_string(i + 1) + " is zero; the chain is disconnected");
    }
}

Eigen::MatrixXd build_hamiltonian(const TightBindingChain& chain) {
    require(!chain.is_infinite(), Err::UnsupportedFiniteOp,
            "cannot build a dense Hamiltonian for the infinite lattice");
    chain.validate_structure();
    const int n = chain.n_sites;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) h(i, i) = chain.energy(i + 1);
    for (int i = 0; i + 1 < n; ++i) {
        h(i, i + 1) = -chain.coupling(i + 1);
        h(i + 1, i) = -chain.coupling(i + 1);
    }
    return h;
}

SpectralDecomposition spectral_decompose(const Eigen::MatrixXd& hamiltonian) {
    require(hamiltonian.rows() == hamiltonian.cols() && hamiltonian.rows() > 0,
            Err::Precondition, "matrix must be square and nonempty");
    require((hamiltonian - hamiltonian.transpose()).cwiseAbs().maxCoeff() == 0.0,
            Err::Precondition, "matrix must be exactly symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian);
    SpectralDecomposition decomp;
    decomp.eigenvalues = solver.eigenvalues();
    decomp.eigenvectors = solver.eigenvectors();

    // Deterministic sign: first component above threshold made positive.
    for (int j = 0; j < decomp.eigenvectors.cols(); ++j) {
        for (int i = 0; i < decomp.eigenvectors.rows(); ++i) {
            const double v = decomp.eigenvectors(i, j);
            if (std::abs(v) > 1e-12) {
                if (v < 0.0) decomp.eigenvectors.col(j) *= -1.0;
                break;
            }
        }
    }
    return decomp;
}

void validate_doorway(const TightBindingChain& chain, const Partition& partition) {
    require(!chain.is_infinite(), Err::UnsupportedFiniteOp,
            "doorway validation applies to finite chains");
    chain.validate_structure();
    const int b = partition.boundary;
    require(b >= 1 && b < chain.n_sites, Err::Precondition,
            "boundary must leave at least one site on each side");

    // Scan the full matrix instead of trusting the chain structure, so a
    // future graph-shaped input fails loudly.
    const Eigen::MatrixXd h = build_hamiltonian(chain);
    int crossings = 0;
    for (int i = 0; i < b; ++i) {
        for (int j = b; j < chain.n_sites; ++j) {
            if (h(i, j) != 0.0) ++crossings;
        }
    }
    if (crossings > 1) {
        fail(Err::MultiDoorway, "more than one coupling crosses the boundary; "
                                "the doorway construction does not apply");
    }
    if (crossings == 0) {
        fail(Err::Disconnected, "the coupling across the boundary is zero");
    }
}

const char* to_string(Err code) noexcept {
    switch (code) {
        case Err::Precondition: return "PRECONDITION";
        case Err::UnsupportedFiniteOp: return "UNSUPPORTED_FINITE_OP";
        case Err::MultiDoorway: return "MULTI_DOORWAY";
        case Err::Disconnected: return "DISCONNECTED";
        case Err::Degenerate: return "DEGENERATE";
        case Err::RepeatedPole: return "REPEATED_POLE";
        case Err::UnstablePole: return "UNSTABLE_POLE";
        case Err::GridTooCoarse: return "GRID_TOO_COARSE";
        case Err::CallableRange: return "CALLABLE_RANGE";
        case Err::Nonconvergent: return "NONCONVERGENT";
        case Err::Domain: return "DOMAIN";
        case Err::Undefined: return "UNDEFINED";
        case Err::InvalidConfig: return "INVALID_CONFIG";
    }
    return "UNKNOWN";
}

} // namespace qfpt
