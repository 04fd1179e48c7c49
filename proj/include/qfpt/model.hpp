#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qfpt/errors.hpp"

namespace qfpt {

/// Nearest-neighbor tight-binding chain (hbar = 1).
///
/// Finite chains index their sites 1..n_sites. The infinite lattice is the
/// uniform chain (all site energies 0, all couplings 1) on the integers with
/// omega = {..., -1, 0} and omega_bar = {1, 2, ...}; it carries no parameter
/// lists and only the lattice routines can evolve it.
struct TightBindingChain {
    static constexpr int kInfinite = -1;

    int n_sites = 2;
    std::vector<double> site_energies; // eps_n, size n_sites; empty means all 0
    std::vector<double> couplings;     // gamma_n between sites n and n+1, size n_sites-1; empty means all 1

    static TightBindingChain uniform(int n_sites);
    static TightBindingChain infinite();

    bool is_infinite() const noexcept { return n_sites == kInfinite; }

    double energy(int site) const;   // 1-based
    double coupling(int bond) const; // 1-based bond index, between sites bond and bond+1

    /// Size consistency only; a chain with a zero coupling is representable
    /// so that validate_doorway can diagnose it as DISCONNECTED.
    void validate_structure() const;

    /// Full invariant: structure plus all couplings nonzero.
    void validate() const;
};

/// Split of a finite chain into omega = {1..boundary} and its complement.
/// The doorway pair is (boundary, boundary+1).
struct Partition {
    int boundary = 1;

    int omega_last() const noexcept { return boundary; }
    int omega_bar_first() const noexcept { return boundary + 1; }
};

struct InitialState {
    int site = 1; // must lie inside omega
};

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // columns, orthonormal, sign-fixed
};

/// Dense real symmetric tridiagonal Hamiltonian: H[n][n] = eps_n,
/// H[n][n+1] = H[n+1][n] = -gamma_n. Throws Err::UnsupportedFiniteOp for the
/// infinite lattice.
Eigen::MatrixXd build_hamiltonian(const TightBindingChain& chain);

/// Eigenvalues ascending; each eigenvector's first component of magnitude
/// above 1e-12 is made positive so the decomposition is deterministic.
SpectralDecomposition spectral_decompose(const Eigen::MatrixXd& hamiltonian);

/// Asserts (rather than assumes) the doorway condition: exactly one nonzero
/// Hamiltonian element couples omega to omega_bar. Throws Err::MultiDoorway
/// or Err::Disconnected, Err::Precondition for an out-of-range boundary.
void validate_doorway(const TightBindingChain& chain, const Partition& partition);

} // namespace qfpt
