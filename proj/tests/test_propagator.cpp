#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qfpt/propagator.hpp"

using namespace qfpt;

namespace {

// Test-only matrix exponential: scaling and squaring with a Taylor series,
// independent of the spectral route it cross-checks.
using CMatrix = std::vector<std::vector<std::complex<double>>>;

CMatrix cidentity(int n) {
    CMatrix m(n, std::vector<std::complex<double>>(n, 0.0));
    for (int i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

CMatrix cmul(const CMatrix& a, const CMatrix& b) {
    const int n = static_cast<int>(a.size());
    CMatrix c(n, std::vector<std::complex<double>>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    }
    return c;
}

CMatrix taylor_expm(const CMatrix& a) {
    const int n = static_cast<int>(a.size());
    CMatrix sum = cidentity(n);
    CMatrix term = cidentity(n);
    for (int k = 1; k <= 30; ++k) {
        term = cmul(term, a);
        for (auto& row : term) {
            for (auto& v : row) v /= static_cast<double>(k);
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) sum[i][j] += term[i][j];
        }
    }
    return sum;
}

CMatrix expm_minus_iht(const Eigen::MatrixXd& h, double t) {
    const int n = static_cast<int>(h.rows());
    int squarings = 0;
    double scale = std::abs(t) * h.cwiseAbs().maxCoeff() * n;
    while (scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const double tau = t / std::pow(2.0, squarings);
    CMatrix a(n, std::vector<std::complex<double>>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = std::complex<double>(0.0, -h(i, j) * tau);
    }
    CMatrix e = taylor_expm(a);
    for (int k = 0; k < squarings; ++k) e = cmul(e, e);
    return e;
}

} // namespace

TEST_CASE("2-site amplitudes reproduce cos^2 and sin^2") {
    const auto decomp = spectral_decompose(build_hamiltonian(TightBindingChain::uniform(2)));
    for (double t : {0.0, 0.2, 0.9, 2.4}) {
        const auto stay = evolve_amplitude(decomp, 1, 1, t);
        CHECK(std::norm(stay) == doctest::Approx(std::cos(t) * std::cos(t)).epsilon(1e-12));
        const auto hop = evolve_amplitude(decomp, 2, 1, t);
        CHECK(std::norm(hop) == doctest::Approx(std::sin(t) * std::sin(t)).epsilon(1e-12));
    }
    CHECK(std::abs(evolve_amplitude(decomp, 1, 1, 0.0) - 1.0) < 1e-14);
}

TEST_CASE("amplitude modulus never exceeds 1") {
    const auto decomp = spectral_decompose(build_hamiltonian(TightBindingChain::uniform(5)));
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> times(0.0, 20.0);
    for (int i = 0; i < 200; ++i) {
        const double t = times(rng);
        for (int m = 1; m <= 5; ++m) {
            CHECK(std::abs(evolve_amplitude(decomp, 1, m, t)) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("2-site survival is cos^2 t") {
    const TrigSum s = survival_trigsum(TightBindingChain::uniform(2), Partition{1}, InitialState{1});
    CHECK(s.constant == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(s.cosines.size() == 1);
    CHECK(s.cosines[0].amplitude == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.cosines[0].frequency == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.sines.empty());
}

TEST_CASE("3-site survival matches the closed form") {
    const TrigSum s = survival_trigsum(TightBindingChain::uniform(3), Partition{2}, InitialState{1});
    const double s2 = std::sqrt(2.0);
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const double expected = 0.5 * (3.0 - std::cos(s2 * t)) * std::pow(std::cos(t / s2), 2);
        CHECK(s(t) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(s.value_at_zero() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("4-site survival starts at 1") {
    const TrigSum s = survival_trigsum(TightBindingChain::uniform(4), Partition{2}, InitialState{1});
    CHECK(s(0.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("return kernels") {
    const TrigSum k2 = return_kernel_trigsum(TightBindingChain::uniform(2), Partition{1});
    for (double tau : {0.0, 0.4, 1.3}) {
        CHECK(k2(tau) == doctest::Approx(std::sin(tau) * std::sin(tau)).epsilon(1e-12));
    }

    const TrigSum k3 = return_kernel_trigsum(TightBindingChain::uniform(3), Partition{2});
    const double s2 = std::sqrt(2.0);
    for (double tau : {0.2, 0.7, 1.9}) {
        const double expected = 0.5 * (3.0 + std::cos(s2 * tau)) * std::pow(std::sin(tau / s2), 2);
        CHECK(k3(tau) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(std::abs(k3(0.0)) < 1e-10);

    const TrigSum k4 = return_kernel_trigsum(TightBindingChain::uniform(4), Partition{2});
    CHECK(std::abs(k4(0.0)) < 1e-10);
}

TEST_CASE("unitarity and complementarity") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> energy(-1.0, 1.0);
    std::uniform_real_distribution<double> coupling(0.3, 1.5);
    std::uniform_real_distribution<double> times(0.0, 10.0);

    for (int trial = 0; trial < 8; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        TightBindingChain chain;
        chain.n_sites = n;
        for (int i = 0; i < n; ++i) chain.site_energies.push_back(energy(rng));
        for (int i = 0; i + 1 < n; ++i) chain.couplings.push_back(coupling(rng));
        const auto decomp = spectral_decompose(build_hamiltonian(chain));
        const int b = 1 + static_cast<int>(rng() % (n - 1));

        for (int rep = 0; rep < 5; ++rep) {
            const double t = times(rng);
            double total = 0.0;
            for (int m = 1; m <= n; ++m) total += std::norm(evolve_amplitude(decomp, 1, m, t));
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }

        const TrigSum omega = occupation_trigsum(decomp, 1, b, 1);
        const TrigSum omega_bar = occupation_trigsum(decomp, b + 1, n, 1);
        for (int rep = 0; rep < 5; ++rep) {
            const double t = times(rng);
            CHECK(omega(t) + omega_bar(t) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("time translation: evolution depends only on t - t'") {
    const auto decomp = spectral_decompose(build_hamiltonian(TightBindingChain::uniform(4)));
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> times(0.0, 5.0);
    for (int rep = 0; rep < 20; ++rep) {
        const double t = times(rng);
        const double tp = times(rng);
        for (int m = 1; m <= 4; ++m) {
            // group property: U(t) U(-t') = U(t - t')
            std::complex<double> composed = 0.0;
            for (int k = 1; k <= 4; ++k) {
                composed += evolve_amplitude(decomp, k, m, t) * evolve_amplitude(decomp, 1, k, -tp);
            }
            const auto direct = evolve_amplitude(decomp, 1, m, t - tp);
            CHECK(std::abs(composed - direct) < 1e-12);
        }
    }
}

TEST_CASE("trig sums match a direct matrix exponential") {
    TightBindingChain chain;
    chain.n_sites = 5;
    chain.site_energies = {0.2, -0.4, 0.0, 0.7, -0.1};
    chain.couplings = {1.0, 0.8, 1.2, 0.9};
    const auto h = build_hamiltonian(chain);
    const auto decomp = spectral_decompose(h);
    const TrigSum survival = occupation_trigsum(decomp, 1, 3, 2);

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> times(0.0, 8.0);
    for (int rep = 0; rep < 100; ++rep) {
        const double t = times(rng);
        const CMatrix u = expm_minus_iht(h, t);
        double occupation = 0.0;
        for (int m = 0; m < 3; ++m) occupation += std::norm(u[m][1]);
        CHECK(survival(t) == doctest::Approx(occupation).epsilon(1e-9));
    }
}

TEST_CASE("start site must lie inside omega") {
    CHECK_THROWS_WITH_AS(
        survival_trigsum(TightBindingChain::uniform(4), Partition{2}, InitialState{3}),
        doctest::Contains("PRECONDITION"), SolverError);
}
