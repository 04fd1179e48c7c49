#include "qfpt/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qfpt/parallel.hpp"

namespace qfpt {

namespace {

constexpr double kPi = std::numbers::pi;

double bessel_series(int n, double x) {
    // Ascending series, adequate for x <= 8.
    const double half = 0.5 * x;
    double term = 1.0;
    for (int i = 1; i <= n; ++i) term *= half / static_cast<double>(i);
    double sum = term;
    const double quarter = half * half;
    for (int k = 1; k < 64; ++k) {
        term *= -quarter / (static_cast<double>(k) * static_cast<double>(n + k));
        sum += term;
        if (std::abs(term) < 1e-17 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

int miller_start_index(int n_max, double x) {
    // Start high enough that the downward recurrence has decayed through the
    // turning point near k ~ x before reaching the requested orders.
    const double m = std::max(static_cast<double>(n_max), x);
    return static_cast<int>(m + 16.0 + 1.8 * std::sqrt(40.0 * (m + 2.0))) | 1;
}

} // namespace

std::vector<double> bessel_j_sequence(int n_max, double x) {
    require(n_max >= 0, Err::Precondition, "order must be nonnegative");
    require(x >= 0.0, Err::Precondition, "argument must be nonnegative");
    std::vector<double> j(static_cast<std::size_t>(n_max) + 1, 0.0);

    if (x < 8.0) {
        for (int n = 0; n <= n_max; ++n) j[static_cast<std::size_t>(n)] = bessel_series(n, x);
        return j;
    }

    const int start = miller_start_index(n_max, x);
    double upper = 0.0;   // J_{k+1} seed
    double current = 1e-300; // J_k seed, arbitrary scale
    double norm = 0.0;    // accumulates J_0 + 2 sum J_{2m}
    for (int k = start; k >= 1; --k) {
        const double lower = 2.0 * static_cast<double>(k) / x * current - upper;
        upper = current;
        current = lower;
        if (k - 1 <= n_max) j[static_cast<std::size_t>(k - 1)] = current;
        if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? current : 2.0 * current;
        if (std::abs(current) > 1e250) {
            // Rescale to avoid overflow; everything is linear in the seed.
            current *= 1e-250;
            upper *= 1e-250;
            norm *= 1e-250;
            for (double& v : j) v *= 1e-250;
        }
    }
    for (double& v : j) v /= norm;
    return j;
}

double bessel_j(int order, double x) {
    require(order >= 0, Err::Precondition, "order must be nonnegative");
    require(x >= 0.0, Err::Precondition, "argument must be nonnegative");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (x < 8.0) return bessel_series(order, x);
    return bessel_j_sequence(order, x)[static_cast<std::size_t>(order)];
}

double lattice_survival(double t) {
    const double j0 = bessel_j(0, 2.0 * std::abs(t));
    return 0.5 * (1.0 + j0 * j0);
}

double lattice_kernel(double tau) {
    const double j0 = bessel_j(0, 2.0 * std::abs(tau));
    return 0.5 * (1.0 - j0 * j0);
}

double lattice_survival_deriv(double t) {
    const double x = 2.0 * std::abs(t);
    return -2.0 * bessel_j(0, x) * bessel_j(1, x);
}

double lattice_kernel_deriv(double tau) {
    return -lattice_survival_deriv(tau);
}

double elliptic_k(double m) {
    require(m < 1.0, Err::Domain, "elliptic parameter must satisfy m < 1");
    if (m < 0.0) {
        // K(-x) = K(x/(1+x)) / sqrt(1+x)
        return elliptic_k(m / (m - 1.0)) / std::sqrt(1.0 - m);
    }
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (2.0 * a);
}

std::complex<double> elliptic_k(std::complex<double> m) {
    if (m.imag() == 0.0 && m.real() >= 1.0) {
        fail(Err::Domain, "elliptic parameter on the cut [1, inf)");
    }
    std::complex<double> a = 1.0;
    std::complex<double> b = std::sqrt(1.0 - m);
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * std::abs(a); ++i) {
        const std::complex<double> an = 0.5 * (a + b);
        std::complex<double> bn = std::sqrt(a * b);
        if ((bn / an).real() < 0.0) bn = -bn;
        a = an;
        b = bn;
    }
    return kPi / (2.0 * a);
}

namespace {

std::complex<double> lattice_k_of_s(std::complex<double> s) {
    // -16/s^2 meets the cut [1, inf) exactly on the imaginary segment
    // s in i[-4, 4]; the transforms are singular there.
    if (std::abs(s.real()) <= 1e-12 * (1.0 + std::abs(s)) && std::abs(s.imag()) <= 4.0 + 1e-9) {
        fail(Err::Domain, "transform evaluated on the imaginary segment [-4i, 4i]");
    }
    return elliptic_k(-16.0 / (s * s));
}

} // namespace

std::complex<double> lattice_laplace_pr(std::complex<double> s) {
    const std::complex<double> k = lattice_k_of_s(s);
    return 4.0 / s * k / (kPi + 2.0 * k);
}

std::complex<double> lattice_laplace_pfp(std::complex<double> s) {
    const std::complex<double> k = lattice_k_of_s(s);
    return (kPi - 2.0 * k) / (kPi + 2.0 * k);
}

double lattice_laplace_pr(double s) {
    require(s > 0.0, Err::Domain, "real-axis transform requires s > 0");
    const double k = elliptic_k(-16.0 / (s * s));
    return 4.0 / s * k / (kPi + 2.0 * k);
}

double lattice_laplace_pfp(double s) {
    require(s > 0.0, Err::Domain, "real-axis transform requires s > 0");
    const double k = elliptic_k(-16.0 / (s * s));
    return (kPi - 2.0 * k) / (kPi + 2.0 * k);
}

double SmallTimeSeries::eval_restricted(double t) const {
    double v = 0.0;
    for (std::size_t i = restricted.size(); i-- > 0;) v = v * t + restricted[i];
    return v;
}

double SmallTimeSeries::eval_first_passage(double t) const {
    double v = 0.0;
    for (std::size_t i = first_passage.size(); i-- > 0;) v = v * t + first_passage[i];
    return v;
}

SmallTimeSeries small_time_series(int order) {
    require(order >= 1 && order <= 20, Err::Precondition, "series order must be in [1, 20]");

    // K(m) = (pi/2) sum_k c_k m^k with c_k = (binom(2k, k) / 4^k)^2. With
    // m = -16 v, v = 1/s^2, write K = (pi/2)(1 + u(v)). Then
    //   L[P_fp] = (pi - 2K)/(pi + 2K) = -u / (2 + u)
    //   L[P_r]  = 1/s + (1/s) u/(2 + u)
    // and w = -u/(2+u) is a power series in v starting at order 1 whose
    // coefficients a_k invert term by term: v^k / s -> t^{2k}/(2k)!,
    // v^k -> t^{2k-1}/(2k-1)!.
    const int n = order + 1;
    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    double binom_sq = 1.0; // c_k
    double m_pow = 1.0;    // (-16)^k
    for (int k = 1; k < n; ++k) {
        const double ratio = (2.0 * k - 1.0) / (2.0 * k); // c_k = c_{k-1} * ((2k-1)/(2k))^2
        binom_sq *= ratio * ratio;
        m_pow *= -16.0;
        u[static_cast<std::size_t>(k)] = binom_sq * m_pow;
    }

    // w (2 + u) = -u, solved for w by forward substitution.
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    for (int k = 1; k < n; ++k) {
        double acc = -u[static_cast<std::size_t>(k)];
        for (int j = 1; j < k; ++j) {
            acc -= w[static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(k - j)];
        }
        w[static_cast<std::size_t>(k)] = acc / 2.0;
    }

    SmallTimeSeries series;
    series.order = order;
    series.restricted.assign(static_cast<std::size_t>(2 * order + 1), 0.0);
    series.first_passage.assign(static_cast<std::size_t>(2 * order), 0.0);
    series.restricted[0] = 1.0;
    double factorial = 1.0; // (2k-1)! running value
    for (int k = 1; k < n; ++k) {
        factorial *= (2.0 * k - 2.0 <= 0.0 ? 1.0 : (2.0 * k - 2.0)) * (2.0 * k - 1.0);
        const double a = w[static_cast<std::size_t>(k)];
        series.first_passage[static_cast<std::size_t>(2 * k - 1)] = a / factorial;
        series.restricted[static_cast<std::size_t>(2 * k)] = -a / (factorial * 2.0 * k);
    }
    return series;
}

namespace {

// Bromwich-line inversion with Euler acceleration of the alternating tail.
// The abscissa A controls the aliasing floor e^{-A}; A = 23 keeps it below
// 1e-9 for originals of order unity while the e^{A/2} roundoff amplification
// stays near 1e-11.
constexpr double kEulerAbscissa = 23.0;
constexpr int kEulerBinomial = 15;

double euler_eval(const LaplaceFn& transform, double t, int base_terms) {
    const double x = kEulerAbscissa / (2.0 * t);
    const double step = kPi / t;

    double partial = 0.5 * transform(std::complex<double>(x, 0.0)).real();
    const int total = base_terms + kEulerBinomial;
    std::vector<double> partials(static_cast<std::size_t>(kEulerBinomial) + 1, 0.0);
    for (int k = 1; k <= total; ++k) {
        const double term = transform(std::complex<double>(x, k * step)).real();
        partial += (k % 2 == 0) ? term : -term;
        if (k >= base_terms) partials[static_cast<std::size_t>(k - base_terms)] = partial;
    }

    double acc = 0.0;
    double binom = 1.0; // C(kEulerBinomial, j)
    for (int j = 0; j <= kEulerBinomial; ++j) {
        acc += binom * partials[static_cast<std::size_t>(j)];
        binom = binom * (kEulerBinomial - j) / (j + 1.0);
    }
    acc /= std::pow(2.0, kEulerBinomial);
    return std::exp(0.5 * kEulerAbscissa) / t * acc;
}

// Fixed Talbot contour with `m` points. The contour crosses the imaginary
// axis near |Im s| = m*pi/(5t), which must clear every singularity of the
// transform; for the lattice transforms (cut out to 4i) that bounds the
// usable window to t < m*pi/20.
double talbot_eval(const LaplaceFn& transform, double t, int m) {
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
        std::complex<double> node, weight;
        if (k == 0) {
            node = std::complex<double>(2.0 * m / 5.0, 0.0);
            weight = 0.5 * std::exp(node);
        } else {
            const double theta = k * kPi / m;
            const double cot = std::cos(theta) / std::sin(theta);
            node = 2.0 * k * kPi / 5.0 * std::complex<double>(cot, 1.0);
            weight = (1.0 + std::complex<double>(0.0, theta) * (1.0 + cot * cot) -
                      std::complex<double>(0.0, cot)) *
                     std::exp(node);
        }
        acc += (weight * transform(node / t)).real();
    }
    return 2.0 / (5.0 * t) * acc;
}

} // namespace

double euler_inversion(const LaplaceFn& transform, double t, int nodes) {
    require(t > 0.0, Err::Precondition, "inversion requires t > 0");
    require(nodes >= 8, Err::Precondition, "too few inversion nodes");
    return euler_eval(transform, t, nodes);
}

double talbot_inversion(const LaplaceFn& transform, double t, int nodes) {
    require(t > 0.0, Err::Precondition, "inversion requires t > 0");
    require(nodes >= 8, Err::Precondition, "too few inversion nodes");
    return talbot_eval(transform, t, nodes);
}

double invert_laplace_numeric(const LaplaceFn& transform, double t, InversionMethod method,
                              int nodes) {
    require(t > 0.0, Err::Precondition, "inversion requires t > 0");
    require(nodes >= 16, Err::Precondition, "at least 16 nodes required");
    const auto eval = (method == InversionMethod::FourierEuler) ? euler_inversion : talbot_inversion;
    const double coarse = eval(transform, t, nodes);
    const double fine = eval(transform, t, 2 * nodes);
    if (std::abs(coarse - fine) > 1e-6) {
        fail(Err::Nonconvergent, "node counts " + std::to_string(nodes) + " and " +
                                     std::to_string(2 * nodes) + " disagree by " +
                                     std::to_string(std::abs(coarse - fine)) + " at t=" +
                                     std::to_string(t));
    }
    return fine;
}

void invert_grid(const LaplaceFn& transform, std::span<const double> t, std::span<double> out,
                 InversionMethod method, int nodes) {
    require(t.size() == out.size(), Err::Precondition, "invert_grid: size mismatch");
    par::for_each(static_cast<std::int64_t>(t.size()), [&](std::int64_t i) {
        out[static_cast<std::size_t>(i)] =
            invert_laplace_numeric(transform, t[static_cast<std::size_t>(i)], method, nodes);
    });
}

void invert_grid_serial(const LaplaceFn& transform, std::span<const double> t,
                        std::span<double> out, InversionMethod method, int nodes) {
    require(t.size() == out.size(), Err::Precondition, "invert_grid_serial: size mismatch");
    par::for_each_serial(static_cast<std::int64_t>(t.size()), [&](std::int64_t i) {
        out[static_cast<std::size_t>(i)] =
            invert_laplace_numeric(transform, t[static_cast<std::size_t>(i)], method, nodes);
    });
}

VolterraProblem lattice_volterra_problem() {
    VolterraProblem p;
    p.survival = [](double t) { return lattice_survival(t); };
    p.kernel = [](double t) { return lattice_kernel(t); };
    p.survival_deriv = [](double t) { return lattice_survival_deriv(t); };
    p.kernel_deriv = [](double t) { return lattice_kernel_deriv(t); };
    return p;
}

LatticeSolution solve_lattice(const TimeGrid& grid, LatticeMethod method, int series_order,
                              int inversion_nodes) {
    LatticeSolution sol;
    sol.grid = grid;
    sol.method = method;
    const std::int64_t nodes = grid.node_count();
    sol.restricted.assign(static_cast<std::size_t>(nodes), 0.0);
    sol.first_passage.assign(static_cast<std::size_t>(nodes), 0.0);
    sol.restricted[0] = 1.0;

    switch (method) {
        case LatticeMethod::Series: {
            const SmallTimeSeries series = small_time_series(series_order);
            par::for_each(nodes - 1, [&](std::int64_t i) {
                const double t = grid.node(i + 1);
                sol.restricted[static_cast<std::size_t>(i + 1)] = series.eval_restricted(t);
                sol.first_passage[static_cast<std::size_t>(i + 1)] = series.eval_first_passage(t);
            });
            break;
        }
        case LatticeMethod::NumericInversion: {
            auto pr = [](std::complex<double> s) { return lattice_laplace_pr(s); };
            auto pfp = [](std::complex<double> s) { return lattice_laplace_pfp(s); };
            const std::vector<double> t = grid.nodes();
            std::span<const double> interior(t.data() + 1, t.size() - 1);
            invert_grid(pr, interior, std::span<double>(sol.restricted.data() + 1, t.size() - 1),
                        InversionMethod::FourierEuler, inversion_nodes);
            invert_grid(pfp, interior, std::span<double>(sol.first_passage.data() + 1, t.size() - 1),
                        InversionMethod::FourierEuler, inversion_nodes);
            break;
        }
        case LatticeMethod::Volterra: {
            const VolterraSolution vs = solve_volterra(lattice_volterra_problem(), grid);
            sol.restricted = vs.restricted;
            sol.first_passage = vs.first_passage;
            break;
        }
    }
    return sol;
}

} // namespace qfpt
