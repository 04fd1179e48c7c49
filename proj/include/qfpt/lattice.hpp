#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "qfpt/volterra.hpp"

namespace qfpt {

/// Bessel function J_n(x), n >= 0, x >= 0. Ascending series for small
/// arguments, normalized backward recurrence otherwise; absolute accuracy
/// ~1e-13, relative ~1e-12 away from zeros.
double bessel_j(int order, double x);

/// J_0(x) .. J_{n_max}(x) in one backward-recurrence pass.
std::vector<double> bessel_j_sequence(int n_max, double x);

/// Unrestricted survival and return kernel of the infinite lattice with the
/// particle started at the boundary site: (1 +- J_0^2(2t)) / 2.
double lattice_survival(double t);
double lattice_kernel(double tau);
double lattice_survival_deriv(double t); // -2 J0(2t) J1(2t)
double lattice_kernel_deriv(double tau); // +2 J0(2t) J1(2t)

/// Complete elliptic integral of the first kind in the PARAMETER convention,
///   K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta),  m < 1,
/// computed by the arithmetic-geometric mean. Negative parameters go through
/// the imaginary-modulus transformation K(-x) = K(x/(1+x))/sqrt(1+x).
double elliptic_k(double m);

/// AGM with complex arithmetic; square-root branch chosen continuously from
/// the positive real axis (Re(b/a) kept nonnegative at every step). Valid off
/// the cut m in [1, inf).
std::complex<double> elliptic_k(std::complex<double> m);

/// Laplace transforms of the lattice restricted probability and first-passage
/// density:
///   L[P_r](s)  = (4/s) K(-16/s^2) / (pi + 2 K(-16/s^2))
///   L[P_fp](s) = (pi - 2 K(-16/s^2)) / (pi + 2 K(-16/s^2))
/// Real overloads require s > 0. Complex overloads accept any s off the
/// imaginary segment [-4i, 4i], where -16/s^2 meets the elliptic cut; the
/// inversion contours evaluate them there and to the left of the axis.
double lattice_laplace_pr(double s);
double lattice_laplace_pfp(double s);
std::complex<double> lattice_laplace_pr(std::complex<double> s);
std::complex<double> lattice_laplace_pfp(std::complex<double> s);

/// Small-time expansion obtained from the large-s expansion of the
/// transforms, inverted term by term (1/s^{k+1} -> t^k/k!). restricted and
/// first_passage are dense polynomial coefficients in t, low to high.
struct SmallTimeSeries {
    int order = 0;
    std::vector<double> restricted;    // degree 2*order, starts 1, 0, -1, ...
    std::vector<double> first_passage; // degree 2*order - 1, starts 0, 2, ...

    double eval_restricted(double t) const;
    double eval_first_passage(double t) const;
};
SmallTimeSeries small_time_series(int order);

using LaplaceFn = std::function<std::complex<double>(std::complex<double>)>;

enum class InversionMethod {
    FourierEuler, // default: Bromwich line + Euler acceleration, Re(s) > 0 only
    Talbot,       // fixed deformed contour, used for cross-validation
};

/// Single-shot inversion at one node count (no convergence check).
double euler_inversion(const LaplaceFn& transform, double t, int nodes);
double talbot_inversion(const LaplaceFn& transform, double t, int nodes);

/// Inversion with an internal convergence check: evaluated at `nodes` and
/// 2*`nodes`; a disagreement beyond 1e-6 raises Err::Nonconvergent. Returns
/// the finer value. Target absolute accuracy 1e-7 on t in (0, 4].
double invert_laplace_numeric(const LaplaceFn& transform, double t,
                              InversionMethod method = InversionMethod::FourierEuler,
                              int nodes = 32);

/// Grid kernel (OpenMP over nodes) and serial reference; nodes at t = 0 are
/// not allowed. Per-node work is self-contained, so the two agree bitwise.
void invert_grid(const LaplaceFn& transform, std::span<const double> t, std::span<double> out,
                 InversionMethod method = InversionMethod::FourierEuler, int nodes = 32);
void invert_grid_serial(const LaplaceFn& transform, std::span<const double> t,
                        std::span<double> out,
                        InversionMethod method = InversionMethod::FourierEuler, int nodes = 32);

/// The lattice renewal problem with analytic derivatives, for the Volterra
/// pipeline.
VolterraProblem lattice_volterra_problem();

enum class LatticeMethod { Series, NumericInversion, Volterra };

struct LatticeSolution {
    TimeGrid grid;
    std::vector<double> restricted;
    std::vector<double> first_passage;
    LatticeMethod method = LatticeMethod::Series;
};

/// Samples P_r and P_fp on the grid by the chosen method. The series is
/// trusted for small times only; the inversion window is t in (0, 4].
LatticeSolution solve_lattice(const TimeGrid& grid, LatticeMethod method,
                              int series_order = 12, int inversion_nodes = 32);

} // namespace qfpt
