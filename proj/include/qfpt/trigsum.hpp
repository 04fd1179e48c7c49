#pragma once

#include <span>
#include <vector>

namespace qfpt {

struct Harmonic {
    double amplitude = 0.0;
    double frequency = 0.0; // > 0 once canonicalized
};

/// Finite sum  c0 + sum_k c_k cos(nu_k t) + sum_k s_k sin(nu_k t).
/// Closed finite quantum systems produce probabilities of exactly this form,
/// with frequencies drawn from eigenvalue differences, so the representation
/// is exact rather than a truncation.
struct TrigSum {
    double constant = 0.0;
    std::vector<Harmonic> cosines; // frequencies strictly increasing
    std::vector<Harmonic> sines;   // frequencies strictly increasing

    double operator()(double t) const;

    /// Sort by frequency, merge terms closer than freq_tol, drop amplitudes
    /// below amp_drop, and fold near-zero frequencies into the constant.
    void canonicalize(double freq_tol = 1e-9, double amp_drop = 1e-12);

    /// d/dt, exact.
    TrigSum derivative() const;

    /// -d/dt; the first-passage density of a restricted probability.
    TrigSum negated_derivative() const;

    /// Exact antiderivative evaluated between a and b (constant term included).
    double integral(double a, double b) const;

    /// Value at t = 0, i.e. constant + sum of cosine amplitudes.
    double value_at_zero() const;

    double max_frequency() const; // 0 if purely constant

    static TrigSum constant_sum(double value);
};

void add_cosine(TrigSum& sum, double amplitude, double frequency);
void add_sine(TrigSum& sum, double amplitude, double frequency);

/// Grid evaluation kernel (OpenMP over nodes) and its serial reference.
/// Each node is evaluated independently, so the two agree bit for bit.
void eval_grid(const TrigSum& sum, std::span<const double> t, std::span<double> out);
void eval_grid_serial(const TrigSum& sum, std::span<const double> t, std::span<double> out);
std::vector<double> eval_grid(const TrigSum& sum, std::span<const double> t);

} // namespace qfpt
