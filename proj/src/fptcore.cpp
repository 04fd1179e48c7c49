#include "qfpt/fptcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfpt/errors.hpp"

namespace qfpt {

bool ValidityReport::passes(double norm_tol) const {
    const bool monotone_ok = monotonicity_violation <= 1e-9;
    const bool positive_ok = positivity_violation >= -1e-6;
    const bool norm_ok = !time_domain_end.has_value() || normalization_residual <= norm_tol;
    return monotone_ok && positive_ok && norm_ok;
}

std::optional<double> find_time_domain(const TrigSum& restricted, double search_max) {
    require(std::abs(restricted(0.0) - 1.0) <= 1e-9, Err::Precondition,
            "restricted probability must start at 1");
    const double nu_max = restricted.max_frequency();
    double step = 0.01;
    if (nu_max > 0.0) step = std::min(step, 2.0 * std::numbers::pi / nu_max / 50.0);

    double prev_t = 0.0;
    double prev_v = restricted(0.0);
    for (double t = step; t <= search_max + 0.5 * step; t += step) {
        const double v = restricted(t);
        if (v <= 0.0) {
            // Bisection on [prev_t, t].
            double lo = prev_t, hi = t;
            while (hi - lo > 1e-10) {
                const double mid = 0.5 * (lo + hi);
                if (restricted(mid) <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        prev_t = t;
        prev_v = v;
    }
    (void)prev_v;
    return std::nullopt;
}

std::optional<double> find_time_domain(std::span<const double> t,
                                       std::span<const double> restricted) {
    require(t.size() == restricted.size() && !t.empty(), Err::Precondition,
            "node/value size mismatch");
    require(std::abs(restricted[0] - 1.0) <= 1e-9, Err::Precondition,
            "restricted probability must start at 1");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (restricted[i] <= 0.0) {
            const double v0 = restricted[i - 1];
            const double v1 = restricted[i];
            if (v1 == v0) return t[i];
            const double frac = v0 / (v0 - v1);
            return t[i - 1] + frac * (t[i] - t[i - 1]);
        }
    }
    return std::nullopt;
}

namespace {

constexpr int kCheckNodes = 10000;

} // namespace

ValidityReport check_conditions(const TrigSum& restricted, const TrigSum& first_passage,
                                std::optional<double> time_domain_end) {
    ValidityReport report;
    report.time_domain_end = time_domain_end;
    const double end = time_domain_end.value_or(50.0);
    const double h = end / kCheckNodes;

    double prev = restricted(0.0);
    double worst_rise = 0.0;
    double worst_negative = 0.0;
    double prev_fp = first_passage(0.0);
    bool fp_monotone = true;
    int fp_direction = 0;
    for (int i = 1; i <= kCheckNodes; ++i) {
        const double t = i * h;
        const double v = restricted(t);
        worst_rise = std::max(worst_rise, v - prev);
        prev = v;
        const double fp = first_passage(t);
        worst_negative = std::min(worst_negative, fp);
        const int dir = fp > prev_fp ? 1 : (fp < prev_fp ? -1 : 0);
        if (dir != 0) {
            if (fp_direction != 0 && dir != fp_direction) fp_monotone = false;
            fp_direction = dir;
        }
        prev_fp = fp;
    }
    report.monotonicity_violation = worst_rise;
    report.positivity_violation = std::min(0.0, worst_negative);
    report.first_passage_monotonic = fp_monotone;
    report.normalization_residual = std::abs(first_passage.integral(0.0, end) - 1.0);
    return report;
}

ValidityReport check_conditions(std::span<const double> t, std::span<const double> restricted,
                                std::span<const double> first_passage,
                                std::optional<double> time_domain_end) {
    require(t.size() == restricted.size() && t.size() == first_passage.size() && t.size() >= 2,
            Err::Precondition, "node/value size mismatch");
    ValidityReport report;
    report.time_domain_end = time_domain_end;
    const double end = time_domain_end.value_or(t.back());

    double worst_rise = 0.0;
    double worst_negative = 0.0;
    bool fp_monotone = true;
    int fp_direction = 0;
    double integral = 0.0;
    for (std::size_t i = 1; i < t.size() && t[i - 1] < end; ++i) {
        // Clip the last interval at T by linear interpolation.
        double ti = t[i];
        double ri = restricted[i];
        double fi = first_passage[i];
        if (ti > end) {
            const double frac = (end - t[i - 1]) / (ti - t[i - 1]);
            ri = restricted[i - 1] + frac * (ri - restricted[i - 1]);
            fi = first_passage[i - 1] + frac * (fi - first_passage[i - 1]);
            ti = end;
        }
        worst_rise = std::max(worst_rise, ri - restricted[i - 1]);
        worst_negative = std::min(worst_negative, fi);
        integral += 0.5 * (ti - t[i - 1]) * (fi + first_passage[i - 1]);
        const int dir = fi > first_passage[i - 1] ? 1 : (fi < first_passage[i - 1] ? -1 : 0);
        if (dir != 0) {
            if (fp_direction != 0 && dir != fp_direction) fp_monotone = false;
            fp_direction = dir;
        }
    }
    report.monotonicity_violation = worst_rise;
    report.positivity_violation = std::min(0.0, worst_negative);
    report.first_passage_monotonic = fp_monotone;
    report.normalization_residual = std::abs(integral - 1.0);
    return report;
}

double mean_fpt(const TrigSum& first_passage, double time_domain_end) {
    const double T = time_domain_end;
    require(T > 0.0, Err::Precondition, "time domain end must be positive");
    double mean = first_passage.constant * 0.5 * T * T;
    for (const Harmonic& h : first_passage.sines) {
        const double nu = h.frequency;
        mean += h.amplitude * (std::sin(nu * T) / (nu * nu) - T * std::cos(nu * T) / nu);
    }
    for (const Harmonic& h : first_passage.cosines) {
        const double nu = h.frequency;
        mean += h.amplitude * (std::cos(nu * T) / (nu * nu) + T * std::sin(nu * T) / nu - 1.0 / (nu * nu));
    }
    return mean;
}

double mean_fpt(std::span<const double> t, std::span<const double> first_passage,
                std::optional<double> time_domain_end) {
    require(t.size() == first_passage.size() && t.size() >= 2, Err::Precondition,
            "node/value size mismatch");
    const double end = time_domain_end.value_or(t.back());
    if (!time_domain_end.has_value()) {
        double mass = 0.0;
        for (std::size_t i = 1; i < t.size(); ++i) {
            mass += 0.5 * (t[i] - t[i - 1]) * (first_passage[i] + first_passage[i - 1]);
        }
        if (std::abs(mass - 1.0) > 1e-6) {
            fail(Err::Undefined, "no finite time domain and " + std::to_string(std::abs(mass - 1.0)) +
                                     " of the density mass lies beyond the grid");
        }
    }
    double mean = 0.0;
    for (std::size_t i = 1; i < t.size() && t[i - 1] < end; ++i) {
        double ti = t[i];
        double fi = first_passage[i];
        if (ti > end) {
            const double frac = (end - t[i - 1]) / (ti - t[i - 1]);
            fi = first_passage[i - 1] + frac * (fi - first_passage[i - 1]);
            ti = end;
        }
        mean += 0.5 * (ti - t[i - 1]) * (ti * fi + t[i - 1] * first_passage[i - 1]);
    }
    return mean;
}

} // namespace qfpt
