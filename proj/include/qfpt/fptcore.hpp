#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfpt/trigsum.hpp"

namespace qfpt {

/// Outcome of the physical-validity checks on [0, T]:
///  (A) the restricted probability decreases monotonically from 1,
///  (B) the first-passage density stays nonnegative and integrates to 1,
///  (C) [0, T] with T the first zero of P_r is the domain of definition.
/// Violations are reported, not thrown; probing where the construction breaks
/// is part of what the tool is for.
struct ValidityReport {
    std::optional<double> time_domain_end;  // T; nullopt = no zero found
    double normalization_residual = 0.0;    // |int_0^T P_fp - 1|
    double positivity_violation = 0.0;      // worst negative excursion of P_fp (<= 0)
    double monotonicity_violation = 0.0;    // worst forward increase of P_r (>= 0)
    bool first_passage_monotonic = true;    // informational; may legitimately be false

    /// Pass/fail against the stated tolerances. With no finite T the
    /// normalization residual is informational (the density has not completed
    /// its domain) and only (A) and positivity gate.
    bool passes(double norm_tol = 1e-6) const;
};

/// First zero of the restricted probability: sign-change scan with step
/// min(0.01, period/50), then bisection to 1e-10. Requires P_r(0) = 1 within
/// 1e-9. nullopt when no zero exists up to search_max.
std::optional<double> find_time_domain(const TrigSum& restricted, double search_max = 50.0);

/// Sampled variant; linear interpolation inside the bracketing interval.
std::optional<double> find_time_domain(std::span<const double> t,
                                       std::span<const double> restricted);

/// Conditions (A)-(C) on 10^4 nodes over [0, T] with exact antiderivatives.
ValidityReport check_conditions(const TrigSum& restricted, const TrigSum& first_passage,
                                std::optional<double> time_domain_end);

/// Sampled variant on the solution's own grid (trapezoid quadrature),
/// restricted to [0, T] when T is finite.
ValidityReport check_conditions(std::span<const double> t, std::span<const double> restricted,
                                std::span<const double> first_passage,
                                std::optional<double> time_domain_end);

/// Mean first-passage time int_0^T t P_fp dt by exact antiderivatives.
double mean_fpt(const TrigSum& first_passage, double time_domain_end);

/// Sampled variant. With no finite T integrates to the end of the grid,
/// throwing Err::Undefined when more than 1e-6 of the mass is still missing.
double mean_fpt(std::span<const double> t, std::span<const double> first_passage,
                std::optional<double> time_domain_end);

/// Assembled record for one solved system.
struct FptSolution {
    std::string system;                 // short descriptor, e.g. "chain n=3 b=2 start=1"
    std::vector<double> times;
    std::vector<double> restricted;
    std::vector<double> first_passage;
    std::optional<TrigSum> restricted_form;    // present for the exact pipeline
    std::optional<TrigSum> first_passage_form;
    ValidityReport report;
    std::optional<double> mean; // mean fpt when defined
};

} // namespace qfpt
