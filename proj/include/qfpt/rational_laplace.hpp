#pragma once

#include "qfpt/model.hpp"
#include "qfpt/polynomial.hpp"
#include "qfpt/trigsum.hpp"

namespace qfpt {

/// Ratio of real polynomials in the Laplace variable s, denominator monic.
struct RationalLaplace {
    poly::Poly num;
    poly::Poly den;

    void normalize(); // make the denominator monic
    std::complex<double> operator()(std::complex<double> s) const;
};

/// Exact transform of a trig sum over a common denominator:
/// L[cos nu t] = s/(s^2+nu^2), L[sin nu t] = nu/(s^2+nu^2), L[1] = 1/s.
/// Shared numerator/denominator roots are cancelled within 1e-9.
RationalLaplace trigsum_laplace(const TrigSum& f);

struct FptTransforms {
    RationalLaplace restricted;    // L[P_r]
    RationalLaplace first_passage; // L[P_fp]
};

/// Laplace-domain solution of the renewal equation
///   Pu(t) = Pr(t) + int_0^t K(t-t') Pfp(t') dt',  Pfp = -dPr/dt, Pr(0)=1:
///   L[Pfp] = (1 - s L[Pu]) / (1 - s L[K])
///   L[Pr]  = (L[Pu] - L[K]) / (1 - s L[K])
/// Throws Err::Degenerate when 1 - s L[K] vanishes identically.
FptTransforms solve_fpt_laplace(const RationalLaplace& start_survival,
                                const RationalLaplace& return_kernel);

/// Partial-fraction inversion of a proper rational transform with simple
/// poles. Conjugate imaginary pole pairs +-i nu map to cos/sin terms, a pole
/// at the origin to the constant. Poles with |Re| > 1e-7 indicate growth or
/// decay, which a closed system cannot have -> Err::UnstablePole; multiple
/// poles -> Err::RepeatedPole.
TrigSum invert_rational(const RationalLaplace& transform);

struct ExactSolution {
    TrigSum restricted;    // P_r, pure cosine sum for the chain systems
    TrigSum first_passage; // P_fp, pure sine sum
};

/// End-to-end exact pipeline for a finite chain.
ExactSolution solve_exact(const TightBindingChain& chain, const Partition& partition,
                          const InitialState& start);

/// Remove numerator/denominator root pairs closer than tol.
RationalLaplace cancel_common_roots(const RationalLaplace& f, double tol);

} // namespace qfpt
