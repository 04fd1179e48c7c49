#include "qfpt/rational_laplace.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "qfpt/propagator.hpp"

namespace qfpt {

using poly::Poly;

void RationalLaplace::normalize() {
    poly::trim(num, 0.0);
    poly::trim(den, 0.0);
    require(!poly::is_zero(den, 0.0), Err::Precondition, "denominator is identically zero");
    const double lead = den.back();
    for (double& c : den) c /= lead;
    for (double& c : num) c /= lead;
}

std::complex<double> RationalLaplace::operator()(std::complex<double> s) const {
    return poly::eval(num, s) / poly::eval(den, s);
}

RationalLaplace cancel_common_roots(const RationalLaplace& f, double tol) {
    if (poly::degree(f.num) < 1 || poly::degree(f.den) < 1) return f;
    auto num_roots = poly::roots(f.num);
    auto den_roots = poly::roots(f.den);

    std::vector<bool> num_used(num_roots.size(), false);
    std::vector<bool> den_used(den_roots.size(), false);
    bool cancelled = false;
    for (std::size_t i = 0; i < num_roots.size(); ++i) {
        for (std::size_t j = 0; j < den_roots.size(); ++j) {
            if (!den_used[j] && std::abs(num_roots[i] - den_roots[j]) < tol) {
                num_used[i] = true;
                den_used[j] = true;
                cancelled = true;
                break;
            }
        }
    }
    if (!cancelled) return f;

    std::vector<std::complex<double>> nr, dr;
    for (std::size_t i = 0; i < num_roots.size(); ++i) {
        if (!num_used[i]) nr.push_back(num_roots[i]);
    }
    for (std::size_t j = 0; j < den_roots.size(); ++j) {
        if (!den_used[j]) dr.push_back(den_roots[j]);
    }
    RationalLaplace out;
    out.num = poly::from_roots(f.num.back(), nr);
    out.den = poly::from_roots(f.den.back(), dr);
    out.normalize();
    return out;
}

RationalLaplace trigsum_laplace(const TrigSum& f) {
    RationalLaplace acc;
    acc.num = {};
    acc.den = {1.0};

    auto add_fraction = [&acc](const Poly& n, const Poly& d) {
        acc.num = poly::add(poly::mul(acc.num, d), poly::mul(acc.den, n));
        acc.den = poly::mul(acc.den, d);
    };

    if (f.constant != 0.0) add_fraction({f.constant}, {0.0, 1.0});
    for (const Harmonic& h : f.cosines) {
        add_fraction({0.0, h.amplitude}, {h.frequency * h.frequency, 0.0, 1.0});
    }
    for (const Harmonic& h : f.sines) {
        add_fraction({h.amplitude * h.frequency}, {h.frequency * h.frequency, 0.0, 1.0});
    }
    if (acc.num.empty()) acc.num = {0.0};
    acc.normalize();
    return cancel_common_roots(acc, 1e-9);
}

FptTransforms solve_fpt_laplace(const RationalLaplace& start_survival,
                                const RationalLaplace& return_kernel) {
    const Poly& nu = start_survival.num;
    const Poly& du = start_survival.den;
    const Poly& nk = return_kernel.num;
    const Poly& dk = return_kernel.den;

    // 1 - s L[K] = (dk - s nk) / dk
    const Poly dk_minus_snk = poly::sub(dk, poly::mul_by_s(nk));
    if (poly::is_zero(dk_minus_snk, 1e-12)) {
        fail(Err::Degenerate, "1 - s*L[kernel] vanishes identically");
    }

    FptTransforms out;
    // L[Pfp] = (du - s nu)/du * dk/(dk - s nk)
    out.first_passage.num = poly::mul(poly::sub(du, poly::mul_by_s(nu)), dk);
    out.first_passage.den = poly::mul(du, dk_minus_snk);
    out.first_passage.normalize();
    out.first_passage = cancel_common_roots(out.first_passage, 1e-8);

    // L[Pr] = (nu dk - nk du) / (du (dk - s nk))
    out.restricted.num = poly::sub(poly::mul(nu, dk), poly::mul(nk, du));
    out.restricted.den = poly::mul(du, dk_minus_snk);
    out.restricted.normalize();
    out.restricted = cancel_common_roots(out.restricted, 1e-8);
    return out;
}

TrigSum invert_rational(const RationalLaplace& transform) {
    RationalLaplace f = transform;
    f.normalize();
    require(poly::degree(f.num) < poly::degree(f.den), Err::Precondition,
            "transform must be a proper rational function");

    const auto poles = poly::roots(f.den);
    const double scale = [&] {
        double s = 1.0;
        for (const auto& p : poles) s = std::max(s, std::abs(p));
        return s;
    }();

    for (std::size_t i = 0; i < poles.size(); ++i) {
        for (std::size_t j = i + 1; j < poles.size(); ++j) {
            if (std::abs(poles[i] - poles[j]) < 1e-7 * scale) {
                fail(Err::RepeatedPole, "denominator root of multiplicity > 1");
            }
        }
        if (std::abs(poles[i].real()) > 1e-7) {
            fail(Err::UnstablePole, "pole off the imaginary axis; a closed system "
                                    "cannot grow or decay");
        }
    }

    const Poly dden = poly::derivative(f.den);
    TrigSum sum;
    for (const auto& p : poles) {
        const std::complex<double> residue = poly::eval(f.num, p) / poly::eval(dden, p);
        if (std::abs(p.imag()) <= 1e-7) {
            sum.constant += residue.real(); // pole at the origin
        } else if (p.imag() > 0.0) {
            // residue r at +i nu plus the conjugate pole give
            // 2 Re(r) cos(nu t) - 2 Im(r) sin(nu t).
            add_cosine(sum, 2.0 * residue.real(), p.imag());
            add_sine(sum, -2.0 * residue.imag(), p.imag());
        }
    }
    sum.canonicalize();
    return sum;
}

ExactSolution solve_exact(const TightBindingChain& chain, const Partition& partition,
                          const InitialState& start) {
    const TrigSum survival = survival_trigsum(chain, partition, start);
    const TrigSum kernel = return_kernel_trigsum(chain, partition);
    const FptTransforms transforms =
        solve_fpt_laplace(trigsum_laplace(survival), trigsum_laplace(kernel));
    ExactSolution solution;
    solution.restricted = invert_rational(transforms.restricted);
    solution.first_passage = invert_rational(transforms.first_passage);
    return solution;
}

} // namespace qfpt
