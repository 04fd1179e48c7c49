#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qfpt::poly {

/// Real polynomial, coefficients low to high degree.
using Poly = std::vector<double>;

int degree(const Poly& p); // -1 for the zero polynomial
void trim(Poly& p, double tol = 0.0);
bool is_zero(const Poly& p, double tol);

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, double k);
Poly mul_by_s(const Poly& a); // shift by one degree

double eval(const Poly& p, double x);
std::complex<double> eval(const Poly& p, std::complex<double> x);
Poly derivative(const Poly& p);

/// All complex roots via the companion matrix, polished by Newton iteration.
std::vector<std::complex<double>> roots(const Poly& p);

/// Rebuild real coefficients from a conjugate-closed root set.
Poly from_roots(double leading, std::span<const std::complex<double>> roots);

} // namespace qfpt::poly
