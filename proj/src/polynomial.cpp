#include "qfpt/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qfpt/errors.hpp"

namespace qfpt::poly {

int degree(const Poly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
        if (p[static_cast<std::size_t>(i)] != 0.0) return i;
    }
    return -1;
}

void trim(Poly& p, double tol) {
    while (!p.empty() && std::abs(p.back()) <= tol) p.pop_back();
}

bool is_zero(const Poly& p, double tol) {
    for (double c : p) {
        if (std::abs(c) > tol) return false;
    }
    return true;
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

Poly scale(const Poly& a, double k) {
    Poly r = a;
    for (double& c : r) c *= k;
    return r;
}

Poly mul_by_s(const Poly& a) {
    Poly r(a.size() + 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i + 1] = a[i];
    return r;
}

double eval(const Poly& p, double x) {
    double v = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

std::complex<double> eval(const Poly& p, std::complex<double> x) {
    std::complex<double> v = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
    return d;
}

namespace {

std::complex<double> newton_polish(const Poly& p, const Poly& dp, std::complex<double> z) {
    for (int iter = 0; iter < 24; ++iter) {
        const std::complex<double> f = eval(p, z);
        const std::complex<double> df = eval(dp, z);
        if (std::abs(df) == 0.0) break;
        const std::complex<double> step = f / df;
        z -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    return z;
}

} // namespace

std::vector<std::complex<double>> roots(const Poly& p) {
    Poly q = p;
    trim(q);
    const int n = degree(q);
    require(n >= 1, Err::Precondition, "roots of a constant polynomial");

    std::vector<std::complex<double>> out;
    if (n == 1) {
        out.push_back(std::complex<double>(-q[0] / q[1], 0.0));
        return out;
    }
    if (n == 2) {
        const double a = q[2], b = q[1], c = q[0];
        const std::complex<double> disc = std::sqrt(std::complex<double>(b * b - 4.0 * a * c, 0.0));
        out.push_back((-b + disc) / (2.0 * a));
        out.push_back((-b - disc) / (2.0 * a));
        return out;
    }

    // Companion matrix of the monic polynomial.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -q[static_cast<std::size_t>(i)] / q[static_cast<std::size_t>(n)];
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);

    const Poly dp = derivative(q);
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.push_back(newton_polish(q, dp, solver.eigenvalues()(i)));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

Poly from_roots(double leading, std::span<const std::complex<double>> rs) {
    std::vector<std::complex<double>> acc = {leading};
    for (const auto& r : rs) {
        std::vector<std::complex<double>> next(acc.size() + 1, 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i] += acc[i] * (-r);
            next[i + 1] += acc[i];
        }
        acc = std::move(next);
    }
    Poly out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i].real();
    return out;
}

} // namespace qfpt::poly
