#include "qfpt/trigsum.hpp"

#include <algorithm>
#include <cmath>

#include "qfpt/errors.hpp"
#include "qfpt/parallel.hpp"

namespace qfpt {

double TrigSum::operator()(double t) const {
    double value = constant;
    for (const Harmonic& h : cosines) value += h.amplitude * std::cos(h.frequency * t);
    for (const Harmonic& h : sines) value += h.amplitude * std::sin(h.frequency * t);
    return value;
}

namespace {

void merge_terms(std::vector<Harmonic>& terms, double freq_tol) {
    std::sort(terms.begin(), terms.end(),
              [](const Harmonic& a, const Harmonic& b) { return a.frequency < b.frequency; });
    std::vector<Harmonic> merged;
    for (const Harmonic& h : terms) {
        if (!merged.empty() && h.frequency - merged.back().frequency < freq_tol) {
            merged.back().amplitude += h.amplitude;
        } else {
            merged.push_back(h);
        }
    }
    terms = std::move(merged);
}

void drop_small(std::vector<Harmonic>& terms, double amp_drop) {
    std::erase_if(terms, [amp_drop](const Harmonic& h) { return std::abs(h.amplitude) < amp_drop; });
}

} // namespace

void TrigSum::canonicalize(double freq_tol, double amp_drop) {
    // cos(nu t) with nu ~ 0 is the constant 1; sin(nu t) with nu ~ 0 vanishes.
    std::erase_if(cosines, [&](const Harmonic& h) {
        if (std::abs(h.frequency) < freq_tol) {
            constant += h.amplitude;
            return true;
        }
        return false;
    });
    std::erase_if(sines, [&](const Harmonic& h) { return std::abs(h.frequency) < freq_tol; });

    merge_terms(cosines, freq_tol);
    merge_terms(sines, freq_tol);
    drop_small(cosines, amp_drop);
    drop_small(sines, amp_drop);
}

TrigSum TrigSum::derivative() const {
    TrigSum d;
    for (const Harmonic& h : cosines) d.sines.push_back({-h.amplitude * h.frequency, h.frequency});
    for (const Harmonic& h : sines) d.cosines.push_back({h.amplitude * h.frequency, h.frequency});
    d.canonicalize();
    return d;
}

TrigSum TrigSum::negated_derivative() const {
    TrigSum d = derivative();
    d.constant = -d.constant;
    for (Harmonic& h : d.cosines) h.amplitude = -h.amplitude;
    for (Harmonic& h : d.sines) h.amplitude = -h.amplitude;
    return d;
}

double TrigSum::integral(double a, double b) const {
    double value = constant * (b - a);
    for (const Harmonic& h : cosines) {
        value += h.amplitude * (std::sin(h.frequency * b) - std::sin(h.frequency * a)) / h.frequency;
    }
    for (const Harmonic& h : sines) {
        value -= h.amplitude * (std::cos(h.frequency * b) - std::cos(h.frequency * a)) / h.frequency;
    }
    return value;
}

double TrigSum::value_at_zero() const {
    double value = constant;
    for (const Harmonic& h : cosines) value += h.amplitude;
    return value;
}

double TrigSum::max_frequency() const {
    double nu = 0.0;
    if (!cosines.empty()) nu = std::max(nu, cosines.back().frequency);
    if (!sines.empty()) nu = std::max(nu, sines.back().frequency);
    return nu;
}

TrigSum TrigSum::constant_sum(double value) {
    TrigSum sum;
    sum.constant = value;
    return sum;
}

void add_cosine(TrigSum& sum, double amplitude, double frequency) {
    sum.cosines.push_back({amplitude, frequency});
}

void add_sine(TrigSum& sum, double amplitude, double frequency) {
    sum.sines.push_back({amplitude, frequency});
}

void eval_grid(const TrigSum& sum, std::span<const double> t, std::span<double> out) {
    require(t.size() == out.size(), Err::Precondition, "eval_grid: size mismatch");
    par::for_each(static_cast<std::int64_t>(t.size()),
                  [&](std::int64_t i) { out[static_cast<std::size_t>(i)] = sum(t[static_cast<std::size_t>(i)]); });
}

void eval_grid_serial(const TrigSum& sum, std::span<const double> t, std::span<double> out) {
    require(t.size() == out.size(), Err::Precondition, "eval_grid_serial: size mismatch");
    par::for_each_serial(static_cast<std::int64_t>(t.size()),
                         [&](std::int64_t i) { out[static_cast<std::size_t>(i)] = sum(t[static_cast<std::size_t>(i)]); });
}

std::vector<double> eval_grid(const TrigSum& sum, std::span<const double> t) {
    std::vector<double> out(t.size());
    eval_grid(sum, t, out);
    return out;
}

} // namespace qfpt
