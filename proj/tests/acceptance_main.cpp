// Acceptance suite: one pass/fail line per criterion, all criteria always
// run, nonzero exit if any fails. Tolerances are fixed here, not tunable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qfpt/fptcore.hpp"
#include "qfpt/lattice.hpp"
#include "qfpt/pipelines.hpp"
#include "qfpt/propagator.hpp"
#include "qfpt/rational_laplace.hpp"
#include "qfpt/volterra.hpp"

namespace {

using namespace qfpt;
using Clock = std::chrono::steady_clock;

int failures = 0;
int criterion_failures = 0;

void expect(bool ok, const std::string& detail) {
    if (!ok) {
        ++criterion_failures;
        std::printf("       FAILED: %s\n", detail.c_str());
    }
}

void expect_near(double value, double target, double tol, const std::string& what) {
    if (!(std::abs(value - target) <= tol)) {
        ++criterion_failures;
        std::printf("       FAILED: %s = %.12g, want %.12g +- %.3g\n", what.c_str(), value,
                    target, tol);
    }
}

void run_criterion(int number, const std::string& title, double time_limit_s,
                   const std::function<void()>& body) {
    criterion_failures = 0;
    const auto start = Clock::now();
    try {
        body();
    } catch (const std::exception& e) {
        ++criterion_failures;
        std::printf("       EXCEPTION: %s\n", e.what());
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed > time_limit_s) {
        ++criterion_failures;
        std::printf("       FAILED: runtime %.2fs exceeds %.0fs\n", elapsed, time_limit_s);
    }
    if (criterion_failures > 0) ++failures;
    std::printf("[%s] criterion %2d: %s (%.2fs)\n", criterion_failures == 0 ? "PASS" : "FAIL",
                number, title.c_str(), elapsed);
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// least-squares slope of log(y) against log(t)
double loglog_slope(const std::vector<double>& t, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double lx = std::log(t[i]);
        const double ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

int main() {
    const double kSqrt2 = std::sqrt(2.0);

    run_criterion(1, "2-site exact solution and time domain", 1.0, [&] {
        const auto sol = solve_exact(TightBindingChain::uniform(2), Partition{1}, InitialState{1});
        expect(sol.restricted.cosines.size() == 1, "P_r should be a single cosine");
        expect(std::abs(sol.restricted.constant) <= 1e-9, "P_r constant term");
        expect_near(sol.restricted.cosines.at(0).amplitude, 1.0, 1e-9, "P_r amplitude");
        expect_near(sol.restricted.cosines.at(0).frequency, kSqrt2, 1e-9, "P_r frequency");
        expect(sol.first_passage.sines.size() == 1, "P_fp should be a single sine");
        expect_near(sol.first_passage.sines.at(0).amplitude, kSqrt2, 1e-9, "P_fp amplitude");
        expect_near(sol.first_passage.sines.at(0).frequency, kSqrt2, 1e-9, "P_fp frequency");
        const auto T = find_time_domain(sol.restricted);
        expect(T.has_value(), "finite T expected");
        expect_near(*T, std::numbers::pi / (2.0 * kSqrt2), 1e-9, "T");
    });

    run_criterion(2, "3-site solution matches the published coefficients", 1.0, [&] {
        const auto sol = solve_exact(TightBindingChain::uniform(3), Partition{2}, InitialState{1});
        expect(sol.restricted.cosines.size() == 2, "P_r should carry two cosines");
        expect_near(sol.restricted.cosines.at(0).amplitude, 1.132, 2e-3, "amplitude 1");
        expect_near(sol.restricted.cosines.at(1).amplitude, -0.132, 2e-3, "amplitude 2");
        expect_near(sol.restricted.cosines.at(0).frequency, 0.915, 2e-3, "frequency 1");
        expect_near(sol.restricted.cosines.at(1).frequency, 2.676, 2e-3, "frequency 2");
        expect(sol.first_passage.sines.size() == 2, "P_fp should carry two sines");
        expect_near(sol.first_passage.sines.at(0).amplitude, 1.036, 2e-3, "P_fp amplitude 1");
        expect_near(sol.first_passage.sines.at(1).amplitude, -0.354, 2e-3, "P_fp amplitude 2");
        const auto T = find_time_domain(sol.restricted);
        expect(T.has_value(), "finite T expected");
        expect_near(*T, 1.72757, 2e-3, "T");
    });

    run_criterion(3, "4-site solution matches the published coefficients", 1.0, [&] {
        const auto sol = solve_exact(TightBindingChain::uniform(4), Partition{2}, InitialState{1});
        expect(sol.restricted.cosines.size() == 3, "P_r should carry three cosines");
        const double r_amp[3] = {0.954, 0.131, -0.085};
        const double freqs[3] = {0.754, 1.261, 2.973};
        const double f_amp[3] = {0.719, 0.165, -0.253};
        for (int i = 0; i < 3; ++i) {
            expect_near(sol.restricted.cosines.at(i).amplitude, r_amp[i], 2e-3,
                        "P_r amplitude " + std::to_string(i + 1));
            expect_near(sol.restricted.cosines.at(i).frequency, freqs[i], 2e-3,
                        "frequency " + std::to_string(i + 1));
            expect_near(sol.first_passage.sines.at(i).amplitude, f_amp[i], 2e-3,
                        "P_fp amplitude " + std::to_string(i + 1));
        }
        const auto T = find_time_domain(sol.restricted);
        expect(T.has_value(), "finite T expected");
        expect_near(*T, 1.86574, 2e-3, "T");
    });

    run_criterion(4, "volterra and exact pipelines agree; order-2 convergence", 30.0, [&] {
        for (int sites : {2, 3, 4}) {
            const TightBindingChain chain = TightBindingChain::uniform(sites);
            const Partition partition{sites == 2 ? 1 : 2};
            const InitialState start{1};
            const auto exact = solve_exact(chain, partition, start);
            const VolterraProblem problem = VolterraProblem::from_trigsums(
                survival_trigsum(chain, partition, start), return_kernel_trigsum(chain, partition));

            double dev_h = 0.0, dev_h2 = 0.0;
            for (int halvings = 0; halvings < 2; ++halvings) {
                const double h = halvings == 0 ? 1e-3 : 5e-4;
                const auto numeric = solve_volterra(problem, TimeGrid::from_step(2.0, h));
                double dev = 0.0;
                for (std::int64_t i = 0; i < numeric.grid.node_count(); ++i) {
                    const double t = numeric.grid.node(i);
                    const auto idx = static_cast<std::size_t>(i);
                    dev = std::max(dev, std::abs(numeric.restricted[idx] - exact.restricted(t)));
                    dev = std::max(dev,
                                   std::abs(numeric.first_passage[idx] - exact.first_passage(t)));
                }
                (halvings == 0 ? dev_h : dev_h2) = dev;
            }
            expect(dev_h <= 1e-5, "deviation " + std::to_string(dev_h) + " exceeds 1e-5 for n=" +
                                      std::to_string(sites));
            const double ratio = dev_h / dev_h2;
            expect(ratio >= 3.5 && ratio <= 4.5,
                   "halving ratio " + std::to_string(ratio) + " outside [3.5, 4.5] for n=" +
                       std::to_string(sites));
        }
    });

    run_criterion(5, "derivative and normalization structure of exact solutions", 1.0, [&] {
        for (int sites : {2, 3, 4}) {
            const auto sol = solve_exact(TightBindingChain::uniform(sites),
                                         Partition{sites == 2 ? 1 : 2}, InitialState{1});
            expect(sol.first_passage.sines.size() == sol.restricted.cosines.size(),
                   "mode counts differ");
            for (std::size_t i = 0; i < sol.restricted.cosines.size(); ++i) {
                const auto& c = sol.restricted.cosines[i];
                const auto& s = sol.first_passage.sines[i];
                expect_near(s.amplitude, c.frequency * c.amplitude, 1e-9,
                            "sine amplitude vs frequency * cosine amplitude");
            }
            expect_near(sol.restricted.value_at_zero(), 1.0, 1e-9, "P_r coefficient sum");
        }
    });

    run_criterion(6, "conditions (A)-(C) hold on the few-site systems", 5.0, [&] {
        for (int sites : {2, 3, 4}) {
            const auto sol = solve_exact(TightBindingChain::uniform(sites),
                                         Partition{sites == 2 ? 1 : 2}, InitialState{1});
            const auto T = find_time_domain(sol.restricted);
            expect(T.has_value(), "finite T expected");
            const auto report = check_conditions(sol.restricted, sol.first_passage, T);
            expect(report.monotonicity_violation <= 1e-9,
                   "P_r not monotone for n=" + std::to_string(sites));
            expect(report.positivity_violation >= -1e-6,
                   "P_fp negative for n=" + std::to_string(sites));
            expect(report.normalization_residual <= 1e-6,
                   "density mass " + std::to_string(report.normalization_residual) +
                       " off unity for n=" + std::to_string(sites));
        }
    });

    run_criterion(7, "elliptic identity for L[J0^2(2t)]", 10.0, [&] {
        // 10-point Gauss-Legendre panels on [0, 40]
        static const double x[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                    0.8650633666889845, 0.9739065285171717};
        static const double w[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                    0.1494513491505806, 0.0666713443086881};
        for (double s : {2.0, 3.0, 5.0}) {
            const int panels = 320;
            const double width = 40.0 / panels;
            double integral = 0.0;
            for (int p = 0; p < panels; ++p) {
                const double mid = (p + 0.5) * width;
                double acc = 0.0;
                for (int i = 0; i < 5; ++i) {
                    for (double sign : {-1.0, 1.0}) {
                        const double t = mid + sign * 0.5 * width * x[i];
                        const double j0 = bessel_j(0, 2.0 * t);
                        acc += w[i] * std::exp(-s * t) * j0 * j0;
                    }
                }
                integral += 0.5 * width * acc;
            }
            const double closed =
                2.0 / (std::numbers::pi * s) * elliptic_k(-16.0 / (s * s));
            expect_near(integral, closed, 1e-8, "identity at s=" + std::to_string(s));
        }
    });

    run_criterion(8, "lattice three-way agreement and leading small-time behavior", 60.0, [&] {
        const SmallTimeSeries series = small_time_series(12);
        auto lpr = [](std::complex<double> s) { return lattice_laplace_pr(s); };
        auto lpfp = [](std::complex<double> s) { return lattice_laplace_pfp(s); };

        const auto volterra = solve_lattice(TimeGrid::from_step(1.0, 1e-3), LatticeMethod::Volterra);
        double worst = 0.0;
        for (double t = 0.1; t <= 1.0 + 1e-12; t += 0.05) {
            const double from_series_pr = series.eval_restricted(t);
            const double from_series_pfp = series.eval_first_passage(t);
            const double inverted_pr = invert_laplace_numeric(lpr, t);
            const double inverted_pfp = invert_laplace_numeric(lpfp, t);
            const auto node = static_cast<std::size_t>(std::llround(t / 1e-3));
            const double volterra_pr = volterra.restricted[node];
            const double volterra_pfp = volterra.first_passage[node];
            worst = std::max({worst, std::abs(from_series_pr - inverted_pr),
                              std::abs(from_series_pfp - inverted_pfp),
                              std::abs(volterra_pr - inverted_pr),
                              std::abs(volterra_pfp - inverted_pfp),
                              std::abs(volterra_pr - from_series_pr),
                              std::abs(volterra_pfp - from_series_pfp)});
        }
        expect(worst <= 1e-4, "three-way disagreement " + std::to_string(worst));

        // slope fits on t in [1e-3, 1e-2] from a fine volterra solve
        const auto fine = solve_lattice(TimeGrid::from_step(1e-2, 1e-4), LatticeMethod::Volterra);
        std::vector<double> t_fit, pfp_fit, one_minus_pr;
        for (std::int64_t i = 10; i <= 100; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            t_fit.push_back(fine.grid.node(i));
            pfp_fit.push_back(fine.first_passage[idx]);
            one_minus_pr.push_back(1.0 - fine.restricted[idx]);
        }
        expect_near(loglog_slope(t_fit, pfp_fit), 1.0, 0.02, "P_fp leading slope");
        expect_near(loglog_slope(t_fit, one_minus_pr), 2.0, 0.02, "1 - P_r leading slope");
        expect_near(series.first_passage.at(1), 2.0, 1e-12, "P_fp linear coefficient");
        expect_near(series.restricted.at(2), -1.0, 1e-12, "P_r quadratic coefficient");
    });

    run_criterion(9, "classical baseline and monotonicity contrast", 10.0, [&] {
        const auto classical = classical_two_site(1.0, TimeGrid::from_step(10.0, 1e-3));
        double err = 0.0;
        bool decreasing = true;
        for (std::int64_t i = 0; i < classical.grid.node_count(); ++i) {
            const auto idx = static_cast<std::size_t>(i);
            err = std::max(err, std::abs(classical.first_passage[idx] -
                                         std::exp(-classical.grid.node(i))));
            if (i > 0 && classical.first_passage[idx] >
                             classical.first_passage[idx - 1] + 1e-12) {
                decreasing = false;
            }
        }
        expect(err <= 1e-5, "classical density deviates by " + std::to_string(err));
        const auto T = find_time_domain(classical.grid.nodes(), classical.restricted);
        expect(!T.has_value(), "classical restricted probability has no zero");
        expect(decreasing, "classical density should decrease monotonically");

        const auto quantum = solve_exact(TightBindingChain::uniform(2), Partition{1},
                                         InitialState{1});
        const auto Tq = find_time_domain(quantum.restricted);
        bool increasing = true;
        for (int i = 1; i <= 1000; ++i) {
            const double t0 = *Tq * (i - 1) / 1000;
            const double t1 = *Tq * i / 1000;
            if (quantum.first_passage(t1) < quantum.first_passage(t0) - 1e-12) increasing = false;
        }
        expect(increasing, "quantum 2-site density should increase on [0, T]");
    });

    run_criterion(10, "distant sites modify the quantum density", 5.0, [&] {
        const auto three = solve_exact(TightBindingChain::uniform(3), Partition{2},
                                       InitialState{1});
        const auto four = solve_exact(TightBindingChain::uniform(4), Partition{2},
                                      InitialState{1});
        double max_diff = 0.0;
        for (int i = 0; i <= 17000; ++i) {
            const double t = i * 1e-4;
            max_diff = std::max(max_diff,
                                std::abs(four.first_passage(t) - three.first_passage(t)));
        }
        expect(max_diff > 0.0, "densities should differ");
        expect(max_diff >= 0.05, "difference " + std::to_string(max_diff) + " below 0.05");
    });

    std::printf("RESULT: %s (%d/10 criteria passed)\n", failures == 0 ? "PASS" : "FAIL",
                10 - failures);
    return failures == 0 ? 0 : 1;
}
