// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.  Exit code is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <span>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "pentaspec/conditions.hpp"
#include "pentaspec/eigensolve.hpp"
#include "pentaspec/oracle.hpp"
#include "pentaspec/operators.hpp"
#include "pentaspec/recurrence.hpp"
#include "pentaspec/spectra.hpp"

using namespace pentaspec;
using pentaspec::testing::constant_model;
using pentaspec::testing::exponential_model;
using pentaspec::testing::override_model;
using pentaspec::testing::power_law_model;
using pentaspec::testing::random_profile;

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

int g_failures = 0;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

void run_criterion(int id, const std::string& name, const std::function<void(Check&)>& body,
                   double runtime_limit_seconds = 0.0) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check.pass = false;
        check.note(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (runtime_limit_seconds > 0.0 && seconds > runtime_limit_seconds) {
        check.pass = false;
        check.note("runtime " + fmt(seconds) + "s over the " + fmt(runtime_limit_seconds) +
                   "s budget");
    }
    if (!check.pass) ++g_failures;
    std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n", check.pass ? "PASS" : "FAIL", id,
                name.c_str(), seconds, check.detail.tellp() > 0 ? " -- " : "",
                check.detail.str().c_str());
    std::fflush(stdout);
}

std::vector<double> random_padded_vector(std::mt19937_64& rng, std::size_t len) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(len + 2, 0.0);
    for (std::size_t i = 0; i < len; ++i) x[i] = gauss(rng);
    return x;
}

// --------------------------------------------------------------------------
// 1. Essential-spectrum agreement: section eigenvalues of T0 vs the interval
//    union (containment within 1e-8, fill within 4/N).
// --------------------------------------------------------------------------
void criterion_1(Check& check) {
    std::mt19937_64 rng(1001);
    const std::int64_t n = 4096;
    double worst_containment = 0.0;
    double worst_fill = 0.0;
    double worst_fill_scaled = 0.0; // fill relative to the interval length
    for (int trial = 0; trial < 10; ++trial) {
        const LimitProfile profile = random_profile(rng);
        const SpectralSet predicted = essential_spectrum(profile);
        const SectionSpectrum spectrum =
            section_eigenvalues(BandOperator::limit(profile).truncate(n));
        for (const auto& ev : spectrum.eigenvalues) {
            worst_containment = std::max(worst_containment, predicted.distance(ev));
        }
        for (const Interval& iv : predicted.intervals()) {
            const double fill = fill_distance(iv, spectrum.eigenvalues);
            worst_fill = std::max(worst_fill, fill);
            worst_fill_scaled = std::max(worst_fill_scaled, fill / iv.length());
        }
    }
    const double fill_bound = 4.0 / static_cast<double>(n);
    check.require(worst_containment <= 1e-8,
                  "containment " + fmt(worst_containment) + " > 1e-8");
    check.require(worst_fill <= fill_bound,
                  "fill " + fmt(worst_fill) + " > 4/N = " + fmt(fill_bound));
    check.note("containment " + fmt(worst_containment) + ", fill " + fmt(worst_fill) +
               " (4/N = " + fmt(fill_bound) + ", fill/|interval| = " + fmt(worst_fill_scaled) +
               " vs 4/N)");
}

// --------------------------------------------------------------------------
// 2. Empty point spectrum of T0: solutions with y0 = 0, y1 = 1 never decay
//    and the shooting function has no zeros outside the collar.
// --------------------------------------------------------------------------
void criterion_2(Check& check) {
    std::mt19937_64 rng(1002);
    std::uniform_real_distribution<double> coord(-6.0, 6.0);
    const CoefficientModel model = constant_model(0, 0, 1, 1);
    for (int trial = 0; trial < 50; ++trial) {
        const Complex lambda(coord(rng), (trial % 4 == 0) ? coord(rng) / 3.0 : 0.0);
        const Chain chain = (trial % 2 == 0) ? Chain::odd : Chain::even;
        const auto y = forward_iterate(model, chain, lambda, 0.0, 1.0, 500);
        double max_abs = 0.0;
        for (const Complex& v : y) {
            max_abs = std::max(max_abs, std::abs(v));
            if (max_abs > 1e100) break;
        }
        check.require(max_abs >= 1.0, "solution decayed at lambda=" + fmt(lambda.real()));
    }

    // Shooting scan over 1000 real points outside the collar.
    std::int64_t zeros = 0;
    double min_abs = 1e300;
    double prev = 0.0;
    bool have_prev = false;
    for (int i = 0; i < 1000; ++i) {
        const double offset = 0.001 + 3.999 * static_cast<double>(i % 500) / 499.0;
        const double lambda = (i < 500) ? 2.0 + offset : -2.0 - offset;
        const Chain chain = (i % 2 == 0) ? Chain::odd : Chain::even;
        const double value = shoot(model, chain, ShootSide::direct, lambda).real();
        min_abs = std::min(min_abs, std::abs(value));
        if (have_prev && i != 500 && prev * value < 0.0) ++zeros;
        prev = value;
        have_prev = true;
    }
    check.require(zeros == 0, "found shooting sign changes for T0");
    check.require(min_abs > 0.1, "shooting residual dipped to " + fmt(min_abs));
    check.note("min |y0| over scan " + fmt(min_abs));
}

// --------------------------------------------------------------------------
// 3. Norm sandwich: sampled ratios within [lower, upper], witness exact.
// --------------------------------------------------------------------------
void criterion_3(Check& check) {
    std::mt19937_64 rng(1003);
    for (int profile_idx = 0; profile_idx < 5; ++profile_idx) {
        const LimitProfile profile = random_profile(rng);
        const BandOperator t0 = BandOperator::limit(profile);
        for (double p : {1.5, 2.0, 3.0}) {
            const NormBounds bounds = norm_bounds(profile, p);
            double sup = 0.0;
            for (int trial = 0; trial < 1000; ++trial) {
                const auto x = random_padded_vector(rng, 500);
                const double ratio = lp_norm(std::span<const double>(t0.apply(x)), p) /
                                     lp_norm(std::span<const double>(x), p);
                sup = std::max(sup, ratio);
                if (ratio > bounds.upper * (1.0 + 1e-12)) {
                    check.require(false, "ratio above upper bound at p=" + fmt(p));
                    break;
                }
            }
            check.require(sup >= bounds.lower,
                          "empirical sup " + fmt(sup) + " below lower bound " + fmt(bounds.lower));
            const std::vector<double> witness = {1.0, 1.0, 0.0, 0.0};
            const double witness_ratio =
                lp_norm(std::span<const double>(t0.apply(witness)), p) /
                lp_norm(std::span<const double>(witness), p);
            check.require(std::abs(witness_ratio - bounds.lower) <= 1e-12,
                          "witness ratio off by " + fmt(std::abs(witness_ratio - bounds.lower)));
        }
    }
}

// --------------------------------------------------------------------------
// 4. Closed form vs forward iteration through n = 50, degenerate cases exact.
// --------------------------------------------------------------------------
void criterion_4(Check& check) {
    std::mt19937_64 rng(1004);
    std::uniform_real_distribution<double> r_dist(-3.0, 3.0);
    std::uniform_real_distribution<double> s_dist(0.3, 2.0);
    std::uniform_real_distribution<double> coord(-6.0, 6.0);
    for (int trial = 0; trial < 200; ++trial) {
        const LimitProfile profile{r_dist(rng), r_dist(rng), s_dist(rng), s_dist(rng)};
        const Chain chain = (trial % 2 == 0) ? Chain::odd : Chain::even;
        const double r = (chain == Chain::odd) ? profile.r1 : profile.r2;
        const double s = (chain == Chain::odd) ? profile.s1 : profile.s2;
        Complex lambda(coord(rng), coord(rng));
        const bool degenerate_plus = (trial % 10 == 0);
        const bool degenerate_minus = (trial % 10 == 5);
        if (degenerate_plus) lambda = r - 2.0 * s;  // p = +2
        if (degenerate_minus) lambda = r + 2.0 * s; // p = -2
        const ClosedFormSolution sol = closed_form_T0(lambda, profile, chain, 1.0);
        const auto iter =
            forward_iterate(CoefficientModel::constant(profile), chain, lambda, 0.0, 1.0, 50);
        for (int n = 0; n <= 50; ++n) {
            const Complex closed = sol.value(n);
            const Complex stepped = iter[static_cast<std::size_t>(n)];
            const double scale = std::max({1.0, std::abs(closed), std::abs(stepped)});
            if (std::abs(closed - stepped) > 1e-9 * scale) {
                check.require(false, "closed/iterated mismatch at n=" + std::to_string(n));
                break;
            }
        }
        if (degenerate_plus) {
            for (int n = 0; n <= 10; ++n) {
                const Complex expected = static_cast<double>(n) * ((n % 2 == 0) ? -1.0 : 1.0);
                check.require(sol.value(n) == expected, "p=+2 ramp not exact");
            }
        }
        if (degenerate_minus) {
            for (int n = 0; n <= 10; ++n) {
                check.require(sol.value(n) == Complex(static_cast<double>(n)), "p=-2 ramp not exact");
            }
        }
    }
}

// --------------------------------------------------------------------------
// 5. Compactness tail: measured ||(K - K_n) x|| / ||x|| under tail_bound(n),
//    and the bound follows the exact geometric law of the rate.
// --------------------------------------------------------------------------
void criterion_5(Check& check) {
    std::mt19937_64 rng(1005);
    struct Setup {
        LimitProfile profile;
        double amp_a, amp_b, amp_c, rate;
    };
    const std::vector<Setup> setups = {
        {{0, 0, 1, 1}, 1.0, 2.0, 3.0, 0.5},
        {{1, -1, 1, 2}, 0.3, 0.3, 0.3, 0.8},
        {{-2, 3, 0.5, 1.5}, 0.5, 0.1, 0.2, 0.3},
    };
    const std::vector<std::int64_t> ns = {2, 4, 8, 16, 32};
    for (const Setup& setup : setups) {
        const CoefficientModel model =
            exponential_model(setup.profile.r1, setup.profile.r2, setup.profile.s1,
                              setup.profile.s2, setup.amp_a, setup.amp_b, setup.amp_c, setup.rate);
        const BandOperator k = BandOperator::perturbation(model);
        const PerturbationEntries entries(model);
        std::vector<double> bounds;
        for (std::int64_t n : ns) {
            const double bound = tail_bound(entries, n);
            bounds.push_back(bound);
            for (int trial = 0; trial < 100; ++trial) {
                const auto x = random_padded_vector(rng, 300);
                auto y = k.apply(x);
                for (std::int64_t i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = 0.0;
                const double ratio = lp_norm(std::span<const double>(y), 2.0) /
                                     lp_norm(std::span<const double>(x), 2.0);
                if (ratio > bound * (1.0 + 1e-12)) {
                    check.require(false, "measured " + fmt(ratio) + " above bound " + fmt(bound) +
                                             " at n=" + std::to_string(n));
                    break;
                }
            }
        }
        // tail_bound(n) = C rate^(n-1) exactly for single-rate models.
        for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
            const double expected =
                std::pow(setup.rate, static_cast<double>(ns[i + 1] - ns[i]));
            const double measured = bounds[i + 1] / bounds[i];
            check.require(std::abs(measured - expected) <= 1e-12 * expected,
                          "tail law violated: ratio " + fmt(measured) + " vs rate^dn " +
                              fmt(expected));
        }
    }
}

// --------------------------------------------------------------------------
// 6. Transfer-matrix identity: term_j = sigma_min, plus the three exact
//    values at the free profile.
// --------------------------------------------------------------------------
void criterion_6(Check& check) {
    std::mt19937_64 rng(1006);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    std::uniform_real_distribution<double> amp(-0.5, 0.5);
    std::uniform_real_distribution<double> rate(0.3, 0.9);
    for (int trial = 0; trial < 100; ++trial) {
        const LimitProfile profile = random_profile(rng, 3.0, 0.4, 2.0);
        const CoefficientModel model =
            exponential_model(profile.r1, profile.r2, profile.s1, profile.s2, amp(rng), amp(rng),
                              amp(rng), rate(rng));
        const Chain chain = (trial % 2 == 0) ? Chain::odd : Chain::even;
        const Complex lambda(coord(rng), coord(rng));
        const std::int64_t j = 1 + trial % 30;
        const auto terms = series_terms(model, chain, lambda, j);
        const double sigma = transfer_matrix(model, chain, j, lambda).sigma_min();
        check.require(std::abs(terms.back().term - sigma) <= 1e-10,
                      "term/sigma_min gap " + fmt(std::abs(terms.back().term - sigma)));
    }
    const CoefficientModel free_model = constant_model(0, 0, 1, 1);
    const double t0 = series_terms(free_model, Chain::odd, 0.0, 1)[0].term;
    const double t1 = series_terms(free_model, Chain::odd, 1.0, 1)[0].term;
    const double t2 = series_terms(free_model, Chain::odd, 2.0, 1)[0].term;
    check.require(std::abs(t0 - 1.0) <= 1e-10, "term(0) != 1");
    check.require(std::abs(t1 - (std::sqrt(5.0) - 1.0) / 2.0) <= 1e-10, "term(1) off");
    check.require(std::abs(t2 - std::sqrt(3.0 - 2.0 * std::sqrt(2.0))) <= 1e-10, "term(2) off");
    check.note("term(0)=" + fmt(t0) + ", term(1)=" + fmt(t1) + ", term(2)=" + fmt(t2));
}

// --------------------------------------------------------------------------
// 7. Discrete eigenvalue reproduction at the single-site model.
// --------------------------------------------------------------------------
void criterion_7(Check& check) {
    const CoefficientModel model = override_model(0, 0, 1, 1, {{Band::a, {1, 3.0}}});

    const auto odd = find_real_eigenvalues(model, Chain::odd, ShootSide::direct, 2.1, 10.0, 400);
    check.require(odd.size() == 1, "expected exactly one odd-chain eigenvalue, got " +
                                       std::to_string(odd.size()));
    if (odd.size() != 1) return;
    const double lambda = odd[0].lambda.real();

    auto closest_outside = [](const SectionSpectrum& s, double target) {
        double best = 1e300;
        for (const auto& ev : s.eigenvalues) {
            if (ev.real() > 2.0 + 1e-3) best = std::min(best, std::abs(ev - Complex(target)));
        }
        return best;
    };
    const SectionSpectrum s4000 = section_eigenvalues(BandOperator::full(model).truncate(4000));
    const SectionSpectrum s8000 = section_eigenvalues(BandOperator::full(model).truncate(8000));
    const double gap4000 = closest_outside(s4000, lambda);
    const double gap8000 = closest_outside(s8000, lambda);
    check.require(gap4000 <= 1e-6, "N=4000 gap " + fmt(gap4000) + " > 1e-6");
    check.require(gap8000 <= 1e-8, "N=8000 gap " + fmt(gap8000) + " > 1e-8");

    const auto even = find_real_eigenvalues(model, Chain::even, ShootSide::direct, 2.1, 10.0, 400);
    check.require(even.empty(), "even chain should be empty");
    const auto free_scan = find_real_eigenvalues(constant_model(0, 0, 1, 1), Chain::odd,
                                                 ShootSide::direct, 2.1, 10.0, 400);
    check.require(free_scan.empty(), "pure T0 scan should be empty");
    check.note("lambda = " + fmt(lambda) + ", N=4000 gap " + fmt(gap4000) + ", N=8000 gap " +
               fmt(gap8000));
}

// --------------------------------------------------------------------------
// 8. S1 = S2 for non-symmetric models.
// --------------------------------------------------------------------------
void criterion_8(Check& check) {
    const std::vector<CoefficientModel> models = {
        override_model(0, 0, 1, 1, {{Band::a, {1, 3.0}}, {Band::b, {1, 2.0}}}),
        override_model(0, 0, 1, 1, {{Band::a, {1, -3.0}}, {Band::c, {1, 0.5}}}),
        override_model(0, 0, 1, 1, {{Band::a, {2, 4.0}}, {Band::b, {2, 1.5}}}),
        override_model(0, 0, 1, 1, {{Band::a, {1, 2.8}}, {Band::b, {3, 1.4}}}),
        override_model(0, 0, 1, 1, {{Band::a, {2, -3.5}}, {Band::c, {2, 2.0}}}),
    };
    SearchRegion region;
    region.real_intervals = {{2.1, 10.0, 300}, {-10.0, -2.1, 300}};
    std::int64_t total = 0;
    for (std::size_t i = 0; i < models.size(); ++i) {
        try {
            const DiscreteSpectrumResult result = discrete_spectrum(models[i], region, true);
            check.require(result.direct.size() == result.adjoint.size(),
                          "model " + std::to_string(i) + ": S1/S2 size mismatch");
            for (const auto& rec : result.direct) {
                check.require(rec.matched_by_adjoint,
                              "model " + std::to_string(i) + ": unmatched eigenvalue");
                double best = 1e300;
                for (const auto& adj : result.adjoint) {
                    best = std::min(best, std::abs(adj.lambda - rec.lambda));
                }
                check.require(best <= 1e-6, "model " + std::to_string(i) +
                                                ": adjoint gap " + fmt(best));
            }
            total += static_cast<std::int64_t>(result.direct.size());
        } catch (const ConsistencyError& e) {
            check.require(false, "model " + std::to_string(i) + ": " + e.what());
        }
    }
    check.require(total >= 4, "too few discrete eigenvalues across the corpus");
    check.note(std::to_string(total) + " eigenvalues matched across 5 models");
}

// --------------------------------------------------------------------------
// 9. Sufficient-condition behavior: exponential decay guarantees absence on
//    the whole grid; power-law diverges at 0 and converges at the edges.
// --------------------------------------------------------------------------
void criterion_9(Check& check) {
    const CoefficientModel exp_model = exponential_model(0, 0, 1, 1, 0.1, 0.1, 0.1, 0.5);
    for (int i = 0; i <= 100; ++i) {
        const double lambda = -2.0 + 4.0 * static_cast<double>(i) / 100.0;
        const NoEmbeddedVerdict v = no_embedded_eigenvalue(exp_model, lambda);
        if (v.status != EmbeddedStatus::guaranteed_absent) {
            check.require(false, "exp model not guaranteed at lambda=" + fmt(lambda));
            break;
        }
    }
    const CoefficientModel pl_model = power_law_model(0, 0, 1, 1, 0.1, 2.0);
    const DivergenceVerdict center = divergence_check(pl_model, Chain::odd, 0.0);
    check.require(center.status == DivergenceStatus::diverges, "power-law at 0 should diverge");
    for (double edge : {2.0, -2.0}) {
        const DivergenceVerdict v = divergence_check(pl_model, Chain::odd, edge);
        check.require(v.status == DivergenceStatus::converges,
                      "power-law at " + fmt(edge) + " should converge (one-sidedness)");
    }
}

// --------------------------------------------------------------------------
// 10. Fine-spectrum subdivision identities as exact set computations.
// --------------------------------------------------------------------------
void criterion_10(Check& check) {
    std::mt19937_64 rng(1010);
    for (int trial = 0; trial < 10; ++trial) {
        const LimitProfile profile = random_profile(rng);
        const FineSpectrumReport report = fine_spectrum_T0(profile);
        check.require(report.identities_hold(), "T0 report identities failed");
    }
    // T reports with discrete points, real and complex.
    {
        SpectralSet discrete;
        discrete.add_point({{2.5, 0.0}, Chain::odd, 1e-10});
        discrete.add_point({{-3.25, 0.75}, Chain::even, 2e-9});
        const FineSpectrumReport report = fine_spectrum_T({0, 0, 1, 1}, discrete);
        check.require(report.identities_hold(), "T report identities failed");
    }
    {
        const CoefficientModel model = override_model(0, 0, 1, 1, {{Band::a, {1, 3.0}}});
        SearchRegion region;
        region.real_intervals = {{2.1, 10.0, 200}};
        const DiscreteSpectrumResult found = discrete_spectrum(model, region, true);
        const FineSpectrumReport report =
            fine_spectrum_T(model.limit_profile(), found.set);
        check.require(report.identities_hold(), "single-site report identities failed");
        check.require(report.point.points().size() == 1, "single-site report missing its point");
    }
}

} // namespace

int main() {
    std::printf("pentaspec acceptance suite\n");
    run_criterion(1, "essential-spectrum agreement (containment 1e-8, fill 4/N)", criterion_1,
                  60.0);
    run_criterion(2, "empty point spectrum of T0", criterion_2);
    run_criterion(3, "norm sandwich with exact witness", criterion_3);
    run_criterion(4, "closed form vs iteration through n=50", criterion_4);
    run_criterion(5, "compactness tail bound", criterion_5);
    run_criterion(6, "transfer-matrix identity", criterion_6);
    run_criterion(7, "discrete eigenvalue reproduction", criterion_7, 120.0);
    run_criterion(8, "S1 = S2 for non-symmetric models", criterion_8);
    run_criterion(9, "sufficient-condition behavior", criterion_9);
    run_criterion(10, "fine-spectrum subdivision identities", criterion_10);
    if (g_failures == 0) {
        std::printf("all criteria passed\n");
    } else {
        std::printf("%d criterion(s) failed\n", g_failures);
    }
    return g_failures;
}
