// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <random>

#include "pentaspec/coeffs.hpp"

namespace pentaspec::testing {

/// T0-style model: all bands constant at the profile limits.
inline CoefficientModel constant_model(double r1, double r2, double s1, double s2) {
    return CoefficientModel::constant({r1, r2, s1, s2});
}

/// Constant limits plus finitely many single-entry overrides.
inline CoefficientModel override_model(double r1, double r2, double s1, double s2,
                                       std::vector<std::pair<Band, std::pair<std::int64_t, double>>>
                                           overrides) {
    CoefficientModel m = constant_model(r1, r2, s1, s2);
    m.a.kind = BandKind::finite_support;
    m.b.kind = BandKind::finite_support;
    m.c.kind = BandKind::finite_support;
    for (const auto& [band, entry] : overrides) {
        switch (band) {
        case Band::a: m.a.overrides.push_back(entry); break;
        case Band::b: m.b.overrides.push_back(entry); break;
        case Band::c: m.c.overrides.push_back(entry); break;
        }
    }
    return m;
}

/// All three bands exponential with the given amplitudes and one rate.
inline CoefficientModel exponential_model(double r1, double r2, double s1, double s2,
                                          double amp_a, double amp_b, double amp_c, double rate) {
    CoefficientModel m = constant_model(r1, r2, s1, s2);
    for (BandSpec* spec : {&m.a, &m.b, &m.c}) spec->kind = BandKind::exponential;
    m.a.amplitude = amp_a;
    m.b.amplitude = amp_b;
    m.c.amplitude = amp_c;
    m.a.rate = m.b.rate = m.c.rate = rate;
    return m;
}

/// All three bands power-law with one exponent.
inline CoefficientModel power_law_model(double r1, double r2, double s1, double s2, double amplitude,
                                        double exponent) {
    CoefficientModel m = constant_model(r1, r2, s1, s2);
    for (BandSpec* spec : {&m.a, &m.b, &m.c}) {
        spec->kind = BandKind::power_law;
        spec->amplitude = amplitude;
        spec->exponent = exponent;
    }
    return m;
}

inline LimitProfile random_profile(std::mt19937_64& rng, double r_max = 5.0, double s_min = 0.2,
                                   double s_max = 3.0) {
    std::uniform_real_distribution<double> r_dist(-r_max, r_max);
    std::uniform_real_distribution<double> s_dist(s_min, s_max);
    return {r_dist(rng), r_dist(rng), s_dist(rng), s_dist(rng)};
}

} // namespace pentaspec::testing
