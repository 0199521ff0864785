// SPDX-License-Identifier: Apache-2.0
#include "pentaspec/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pentaspec {

const char* to_string(Band band) {
    switch (band) {
    case Band::a: return "a";
    case Band::b: return "b";
    case Band::c: return "c";
    }
    return "?";
}

const char* to_string(BandKind kind) {
    switch (kind) {
    case BandKind::constant: return "constant";
    case BandKind::exponential: return "exponential";
    case BandKind::power_law: return "power-law";
    case BandKind::finite_support: return "finite-support";
    case BandKind::explicit_table: return "explicit-table";
    }
    return "?";
}

const char* to_string(Chain chain) {
    return chain == Chain::odd ? "odd-chain" : "even-chain";
}

BandKind band_kind_from_string(const std::string& name) {
    if (name == "constant") return BandKind::constant;
    if (name == "exponential") return BandKind::exponential;
    if (name == "power-law") return BandKind::power_law;
    if (name == "finite-support") return BandKind::finite_support;
    if (name == "explicit-table") return BandKind::explicit_table;
    throw ConfigError("unknown band kind '" + name + "'");
}

void LimitProfile::validate() const {
    for (double v : {r1, r2, s1, s2}) {
        if (!std::isfinite(v)) throw ModelError("limit profile contains a non-finite value");
    }
    if (s1 == 0.0) throw ModelError("limit s1 must be nonzero");
    if (s2 == 0.0) throw ModelError("limit s2 must be nonzero");
}

namespace {

const double* find_override(const std::vector<std::pair<std::int64_t, double>>& ovr,
                            std::int64_t n) {
    for (const auto& [idx, val] : ovr) {
        if (idx == n) return &val;
    }
    return nullptr;
}

} // namespace

double BandSpec::entry(std::int64_t n) const {
    if (n < 1) throw DomainError("band entry index must be >= 1");
    if (const double* v = find_override(overrides, n)) return *v;
    switch (kind) {
    case BandKind::constant:
    case BandKind::finite_support:
        return limit(n);
    case BandKind::exponential:
        return limit(n) + amplitude * std::pow(rate, static_cast<double>(n));
    case BandKind::power_law:
        return limit(n) + amplitude * std::pow(static_cast<double>(n), -exponent);
    case BandKind::explicit_table:
        if (n <= static_cast<std::int64_t>(table.size())) return table[static_cast<std::size_t>(n - 1)];
        return limit(n);
    }
    throw DomainError("invalid band kind");
}

double BandSpec::deviation(std::int64_t n) const {
    return std::abs(entry(n) - limit(n));
}

double BandSpec::tail_sup(std::int64_t m) const {
    if (m < 1) m = 1;
    double sup = 0.0;
    // Analytic envelope of the kind's own decay.
    switch (kind) {
    case BandKind::constant:
    case BandKind::finite_support:
        break;
    case BandKind::exponential:
        sup = std::abs(amplitude) * std::pow(rate, static_cast<double>(m));
        break;
    case BandKind::power_law:
        sup = std::abs(amplitude) * std::pow(static_cast<double>(m), -exponent);
        break;
    case BandKind::explicit_table:
        for (std::int64_t k = m; k <= static_cast<std::int64_t>(table.size()); ++k) {
            sup = std::max(sup, std::abs(table[static_cast<std::size_t>(k - 1)] - limit(k)));
        }
        break;
    }
    // Overrides can sit anywhere in the tail.
    for (const auto& [idx, val] : overrides) {
        if (idx >= m) sup = std::max(sup, std::abs(val - limit(idx)));
    }
    return sup;
}

void BandSpec::validate(const std::string& band_name) const {
    auto fail = [&](const std::string& msg) { throw ModelError("band " + band_name + ": " + msg); };
    for (double v : {odd_limit, even_limit, amplitude, rate, exponent}) {
        if (!std::isfinite(v)) fail("non-finite parameter");
    }
    if (kind == BandKind::exponential && !(rate > 0.0 && rate < 1.0)) {
        fail("exponential rate must lie in (0,1)");
    }
    if (kind == BandKind::power_law && !(exponent > 0.0)) {
        fail("power-law exponent must be positive");
    }
    for (const auto& [idx, val] : overrides) {
        if (idx < 1) fail("override index must be >= 1");
        if (!std::isfinite(val)) fail("override value must be finite");
    }
    for (std::size_t i = 0; i < overrides.size(); ++i) {
        for (std::size_t j = i + 1; j < overrides.size(); ++j) {
            if (overrides[i].first == overrides[j].first) fail("duplicate override index");
        }
    }
    if (kind == BandKind::explicit_table) {
        if (table.empty()) fail("explicit-table requires a non-empty table");
        if (settle_index < 1 || settle_index > static_cast<std::int64_t>(table.size())) {
            fail("settle index must lie within the table");
        }
        for (double v : table) {
            if (!std::isfinite(v)) fail("table value must be finite");
        }
        // Deviations must settle: non-increasing along each parity subsequence
        // beyond the settle index (odd and even entries approach different limits).
        for (std::int64_t n = settle_index; n + 2 <= static_cast<std::int64_t>(table.size()); ++n) {
            if (deviation(n + 2) > deviation(n) + 1e-15) {
                fail("table deviations increase beyond the settle index at n=" + std::to_string(n + 2));
            }
        }
    }
}

void CoefficientModel::validate() const {
    a.validate("a");
    b.validate("b");
    c.validate("c");
    limit_profile().validate();
}

double CoefficientModel::entry(Band which, std::int64_t n) const {
    return band(which).entry(n);
}

const BandSpec& CoefficientModel::band(Band which) const {
    switch (which) {
    case Band::a: return a;
    case Band::b: return b;
    case Band::c: return c;
    }
    throw DomainError("invalid band");
}

LimitProfile CoefficientModel::limit_profile() const {
    if (b.odd_limit != c.odd_limit || b.even_limit != c.even_limit) {
        throw ModelError("b-band and c-band must declare identical limits (s1, s2)");
    }
    LimitProfile profile{a.odd_limit, a.even_limit, b.odd_limit, b.even_limit};
    profile.validate();
    return profile;
}

bool CoefficientModel::is_limit_model() const {
    for (const BandSpec* s : {&a, &b, &c}) {
        if (s->tail_sup(1) != 0.0) return false;
    }
    return true;
}

CoefficientModel CoefficientModel::constant(const LimitProfile& profile) {
    profile.validate();
    CoefficientModel m;
    m.a.kind = BandKind::constant;
    m.a.odd_limit = profile.r1;
    m.a.even_limit = profile.r2;
    m.b.kind = BandKind::constant;
    m.b.odd_limit = profile.s1;
    m.b.even_limit = profile.s2;
    m.c = m.b;
    return m;
}

} // namespace pentaspec
