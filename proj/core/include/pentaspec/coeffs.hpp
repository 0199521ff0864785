// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pentaspec/errors.hpp"

namespace pentaspec {

/// The three non-zero bands of the penta-diagonal operator:
/// row n holds c_{n-2} at column n-2, a_n on the diagonal, b_n at column n+2.
enum class Band { a, b, c };

enum class BandKind {
    constant,
    exponential,
    power_law,
    finite_support,
    explicit_table,
};

/// The operator decouples into two tridiagonal chains: the odd chain acts on
/// indices 1,3,5,... and the even chain on 2,4,6,...
enum class Chain { odd, even };

const char* to_string(Band band);
const char* to_string(BandKind kind);
const char* to_string(Chain chain);
BandKind band_kind_from_string(const std::string& name);

/// Limits of the odd/even subsequences of the three bands.
/// a_{2n-1} -> r1, a_{2n} -> r2, b/c odd -> s1, b/c even -> s2.
struct LimitProfile {
    double r1 = 0.0;
    double r2 = 0.0;
    double s1 = 1.0;
    double s2 = 1.0;

    /// Throws ModelError when an s-limit is zero or any value non-finite.
    void validate() const;
};

/// One band's generator.  All kinds converge to the declared odd/even limits;
/// overrides pin individual entries and take precedence for every kind.
///
/// entry(n) before overrides:
///   constant        limit(parity of n)
///   exponential     limit + amplitude * rate^n           (0 < rate < 1)
///   power_law       limit + amplitude * n^(-exponent)    (exponent > 0)
///   finite_support  limit                                (overrides carry the support)
///   explicit_table  table[n-1] for n <= table size, limit beyond it
struct BandSpec {
    BandKind kind = BandKind::constant;
    double odd_limit = 0.0;
    double even_limit = 0.0;
    double amplitude = 0.0;
    double rate = 0.5;
    double exponent = 1.0;
    std::vector<std::pair<std::int64_t, double>> overrides;
    std::vector<double> table;       // explicit_table: entries for n = 1..size
    std::int64_t settle_index = 1;   // explicit_table: deviations non-increasing beyond it

    double limit(std::int64_t n) const { return (n % 2 != 0) ? odd_limit : even_limit; }
    double entry(std::int64_t n) const;

    /// |entry(n) - limit(parity of n)|, the band's contribution to the
    /// compact-perturbation entries u/v/w.
    double deviation(std::int64_t n) const;

    /// sup_{k >= m} |entry(k) - limit(parity of k)|.  Analytic envelope for
    /// closed-form kinds, finite scan for tables; overrides always scanned.
    double tail_sup(std::int64_t m) const;

    void validate(const std::string& band_name) const;
};

/// Generator of the three band sequences {a_n}, {b_n}, {c_n} with declared
/// odd/even limits.  The b and c bands must share their limits (s1, s2),
/// both nonzero; all parameters are real.
struct CoefficientModel {
    BandSpec a;
    BandSpec b;
    BandSpec c;

    void validate() const;

    /// n-th entry of the requested band, n >= 1.  Throws DomainError for n < 1.
    double entry(Band band, std::int64_t n) const;

    const BandSpec& band(Band which) const;

    /// (r1, r2, s1, s2) from the declared limits.  Throws ModelError when the
    /// b and c declared limits disagree or an s-limit is zero.
    LimitProfile limit_profile() const;

    /// True when every entry of every band equals its limit (K = 0).
    bool is_limit_model() const;

    /// Model whose three bands are constant at the profile's limits (T = T0).
    static CoefficientModel constant(const LimitProfile& profile);
};

} // namespace pentaspec
