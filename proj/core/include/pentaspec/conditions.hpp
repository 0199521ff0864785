// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pentaspec/recurrence.hpp"

namespace pentaspec {

/// One term of the absence-of-point-spectrum series:
///   term_j = [ (P_j - sqrt(P_j^2 - |2 cc_j/bb_j|^2)) / 2 ]^(1/2)
/// with P_j (odd chain; Q_j even) = |cc_j/bb_j|^2 + |(aa_j - lambda)/bb_j|^2 + 1.
/// Algebraically term_j is the smallest singular value of the j-th transfer
/// matrix: P is its squared Frobenius norm and |cc/bb| its determinant modulus.
struct ConditionTerm {
    std::int64_t j = 0;
    double p_value = 0.0;     // P_j (odd) or Q_j (even)
    double term = 0.0;
    double ratio_c_sq = 0.0;  // |cc_j/bb_j|^2
    double ratio_a_sq = 0.0;  // |(aa_j - lambda)/bb_j|^2
};

enum class DivergenceStatus { diverges, converges, inconclusive };

const char* to_string(DivergenceStatus status);

struct SeriesCheckpoint {
    std::int64_t n = 0;
    double partial_sum = 0.0;
    double product = 0.0;
};

/// Three-valued verdict on Sum_n Prod_{j<=n} term_j = +infinity, with the
/// certificates that justify it.
struct DivergenceVerdict {
    Chain chain = Chain::odd;
    DivergenceStatus status = DivergenceStatus::inconclusive;
    double partial_sum = 0.0;
    std::int64_t terms_used = 0;
    std::vector<SeriesCheckpoint> checkpoints;
    std::vector<ConditionTerm> first_terms; // first 20 terms for audit
    double term_limit = 0.0;                // analytic limit of term_j from the profile
    double geometric_q = 0.0;               // certified tail ratio when converges
    double tail_estimate = 0.0;             // remaining-sum bound when converges
    std::string reason;
    // P_j is evaluated as |cc_j/bb_j|^2 + |(aa_j - lambda)/bb_j|^2 + 1, the
    // reading consistent with the transfer-matrix Frobenius norm.
    std::string formula_note = "P_j = |c/b|^2 + |(a-lambda)/b|^2 + 1";
};

enum class RateStatus { holds, fails, unknown };

const char* to_string(RateStatus status);

struct BandRateCertificate {
    Band band = Band::a;
    Chain chain = Chain::odd;
    RateStatus status = RateStatus::unknown;
    double rate = 0.0; // certified (closed-form kinds) or log-linear fitted (tables)
    std::string note;
};

/// Verdict of the exponential-convergence hypothesis over all six
/// subsequences, with the per-subsequence certificates.
struct RateCheckResult {
    RateStatus status = RateStatus::unknown;
    std::vector<BandRateCertificate> certificates;
};

/// Exponentially-fast-convergence check: holds for constant / exponential /
/// finite-support bands, fails for power-law, unknown (with a fitted-rate
/// certificate) for explicit tables.
RateCheckResult exponential_rate_check(const CoefficientModel& model);

struct SeriesOptions {
    std::int64_t n_max = 10'000;
    double threshold = 1e6;
};

/// Terms for j = 1..n_max; every term is cross-checked against the smallest
/// singular value of the corresponding transfer matrix (1e-10).
std::vector<ConditionTerm> series_terms(const CoefficientModel& model, Chain chain,
                                        std::complex<double> lambda, std::int64_t n_max);

/// Analytic limit of term_j computed from the limit profile alone.
double limit_term(const LimitProfile& profile, Chain chain, std::complex<double> lambda);

/// Decide divergence of the series at lambda in the essential spectrum.
/// DomainError when lambda lies outside the essential spectrum.
DivergenceVerdict divergence_check(const CoefficientModel& model, Chain chain,
                                   std::complex<double> lambda, const SeriesOptions& opts = {});

enum class EmbeddedStatus { guaranteed_absent, not_guaranteed };

const char* to_string(EmbeddedStatus status);

struct NoEmbeddedVerdict {
    EmbeddedStatus status = EmbeddedStatus::not_guaranteed;
    std::string fired; // which condition certified absence
    RateCheckResult rate_check;
    std::optional<DivergenceVerdict> odd_series;
    std::optional<DivergenceVerdict> even_series;
};

/// lambda (in the essential spectrum) is guaranteed absent from the point
/// spectrum when the exponential-rate hypothesis holds or either chain's
/// series diverges; otherwise not-guaranteed, with per-condition reasons.
NoEmbeddedVerdict no_embedded_eigenvalue(const CoefficientModel& model,
                                         std::complex<double> lambda,
                                         const SeriesOptions& opts = {});

} // namespace pentaspec
