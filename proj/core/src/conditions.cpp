// SPDX-License-Identifier: Apache-2.0
#include "pentaspec/conditions.hpp"

#include <algorithm>
#include <cmath>

namespace pentaspec {

const char* to_string(DivergenceStatus status) {
    switch (status) {
    case DivergenceStatus::diverges: return "diverges";
    case DivergenceStatus::converges: return "converges";
    case DivergenceStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(RateStatus status) {
    switch (status) {
    case RateStatus::holds: return "holds";
    case RateStatus::fails: return "fails";
    case RateStatus::unknown: return "unknown";
    }
    return "?";
}

const char* to_string(EmbeddedStatus status) {
    switch (status) {
    case EmbeddedStatus::guaranteed_absent: return "guaranteed-absent";
    case EmbeddedStatus::not_guaranteed: return "not-guaranteed";
    }
    return "?";
}

namespace {

BandRateCertificate band_rate(const BandSpec& spec, Band band, Chain chain) {
    BandRateCertificate cert;
    cert.band = band;
    cert.chain = chain;
    switch (spec.kind) {
    case BandKind::constant:
        cert.status = RateStatus::holds;
        cert.rate = 0.0;
        cert.note = "constant band, zero perturbation";
        return cert;
    case BandKind::finite_support:
        cert.status = RateStatus::holds;
        cert.rate = 0.0;
        cert.note = "finite support, rate 0 beyond the last override";
        return cert;
    case BandKind::exponential:
        cert.status = RateStatus::holds;
        cert.rate = spec.rate;
        cert.note = "exponential decay by construction";
        return cert;
    case BandKind::power_law:
        cert.status = RateStatus::fails;
        cert.rate = 1.0;
        cert.note = "power-law decay is not O(q^n) for any q < 1";
        return cert;
    case BandKind::explicit_table:
        break;
    }
    // Log-linear fit of the deviations along this parity beyond the settle index.
    const std::int64_t first = (chain == Chain::odd) ? (spec.settle_index % 2 != 0 ? spec.settle_index
                                                                                   : spec.settle_index + 1)
                                                     : (spec.settle_index % 2 == 0 ? spec.settle_index
                                                                                   : spec.settle_index + 1);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::int64_t count = 0;
    for (std::int64_t n = first; n <= static_cast<std::int64_t>(spec.table.size()); n += 2) {
        const double dev = spec.deviation(n);
        if (dev <= 0.0) continue;
        const double x = static_cast<double>(n);
        const double y = std::log(dev);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    cert.status = RateStatus::unknown;
    if (count == 0) {
        // Every tail deviation is exactly zero: the subsequence is eventually
        // constant at its limit.
        cert.status = RateStatus::holds;
        cert.rate = 0.0;
        cert.note = "table deviations vanish beyond the settle index";
        return cert;
    }
    if (count >= 2) {
        const double denom = static_cast<double>(count) * sxx - sx * sx;
        const double slope = (denom != 0.0) ? (static_cast<double>(count) * sxy - sx * sy) / denom : 0.0;
        cert.rate = std::exp(slope);
    } else {
        cert.rate = 1.0;
    }
    cert.note = "finite table: fitted rate only, hypothesis undecidable";
    return cert;
}

} // namespace

RateCheckResult exponential_rate_check(const CoefficientModel& model) {
    model.validate();
    RateCheckResult result;
    for (Band band : {Band::a, Band::b, Band::c}) {
        for (Chain chain : {Chain::odd, Chain::even}) {
            result.certificates.push_back(band_rate(model.band(band), band, chain));
        }
    }
    bool any_fails = false;
    bool any_unknown = false;
    for (const auto& cert : result.certificates) {
        any_fails = any_fails || cert.status == RateStatus::fails;
        any_unknown = any_unknown || cert.status == RateStatus::unknown;
    }
    result.status = any_fails ? RateStatus::fails
                              : (any_unknown ? RateStatus::unknown : RateStatus::holds);
    return result;
}

namespace {

ConditionTerm make_term(const ChainCoefficients& coeff, std::int64_t j, std::complex<double> lambda) {
    const double b = coeff.bb(j);
    if (b == 0.0) {
        throw PivotError("zero b-band entry at index " + std::to_string(coeff.b_index(j)));
    }
    ConditionTerm term;
    term.j = j;
    term.ratio_c_sq = std::norm(std::complex<double>(coeff.cc(j)) / b);
    term.ratio_a_sq = std::norm((std::complex<double>(coeff.aa(j)) - lambda) / b);
    term.p_value = term.ratio_c_sq + term.ratio_a_sq + 1.0;
    const double p = term.p_value;
    double disc = p * p - 4.0 * term.ratio_c_sq; // |2c/b|^2 = 4|c/b|^2
    if (disc < -1e-12 * std::max(1.0, p * p)) {
        throw DomainError("negative discriminant in condition term at j=" + std::to_string(j));
    }
    disc = std::max(disc, 0.0);
    term.term = std::sqrt(0.5 * (p - std::sqrt(disc)));
    return term;
}

} // namespace

std::vector<ConditionTerm> series_terms(const CoefficientModel& model, Chain chain,
                                        std::complex<double> lambda, std::int64_t n_max) {
    if (n_max < 1) throw DomainError("series needs n_max >= 1");
    model.validate();
    const ChainCoefficients coeff{model, chain};
    std::vector<ConditionTerm> terms;
    terms.reserve(static_cast<std::size_t>(n_max));
    for (std::int64_t j = 1; j <= n_max; ++j) {
        ConditionTerm term = make_term(coeff, j, lambda);
        // Cross-check against the smallest singular value of the transfer matrix.
        const double sigma = transfer_matrix(model, chain, j, lambda).sigma_min();
        if (std::abs(term.term - sigma) > 1e-10) {
            throw ConsistencyError("condition term disagrees with transfer-matrix sigma_min at j=" +
                                   std::to_string(j));
        }
        terms.push_back(term);
    }
    return terms;
}

double limit_term(const LimitProfile& profile, Chain chain, std::complex<double> lambda) {
    profile.validate();
    const double s = (chain == Chain::odd) ? profile.s1 : profile.s2;
    const double r = (chain == Chain::odd) ? profile.r1 : profile.r2;
    const double ratio_a_sq = std::norm((std::complex<double>(r) - lambda) / s);
    const double p = 2.0 + ratio_a_sq;
    const double disc = std::max(p * p - 4.0, 0.0);
    return std::sqrt(0.5 * (p - std::sqrt(disc)));
}

DivergenceVerdict divergence_check(const CoefficientModel& model, Chain chain,
                                   std::complex<double> lambda, const SeriesOptions& opts) {
    model.validate();
    const LimitProfile profile = model.limit_profile();
    const SpectralSet ess = essential_spectrum(profile);
    if (ess.distance(lambda) > 1e-12) {
        throw DomainError("divergence check applies only inside the essential spectrum");
    }

    DivergenceVerdict verdict;
    verdict.chain = chain;
    verdict.term_limit = limit_term(profile, chain, lambda);

    const ChainCoefficients coeff{model, chain};
    double product = 1.0;
    double sum = 0.0;
    std::int64_t next_checkpoint = 1;
    double tail_max_term = 0.0; // max term over the trailing window
    const std::int64_t window = std::max<std::int64_t>(16, opts.n_max / 10);
    std::vector<double> recent;
    recent.reserve(static_cast<std::size_t>(window));

    std::int64_t n = 0;
    for (n = 1; n <= opts.n_max; ++n) {
        ConditionTerm term = make_term(coeff, n, lambda);
        if (static_cast<std::int64_t>(verdict.first_terms.size()) < 20) {
            verdict.first_terms.push_back(term);
        }
        product *= term.term;
        sum += product;
        if (static_cast<std::int64_t>(recent.size()) < window) {
            recent.push_back(term.term);
        } else {
            recent[static_cast<std::size_t>((n - 1) % window)] = term.term;
        }
        if (n == next_checkpoint || n == opts.n_max) {
            verdict.checkpoints.push_back({n, sum, product});
            next_checkpoint *= 2;
        }
        if (sum > opts.threshold) {
            verdict.status = DivergenceStatus::diverges;
            verdict.reason = "partial sum exceeded threshold " + std::to_string(opts.threshold);
            break;
        }
    }
    verdict.terms_used = std::min(n, opts.n_max);
    verdict.partial_sum = sum;
    if (verdict.status == DivergenceStatus::diverges) return verdict;

    if (verdict.term_limit >= 1.0 - 1e-9) {
        verdict.status = DivergenceStatus::diverges;
        verdict.reason = "terms tend to the analytic limit " + std::to_string(verdict.term_limit) +
                         " >= 1, so the products cannot vanish";
        return verdict;
    }

    // Geometric tail: the analytic limit is < 1; certify that the observed
    // trailing terms already sit below the midpoint ratio q.
    const double q = std::min((1.0 + verdict.term_limit) / 2.0, 1.0 - 1e-6);
    tail_max_term = 0.0;
    for (double t : recent) tail_max_term = std::max(tail_max_term, t);
    if (!recent.empty() && tail_max_term <= q) {
        verdict.status = DivergenceStatus::converges;
        verdict.geometric_q = q;
        verdict.tail_estimate = product * q / (1.0 - q);
        verdict.reason = "terms eventually bounded by q = " + std::to_string(q) +
                         " < 1 (limit profile certificate)";
        return verdict;
    }

    verdict.status = DivergenceStatus::inconclusive;
    verdict.reason = "no divergence threshold reached and no geometric tail certified";
    return verdict;
}

NoEmbeddedVerdict no_embedded_eigenvalue(const CoefficientModel& model,
                                         std::complex<double> lambda, const SeriesOptions& opts) {
    model.validate();
    const SpectralSet ess = essential_spectrum(model.limit_profile());
    if (ess.distance(lambda) > 1e-12) {
        throw DomainError("embedded-eigenvalue check applies only inside the essential spectrum");
    }

    NoEmbeddedVerdict verdict;
    verdict.rate_check = exponential_rate_check(model);
    if (verdict.rate_check.status == RateStatus::holds) {
        verdict.status = EmbeddedStatus::guaranteed_absent;
        verdict.fired = "exponential-rate hypothesis";
        return verdict;
    }
    verdict.odd_series = divergence_check(model, Chain::odd, lambda, opts);
    if (verdict.odd_series->status == DivergenceStatus::diverges) {
        verdict.status = EmbeddedStatus::guaranteed_absent;
        verdict.fired = "odd-chain series divergence";
        return verdict;
    }
    verdict.even_series = divergence_check(model, Chain::even, lambda, opts);
    if (verdict.even_series->status == DivergenceStatus::diverges) {
        verdict.status = EmbeddedStatus::guaranteed_absent;
        verdict.fired = "even-chain series divergence";
        return verdict;
    }
    verdict.status = EmbeddedStatus::not_guaranteed;
    verdict.fired = "";
    return verdict;
}

} // namespace pentaspec
