// SPDX-License-Identifier: Apache-2.0
#include "pentaspec/operators.hpp"

#include <cmath>
#include <sstream>

namespace pentaspec {

const char* to_string(OperatorSource source) {
    switch (source) {
    case OperatorSource::T: return "T";
    case OperatorSource::T0: return "T0";
    case OperatorSource::K: return "K";
    }
    return "?";
}

PerturbationEntries::PerturbationEntries(CoefficientModel m) : model(std::move(m)) {
    model.validate();
}

FiniteSection FiniteSection::transposed() const {
    FiniteSection t;
    t.size = size;
    t.source = source;
    t.data.resize(data.size());
    for (std::int64_t i = 0; i < size; ++i) {
        for (std::int64_t j = 0; j < size; ++j) {
            t.at(j, i) = (*this)(i, j);
        }
    }
    return t;
}

std::string FiniteSection::to_dense_csv() const {
    std::ostringstream out;
    out.precision(17);
    for (std::int64_t i = 0; i < size; ++i) {
        for (std::int64_t j = 0; j < size; ++j) {
            if (j) out << ',';
            out << (*this)(i, j);
        }
        out << '\n';
    }
    return out.str();
}

std::string FiniteSection::to_band_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "n,a_n,b_n,c_n\n";
    for (std::int64_t n = 1; n <= size; ++n) {
        out << n << ',' << (*this)(n - 1, n - 1) << ',';
        if (n + 2 <= size) out << (*this)(n - 1, n + 1);
        out << ',';
        if (n + 2 <= size) out << (*this)(n + 1, n - 1);
        out << '\n';
    }
    return out.str();
}

BandOperator BandOperator::full(CoefficientModel model) {
    model.validate();
    LimitProfile profile = model.limit_profile();
    return BandOperator(OperatorSource::T, std::move(model), profile);
}

BandOperator BandOperator::limit(const LimitProfile& profile) {
    profile.validate();
    return BandOperator(OperatorSource::T0, CoefficientModel::constant(profile), profile);
}

BandOperator BandOperator::perturbation(CoefficientModel model) {
    model.validate();
    LimitProfile profile = model.limit_profile();
    return BandOperator(OperatorSource::K, std::move(model), profile);
}

double BandOperator::diag(std::int64_t i) const {
    if (i < 1) throw DomainError("matrix index must be >= 1");
    switch (source_) {
    case OperatorSource::T: return model_.a.entry(i);
    case OperatorSource::T0: return model_.a.limit(i);
    case OperatorSource::K: return model_.a.entry(i) - model_.a.limit(i);
    }
    return 0.0;
}

double BandOperator::super(std::int64_t i) const {
    if (i < 1) throw DomainError("matrix index must be >= 1");
    switch (source_) {
    case OperatorSource::T: return model_.b.entry(i);
    case OperatorSource::T0: return model_.b.limit(i);
    case OperatorSource::K: return model_.b.entry(i) - model_.b.limit(i);
    }
    return 0.0;
}

double BandOperator::sub(std::int64_t i) const {
    if (i < 3) throw DomainError("sub-band entry requires row index >= 3");
    switch (source_) {
    case OperatorSource::T: return model_.c.entry(i - 2);
    case OperatorSource::T0: return model_.c.limit(i - 2);
    case OperatorSource::K: return model_.c.entry(i - 2) - model_.c.limit(i - 2);
    }
    return 0.0;
}

template <typename Scalar>
std::vector<Scalar> BandOperator::apply_impl(std::span<const Scalar> x) const {
    if (x.empty()) throw DomainError("apply requires a non-empty vector");
    const std::int64_t len = static_cast<std::int64_t>(x.size());
    std::vector<Scalar> y(x.size());
    for (std::int64_t i = 1; i <= len; ++i) {
        Scalar acc = diag(i) * x[static_cast<std::size_t>(i - 1)];
        if (i >= 3) acc += sub(i) * x[static_cast<std::size_t>(i - 3)];
        if (i + 2 <= len) acc += super(i) * x[static_cast<std::size_t>(i + 1)];
        y[static_cast<std::size_t>(i - 1)] = acc;
    }
    return y;
}

std::vector<double> BandOperator::apply(std::span<const double> x) const {
    return apply_impl(x);
}

std::vector<std::complex<double>> BandOperator::apply(std::span<const std::complex<double>> x) const {
    return apply_impl(x);
}

FiniteSection BandOperator::truncate(std::int64_t n) const {
    if (n < 1) throw DomainError("truncation size must be >= 1");
    FiniteSection s;
    s.size = n;
    s.source = source_;
    s.data.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (std::int64_t i = 1; i <= n; ++i) {
        s.at(i - 1, i - 1) = diag(i);
        if (i + 2 <= n) s.at(i - 1, i + 1) = super(i);
        if (i >= 3) s.at(i - 1, i - 3) = sub(i);
    }
    return s;
}

namespace {

void check_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw DomainError("space order p must lie in (1, infinity)");
    }
}

template <typename Scalar>
double lp_norm_impl(std::span<const Scalar> x, double p) {
    check_p(p);
    double acc = 0.0;
    for (const Scalar& v : x) acc += std::pow(std::abs(v), p);
    return std::pow(acc, 1.0 / p);
}

} // namespace

double lp_norm(std::span<const double> x, double p) { return lp_norm_impl(x, p); }

double lp_norm(std::span<const std::complex<double>> x, double p) { return lp_norm_impl(x, p); }

NormBounds norm_bounds(const LimitProfile& profile, double p) {
    profile.validate();
    check_p(p);
    const double r1 = std::pow(std::abs(profile.r1), p);
    const double r2 = std::pow(std::abs(profile.r2), p);
    const double s1 = std::pow(std::abs(profile.s1), p);
    const double s2 = std::pow(std::abs(profile.s2), p);
    NormBounds bounds;
    bounds.lower = std::pow((r1 + r2 + s1 + s2) / 2.0, 1.0 / p);
    bounds.upper = std::pow(std::pow(3.0, p - 1.0) * (r1 + 2.0 * s1 + r2 + 2.0 * s2), 1.0 / p);
    return bounds;
}

double tail_bound(const PerturbationEntries& entries, std::int64_t n) {
    if (n < 2) throw DomainError("tail bound requires n >= 2");
    const std::int64_t m = n - 1;
    return entries.model.c.tail_sup(m) + entries.model.a.tail_sup(m) + entries.model.b.tail_sup(m);
}

} // namespace pentaspec
