// SPDX-License-Identifier: Apache-2.0
#include "pentaspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pentaspec {

double Interval::distance(std::complex<double> z) const {
    double dx = 0.0;
    if (z.real() < lo) dx = lo - z.real();
    else if (z.real() > hi) dx = z.real() - hi;
    return std::hypot(dx, z.imag());
}

SpectralSet SpectralSet::from_intervals(std::vector<Interval> intervals) {
    SpectralSet s;
    for (const Interval& iv : intervals) s.add_interval(iv);
    return s;
}

void SpectralSet::add_interval(Interval iv) {
    if (!(iv.lo <= iv.hi)) throw DomainError("interval requires lo <= hi");
    generating_.push_back(iv);
    intervals_.push_back(iv);
    canonicalize();
    for (const SpectralPoint& pt : points_) {
        if (iv.distance(pt.value) <= 0.0) {
            throw ConsistencyError("spectral set interval would swallow an isolated point");
        }
    }
}

void SpectralSet::add_point(SpectralPoint pt, double tol) {
    for (const Interval& iv : intervals_) {
        if (iv.distance(pt.value) <= tol) {
            throw ConsistencyError("isolated spectral point lies inside an interval");
        }
    }
    points_.push_back(pt);
    std::sort(points_.begin(), points_.end(), [](const SpectralPoint& x, const SpectralPoint& y) {
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });
}

void SpectralSet::canonicalize() {
    std::sort(intervals_.begin(), intervals_.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    std::vector<Interval> merged;
    for (const Interval& iv : intervals_) {
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }
    intervals_ = std::move(merged);
}

double SpectralSet::distance(std::complex<double> z) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Interval& iv : intervals_) best = std::min(best, iv.distance(z));
    for (const SpectralPoint& pt : points_) best = std::min(best, std::abs(z - pt.value));
    return best;
}

SpectralSet SpectralSet::set_union(const SpectralSet& other) const {
    SpectralSet out;
    for (const Interval& iv : generating_) out.add_interval(iv);
    for (const Interval& iv : other.generating_) out.add_interval(iv);
    auto add_unique = [&out](const SpectralPoint& pt) {
        for (const SpectralPoint& q : out.points_) {
            if (q.value == pt.value) return;
        }
        out.add_point(pt);
    };
    for (const SpectralPoint& pt : points_) add_unique(pt);
    for (const SpectralPoint& pt : other.points_) add_unique(pt);
    return out;
}

bool SpectralSet::equals(const SpectralSet& other, double tol) const {
    if (intervals_.size() != other.intervals_.size()) return false;
    if (points_.size() != other.points_.size()) return false;
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (std::abs(intervals_[i].lo - other.intervals_[i].lo) > tol) return false;
        if (std::abs(intervals_[i].hi - other.intervals_[i].hi) > tol) return false;
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (std::abs(points_[i].value - other.points_[i].value) > tol) return false;
    }
    return true;
}

bool FineSpectrumReport::identities_hold() const {
    // Tripartition: point U residual U continuous = spectrum, pairwise disjoint.
    SpectralSet tri = point.set_union(residual).set_union(continuous);
    if (!tri.equals(spectrum)) return false;
    for (const SpectralPoint& pt : point.points()) {
        if (residual.contains(pt.value, 0.0) || continuous.contains(pt.value, 0.0)) return false;
    }
    for (const SpectralPoint& pt : residual.points()) {
        if (continuous.contains(pt.value, 0.0)) return false;
    }
    // Subdivisions: spectrum = approximate U compression = approximate U defect.
    if (!approximate.set_union(compression).equals(spectrum)) return false;
    if (!approximate.set_union(defect).equals(spectrum)) return false;
    return true;
}

SpectralSet essential_spectrum(const LimitProfile& profile) {
    profile.validate();
    SpectralSet s;
    s.add_interval({profile.r1 - 2.0 * std::abs(profile.s1), profile.r1 + 2.0 * std::abs(profile.s1)});
    s.add_interval({profile.r2 - 2.0 * std::abs(profile.s2), profile.r2 + 2.0 * std::abs(profile.s2)});
    return s;
}

FineSpectrumReport fine_spectrum_T0(const LimitProfile& profile) {
    FineSpectrumReport r;
    const SpectralSet ess = essential_spectrum(profile);
    r.spectrum = ess;
    r.continuous = ess;
    r.essential = ess;
    r.approximate = ess;
    r.defect = ess;
    // point, residual, compression, discrete stay empty
    return r;
}

FineSpectrumReport fine_spectrum_T(const LimitProfile& profile, const SpectralSet& discrete,
                                   double tol) {
    if (!discrete.intervals().empty()) {
        throw DomainError("the discrete spectrum consists of isolated points, not intervals");
    }
    const SpectralSet ess = essential_spectrum(profile);
    SpectralSet points_only;
    for (const SpectralPoint& pt : discrete.points()) {
        if (ess.distance(pt.value) <= tol) {
            throw ConsistencyError("discrete eigenvalue lies inside an essential interval");
        }
        points_only.add_point(pt, tol);
    }

    FineSpectrumReport r;
    SpectralSet full = ess;
    for (const SpectralPoint& pt : points_only.points()) full.add_point(pt, tol);

    r.spectrum = full;
    r.approximate = full;
    r.defect = full;
    r.point = points_only;
    r.discrete = points_only;
    r.compression = points_only;
    r.continuous = ess;
    r.essential = ess;
    // residual stays empty
    return r;
}

} // namespace pentaspec
