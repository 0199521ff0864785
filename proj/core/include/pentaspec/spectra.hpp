// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "pentaspec/coeffs.hpp"

namespace pentaspec {

/// Closed real interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
    /// Euclidean distance from a complex point to the segment [lo,hi] x {0}.
    double distance(std::complex<double> z) const;
};

/// An isolated spectral point with its provenance.
struct SpectralPoint {
    std::complex<double> value;
    Chain chain = Chain::odd;
    double residual = 0.0;
};

/// Union of closed real intervals (canonical merged-and-sorted form) plus a
/// finite set of isolated complex points.  No point lies inside an interval.
class SpectralSet {
public:
    SpectralSet() = default;

    static SpectralSet from_intervals(std::vector<Interval> intervals);

    void add_interval(Interval iv);
    /// Throws ConsistencyError when the point lies inside an interval
    /// (membership tolerance `tol`, default 1e-10).
    void add_point(SpectralPoint pt, double tol = 1e-10);

    const std::vector<Interval>& intervals() const { return intervals_; }
    const std::vector<SpectralPoint>& points() const { return points_; }

    /// The intervals as generated, before canonical merging.  Retained so a
    /// merged set still exposes its two generating intervals.
    const std::vector<Interval>& generating_intervals() const { return generating_; }

    bool empty() const { return intervals_.empty() && points_.empty(); }

    /// Distance from z to the set (0 when inside an interval / on a point).
    double distance(std::complex<double> z) const;
    bool contains(std::complex<double> z, double tol = 1e-10) const {
        return distance(z) <= tol;
    }

    SpectralSet set_union(const SpectralSet& other) const;

    /// Exact structural equality of canonical forms (interval endpoint lists
    /// and point value multisets).
    bool equals(const SpectralSet& other, double tol = 0.0) const;

private:
    void canonicalize();

    std::vector<Interval> intervals_;   // canonical
    std::vector<Interval> generating_;  // as added
    std::vector<SpectralPoint> points_; // sorted by (re, im)
};

/// The nine spectral subdivisions.
struct FineSpectrumReport {
    SpectralSet spectrum;
    SpectralSet point;
    SpectralSet residual;
    SpectralSet continuous;
    SpectralSet essential;
    SpectralSet discrete;
    SpectralSet compression;
    SpectralSet approximate;
    SpectralSet defect;

    /// The subdivision identities: point/residual/continuous tripartition of
    /// the spectrum (pairwise disjoint), spectrum = approximate U compression,
    /// spectrum = approximate U defect.
    bool identities_hold() const;
};

/// sigma_ess(T0) = [r1 - 2|s1|, r1 + 2|s1|] U [r2 - 2|s2|, r2 + 2|s2|],
/// merged when the two intervals overlap.
SpectralSet essential_spectrum(const LimitProfile& profile);

/// T0 has empty point/residual/compression/discrete spectrum; everything
/// else equals the essential interval union.
FineSpectrumReport fine_spectrum_T0(const LimitProfile& profile);

/// Fine spectrum of T given its discrete eigenvalue set.  Every discrete
/// point must lie outside the essential intervals (ConsistencyError
/// otherwise, membership tolerance `tol`).
FineSpectrumReport fine_spectrum_T(const LimitProfile& profile, const SpectralSet& discrete,
                                   double tol = 1e-10);

} // namespace pentaspec
