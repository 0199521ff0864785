// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pentaspec/conditions.hpp"
#include "pentaspec/oracle.hpp"
#include "pentaspec/recurrence.hpp"
#include "pentaspec/spectra.hpp"

namespace pentaspec {

/// Which recurrence family a shooting function evaluates: the operator's own
/// chains or the adjoint's (bands b and c exchange roles).
enum class ShootSide { direct, adjoint };

const char* to_string(ShootSide side);

struct ShootOptions {
    double collar = 1e-6; // exclusion distance around the essential spectrum
    MinimalSolutionOptions minimal{};
};

/// Boundary residual y_0 of the y_1-normalized minimal solution at lambda.
/// Zeros outside the essential spectrum are exactly the discrete eigenvalues.
Complex shoot(const CoefficientModel& model, Chain chain, ShootSide side, Complex lambda,
              const ShootOptions& opts = {});

/// A located discrete eigenvalue.
struct EigenvalueRecord {
    Complex lambda;
    Chain chain = Chain::odd;
    ShootSide side = ShootSide::direct;
    double residual = 0.0; // |shoot(lambda)|
    std::int64_t refinement_iterations = 0;
    std::int64_t multiplicity = 1; // truncation-clustering estimate
    bool matched_by_adjoint = false;
};

struct RealSearchOptions {
    ShootOptions shoot{};
    double bisection_width = 1e-10;
    std::int64_t threads = 1; // grid evaluation is embarrassingly parallel
};

/// Bracket sign changes of the real shooting residual over [lo, hi] (which
/// must avoid the essential collar) and refine each by bisection.
std::vector<EigenvalueRecord> find_real_eigenvalues(const CoefficientModel& model, Chain chain,
                                                    ShootSide side, double lo, double hi,
                                                    std::int64_t grid,
                                                    const RealSearchOptions& opts = {});

/// Axis-aligned search rectangle in the complex plane.
struct Rectangle {
    double re_lo = 0.0;
    double re_hi = 0.0;
    double im_lo = 0.0;
    double im_hi = 0.0;
};

/// A cell the quadtree could not resolve (winding unstable or depth
/// exhausted); reported, never silently dropped.
struct UnresolvedCell {
    Rectangle cell;
    std::int64_t winding = -1;
    std::string reason;
};

struct ComplexSearchOptions {
    ShootOptions shoot{};
    std::int64_t initial_boundary_samples = 64; // per cell boundary, doubled until stable
    std::int64_t max_boundary_samples = 4096;
    std::int64_t newton_max_iterations = 60;
};

struct ComplexSearchResult {
    std::vector<EigenvalueRecord> records;
    std::vector<UnresolvedCell> unresolved;
};

/// Count zeros of the shooting function by argument-principle winding along
/// cell boundaries, isolate by quadtree subdivision, refine by complex Newton.
ComplexSearchResult find_complex_eigenvalues(const CoefficientModel& model, Chain chain,
                                             ShootSide side, const Rectangle& rect,
                                             std::int64_t depth,
                                             const ComplexSearchOptions& opts = {});

/// Search region for the discrete spectrum: real intervals (cheap bisection)
/// plus optional complex rectangles.
struct SearchRegion {
    struct RealInterval {
        double lo = 0.0;
        double hi = 0.0;
        std::int64_t grid = 400;
    };
    std::vector<RealInterval> real_intervals;
    std::vector<Rectangle> rectangles;
    std::int64_t depth = 6;
};

struct DiscreteSpectrumOptions {
    RealSearchOptions real{};
    ComplexSearchOptions complex_search{};
    double adjoint_match_tolerance = 1e-6;
    std::int64_t multiplicity_section = 2000; // N for the clustering estimate
    double multiplicity_radius = 1e-4;
};

struct DiscreteSpectrumResult {
    SpectralSet set;                      // direct-side eigenvalues as spectral points
    std::vector<EigenvalueRecord> direct; // odd + even chains
    std::vector<EigenvalueRecord> adjoint;
    std::vector<UnresolvedCell> unresolved;
};

/// S1 from both chains of the direct recurrences, cross-checked against the
/// adjoint characterization S2 over the same region.  A mismatch beyond the
/// tolerance raises ConsistencyError with both lists in the message.
/// `regime_acknowledged` asserts the no-embedded-eigenvalue regime was
/// confirmed (or deliberately overridden) by the caller.
DiscreteSpectrumResult discrete_spectrum(const CoefficientModel& model, const SearchRegion& region,
                                         bool regime_acknowledged,
                                         const DiscreteSpectrumOptions& opts = {});

} // namespace pentaspec
