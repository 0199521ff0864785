// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "pentaspec/operators.hpp"
#include "pentaspec/spectra.hpp"

namespace pentaspec {

/// All eigenvalues of a finite section, with multiplicity.
struct SectionSpectrum {
    std::int64_t size = 0;
    std::vector<std::complex<double>> eigenvalues; // sorted by (re, im)
    std::string method;                            // per-block solver summary
    double cleanup_tolerance = 0.0;                // imaginary parts below it were dropped
};

/// Tridiagonal chain block extracted from a penta-diagonal section by the
/// odd/even index permutation (an exact similarity).
struct ChainBlock {
    Chain chain = Chain::odd;
    std::vector<double> diag;
    std::vector<double> sub;   // entry (k+1, k)
    std::vector<double> super; // entry (k, k+1)
};

/// Exact odd/even permutation of a section into its two tridiagonal blocks.
std::pair<ChainBlock, ChainBlock> decouple_section(const FiniteSection& section);

/// Eigenvalues of one tridiagonal chain block.  Symmetric blocks (and blocks
/// symmetrizable by a diagonal similarity, sub*super > 0) use the symmetric
/// tridiagonal path; anything else falls back to a dense general solver.
std::vector<std::complex<double>> chain_block_eigenvalues(const ChainBlock& block,
                                                          std::string* method = nullptr);

/// All eigenvalues of the section via the decoupled chain blocks.
/// Desk-scale cap N <= 8192.
SectionSpectrum section_eigenvalues(const FiniteSection& section);

/// Hausdorff-style diagnostics of one section against a predicted set.
struct PortraitRow {
    std::int64_t n = 0;
    double max_distance = 0.0;  // max over eigenvalues of dist to predicted set
    double fill_distance = 0.0; // sup over interval points of dist to eigenvalues
    std::vector<std::complex<double>> outliers; // eigenvalues beyond the fattening
};

struct PortraitReport {
    std::vector<PortraitRow> rows;
    double outlier_fattening = 0.0;
    bool outliers_stable = false; // every final-row outlier matched in the previous row
};

/// Exact fill distance of a real interval by a spectrum (largest distance
/// from a point of [lo,hi] to the nearest eigenvalue).
double fill_distance(const Interval& interval, const std::vector<std::complex<double>>& eigenvalues);

/// Section spectra across an increasing N-schedule compared against the
/// predicted spectral set (default: the essential spectrum of the profile).
PortraitReport spectral_portrait(const BandOperator& op, const SpectralSet& predicted,
                                 const std::vector<std::int64_t>& schedule,
                                 double outlier_fattening = 1e-6);

PortraitReport spectral_portrait(const CoefficientModel& model,
                                 const std::vector<std::int64_t>& schedule,
                                 double outlier_fattening = 1e-6);

} // namespace pentaspec
