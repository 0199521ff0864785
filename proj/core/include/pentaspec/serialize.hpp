// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "pentaspec/conditions.hpp"
#include "pentaspec/eigensolve.hpp"
#include "pentaspec/oracle.hpp"
#include "pentaspec/recurrence.hpp"
#include "pentaspec/spectra.hpp"

namespace pentaspec {

/// JSON exports.  Schemas are documented in the README; keys appear in a
/// fixed order so identical inputs serialize byte-identically.
std::string to_json_string(const SpectralSet& set, int indent = 2);
std::string to_json_string(const FineSpectrumReport& report, int indent = 2);
std::string to_json_string(const DivergenceVerdict& verdict, int indent = 2);
std::string to_json_string(const RateCheckResult& result, int indent = 2);
std::string to_json_string(const NoEmbeddedVerdict& verdict, int indent = 2);
std::string to_json_string(const std::vector<EigenvalueRecord>& records, int indent = 2);
std::string to_json_string(const SectionSpectrum& spectrum, int indent = 2);
std::string to_json_string(const PortraitReport& report, int indent = 2);

/// CSV exports.
std::string to_csv(const std::vector<EigenvalueRecord>& records);
std::string to_csv(const SectionSpectrum& spectrum);
std::string to_csv(const PortraitReport& report);
/// Solution trace columns (n, re y_n, im y_n).
std::string to_csv(const MinimalSolutionResult& solution);

} // namespace pentaspec
