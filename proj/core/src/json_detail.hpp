// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "pentaspec/conditions.hpp"
#include "pentaspec/eigensolve.hpp"
#include "pentaspec/oracle.hpp"
#include "pentaspec/spectra.hpp"

namespace pentaspec::detail {

// Fixed key order keeps report bytes reproducible run-to-run.
using Json = nlohmann::ordered_json;

Json json_of(const SpectralSet& set);
Json json_of(const FineSpectrumReport& report);
Json json_of(const ConditionTerm& term);
Json json_of(const DivergenceVerdict& verdict);
Json json_of(const RateCheckResult& result);
Json json_of(const NoEmbeddedVerdict& verdict);
Json json_of(const EigenvalueRecord& record);
Json json_of(const std::vector<EigenvalueRecord>& records);
Json json_of(const SectionSpectrum& spectrum);
Json json_of(const PortraitReport& report);

} // namespace pentaspec::detail
