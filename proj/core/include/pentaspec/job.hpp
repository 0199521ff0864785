// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pentaspec/coeffs.hpp"
#include "pentaspec/eigensolve.hpp"
#include "pentaspec/operators.hpp"

namespace pentaspec {

enum class JobTask {
    norm_bounds,
    essential_spectrum,
    fine_spectrum,
    eigenvalues,
    check_conditions,
    truncate,
    portrait,
};

const char* to_string(JobTask task);
JobTask job_task_from_string(const std::string& name);

/// Task parameters (defaults apply; each task reads its own subset).
struct TaskParams {
    // norm-bounds
    std::int64_t samples = 1000;
    std::int64_t length = 500;
    // eigenvalues / fine-spectrum
    SearchRegion region;
    double collar = 1e-6;
    bool acknowledge_hypothesis = false;
    // check-conditions
    std::optional<double> lambda;
    std::optional<std::array<double, 3>> lambda_grid; // lo, hi, count
    std::int64_t n_max = 10'000;
    double threshold = 1e6;
    // truncate
    std::int64_t truncate_n = 64;
    OperatorSource source = OperatorSource::T;
    // portrait
    std::vector<std::int64_t> schedule = {256, 1024, 4096};
    double epsilon = 1e-6;
};

/// One batch job: a coefficient model, a space order, one task.
struct JobConfig {
    CoefficientModel model;
    double p = 2.0;
    JobTask task = JobTask::essential_spectrum;
    TaskParams params;
    std::string out_dir = "out";
    bool write_json = true;
    bool write_csv = true;
    std::int64_t threads = 1;
    std::uint64_t seed = 0;

    /// Parse the documented JSON schema.  ConfigError on malformed input,
    /// ModelError on model-invariant violations.
    static JobConfig parse(const std::string& text);
};

/// Command-line overrides applied on top of the config file.
struct JobOverrides {
    std::optional<std::string> out_dir;
    std::optional<std::string> format; // json | csv | both
    std::optional<std::int64_t> threads;
    std::optional<std::uint64_t> seed;
};

struct JobResult {
    int exit_code = 0;
    std::string out_dir;
    std::string report_path;
    std::vector<std::string> artifacts; // all files written, report included
};

/// Run a job from a config file.  Exit codes: 0 success, 1 config error,
/// 2 model inconsistency, 3 numerical error.  Every outcome (including
/// errors) writes a machine-readable report.json.
JobResult run_job(const std::string& config_path, const JobOverrides& overrides = {});

} // namespace pentaspec
