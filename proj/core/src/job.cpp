// SPDX-License-Identifier: Apache-2.0
#include "pentaspec/job.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json_detail.hpp"
#include "parallel.hpp"
#include "pentaspec/conditions.hpp"
#include "pentaspec/serialize.hpp"
#include "pentaspec/version.hpp"

namespace pentaspec {

namespace fs = std::filesystem;
using detail::Json;

const char* to_string(JobTask task) {
    switch (task) {
    case JobTask::norm_bounds: return "norm-bounds";
    case JobTask::essential_spectrum: return "essential-spectrum";
    case JobTask::fine_spectrum: return "fine-spectrum";
    case JobTask::eigenvalues: return "eigenvalues";
    case JobTask::check_conditions: return "check-conditions";
    case JobTask::truncate: return "truncate";
    case JobTask::portrait: return "portrait";
    }
    return "?";
}

JobTask job_task_from_string(const std::string& name) {
    for (JobTask task : {JobTask::norm_bounds, JobTask::essential_spectrum, JobTask::fine_spectrum,
                         JobTask::eigenvalues, JobTask::check_conditions, JobTask::truncate,
                         JobTask::portrait}) {
        if (name == to_string(task)) return task;
    }
    throw ConfigError("unknown task '" + name + "'");
}

namespace {

void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

BandSpec parse_band(const Json& j, const std::string& name) {
    if (!j.is_object()) throw ConfigError("band '" + name + "' must be an object");
    reject_unknown_keys(j,
                        {"kind", "odd-limit", "even-limit", "amplitude", "rate", "exponent",
                         "overrides", "table", "settle-index"},
                        "band '" + name + "'");
    BandSpec spec;
    if (j.contains("kind")) spec.kind = band_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("odd-limit")) spec.odd_limit = j.at("odd-limit").get<double>();
    if (j.contains("even-limit")) spec.even_limit = j.at("even-limit").get<double>();
    if (j.contains("amplitude")) spec.amplitude = j.at("amplitude").get<double>();
    if (j.contains("rate")) spec.rate = j.at("rate").get<double>();
    if (j.contains("exponent")) spec.exponent = j.at("exponent").get<double>();
    if (j.contains("overrides")) {
        for (const auto& entry : j.at("overrides")) {
            if (!entry.is_array() || entry.size() != 2) {
                throw ConfigError("band '" + name + "': overrides must be [index, value] pairs");
            }
            spec.overrides.emplace_back(entry[0].get<std::int64_t>(), entry[1].get<double>());
        }
    }
    if (j.contains("table")) spec.table = j.at("table").get<std::vector<double>>();
    if (j.contains("settle-index")) spec.settle_index = j.at("settle-index").get<std::int64_t>();
    return spec;
}

TaskParams parse_params(const Json& j, JobTask task) {
    TaskParams params;
    if (j.is_null()) return params;
    if (!j.is_object()) throw ConfigError("'params' must be an object");
    reject_unknown_keys(j,
                        {"samples", "length", "real-intervals", "grid", "rectangles", "depth",
                         "collar", "acknowledge-hypothesis", "lambda", "lambda-grid", "n-max",
                         "threshold", "n", "source", "schedule", "epsilon"},
                        "'params'");
    if (j.contains("samples")) params.samples = j.at("samples").get<std::int64_t>();
    if (j.contains("length")) params.length = j.at("length").get<std::int64_t>();
    std::int64_t grid = 400;
    if (j.contains("grid")) grid = j.at("grid").get<std::int64_t>();
    if (j.contains("real-intervals")) {
        for (const auto& entry : j.at("real-intervals")) {
            if (!entry.is_array() || entry.size() != 2) {
                throw ConfigError("'real-intervals' must contain [lo, hi] pairs");
            }
            SearchRegion::RealInterval iv;
            iv.lo = entry[0].get<double>();
            iv.hi = entry[1].get<double>();
            iv.grid = grid;
            if (!(iv.lo < iv.hi)) throw ConfigError("real interval requires lo < hi");
            params.region.real_intervals.push_back(iv);
        }
    }
    if (j.contains("rectangles")) {
        for (const auto& entry : j.at("rectangles")) {
            if (!entry.is_array() || entry.size() != 4) {
                throw ConfigError("'rectangles' must contain [re_lo, re_hi, im_lo, im_hi]");
            }
            Rectangle rect{entry[0].get<double>(), entry[1].get<double>(), entry[2].get<double>(),
                           entry[3].get<double>()};
            if (!(rect.re_lo < rect.re_hi) || !(rect.im_lo < rect.im_hi)) {
                throw ConfigError("rectangle extents must be positive");
            }
            params.region.rectangles.push_back(rect);
        }
    }
    if (j.contains("depth")) params.region.depth = j.at("depth").get<std::int64_t>();
    if (j.contains("collar")) {
        params.collar = j.at("collar").get<double>();
        if (!(params.collar > 0.0)) throw ConfigError("collar must be positive");
    }
    if (j.contains("acknowledge-hypothesis")) {
        params.acknowledge_hypothesis = j.at("acknowledge-hypothesis").get<bool>();
    }
    if (j.contains("lambda")) params.lambda = j.at("lambda").get<double>();
    if (j.contains("lambda-grid")) {
        const auto& g = j.at("lambda-grid");
        if (!g.is_array() || g.size() != 3) {
            throw ConfigError("'lambda-grid' must be [lo, hi, count]");
        }
        params.lambda_grid = {g[0].get<double>(), g[1].get<double>(), g[2].get<double>()};
        if (!((*params.lambda_grid)[2] >= 2)) throw ConfigError("lambda-grid count must be >= 2");
    }
    if (j.contains("n-max")) {
        params.n_max = j.at("n-max").get<std::int64_t>();
        if (params.n_max < 1) throw ConfigError("n-max must be >= 1");
    }
    if (j.contains("threshold")) {
        params.threshold = j.at("threshold").get<double>();
        if (!(params.threshold > 0.0)) throw ConfigError("threshold must be positive");
    }
    if (j.contains("n")) {
        params.truncate_n = j.at("n").get<std::int64_t>();
        if (params.truncate_n < 1) throw ConfigError("truncation size must be >= 1");
    }
    if (j.contains("source")) {
        const std::string source = j.at("source").get<std::string>();
        if (source == "T") params.source = OperatorSource::T;
        else if (source == "T0") params.source = OperatorSource::T0;
        else if (source == "K") params.source = OperatorSource::K;
        else throw ConfigError("source must be one of T, T0, K");
    }
    if (j.contains("schedule")) {
        params.schedule = j.at("schedule").get<std::vector<std::int64_t>>();
        if (params.schedule.empty()) throw ConfigError("schedule must be non-empty");
    }
    if (j.contains("epsilon")) {
        params.epsilon = j.at("epsilon").get<double>();
        if (!(params.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    }
    if (task == JobTask::check_conditions && !params.lambda && !params.lambda_grid) {
        throw ConfigError("check-conditions needs 'lambda' or 'lambda-grid'");
    }
    return params;
}

} // namespace

JobConfig JobConfig::parse(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");
    reject_unknown_keys(j, {"model", "p", "task", "params", "output"}, "config root");

    JobConfig config;
    if (!j.contains("model") || !j.at("model").is_object()) {
        throw ConfigError("config needs a 'model' object");
    }
    const Json& model = j.at("model");
    reject_unknown_keys(model, {"a", "b", "c"}, "'model'");
    for (const char* band : {"a", "b", "c"}) {
        if (!model.contains(band)) throw ConfigError(std::string("model needs band '") + band + "'");
    }
    config.model.a = parse_band(model.at("a"), "a");
    config.model.b = parse_band(model.at("b"), "b");
    config.model.c = parse_band(model.at("c"), "c");
    config.model.validate(); // ModelError -> exit 2

    if (j.contains("p")) config.p = j.at("p").get<double>();
    if (!(config.p > 1.0) || !std::isfinite(config.p)) {
        throw ConfigError("space order p must lie in (1, infinity)");
    }
    if (!j.contains("task")) throw ConfigError("config needs a 'task'");
    config.task = job_task_from_string(j.at("task").get<std::string>());
    config.params = parse_params(j.contains("params") ? j.at("params") : Json(nullptr), config.task);

    if (j.contains("output")) {
        const Json& out = j.at("output");
        reject_unknown_keys(out, {"dir", "formats"}, "'output'");
        if (out.contains("dir")) config.out_dir = out.at("dir").get<std::string>();
        if (out.contains("formats")) {
            config.write_json = false;
            config.write_csv = false;
            for (const auto& f : out.at("formats")) {
                const std::string name = f.get<std::string>();
                if (name == "json") config.write_json = true;
                else if (name == "csv") config.write_csv = true;
                else throw ConfigError("output format must be 'json' or 'csv'");
            }
        }
    }
    return config;
}

namespace {

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << hash;
    return out.str();
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Numerical error carrying a JSON attachment for the error report.
class HypothesisError : public Error {
public:
    HypothesisError(const std::string& msg, Json attachment)
        : Error(msg), attachment_(std::move(attachment)) {}
    const Json& attachment() const { return attachment_; }

private:
    Json attachment_;
};

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 1;
    if (dynamic_cast<const ModelError*>(&e)) return 2;
    return 3;
}

const char* error_type_name(const std::exception& e) {
    if (dynamic_cast<const HypothesisError*>(&e)) return "HypothesisError";
    if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
    if (dynamic_cast<const ModelError*>(&e)) return "ModelError";
    if (dynamic_cast<const PivotError*>(&e)) return "PivotError";
    if (dynamic_cast<const InstabilityError*>(&e)) return "InstabilityError";
    if (dynamic_cast<const SpectralRegionError*>(&e)) return "SpectralRegionError";
    if (dynamic_cast<const ConsistencyError*>(&e)) return "ConsistencyError";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    return "Error";
}

struct ArtifactWriter {
    fs::path dir;
    std::vector<std::string> written;

    std::string write(const std::string& name, const std::string& content) {
        const fs::path path = dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write artifact " + path.string());
        out << content;
        written.push_back(path.string());
        return path.string();
    }
};

std::string spectrum_plot_data(const SpectralSet& set) {
    std::ostringstream dat;
    dat.precision(17);
    dat << "# intervals as line segments on y = 0\n";
    for (const Interval& iv : set.intervals()) {
        dat << iv.lo << " 0\n" << iv.hi << " 0\n\n";
    }
    return dat.str();
}

std::string points_plot_data(const SpectralSet& set) {
    std::ostringstream dat;
    dat.precision(17);
    dat << "# isolated spectral points (re, im)\n";
    for (const SpectralPoint& pt : set.points()) {
        dat << pt.value.real() << ' ' << pt.value.imag() << '\n';
    }
    return dat.str();
}

void emit_spectrum_plot(ArtifactWriter& writer, const SpectralSet& set, const std::string& title) {
    writer.write("spectrum.dat", spectrum_plot_data(set));
    const bool with_points = !set.points().empty();
    if (with_points) writer.write("points.dat", points_plot_data(set));
    std::ostringstream gp;
    gp << "set title '" << title << "'\n"
       << "set xlabel 'Re lambda'\nset ylabel 'Im lambda'\nset yrange [-1:1]\n"
       << "plot 'spectrum.dat' with lines lw 3 title 'essential intervals'";
    if (with_points) gp << ", \\\n     'points.dat' with points pt 7 title 'discrete eigenvalues'";
    gp << '\n';
    writer.write("plot.gp", gp.str());
}

// ---- task runners ---------------------------------------------------------

Json run_norm_bounds(const JobConfig& config, ArtifactWriter& writer) {
    const LimitProfile profile = config.model.limit_profile();
    const NormBounds bounds = norm_bounds(profile, config.p);
    const BandOperator t0 = BandOperator::limit(profile);

    // Witness e = (1,1,0,...) attains the lower bound exactly.
    std::vector<double> witness = {1.0, 1.0, 0.0, 0.0};
    const auto witness_image = t0.apply(witness);
    const double witness_ratio =
        lp_norm(std::span<const double>(witness_image), config.p) /
        lp_norm(std::span<const double>(witness), config.p);

    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double sup_ratio = 0.0;
    std::int64_t upper_violations = 0;
    for (std::int64_t s = 0; s < config.params.samples; ++s) {
        std::vector<double> x(static_cast<std::size_t>(config.params.length) + 2, 0.0);
        for (std::int64_t i = 0; i < config.params.length; ++i) {
            x[static_cast<std::size_t>(i)] = gauss(rng);
        }
        const auto y = t0.apply(x);
        const double ratio = lp_norm(std::span<const double>(y), config.p) /
                             lp_norm(std::span<const double>(x), config.p);
        sup_ratio = std::max(sup_ratio, ratio);
        if (ratio > bounds.upper + 1e-12) ++upper_violations;
    }

    Json result;
    result["lower"] = bounds.lower;
    result["upper"] = bounds.upper;
    result["witness_ratio"] = witness_ratio;
    result["mc_sup_ratio"] = sup_ratio;
    result["mc_samples"] = config.params.samples;
    result["mc_length"] = config.params.length;
    result["upper_violations"] = upper_violations;
    if (config.write_csv) {
        std::ostringstream csv;
        csv.precision(17);
        csv << "quantity,value\nlower," << bounds.lower << "\nupper," << bounds.upper
            << "\nwitness_ratio," << witness_ratio << "\nmc_sup_ratio," << sup_ratio << '\n';
        writer.write("norm_bounds.csv", csv.str());
    }
    return result;
}

Json run_essential_spectrum(const JobConfig& config, ArtifactWriter& writer) {
    const SpectralSet set = essential_spectrum(config.model.limit_profile());
    Json result;
    result["essential"] = detail::json_of(set);
    if (config.write_csv) {
        std::ostringstream csv;
        csv.precision(17);
        csv << "lo,hi\n";
        for (const Interval& iv : set.intervals()) csv << iv.lo << ',' << iv.hi << '\n';
        writer.write("essential_spectrum.csv", csv.str());
    }
    emit_spectrum_plot(writer, set, "essential spectrum");
    return result;
}

DiscreteSpectrumOptions discrete_options(const JobConfig& config) {
    DiscreteSpectrumOptions opts;
    opts.real.shoot.collar = config.params.collar;
    opts.real.threads = config.threads;
    opts.complex_search.shoot.collar = config.params.collar;
    return opts;
}

/// Hypothesis gate shared by the eigenvalues and fine-spectrum tasks: the
/// shooting characterization of the point spectrum is proved under the
/// no-embedded-eigenvalue hypotheses, so results outside that regime require
/// an explicit acknowledgment and are labeled heuristic.
struct GateOutcome {
    bool proceed = false;
    bool heuristic = false;
    RateCheckResult rate_check;
};

GateOutcome hypothesis_gate(const JobConfig& config) {
    GateOutcome outcome;
    outcome.rate_check = exponential_rate_check(config.model);
    if (outcome.rate_check.status == RateStatus::holds) {
        outcome.proceed = true;
    } else if (config.params.acknowledge_hypothesis) {
        outcome.proceed = true;
        outcome.heuristic = true;
    }
    return outcome;
}

Json run_eigenvalues(const JobConfig& config, ArtifactWriter& writer, bool fine_spectrum_report) {
    const GateOutcome gate = hypothesis_gate(config);
    if (!gate.proceed) {
        Json attachment;
        attachment["rate_check"] = detail::json_of(gate.rate_check);
        throw HypothesisError("exponential-rate hypothesis " +
                                  std::string(to_string(gate.rate_check.status)) +
                                  "; set params.acknowledge-hypothesis to search anyway",
                              std::move(attachment));
    }

    SearchRegion region = config.params.region;
    if (region.real_intervals.empty() && region.rectangles.empty()) {
        throw ConfigError("eigenvalue search needs 'real-intervals' or 'rectangles'");
    }
    const DiscreteSpectrumResult found =
        discrete_spectrum(config.model, region, /*regime_acknowledged=*/true,
                          discrete_options(config));

    Json result;
    result["hypothesis"] = detail::json_of(gate.rate_check);
    result["heuristic"] = gate.heuristic;
    result["eigenvalues"] = detail::json_of(found.direct);
    result["adjoint_eigenvalues"] = detail::json_of(found.adjoint);
    result["discrete_set"] = detail::json_of(found.set);
    result["unresolved_cells"] = Json::array();
    for (const UnresolvedCell& cell : found.unresolved) {
        Json c;
        c["rectangle"] = Json::array({cell.cell.re_lo, cell.cell.re_hi, cell.cell.im_lo,
                                      cell.cell.im_hi});
        c["winding"] = cell.winding;
        c["reason"] = cell.reason;
        result["unresolved_cells"].push_back(std::move(c));
    }

    const LimitProfile profile = config.model.limit_profile();
    SpectralSet display = essential_spectrum(profile);
    if (fine_spectrum_report) {
        const FineSpectrumReport report = fine_spectrum_T(profile, found.set);
        result["fine_spectrum"] = detail::json_of(report);
        result["identities_hold"] = report.identities_hold();
        display = report.spectrum;
    } else {
        for (const SpectralPoint& pt : found.set.points()) display.add_point(pt);
    }

    if (config.write_csv) {
        writer.write("eigenvalues.csv", to_csv(found.direct));
        writer.write("adjoint_eigenvalues.csv", to_csv(found.adjoint));
    }
    emit_spectrum_plot(writer, display,
                       fine_spectrum_report ? "spectrum of T" : "discrete eigenvalues");
    return result;
}

Json run_check_conditions(const JobConfig& config, ArtifactWriter& writer) {
    std::vector<double> lambdas;
    if (config.params.lambda) lambdas.push_back(*config.params.lambda);
    if (config.params.lambda_grid) {
        const auto& [lo, hi, count_d] = *config.params.lambda_grid;
        const std::int64_t count = static_cast<std::int64_t>(count_d);
        for (std::int64_t i = 0; i < count; ++i) {
            lambdas.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                       static_cast<double>(count - 1));
        }
    }
    SeriesOptions sopts;
    sopts.n_max = config.params.n_max;
    sopts.threshold = config.params.threshold;

    std::vector<NoEmbeddedVerdict> verdicts(lambdas.size());
    detail::parallel_for(static_cast<std::int64_t>(lambdas.size()), config.threads,
                         [&](std::int64_t i) {
                             verdicts[static_cast<std::size_t>(i)] = no_embedded_eigenvalue(
                                 config.model, lambdas[static_cast<std::size_t>(i)], sopts);
                         });

    Json result;
    result["verdicts"] = Json::array();
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        Json row;
        row["lambda"] = lambdas[i];
        if (lambdas.size() == 1) {
            row["verdict"] = detail::json_of(verdicts[i]);
        } else {
            row["status"] = to_string(verdicts[i].status);
            row["fired"] = verdicts[i].fired;
        }
        result["verdicts"].push_back(std::move(row));
    }

    if (config.write_csv) {
        std::ostringstream csv;
        csv.precision(17);
        csv << "lambda,status,fired\n";
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            csv << lambdas[i] << ',' << to_string(verdicts[i].status) << ",\""
                << verdicts[i].fired << "\"\n";
        }
        writer.write("conditions.csv", csv.str());
    }

    // Staircase plot: partial sums for the single-lambda case, else the
    // guaranteed-absent indicator over the grid.
    std::ostringstream gp;
    if (lambdas.size() == 1 && verdicts[0].odd_series) {
        auto staircase = [](const DivergenceVerdict& v) {
            std::ostringstream dat;
            dat.precision(17);
            dat << "# n partial_sum\n";
            for (const SeriesCheckpoint& cp : v.checkpoints) {
                dat << cp.n << ' ' << cp.partial_sum << '\n';
            }
            return dat.str();
        };
        writer.write("partial_sums_odd.dat", staircase(*verdicts[0].odd_series));
        gp << "set logscale xy\nset xlabel 'n'\nset ylabel 'partial sum'\n"
           << "plot 'partial_sums_odd.dat' with steps title 'odd chain'";
        if (verdicts[0].even_series) {
            writer.write("partial_sums_even.dat", staircase(*verdicts[0].even_series));
            gp << ", \\\n     'partial_sums_even.dat' with steps title 'even chain'";
        }
        gp << '\n';
        writer.write("plot.gp", gp.str());
    } else if (lambdas.size() > 1) {
        std::ostringstream dat;
        dat.precision(17);
        dat << "# lambda guaranteed_absent\n";
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            dat << lambdas[i] << ' '
                << (verdicts[i].status == EmbeddedStatus::guaranteed_absent ? 1 : 0) << '\n';
        }
        writer.write("verdicts.dat", dat.str());
        gp << "set xlabel 'lambda'\nset ylabel 'guaranteed absent'\nset yrange [-0.2:1.2]\n"
           << "plot 'verdicts.dat' with steps title 'no embedded eigenvalue'\n";
        writer.write("plot.gp", gp.str());
    }
    return result;
}

Json run_truncate(const JobConfig& config, ArtifactWriter& writer) {
    BandOperator op = (config.params.source == OperatorSource::T)
                          ? BandOperator::full(config.model)
                          : (config.params.source == OperatorSource::T0)
                                ? BandOperator::limit(config.model.limit_profile())
                                : BandOperator::perturbation(config.model);
    const FiniteSection section = op.truncate(config.params.truncate_n);
    Json result;
    result["n"] = section.size;
    result["source"] = to_string(section.source);
    result["dense_csv"] = writer.write("section_dense.csv", section.to_dense_csv());
    result["band_csv"] = writer.write("section_bands.csv", section.to_band_csv());
    return result;
}

Json run_portrait(const JobConfig& config, ArtifactWriter& writer) {
    if (config.params.source == OperatorSource::K) {
        throw ConfigError("portrait compares against the essential spectrum; source must be T or T0");
    }
    BandOperator op = (config.params.source == OperatorSource::T0)
                          ? BandOperator::limit(config.model.limit_profile())
                          : BandOperator::full(config.model);
    const SpectralSet predicted = essential_spectrum(config.model.limit_profile());
    const PortraitReport report =
        spectral_portrait(op, predicted, config.params.schedule, config.params.epsilon);
    Json result;
    result["portrait"] = detail::json_of(report);
    if (config.write_csv) writer.write("portrait.csv", to_csv(report));
    std::ostringstream dat;
    dat.precision(17);
    dat << "# N max_distance fill_distance\n";
    for (const PortraitRow& row : report.rows) {
        dat << row.n << ' ' << row.max_distance << ' ' << row.fill_distance << '\n';
    }
    writer.write("portrait.dat", dat.str());
    writer.write("plot.gp",
                 "set logscale xy\nset xlabel 'N'\nset ylabel 'distance'\n"
                 "plot 'portrait.dat' using 1:2 with linespoints title 'max distance', \\\n"
                 "     'portrait.dat' using 1:3 with linespoints title 'fill distance'\n");
    return result;
}

Json model_echo(const CoefficientModel& model) {
    auto band_json = [](const BandSpec& spec) {
        Json b;
        b["kind"] = to_string(spec.kind);
        b["odd-limit"] = spec.odd_limit;
        b["even-limit"] = spec.even_limit;
        if (spec.kind == BandKind::exponential || spec.kind == BandKind::power_law) {
            b["amplitude"] = spec.amplitude;
        }
        if (spec.kind == BandKind::exponential) b["rate"] = spec.rate;
        if (spec.kind == BandKind::power_law) b["exponent"] = spec.exponent;
        if (!spec.overrides.empty()) {
            b["overrides"] = Json::array();
            for (const auto& [idx, val] : spec.overrides) {
                b["overrides"].push_back(Json::array({idx, val}));
            }
        }
        if (spec.kind == BandKind::explicit_table) {
            b["table-size"] = spec.table.size();
            b["settle-index"] = spec.settle_index;
        }
        return b;
    };
    Json m;
    m["a"] = band_json(model.a);
    m["b"] = band_json(model.b);
    m["c"] = band_json(model.c);
    return m;
}

} // namespace

JobResult run_job(const std::string& config_path, const JobOverrides& overrides) {
    JobResult result;
    std::string config_text;
    std::string config_hash = "unreadable";
    Json report;
    JobConfig config;

    auto finish_error = [&](const std::exception& e) {
        result.exit_code = exit_code_for(e);
        Json error;
        error["type"] = error_type_name(e);
        error["message"] = e.what();
        error["exit_code"] = result.exit_code;
        if (const auto* gate = dynamic_cast<const HypothesisError*>(&e)) {
            error["attachment"] = gate->attachment();
        }
        report["error"] = std::move(error);
        const fs::path dir = result.out_dir.empty() ? fs::path(".") : fs::path(result.out_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        const fs::path path = dir / "report.json";
        std::ofstream out(path, std::ios::binary);
        if (out) {
            out << report.dump(2) << '\n';
            result.report_path = path.string();
            result.artifacts.push_back(path.string());
        }
        return result;
    };

    // Provenance first so even config errors produce a traceable report.
    {
        std::ifstream in(config_path, std::ios::binary);
        if (in) {
            std::ostringstream buf;
            buf << in.rdbuf();
            config_text = buf.str();
            config_hash = fnv1a_hex(config_text);
        }
    }
    Json provenance;
    provenance["tool"] = "pentaspec";
    provenance["version"] = kVersion;
    provenance["config"] = config_path;
    provenance["config_hash"] = config_hash;
    provenance["timestamp"] = utc_timestamp();
    report["provenance"] = provenance;

    if (overrides.out_dir) result.out_dir = *overrides.out_dir;

    try {
        if (config_text.empty()) {
            std::ifstream probe(config_path);
            if (!probe) throw ConfigError("cannot read config file " + config_path);
        }
        config = JobConfig::parse(config_text);
        if (overrides.out_dir) config.out_dir = *overrides.out_dir;
        if (overrides.format) {
            if (*overrides.format == "json") {
                config.write_json = true;
                config.write_csv = false;
            } else if (*overrides.format == "csv") {
                config.write_json = false;
                config.write_csv = true;
            } else if (*overrides.format == "both") {
                config.write_json = true;
                config.write_csv = true;
            } else {
                throw ConfigError("format must be json, csv, or both");
            }
        }
        if (overrides.threads) {
            if (*overrides.threads < 1) throw ConfigError("threads must be >= 1");
            config.threads = *overrides.threads;
        }
        if (overrides.seed) config.seed = *overrides.seed;
        result.out_dir = config.out_dir;

        report["task"] = to_string(config.task);
        report["p"] = config.p;
        report["model"] = model_echo(config.model);
        report["provenance"]["seed"] = config.seed;
        report["provenance"]["threads"] = config.threads;

        ArtifactWriter writer;
        writer.dir = fs::path(config.out_dir);
        fs::create_directories(writer.dir);

        Json task_result;
        switch (config.task) {
        case JobTask::norm_bounds: task_result = run_norm_bounds(config, writer); break;
        case JobTask::essential_spectrum: task_result = run_essential_spectrum(config, writer); break;
        case JobTask::fine_spectrum: task_result = run_eigenvalues(config, writer, true); break;
        case JobTask::eigenvalues: task_result = run_eigenvalues(config, writer, false); break;
        case JobTask::check_conditions: task_result = run_check_conditions(config, writer); break;
        case JobTask::truncate: task_result = run_truncate(config, writer); break;
        case JobTask::portrait: task_result = run_portrait(config, writer); break;
        }
        report["result"] = std::move(task_result);

        const fs::path report_path = writer.dir / "report.json";
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + report_path.string());
        out << report.dump(2) << '\n';
        result.report_path = report_path.string();
        result.artifacts = writer.written;
        result.artifacts.push_back(report_path.string());
        result.exit_code = 0;
        return result;
    } catch (const std::exception& e) {
        return finish_error(e);
    }
}

} // namespace pentaspec
