// SPDX-License-Identifier: Apache-2.0
#include "pentaspec/serialize.hpp"

#include <sstream>

#include "json_detail.hpp"

namespace pentaspec {

namespace detail {

namespace {

Json complex_pair(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

} // namespace

Json json_of(const SpectralSet& set) {
    Json j;
    j["intervals"] = Json::array();
    for (const Interval& iv : set.intervals()) {
        j["intervals"].push_back(Json::array({iv.lo, iv.hi}));
    }
    j["generating_intervals"] = Json::array();
    for (const Interval& iv : set.generating_intervals()) {
        j["generating_intervals"].push_back(Json::array({iv.lo, iv.hi}));
    }
    j["points"] = Json::array();
    for (const SpectralPoint& pt : set.points()) {
        Json p;
        p["re"] = pt.value.real();
        p["im"] = pt.value.imag();
        p["source"] = to_string(pt.chain);
        p["residual"] = pt.residual;
        j["points"].push_back(std::move(p));
    }
    return j;
}

Json json_of(const FineSpectrumReport& report) {
    Json j;
    j["spectrum"] = json_of(report.spectrum);
    j["point"] = json_of(report.point);
    j["residual"] = json_of(report.residual);
    j["continuous"] = json_of(report.continuous);
    j["essential"] = json_of(report.essential);
    j["discrete"] = json_of(report.discrete);
    j["compression"] = json_of(report.compression);
    j["approximate"] = json_of(report.approximate);
    j["defect"] = json_of(report.defect);
    return j;
}

Json json_of(const ConditionTerm& term) {
    Json j;
    j["j"] = term.j;
    j["p"] = term.p_value;
    j["term"] = term.term;
    j["ratio_c_sq"] = term.ratio_c_sq;
    j["ratio_a_sq"] = term.ratio_a_sq;
    return j;
}

Json json_of(const DivergenceVerdict& verdict) {
    Json j;
    j["chain"] = to_string(verdict.chain);
    j["status"] = to_string(verdict.status);
    j["partial_sum"] = verdict.partial_sum;
    j["terms_used"] = verdict.terms_used;
    j["term_limit"] = verdict.term_limit;
    j["geometric_q"] = verdict.geometric_q;
    j["tail_estimate"] = verdict.tail_estimate;
    j["reason"] = verdict.reason;
    j["formula_note"] = verdict.formula_note;
    j["checkpoints"] = Json::array();
    for (const SeriesCheckpoint& cp : verdict.checkpoints) {
        Json c;
        c["n"] = cp.n;
        c["partial_sum"] = cp.partial_sum;
        c["product"] = cp.product;
        j["checkpoints"].push_back(std::move(c));
    }
    j["first_terms"] = Json::array();
    for (const ConditionTerm& term : verdict.first_terms) {
        j["first_terms"].push_back(json_of(term));
    }
    return j;
}

Json json_of(const RateCheckResult& result) {
    Json j;
    j["status"] = to_string(result.status);
    j["certificates"] = Json::array();
    for (const BandRateCertificate& cert : result.certificates) {
        Json c;
        c["band"] = to_string(cert.band);
        c["chain"] = to_string(cert.chain);
        c["status"] = to_string(cert.status);
        c["rate"] = cert.rate;
        c["note"] = cert.note;
        j["certificates"].push_back(std::move(c));
    }
    return j;
}

Json json_of(const NoEmbeddedVerdict& verdict) {
    Json j;
    j["status"] = to_string(verdict.status);
    j["fired"] = verdict.fired;
    j["rate_check"] = json_of(verdict.rate_check);
    j["odd_series"] = verdict.odd_series ? json_of(*verdict.odd_series) : Json(nullptr);
    j["even_series"] = verdict.even_series ? json_of(*verdict.even_series) : Json(nullptr);
    return j;
}

Json json_of(const EigenvalueRecord& record) {
    Json j;
    j["re"] = record.lambda.real();
    j["im"] = record.lambda.imag();
    j["chain"] = to_string(record.chain);
    j["side"] = to_string(record.side);
    j["residual"] = record.residual;
    j["refinement_iterations"] = record.refinement_iterations;
    j["multiplicity"] = record.multiplicity;
    j["adjoint_matched"] = record.matched_by_adjoint;
    return j;
}

Json json_of(const std::vector<EigenvalueRecord>& records) {
    Json j = Json::array();
    for (const EigenvalueRecord& rec : records) j.push_back(json_of(rec));
    return j;
}

Json json_of(const SectionSpectrum& spectrum) {
    Json j;
    j["n"] = spectrum.size;
    j["method"] = spectrum.method;
    j["eigenvalues"] = Json::array();
    for (const auto& ev : spectrum.eigenvalues) j["eigenvalues"].push_back(complex_pair(ev));
    return j;
}

Json json_of(const PortraitReport& report) {
    Json j;
    j["outlier_fattening"] = report.outlier_fattening;
    j["outliers_stable"] = report.outliers_stable;
    j["rows"] = Json::array();
    for (const PortraitRow& row : report.rows) {
        Json r;
        r["n"] = row.n;
        r["max_distance"] = row.max_distance;
        r["fill_distance"] = row.fill_distance;
        r["outliers"] = Json::array();
        for (const auto& ev : row.outliers) r["outliers"].push_back(complex_pair(ev));
        j["rows"].push_back(std::move(r));
    }
    return j;
}

} // namespace detail

namespace {

template <typename T>
std::string dump(const T& value, int indent) {
    return detail::json_of(value).dump(indent);
}

} // namespace

std::string to_json_string(const SpectralSet& set, int indent) { return dump(set, indent); }
std::string to_json_string(const FineSpectrumReport& report, int indent) { return dump(report, indent); }
std::string to_json_string(const DivergenceVerdict& verdict, int indent) { return dump(verdict, indent); }
std::string to_json_string(const RateCheckResult& result, int indent) { return dump(result, indent); }
std::string to_json_string(const NoEmbeddedVerdict& verdict, int indent) { return dump(verdict, indent); }
std::string to_json_string(const std::vector<EigenvalueRecord>& records, int indent) {
    return dump(records, indent);
}
std::string to_json_string(const SectionSpectrum& spectrum, int indent) { return dump(spectrum, indent); }
std::string to_json_string(const PortraitReport& report, int indent) { return dump(report, indent); }

std::string to_csv(const std::vector<EigenvalueRecord>& records) {
    std::ostringstream out;
    out.precision(17);
    out << "re,im,chain,side,residual,multiplicity,adjoint_matched\n";
    for (const EigenvalueRecord& rec : records) {
        out << rec.lambda.real() << ',' << rec.lambda.imag() << ',' << to_string(rec.chain) << ','
            << to_string(rec.side) << ',' << rec.residual << ',' << rec.multiplicity << ','
            << (rec.matched_by_adjoint ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string to_csv(const SectionSpectrum& spectrum) {
    std::ostringstream out;
    out.precision(17);
    out << "re,im\n";
    for (const auto& ev : spectrum.eigenvalues) out << ev.real() << ',' << ev.imag() << '\n';
    return out.str();
}

std::string to_csv(const PortraitReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "n,max_distance,fill_distance,outlier_count\n";
    for (const PortraitRow& row : report.rows) {
        out << row.n << ',' << row.max_distance << ',' << row.fill_distance << ','
            << row.outliers.size() << '\n';
    }
    return out.str();
}

std::string to_csv(const MinimalSolutionResult& solution) {
    std::ostringstream out;
    out.precision(17);
    out << "n,re,im\n";
    for (std::size_t n = 0; n < solution.values.size(); ++n) {
        out << n << ',' << solution.values[n].real() << ',' << solution.values[n].imag() << '\n';
    }
    return out.str();
}

} // namespace pentaspec
