// SPDX-License-Identifier: Apache-2.0
#include "pentaspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace pentaspec {

namespace {

constexpr std::int64_t kSectionCap = 8192;

void sort_eigenvalues(std::vector<std::complex<double>>& values) {
    std::sort(values.begin(), values.end(),
              [](const std::complex<double>& x, const std::complex<double>& y) {
                  if (x.real() != y.real()) return x.real() < y.real();
                  return x.imag() < y.imag();
              });
}

// Eigenvalues of a tridiagonal block that is symmetric up to a diagonal
// similarity (all sub*super products positive; symmetric off-diagonals are
// the special case sub == super).
std::vector<std::complex<double>> symmetric_similar_eigenvalues(const ChainBlock& block) {
    const std::int64_t n = static_cast<std::int64_t>(block.diag.size());
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(std::max<std::int64_t>(n - 1, 0));
    for (std::int64_t i = 0; i < n; ++i) diag[i] = block.diag[static_cast<std::size_t>(i)];
    for (std::int64_t i = 0; i + 1 < n; ++i) {
        off[i] = std::sqrt(block.sub[static_cast<std::size_t>(i)] *
                           block.super[static_cast<std::size_t>(i)]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("symmetric tridiagonal eigensolver failed to converge");
    }
    std::vector<std::complex<double>> values(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
    return values;
}

std::vector<std::complex<double>> general_dense_eigenvalues(const ChainBlock& block) {
    const std::int64_t n = static_cast<std::int64_t>(block.diag.size());
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(n, n);
    for (std::int64_t i = 0; i < n; ++i) {
        mat(i, i) = block.diag[static_cast<std::size_t>(i)];
        if (i + 1 < n) {
            mat(i + 1, i) = block.sub[static_cast<std::size_t>(i)];
            mat(i, i + 1) = block.super[static_cast<std::size_t>(i)];
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(mat, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("dense eigensolver failed to converge on a chain block");
    }
    std::vector<std::complex<double>> values(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
    return values;
}

ChainBlock sub_block(const ChainBlock& block, std::int64_t lo, std::int64_t hi) {
    ChainBlock out;
    out.chain = block.chain;
    out.diag.assign(block.diag.begin() + lo, block.diag.begin() + hi);
    if (hi - lo > 1) {
        out.sub.assign(block.sub.begin() + lo, block.sub.begin() + (hi - 1));
        out.super.assign(block.super.begin() + lo, block.super.begin() + (hi - 1));
    }
    return out;
}

} // namespace

std::pair<ChainBlock, ChainBlock> decouple_section(const FiniteSection& section) {
    ChainBlock odd, even;
    odd.chain = Chain::odd;
    even.chain = Chain::even;
    const std::int64_t n = section.size;
    for (std::int64_t i = 1; i <= n; i += 2) odd.diag.push_back(section(i - 1, i - 1));
    for (std::int64_t i = 2; i <= n; i += 2) even.diag.push_back(section(i - 1, i - 1));
    for (std::int64_t i = 1; i + 2 <= n; i += 2) {
        odd.super.push_back(section(i - 1, i + 1));
        odd.sub.push_back(section(i + 1, i - 1));
    }
    for (std::int64_t i = 2; i + 2 <= n; i += 2) {
        even.super.push_back(section(i - 1, i + 1));
        even.sub.push_back(section(i + 1, i - 1));
    }
    return {std::move(odd), std::move(even)};
}

std::vector<std::complex<double>> chain_block_eigenvalues(const ChainBlock& block,
                                                          std::string* method) {
    const std::int64_t n = static_cast<std::int64_t>(block.diag.size());
    if (n == 0) return {};
    if (n == 1) {
        if (method) *method = "1x1";
        return {std::complex<double>(block.diag[0], 0.0)};
    }
    // A zero off-diagonal entry splits the block into independent pieces
    // (block-triangular either way).
    for (std::int64_t i = 0; i + 1 < n; ++i) {
        if (block.sub[static_cast<std::size_t>(i)] == 0.0 ||
            block.super[static_cast<std::size_t>(i)] == 0.0) {
            std::string m1, m2;
            auto left = chain_block_eigenvalues(sub_block(block, 0, i + 1), &m1);
            auto right = chain_block_eigenvalues(sub_block(block, i + 1, n), &m2);
            left.insert(left.end(), right.begin(), right.end());
            if (method) *method = "split[" + m1 + "," + m2 + "]";
            return left;
        }
    }
    bool symmetrizable = true;
    for (std::int64_t i = 0; i + 1 < n; ++i) {
        if (block.sub[static_cast<std::size_t>(i)] * block.super[static_cast<std::size_t>(i)] <= 0.0) {
            symmetrizable = false;
            break;
        }
    }
    if (symmetrizable) {
        if (method) *method = "tridiagonal-symmetric";
        return symmetric_similar_eigenvalues(block);
    }
    if (method) *method = "dense-general";
    return general_dense_eigenvalues(block);
}

SectionSpectrum section_eigenvalues(const FiniteSection& section) {
    if (section.size < 1) throw DomainError("section must have size >= 1");
    if (section.size > kSectionCap) {
        throw DomainError("section size exceeds the desk-scale cap 8192");
    }
    auto [odd, even] = decouple_section(section);
    std::string method_odd, method_even;
    auto values = chain_block_eigenvalues(odd, &method_odd);
    auto even_values = chain_block_eigenvalues(even, &method_even);
    values.insert(values.end(), even_values.begin(), even_values.end());

    SectionSpectrum spectrum;
    spectrum.size = section.size;
    spectrum.method = "odd:" + method_odd + " even:" + method_even;
    // Imaginary dust from the dense path on nearly-real spectra.
    spectrum.cleanup_tolerance = 1e-8 * std::max(1.0, std::abs(section(0, 0)));
    for (auto& v : values) {
        if (v.imag() != 0.0 && std::abs(v.imag()) < 1e-14 * std::max(1.0, std::abs(v.real()))) {
            v = std::complex<double>(v.real(), 0.0);
        }
    }
    sort_eigenvalues(values);
    spectrum.eigenvalues = std::move(values);
    return spectrum;
}

double fill_distance(const Interval& interval, const std::vector<std::complex<double>>& eigenvalues) {
    // Real parts only; the fill notion lives on the real line.
    std::vector<double> xs;
    xs.reserve(eigenvalues.size());
    for (const auto& v : eigenvalues) xs.push_back(v.real());
    std::sort(xs.begin(), xs.end());
    if (xs.empty()) return std::numeric_limits<double>::infinity();

    auto dist_to = [&xs](double x) {
        auto it = std::lower_bound(xs.begin(), xs.end(), x);
        double best = std::numeric_limits<double>::infinity();
        if (it != xs.end()) best = std::min(best, std::abs(*it - x));
        if (it != xs.begin()) best = std::min(best, std::abs(*(it - 1) - x));
        return best;
    };

    double fill = std::max(dist_to(interval.lo), dist_to(interval.hi));
    // Interior worst case sits at midpoints between consecutive eigenvalues.
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double mid = 0.5 * (xs[i] + xs[i + 1]);
        if (interval.contains(mid)) fill = std::max(fill, 0.5 * (xs[i + 1] - xs[i]));
    }
    return fill;
}

PortraitReport spectral_portrait(const BandOperator& op, const SpectralSet& predicted,
                                 const std::vector<std::int64_t>& schedule,
                                 double outlier_fattening) {
    if (schedule.empty()) throw DomainError("portrait needs a non-empty N-schedule");
    for (std::size_t i = 1; i < schedule.size(); ++i) {
        if (schedule[i] <= schedule[i - 1]) throw DomainError("portrait N-schedule must increase");
    }

    PortraitReport report;
    report.outlier_fattening = outlier_fattening;
    for (std::int64_t n : schedule) {
        const SectionSpectrum spectrum = section_eigenvalues(op.truncate(n));
        PortraitRow row;
        row.n = n;
        for (const auto& ev : spectrum.eigenvalues) {
            const double d = predicted.distance(ev);
            row.max_distance = std::max(row.max_distance, d);
            if (d > outlier_fattening) row.outliers.push_back(ev);
        }
        double fill = 0.0;
        for (const Interval& iv : predicted.intervals()) {
            fill = std::max(fill, fill_distance(iv, spectrum.eigenvalues));
        }
        row.fill_distance = fill;
        report.rows.push_back(std::move(row));
    }

    // Outliers count as stable when each one in the final row has a match in
    // the previous row.
    report.outliers_stable = true;
    if (report.rows.size() >= 2) {
        const auto& last = report.rows.back().outliers;
        const auto& prev = report.rows[report.rows.size() - 2].outliers;
        for (const auto& ev : last) {
            bool matched = false;
            for (const auto& old : prev) {
                if (std::abs(ev - old) < 1e-4) {
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                report.outliers_stable = false;
                break;
            }
        }
    } else {
        report.outliers_stable = report.rows.back().outliers.empty();
    }
    return report;
}

PortraitReport spectral_portrait(const CoefficientModel& model,
                                 const std::vector<std::int64_t>& schedule,
                                 double outlier_fattening) {
    const BandOperator op = BandOperator::full(model);
    return spectral_portrait(op, essential_spectrum(model.limit_profile()), schedule,
                             outlier_fattening);
}

} // namespace pentaspec
