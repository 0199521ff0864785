// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "helpers.hpp"
#include "pentaspec/oracle.hpp"
#include "pentaspec/serialize.hpp"

#include <json.hpp>

using namespace pentaspec;
using pentaspec::testing::constant_model;
using pentaspec::testing::exponential_model;
using pentaspec::testing::override_model;

namespace {

// Test-side oracle: eigenvalues of the full dense section without the
// odd/even decoupling.
std::vector<std::complex<double>> dense_eigenvalues(const FiniteSection& section) {
    Eigen::MatrixXd m(section.size, section.size);
    for (std::int64_t i = 0; i < section.size; ++i) {
        for (std::int64_t j = 0; j < section.size; ++j) m(i, j) = section(i, j);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(section.size));
    for (std::int64_t i = 0; i < section.size; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
    std::sort(out.begin(), out.end(), [](auto x, auto y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return out;
}

void check_multisets_close(const std::vector<std::complex<double>>& a,
                           const std::vector<std::complex<double>>& b, double tol) {
    REQUIRE(a.size() == b.size());
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        bool matched = false;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!used[i] && std::abs(x - b[i]) <= tol) {
                used[i] = true;
                matched = true;
                break;
            }
        }
        CHECK(matched);
    }
}

} // namespace

TEST_CASE("small free sections have known spectra") {
    const BandOperator t0 = BandOperator::limit({0.0, 0.0, 1.0, 1.0});
    SUBCASE("N = 2 is the zero matrix") {
        const SectionSpectrum s = section_eigenvalues(t0.truncate(2));
        REQUIRE(s.eigenvalues.size() == 2);
        CHECK(s.eigenvalues[0] == std::complex<double>(0.0));
        CHECK(s.eigenvalues[1] == std::complex<double>(0.0));
    }
    SUBCASE("N = 6 decouples into two 3x3 free blocks") {
        const SectionSpectrum s = section_eigenvalues(t0.truncate(6));
        REQUIRE(s.eigenvalues.size() == 6);
        const double root2 = std::sqrt(2.0);
        const std::vector<double> expected = {-root2, -root2, 0.0, 0.0, root2, root2};
        for (std::size_t i = 0; i < 6; ++i) {
            CHECK(s.eigenvalues[i].imag() == 0.0);
            CHECK(s.eigenvalues[i].real() == doctest::Approx(expected[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("permutation identity: blocks vs full dense section") {
    std::mt19937_64 rng(61);
    const CoefficientModel model = exponential_model(0.4, -0.9, 1.2, 0.7, 0.5, -0.3, 0.2, 0.6);
    for (std::int64_t n : {8, 16, 17}) { // even and odd sizes
        const FiniteSection section = BandOperator::full(model).truncate(n);
        const SectionSpectrum via_blocks = section_eigenvalues(section);
        const auto via_dense = dense_eigenvalues(section);
        check_multisets_close(via_blocks.eigenvalues, via_dense, 1e-8);
    }
}

TEST_CASE("decoupled blocks carry the chain bands") {
    const CoefficientModel model = override_model(0, 0, 1, 1, {{Band::a, {3, 5.0}}});
    const auto [odd, even] = decouple_section(BandOperator::full(model).truncate(9));
    REQUIRE(odd.diag.size() == 5);
    REQUIRE(even.diag.size() == 4);
    CHECK(odd.diag[1] == 5.0); // a_3 sits at odd-chain position 2
    CHECK(even.diag[1] == 0.0);
    REQUIRE(odd.sub.size() == 4);
    CHECK(odd.sub[0] == 1.0);
    CHECK(odd.super[0] == 1.0);
}

TEST_CASE("sections of matrix and transpose share spectra") {
    SUBCASE("symmetric model: exact") {
        const FiniteSection s = BandOperator::limit({0.3, -0.6, 1.4, 0.9}).truncate(32);
        const SectionSpectrum direct = section_eigenvalues(s);
        const SectionSpectrum transposed = section_eigenvalues(s.transposed());
        for (std::size_t i = 0; i < direct.eigenvalues.size(); ++i) {
            CHECK(std::abs(direct.eigenvalues[i] - transposed.eigenvalues[i]) < 1e-12);
        }
    }
    SUBCASE("non-symmetric override model: multisets agree") {
        const CoefficientModel model =
            override_model(0, 0, 1, 1, {{Band::a, {1, 3.0}}, {Band::b, {1, 2.0}}});
        const FiniteSection s = BandOperator::full(model).truncate(40);
        const SectionSpectrum direct = section_eigenvalues(s);
        const SectionSpectrum transposed = section_eigenvalues(s.transposed());
        check_multisets_close(direct.eigenvalues, transposed.eigenvalues, 1e-8);
    }
}

TEST_CASE("free sections stay real and inside the essential intervals") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 6; ++trial) {
        const LimitProfile profile = pentaspec::testing::random_profile(rng);
        const SpectralSet ess = essential_spectrum(profile);
        const SectionSpectrum s = section_eigenvalues(BandOperator::limit(profile).truncate(256));
        for (const auto& ev : s.eigenvalues) {
            CHECK(ev.imag() == 0.0);
            CHECK(ess.distance(ev) <= 1e-8);
        }
    }
}

TEST_CASE("zero off-diagonal entries split blocks correctly") {
    // b_1 = 0 makes the odd block lower-triangular at its first cut.
    const CoefficientModel model =
        override_model(0.5, -0.5, 1.0, 1.0, {{Band::b, {1, 0.0}}, {Band::a, {1, 4.0}}});
    const FiniteSection section = BandOperator::full(model).truncate(12);
    const SectionSpectrum via_blocks = section_eigenvalues(section);
    const auto via_dense = dense_eigenvalues(section);
    check_multisets_close(via_blocks.eigenvalues, via_dense, 1e-8);
    bool found = false;
    for (const auto& ev : via_blocks.eigenvalues) {
        if (std::abs(ev - std::complex<double>(4.0)) < 1e-12) found = true;
    }
    CHECK(found); // the split isolates the overridden diagonal entry
}

TEST_CASE("section size limits") {
    const BandOperator t0 = BandOperator::limit({0, 0, 1, 1});
    CHECK_THROWS_AS(section_eigenvalues(FiniteSection{}), DomainError);
    FiniteSection too_big;
    too_big.size = 8193;
    CHECK_THROWS_AS(section_eigenvalues(too_big), DomainError);
}

TEST_CASE("fill distance of an interval") {
    const Interval iv{0.0, 1.0};
    const std::vector<std::complex<double>> eigs = {{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}};
    CHECK(fill_distance(iv, eigs) == doctest::Approx(0.25).epsilon(1e-15));
    const std::vector<std::complex<double>> off = {{-1.0, 0.0}};
    CHECK(fill_distance(iv, off) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("portrait of the free operator") {
    const PortraitReport report = spectral_portrait(
        BandOperator::limit({0.0, 0.0, 1.0, 1.0}), essential_spectrum({0.0, 0.0, 1.0, 1.0}),
        {64, 128, 256});
    REQUIRE(report.rows.size() == 3);
    for (const PortraitRow& row : report.rows) {
        CHECK(row.max_distance < 1e-8);
        CHECK(row.outliers.empty());
    }
    // Fill shrinks like O(1/N).
    CHECK(report.rows[2].fill_distance < 0.6 * report.rows[0].fill_distance);
    CHECK(report.outliers_stable);
}

TEST_CASE("portrait separates disjoint intervals") {
    const LimitProfile profile{0.0, 5.0, 1.0, 1.0};
    const SectionSpectrum s = section_eigenvalues(BandOperator::limit(profile).truncate(128));
    std::int64_t low_cluster = 0, high_cluster = 0;
    for (const auto& ev : s.eigenvalues) {
        if (Interval{-2, 2}.distance(ev) <= 1e-8) ++low_cluster;
        if (Interval{3, 7}.distance(ev) <= 1e-8) ++high_cluster;
    }
    CHECK(low_cluster == 64);
    CHECK(high_cluster == 64);
}

TEST_CASE("portrait outliers stabilize for a compact perturbation") {
    const CoefficientModel model = override_model(0, 0, 1, 1, {{Band::a, {1, 3.0}}});
    const PortraitReport report = spectral_portrait(model, {128, 256, 512}, 1e-3);
    REQUIRE(report.rows.size() == 3);
    for (const PortraitRow& row : report.rows) {
        REQUIRE(row.outliers.size() == 1);
        CHECK(std::abs(row.outliers[0] - std::complex<double>(10.0 / 3.0)) < 1e-3);
    }
    CHECK(report.outliers_stable);
    CHECK(report.rows[2].max_distance == doctest::Approx(10.0 / 3.0 - 2.0).epsilon(1e-6));
}

TEST_CASE("section spectrum serialization") {
    const SectionSpectrum s =
        section_eigenvalues(BandOperator::limit({0.0, 0.0, 1.0, 1.0}).truncate(6));
    const std::string csv = to_csv(s);
    CHECK(csv.rfind("re,im\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
    const auto j = nlohmann::json::parse(to_json_string(s));
    CHECK(j.at("n").get<int>() == 6);
    REQUIRE(j.at("eigenvalues").size() == 6);
    CHECK(j.at("method").get<std::string>().find("tridiagonal-symmetric") != std::string::npos);
}

TEST_CASE("portrait schedule validation") {
    const BandOperator t0 = BandOperator::limit({0, 0, 1, 1});
    const SpectralSet ess = essential_spectrum({0, 0, 1, 1});
    CHECK_THROWS_AS(spectral_portrait(t0, ess, {}), DomainError);
    CHECK_THROWS_AS(spectral_portrait(t0, ess, {64, 64}), DomainError);
}
