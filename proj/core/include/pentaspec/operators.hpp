// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pentaspec/coeffs.hpp"

namespace pentaspec {

/// Which operator a BandOperator or FiniteSection materializes.
enum class OperatorSource { T, T0, K };

const char* to_string(OperatorSource source);

/// The compact-perturbation entries of K = T - T0:
///   u_n = a_n - r(parity), v_n = b_n - s(parity), w_n = c_n - s(parity).
/// Null sequences whenever the model's declared limits are correct.
struct PerturbationEntries {
    CoefficientModel model;

    explicit PerturbationEntries(CoefficientModel m);

    double u(std::int64_t n) const { return model.a.entry(n) - model.a.limit(n); }
    double v(std::int64_t n) const { return model.b.entry(n) - model.b.limit(n); }
    double w(std::int64_t n) const { return model.c.entry(n) - model.c.limit(n); }
};

/// Dense N x N leading principal submatrix of a band operator.
struct FiniteSection {
    std::int64_t size = 0;
    OperatorSource source = OperatorSource::T;
    std::vector<double> data; // row-major, size*size

    double operator()(std::int64_t i, std::int64_t j) const {
        return data[static_cast<std::size_t>(i * size + j)];
    }
    double& at(std::int64_t i, std::int64_t j) {
        return data[static_cast<std::size_t>(i * size + j)];
    }

    FiniteSection transposed() const;

    /// Row-major dense CSV, one matrix row per line.
    std::string to_dense_csv() const;
    /// Band-triple CSV: header then rows "n,a_n,b_n,c_n" (entries absent from
    /// the section are left empty).
    std::string to_band_csv() const;
};

/// Penta-diagonal operator with bands at offsets {-2, 0, +2}: row i holds
/// c_{i-2} at column i-2 (i >= 3), a_i on the diagonal, b_i at column i+2.
/// Materializes T (from a model), T0 (from a limit profile), or K = T - T0.
class BandOperator {
public:
    /// T with entries taken from the model.
    static BandOperator full(CoefficientModel model);
    /// T0 with the periodic limit entries of the profile.
    static BandOperator limit(const LimitProfile& profile);
    /// K = T - T0 with the model's declared limits defining T0.
    static BandOperator perturbation(CoefficientModel model);

    OperatorSource source() const { return source_; }
    const LimitProfile& profile() const { return profile_; }

    /// Matrix entries.  diag(i) = (i,i); super(i) = (i,i+2); sub(i) = (i,i-2)
    /// which stores c_{i-2} and requires i >= 3.
    double diag(std::int64_t i) const;
    double super(std::int64_t i) const;
    double sub(std::int64_t i) const;

    /// y_i = c_{i-2} x_{i-2} + a_i x_i + b_i x_{i+2} for i = 1..L with terms
    /// referencing indices outside 1..L dropped (finite-section semantics:
    /// the caller pads x with zeros to keep the image exact).
    std::vector<double> apply(std::span<const double> x) const;
    std::vector<std::complex<double>> apply(std::span<const std::complex<double>> x) const;

    /// Dense leading N x N principal submatrix.
    FiniteSection truncate(std::int64_t n) const;

private:
    BandOperator(OperatorSource source, CoefficientModel model, LimitProfile profile)
        : source_(source), model_(std::move(model)), profile_(profile) {}

    template <typename Scalar>
    std::vector<Scalar> apply_impl(std::span<const Scalar> x) const;

    OperatorSource source_;
    CoefficientModel model_; // unused for T0
    LimitProfile profile_;
};

/// l_p norm for 1 < p < infinity.  Throws DomainError outside that range.
double lp_norm(std::span<const double> x, double p);
double lp_norm(std::span<const std::complex<double>> x, double p);

/// Operator-norm sandwich for T0 on l_p:
///   lower = ((|r1|^p+|r2|^p+|s1|^p+|s2|^p)/2)^(1/p)
///   upper = (3^(p-1) (|r1|^p+2|s1|^p+|r2|^p+2|s2|^p))^(1/p)
struct NormBounds {
    double lower = 0.0;
    double upper = 0.0;
};

NormBounds norm_bounds(const LimitProfile& profile, double p);

/// Theorem-style tail bound on ||K - K_n||_p:
///   sup_{k>=n-1}|w_k| + sup_{k>=n-1}|u_k| + sup_{k>=n-1}|v_k|,  n >= 2.
/// Non-increasing in n and tends to 0 for every valid model.
double tail_bound(const PerturbationEntries& entries, std::int64_t n);

} // namespace pentaspec
