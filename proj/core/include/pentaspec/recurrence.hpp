// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "pentaspec/coeffs.hpp"
#include "pentaspec/spectra.hpp"

namespace pentaspec {

using Complex = std::complex<double>;

/// Reduced spectral parameters p1 = (r1 - lambda)/s1, p2 = (r2 - lambda)/s2.
struct ReducedParameter {
    Complex p1;
    Complex p2;

    static ReducedParameter from(const LimitProfile& profile, Complex lambda) {
        return {(profile.r1 - lambda) / profile.s1, (profile.r2 - lambda) / profile.s2};
    }

    Complex of(Chain chain) const { return chain == Chain::odd ? p1 : p2; }
};

/// Roots of y^2 + p y + 1 = 0 with |small| <= |large| and small*large = 1.
struct CharacteristicRoots {
    Complex p;
    Complex small;
    Complex large;
    bool degenerate = false; // p = +-2 within 1e-14 (double root -+1)
};

CharacteristicRoots characteristic_roots(Complex p);

/// Case table of the constant-coefficient solution with y_0 = 0:
///   p = +2:  y_n = n y1 (-1)^(n+1)
///   p = -2:  y_n = n y1
///   generic: y_n = y1 (small^n - large^n)/(small - large)
/// Within a band of width 1e-8 around +-2 the generic value is evaluated by
/// the recurrence itself (Chebyshev-style) to avoid 0/0 cancellation.
class ClosedFormSolution {
public:
    enum class Case { plus_two, minus_two, generic };

    ClosedFormSolution(Complex p, Complex y1);

    Case solution_case() const { return case_; }
    const CharacteristicRoots& roots() const { return roots_; }
    /// Constants (c1, c2) of the paper-form general solution for this case.
    std::array<Complex, 2> constants() const;

    Complex value(std::int64_t n) const;

private:
    Case case_;
    bool near_degenerate_ = false;
    CharacteristicRoots roots_;
    Complex p_;
    Complex y1_;
};

ClosedFormSolution closed_form_T0(Complex lambda, const LimitProfile& profile, Chain chain,
                                  Complex y1);

/// Coefficient accessor for one chain of the perturbed recurrence
///   cc(n) y_n + (aa(n) - lambda) y_{n+1} + bb(n) y_{n+2} = 0,   n >= 0,
/// odd chain: cc(n) = c_{2n-1} (n>=1), aa(n) = a_{2n+1}, bb(n) = b_{2n+1};
/// even chain: cc(n) = c_{2n}  (n>=1), aa(n) = a_{2n+2}, bb(n) = b_{2n+2}.
/// The n = 0 equation is matrix row 1 (resp. 2); its y_0 coefficient is fixed
/// to the chain's s-limit so that for T0 it reduces to y_0 + p y_1 + y_2 = 0
/// and y_0 acts as a scaled boundary residual for every model.
struct ChainCoefficients {
    CoefficientModel model;
    Chain chain = Chain::odd;

    double cc(std::int64_t n) const;
    double aa(std::int64_t n) const;
    double bb(std::int64_t n) const;
    /// Matrix index of the band entry used at step n (for error messages).
    std::int64_t c_index(std::int64_t n) const;
    std::int64_t b_index(std::int64_t n) const;
};

/// Forward iteration of the chain recurrence from seed (y0, y1); returns
/// (y_0 .. y_M).  Throws PivotError when a needed b-entry vanishes.
std::vector<Complex> forward_iterate(const CoefficientModel& model, Chain chain, Complex lambda,
                                     Complex y0, Complex y1, std::int64_t m);

/// The decaying fundamental solution at lambda, found by backward recurrence
/// with (y_{N+1}, y_N) = (0, 1) seeding and start-index doubling.
struct MinimalSolutionResult {
    Chain chain = Chain::odd;
    Complex lambda;
    std::vector<Complex> values;    // y_0 .. y_M, normalized so y_1 = 1 when possible
    double boundary_residual = 0.0; // |y_0| after normalization
    bool normalized = false;        // false when |y_1| <= 1e-30 before normalization
    std::int64_t start_index = 0;   // accepted N_start
    bool converged = false;         // start-index doubling stabilized y_0
};

struct MinimalSolutionOptions {
    double collar = 1e-6;           // exclusion distance around the essential spectrum
    double stabilization = 1e-8;    // |y0(2N) - y0(N)| <= stab * max(1, |y0|)
    std::int64_t max_start = 1 << 16;
};

MinimalSolutionResult minimal_solution(const CoefficientModel& model, Chain chain, Complex lambda,
                                       std::int64_t m, const MinimalSolutionOptions& opts = {});

/// 2x2 companion matrix advancing (y_j, y_{j+1}) -> (y_{j+1}, y_{j+2}):
/// [[0, 1], [-cc(j)/bb(j), -(aa(j)-lambda)/bb(j)]], j >= 1.
struct TransferMatrix {
    std::array<std::array<Complex, 2>, 2> m;

    Complex determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    std::array<Complex, 2> apply(const std::array<Complex, 2>& v) const {
        return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
    }
    double frobenius_sq() const;
    /// Smallest singular value via the 2x2 closed form.
    double sigma_min() const;
};

TransferMatrix transfer_matrix(const CoefficientModel& model, Chain chain, std::int64_t j,
                               Complex lambda);

} // namespace pentaspec
