// SPDX-License-Identifier: Apache-2.0
#include "pentaspec/recurrence.hpp"

#include <cmath>
#include <string>

namespace pentaspec {

namespace {

constexpr double kDegenerateTol = 1e-14;
constexpr double kNearDegenerateBand = 1e-8;

} // namespace

CharacteristicRoots characteristic_roots(Complex p) {
    CharacteristicRoots r;
    r.p = p;
    if (std::abs(p - 2.0) <= kDegenerateTol) {
        r.small = r.large = -1.0;
        r.degenerate = true;
        return r;
    }
    if (std::abs(p + 2.0) <= kDegenerateTol) {
        r.small = r.large = 1.0;
        r.degenerate = true;
        return r;
    }
    const Complex disc = std::sqrt(p * p - 4.0);
    // Pick the sign that avoids cancellation in -(p + sigma*disc)/2, then
    // recover the other root from the product identity small*large = 1.
    const double align = p.real() * disc.real() + p.imag() * disc.imag();
    const Complex sigma = (align >= 0.0) ? 1.0 : -1.0;
    Complex large = -(p + sigma * disc) / 2.0;
    Complex small = 1.0 / large;
    if (std::abs(small) > std::abs(large)) std::swap(small, large);
    r.small = small;
    r.large = large;
    return r;
}

ClosedFormSolution::ClosedFormSolution(Complex p, Complex y1) : p_(p), y1_(y1) {
    roots_ = characteristic_roots(p);
    if (roots_.degenerate) {
        case_ = (std::abs(p - 2.0) <= kDegenerateTol) ? Case::plus_two : Case::minus_two;
    } else {
        case_ = Case::generic;
        near_degenerate_ = std::min(std::abs(p - 2.0), std::abs(p + 2.0)) < kNearDegenerateBand;
    }
}

std::array<Complex, 2> ClosedFormSolution::constants() const {
    switch (case_) {
    case Case::plus_two:
        return {Complex(0.0), -y1_}; // y_n = (c1 + n c2)(-1)^n
    case Case::minus_two:
        return {Complex(0.0), y1_}; // y_n = c1 + n c2
    case Case::generic: {
        const Complex c1 = y1_ / (roots_.small - roots_.large);
        return {c1, -c1}; // y_n = c1 small^n + c2 large^n
    }
    }
    return {};
}

Complex ClosedFormSolution::value(std::int64_t n) const {
    if (n < 0) throw DomainError("closed-form evaluation requires n >= 0");
    const double nn = static_cast<double>(n);
    switch (case_) {
    case Case::plus_two:
        return nn * y1_ * ((n % 2 == 0) ? -1.0 : 1.0); // n y1 (-1)^(n+1)
    case Case::minus_two:
        return nn * y1_;
    case Case::generic:
        break;
    }
    if (near_degenerate_) {
        // (small^n - large^n)/(small - large) satisfies u_{k+2} = -p u_{k+1} - u_k
        // with u_0 = 0, u_1 = 1; the iteration is stable here (|roots| ~ 1) and
        // free of the 0/0 cancellation of the quotient form.
        Complex u_prev = 0.0, u = 1.0;
        if (n == 0) return 0.0;
        for (std::int64_t k = 1; k < n; ++k) {
            const Complex next = -p_ * u - u_prev;
            u_prev = u;
            u = next;
        }
        return y1_ * u;
    }
    const Complex num = std::pow(roots_.small, static_cast<double>(n)) -
                        std::pow(roots_.large, static_cast<double>(n));
    return y1_ * num / (roots_.small - roots_.large);
}

ClosedFormSolution closed_form_T0(Complex lambda, const LimitProfile& profile, Chain chain,
                                  Complex y1) {
    profile.validate();
    const ReducedParameter rp = ReducedParameter::from(profile, lambda);
    return ClosedFormSolution(rp.of(chain), y1);
}

double ChainCoefficients::cc(std::int64_t n) const {
    if (n < 0) throw DomainError("recurrence step must be >= 0");
    if (n == 0) {
        // Matrix rows 1 and 2 have no sub-band; with y_0 = 0 the coefficient is
        // immaterial and the s-limit normalization matches the T0 reduction.
        return chain == Chain::odd ? model.c.odd_limit : model.c.even_limit;
    }
    return model.c.entry(c_index(n));
}

double ChainCoefficients::aa(std::int64_t n) const {
    if (n < 0) throw DomainError("recurrence step must be >= 0");
    return model.a.entry(chain == Chain::odd ? 2 * n + 1 : 2 * n + 2);
}

double ChainCoefficients::bb(std::int64_t n) const {
    if (n < 0) throw DomainError("recurrence step must be >= 0");
    return model.b.entry(b_index(n));
}

std::int64_t ChainCoefficients::c_index(std::int64_t n) const {
    return chain == Chain::odd ? 2 * n - 1 : 2 * n;
}

std::int64_t ChainCoefficients::b_index(std::int64_t n) const {
    return chain == Chain::odd ? 2 * n + 1 : 2 * n + 2;
}

std::vector<Complex> forward_iterate(const CoefficientModel& model, Chain chain, Complex lambda,
                                     Complex y0, Complex y1, std::int64_t m) {
    if (m < 1) throw DomainError("forward iteration requires M >= 1");
    model.validate();
    const ChainCoefficients coeff{model, chain};
    std::vector<Complex> y(static_cast<std::size_t>(m + 1));
    y[0] = y0;
    y[1] = y1;
    for (std::int64_t n = 0; n + 2 <= m; ++n) {
        const double b = coeff.bb(n);
        if (b == 0.0) {
            throw PivotError("zero b-band entry at index " + std::to_string(coeff.b_index(n)));
        }
        y[static_cast<std::size_t>(n + 2)] =
            -(coeff.cc(n) * y[static_cast<std::size_t>(n)] +
              (coeff.aa(n) - lambda) * y[static_cast<std::size_t>(n + 1)]) /
            b;
    }
    return y;
}

namespace {

// One backward sweep from (y_{N+1}, y_N) = (0, 1) down to y_0, keeping
// y_0..y_M.  Magnitudes grow along the sweep; everything is rescaled in
// lock-step whenever the rolling values get large, which leaves the final
// y_1-normalization unchanged.
struct BackwardSweep {
    std::vector<Complex> head; // y_0..y_M, consistent scaling
    Complex y0;
    Complex y1;
};

BackwardSweep backward_sweep(const ChainCoefficients& coeff, Complex lambda, std::int64_t m,
                             std::int64_t n_start) {
    BackwardSweep out;
    out.head.assign(static_cast<std::size_t>(m + 1), Complex(0.0));
    Complex hi2 = 0.0; // y_{n+2}
    Complex hi1 = 1.0; // y_{n+1}
    if (n_start <= m) throw DomainError("backward start index must exceed M");

    auto store = [&](std::int64_t idx, Complex v) {
        if (idx <= m) out.head[static_cast<std::size_t>(idx)] = v;
    };
    store(n_start + 1, hi2);
    store(n_start, hi1);

    for (std::int64_t n = n_start - 1; n >= 0; --n) {
        const double c = coeff.cc(n);
        if (c == 0.0) {
            throw PivotError("zero c-band entry at index " + std::to_string(coeff.c_index(n)));
        }
        Complex yn = -((coeff.aa(n) - lambda) * hi1 + coeff.bb(n) * hi2) / c;
        hi2 = hi1;
        hi1 = yn;
        store(n, yn);
        const double mag = std::max(std::abs(hi1), std::abs(hi2));
        if (mag > 1e200) {
            const double scale = 1.0 / mag;
            hi1 *= scale;
            hi2 *= scale;
            yn *= scale;
            for (std::int64_t k = n; k <= m; ++k) {
                out.head[static_cast<std::size_t>(k)] *= scale;
            }
            store(n, yn);
        }
    }
    out.y0 = out.head[0];
    out.y1 = out.head.size() > 1 ? out.head[1] : hi2;
    return out;
}

Complex normalized_y0(const BackwardSweep& sweep) {
    if (std::abs(sweep.y1) > 1e-30) return sweep.y0 / sweep.y1;
    return sweep.y0;
}

} // namespace

MinimalSolutionResult minimal_solution(const CoefficientModel& model, Chain chain, Complex lambda,
                                       std::int64_t m, const MinimalSolutionOptions& opts) {
    if (m < 1) throw DomainError("minimal solution requires M >= 1");
    model.validate();
    const SpectralSet ess = essential_spectrum(model.limit_profile());
    if (ess.distance(lambda) <= opts.collar) {
        throw SpectralRegionError("lambda lies within the essential-spectrum collar");
    }
    const ChainCoefficients coeff{model, chain};

    std::int64_t n_start = std::max<std::int64_t>(64, m + 32);
    BackwardSweep sweep = backward_sweep(coeff, lambda, m, n_start);
    Complex y0_prev = normalized_y0(sweep);
    bool converged = false;
    while (2 * n_start <= opts.max_start) {
        n_start *= 2;
        sweep = backward_sweep(coeff, lambda, m, n_start);
        const Complex y0_new = normalized_y0(sweep);
        if (std::abs(y0_new - y0_prev) <= opts.stabilization * std::max(1.0, std::abs(y0_new))) {
            converged = true;
            y0_prev = y0_new;
            break;
        }
        y0_prev = y0_new;
    }
    if (!converged) {
        throw InstabilityError("backward recurrence did not stabilize below start index " +
                               std::to_string(opts.max_start));
    }

    MinimalSolutionResult result;
    result.chain = chain;
    result.lambda = lambda;
    result.start_index = n_start;
    result.converged = converged;
    result.values = std::move(sweep.head);
    const Complex y1 = result.values[1];
    if (std::abs(y1) > 1e-30) {
        for (Complex& v : result.values) v /= y1;
        result.normalized = true;
    }
    result.boundary_residual = std::abs(result.values[0]);
    return result;
}

double TransferMatrix::frobenius_sq() const {
    double acc = 0.0;
    for (const auto& row : m) {
        for (const Complex& v : row) acc += std::norm(v);
    }
    return acc;
}

double TransferMatrix::sigma_min() const {
    const double f = frobenius_sq();
    const double d2 = std::norm(determinant());
    double disc = f * f - 4.0 * d2;
    if (disc < 0.0) disc = 0.0; // rounding: algebraically >= 0
    return std::sqrt(0.5 * (f - std::sqrt(disc)));
}

TransferMatrix transfer_matrix(const CoefficientModel& model, Chain chain, std::int64_t j,
                               Complex lambda) {
    if (j < 1) throw DomainError("transfer matrix index must be >= 1");
    const ChainCoefficients coeff{model, chain};
    const double b = coeff.bb(j);
    if (b == 0.0) {
        throw PivotError("zero b-band entry at index " + std::to_string(coeff.b_index(j)));
    }
    TransferMatrix t;
    t.m[0][0] = 0.0;
    t.m[0][1] = 1.0;
    t.m[1][0] = -coeff.cc(j) / b;
    t.m[1][1] = -(coeff.aa(j) - lambda) / b;
    return t;
}

} // namespace pentaspec
