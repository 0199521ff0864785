// SPDX-License-Identifier: Apache-2.0
#include "pentaspec/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "parallel.hpp"

namespace pentaspec {

const char* to_string(ShootSide side) {
    return side == ShootSide::direct ? "direct" : "adjoint";
}

namespace {

CoefficientModel swapped_bands(const CoefficientModel& model) {
    CoefficientModel adj = model;
    std::swap(adj.b, adj.c);
    return adj;
}

} // namespace

Complex shoot(const CoefficientModel& model, Chain chain, ShootSide side, Complex lambda,
              const ShootOptions& opts) {
    MinimalSolutionOptions mopts = opts.minimal;
    mopts.collar = opts.collar;
    // Only y_0, y_1 are needed for the residual.
    const MinimalSolutionResult r =
        (side == ShootSide::direct)
            ? minimal_solution(model, chain, lambda, 2, mopts)
            : minimal_solution(swapped_bands(model), chain, lambda, 2, mopts);
    return r.values[0];
}

namespace {

double real_shoot(const CoefficientModel& model, Chain chain, ShootSide side, double lambda,
                  const ShootOptions& opts) {
    const Complex r = shoot(model, chain, side, Complex(lambda, 0.0), opts);
    return r.real();
}

} // namespace

std::vector<EigenvalueRecord> find_real_eigenvalues(const CoefficientModel& model, Chain chain,
                                                    ShootSide side, double lo, double hi,
                                                    std::int64_t grid,
                                                    const RealSearchOptions& opts) {
    if (!(lo < hi)) throw DomainError("search interval requires lo < hi");
    if (grid < 2) throw DomainError("search grid must be >= 2");
    model.validate();
    const SpectralSet ess = essential_spectrum(model.limit_profile());
    for (const Interval& iv : ess.intervals()) {
        if (iv.lo - opts.shoot.collar <= hi && lo <= iv.hi + opts.shoot.collar) {
            throw DomainError("search interval intersects the essential-spectrum collar");
        }
    }

    // Grid scan first (parallel when asked), bracket walk afterwards.
    const double step = (hi - lo) / static_cast<double>(grid);
    std::vector<double> nodes(static_cast<std::size_t>(grid + 1));
    std::vector<double> values(static_cast<std::size_t>(grid + 1));
    for (std::int64_t i = 0; i <= grid; ++i) {
        nodes[static_cast<std::size_t>(i)] = (i == grid) ? hi : lo + step * static_cast<double>(i);
    }
    detail::parallel_for(grid + 1, opts.threads, [&](std::int64_t i) {
        values[static_cast<std::size_t>(i)] =
            real_shoot(model, chain, side, nodes[static_cast<std::size_t>(i)], opts.shoot);
    });

    std::vector<EigenvalueRecord> records;
    for (std::int64_t i = 1; i <= grid; ++i) {
        const double prev_lambda = nodes[static_cast<std::size_t>(i - 1)];
        const double prev_value = values[static_cast<std::size_t>(i - 1)];
        const double x = nodes[static_cast<std::size_t>(i)];
        const double value = values[static_cast<std::size_t>(i)];
        const bool bracket = (prev_value == 0.0) || (prev_value * value < 0.0);
        if (bracket) {
            double a = prev_lambda, b = x;
            double fa = prev_value;
            std::int64_t iterations = 0;
            if (fa == 0.0) {
                b = a;
            } else {
                while (b - a > opts.bisection_width) {
                    const double mid = 0.5 * (a + b);
                    const double fm = real_shoot(model, chain, side, mid, opts.shoot);
                    ++iterations;
                    if (fm == 0.0) {
                        a = b = mid;
                        break;
                    }
                    if (fa * fm < 0.0) {
                        b = mid;
                    } else {
                        a = mid;
                        fa = fm;
                    }
                }
            }
            const double root = 0.5 * (a + b);
            // A residual vanishing exactly at a grid node brackets twice.
            if (!records.empty() &&
                std::abs(records.back().lambda.real() - root) <= 2.0 * opts.bisection_width) {
                continue;
            }
            EigenvalueRecord rec;
            rec.lambda = Complex(root, 0.0);
            rec.chain = chain;
            rec.side = side;
            rec.residual = std::abs(shoot(model, chain, side, rec.lambda, opts.shoot));
            rec.refinement_iterations = iterations;
            records.push_back(rec);
        }
    }
    return records;
}

namespace {

struct WindingResult {
    bool stable = false;
    std::int64_t winding = 0;
    std::string reason;
};

// Winding number of the shooting function along the rectangle boundary via
// accumulated principal-branch phase increments; the sampling is doubled
// until two consecutive refinements agree and every increment is < pi/2.
WindingResult boundary_winding(const CoefficientModel& model, Chain chain, ShootSide side,
                               const Rectangle& rect, const ComplexSearchOptions& opts) {
    WindingResult result;
    bool has_previous = false;
    std::int64_t previous = 0;
    for (std::int64_t samples = opts.initial_boundary_samples; samples <= opts.max_boundary_samples;
         samples *= 2) {
        std::vector<Complex> path;
        path.reserve(static_cast<std::size_t>(4 * samples));
        auto push_edge = [&](Complex from, Complex to) {
            for (std::int64_t i = 0; i < samples; ++i) {
                const double t = static_cast<double>(i) / static_cast<double>(samples);
                path.push_back(from + t * (to - from));
            }
        };
        const Complex c1(rect.re_lo, rect.im_lo), c2(rect.re_hi, rect.im_lo);
        const Complex c3(rect.re_hi, rect.im_hi), c4(rect.re_lo, rect.im_hi);
        push_edge(c1, c2);
        push_edge(c2, c3);
        push_edge(c3, c4);
        push_edge(c4, c1);

        double total = 0.0;
        bool ok = true;
        Complex prev_value = shoot(model, chain, side, path[0], opts.shoot);
        if (std::abs(prev_value) < 1e-12) {
            result.reason = "boundary residual below 1e-12";
            return result;
        }
        for (std::size_t i = 1; i <= path.size(); ++i) {
            const Complex z = path[i % path.size()];
            const Complex value = shoot(model, chain, side, z, opts.shoot);
            if (std::abs(value) < 1e-12) {
                result.reason = "boundary residual below 1e-12";
                return result;
            }
            const double dphi = std::arg(value / prev_value);
            if (std::abs(dphi) > std::numbers::pi / 2.0) {
                ok = false; // phase step too coarse, refine sampling
                break;
            }
            total += dphi;
            prev_value = value;
        }
        if (!ok) {
            has_previous = false;
            continue;
        }
        const double w = total / (2.0 * std::numbers::pi);
        const std::int64_t rounded = static_cast<std::int64_t>(std::llround(w));
        if (std::abs(w - static_cast<double>(rounded)) > 0.25) {
            has_previous = false;
            continue;
        }
        if (has_previous && previous == rounded) {
            result.stable = true;
            result.winding = rounded;
            return result;
        }
        has_previous = true;
        previous = rounded;
    }
    result.reason = "winding did not stabilize within the boundary-sample cap";
    return result;
}

std::optional<EigenvalueRecord> newton_refine(const CoefficientModel& model, Chain chain,
                                              ShootSide side, const Rectangle& cell,
                                              const ComplexSearchOptions& opts) {
    Complex z(0.5 * (cell.re_lo + cell.re_hi), 0.5 * (cell.im_lo + cell.im_hi));
    const double cell_size = std::max(cell.re_hi - cell.re_lo, cell.im_hi - cell.im_lo);
    const double h = std::max(1e-9, 1e-6 * cell_size);
    std::int64_t used = 0;
    for (std::int64_t i = 0; i < opts.newton_max_iterations; ++i) {
        const Complex f = shoot(model, chain, side, z, opts.shoot);
        ++used;
        if (std::abs(f) < 1e-13) break;
        const Complex fp = shoot(model, chain, side, z + Complex(h, 0.0), opts.shoot);
        const Complex fm = shoot(model, chain, side, z - Complex(h, 0.0), opts.shoot);
        const Complex df = (fp - fm) / (2.0 * h);
        if (std::abs(df) == 0.0) return std::nullopt;
        const Complex step = f / df;
        z -= step;
        if (std::abs(step) < 1e-12 * std::max(1.0, std::abs(z))) break;
    }
    // Accept only zeros inside (a slightly fattened copy of) the cell.
    const double slack = 0.05 * std::max(cell.re_hi - cell.re_lo, cell.im_hi - cell.im_lo);
    if (z.real() < cell.re_lo - slack || z.real() > cell.re_hi + slack ||
        z.imag() < cell.im_lo - slack || z.imag() > cell.im_hi + slack) {
        return std::nullopt;
    }
    EigenvalueRecord rec;
    rec.lambda = z;
    rec.chain = chain;
    rec.side = side;
    rec.residual = std::abs(shoot(model, chain, side, z, opts.shoot));
    rec.refinement_iterations = used;
    if (rec.residual > 1e-8) return std::nullopt;
    return rec;
}

void search_cell(const CoefficientModel& model, Chain chain, ShootSide side, const Rectangle& cell,
                 std::int64_t depth, const ComplexSearchOptions& opts, ComplexSearchResult& out) {
    const WindingResult w = boundary_winding(model, chain, side, cell, opts);
    const auto subdivide = [&](const std::string& why) {
        if (depth <= 0) {
            out.unresolved.push_back({cell, w.stable ? w.winding : -1, why + " (depth exhausted)"});
            return;
        }
        const double rm = 0.5 * (cell.re_lo + cell.re_hi);
        const double im = 0.5 * (cell.im_lo + cell.im_hi);
        const Rectangle children[4] = {
            {cell.re_lo, rm, cell.im_lo, im},
            {rm, cell.re_hi, cell.im_lo, im},
            {cell.re_lo, rm, im, cell.im_hi},
            {rm, cell.re_hi, im, cell.im_hi},
        };
        for (const Rectangle& child : children) {
            search_cell(model, chain, side, child, depth - 1, opts, out);
        }
    };

    if (!w.stable) {
        subdivide(w.reason);
        return;
    }
    if (w.winding <= 0) return;
    if (w.winding == 1) {
        if (auto rec = newton_refine(model, chain, side, cell, opts)) {
            out.records.push_back(*rec);
            return;
        }
        subdivide("winding 1 but Newton refinement failed");
        return;
    }
    subdivide("winding > 1");
}

} // namespace

ComplexSearchResult find_complex_eigenvalues(const CoefficientModel& model, Chain chain,
                                             ShootSide side, const Rectangle& rect,
                                             std::int64_t depth, const ComplexSearchOptions& opts) {
    if (!(rect.re_lo < rect.re_hi) || !(rect.im_lo < rect.im_hi)) {
        throw DomainError("search rectangle must have positive extent");
    }
    model.validate();
    const SpectralSet ess = essential_spectrum(model.limit_profile());
    for (const Interval& iv : ess.intervals()) {
        // Distance from the segment [lo,hi] x {0} to the rectangle.
        const double dx = std::max({iv.lo - rect.re_hi, rect.re_lo - iv.hi, 0.0});
        const double dy = std::max({0.0 - rect.im_hi, rect.im_lo - 0.0, 0.0});
        if (std::hypot(dx, dy) <= opts.shoot.collar) {
            throw DomainError("search rectangle intersects the essential-spectrum collar");
        }
    }
    ComplexSearchResult result;
    search_cell(model, chain, side, rect, depth, opts, result);
    std::sort(result.records.begin(), result.records.end(),
              [](const EigenvalueRecord& x, const EigenvalueRecord& y) {
                  if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
                  return x.lambda.imag() < y.lambda.imag();
              });
    return result;
}

namespace {

std::vector<EigenvalueRecord> search_side(const CoefficientModel& model, ShootSide side,
                                          const SearchRegion& region,
                                          const DiscreteSpectrumOptions& opts,
                                          std::vector<UnresolvedCell>& unresolved) {
    std::vector<EigenvalueRecord> records;
    for (Chain chain : {Chain::odd, Chain::even}) {
        for (const auto& iv : region.real_intervals) {
            auto found =
                find_real_eigenvalues(model, chain, side, iv.lo, iv.hi, iv.grid, opts.real);
            records.insert(records.end(), found.begin(), found.end());
        }
        for (const Rectangle& rect : region.rectangles) {
            auto found = find_complex_eigenvalues(model, chain, side, rect, region.depth,
                                                  opts.complex_search);
            records.insert(records.end(), found.records.begin(), found.records.end());
            unresolved.insert(unresolved.end(), found.unresolved.begin(), found.unresolved.end());
        }
    }
    // Rectangles and intervals may overlap: de-duplicate per chain.
    std::vector<EigenvalueRecord> unique;
    for (const auto& rec : records) {
        bool dup = false;
        for (const auto& kept : unique) {
            if (kept.chain == rec.chain &&
                std::abs(kept.lambda - rec.lambda) < opts.adjoint_match_tolerance) {
                dup = true;
                break;
            }
        }
        if (!dup) unique.push_back(rec);
    }
    std::sort(unique.begin(), unique.end(), [](const EigenvalueRecord& x, const EigenvalueRecord& y) {
        if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
        return x.lambda.imag() < y.lambda.imag();
    });
    return unique;
}

std::string format_records(const std::vector<EigenvalueRecord>& records) {
    std::ostringstream out;
    out.precision(12);
    out << '{';
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i) out << ", ";
        out << records[i].lambda.real();
        if (records[i].lambda.imag() != 0.0) out << (records[i].lambda.imag() < 0 ? '-' : '+')
                                                 << std::abs(records[i].lambda.imag()) << 'i';
    }
    out << '}';
    return out.str();
}

} // namespace

DiscreteSpectrumResult discrete_spectrum(const CoefficientModel& model, const SearchRegion& region,
                                         bool regime_acknowledged,
                                         const DiscreteSpectrumOptions& opts) {
    if (!regime_acknowledged) {
        throw DomainError("discrete spectrum requires the no-embedded-eigenvalue regime to be "
                          "confirmed or explicitly acknowledged");
    }
    model.validate();

    DiscreteSpectrumResult result;
    result.direct = search_side(model, ShootSide::direct, region, opts, result.unresolved);
    result.adjoint = search_side(model, ShootSide::adjoint, region, opts, result.unresolved);

    // Cross-check S1 = S2 over the same region; discrepancies are reported.
    auto match = [&](const EigenvalueRecord& rec, const std::vector<EigenvalueRecord>& others) {
        for (const auto& other : others) {
            if (std::abs(other.lambda - rec.lambda) <= opts.adjoint_match_tolerance) return true;
        }
        return false;
    };
    bool all_matched = result.direct.size() == result.adjoint.size();
    for (auto& rec : result.direct) {
        rec.matched_by_adjoint = match(rec, result.adjoint);
        all_matched = all_matched && rec.matched_by_adjoint;
    }
    for (auto& rec : result.adjoint) {
        rec.matched_by_adjoint = match(rec, result.direct);
        all_matched = all_matched && rec.matched_by_adjoint;
    }
    if (!all_matched) {
        throw ConsistencyError("direct and adjoint discrete spectra disagree: S1=" +
                               format_records(result.direct) +
                               " S2=" + format_records(result.adjoint));
    }

    // Multiplicity estimate from truncation-eigenvalue clustering.
    if (!result.direct.empty()) {
        const SectionSpectrum section =
            section_eigenvalues(BandOperator::full(model).truncate(opts.multiplicity_section));
        for (auto& rec : result.direct) {
            std::int64_t count = 0;
            for (const auto& ev : section.eigenvalues) {
                if (std::abs(ev - rec.lambda) <= opts.multiplicity_radius) ++count;
            }
            rec.multiplicity = std::max<std::int64_t>(count, 1);
        }
    }

    for (const auto& rec : result.direct) {
        result.set.add_point({rec.lambda, rec.chain, rec.residual});
    }
    return result;
}

} // namespace pentaspec
