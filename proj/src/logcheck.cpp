#include "wlog/logcheck.hpp"

#include <cmath>
#include <stdexcept>

#include "wlog/rng.hpp"

namespace wlog {

LogVerdict check_logarithmic(const PolyVectorField& V, const Polynomial& U) {
    if (U.is_zero()) throw std::invalid_argument("check_logarithmic: zero potential");
    LogVerdict verdict;
    verdict.vu = apply_field(V, U);
    verdict.P = verdict.vu.exact_divide_by(U);
    return verdict;
}

WeakLogReport weaklog_sample(const PolyVectorField& V, const Polynomial& U,
                             const std::vector<double>& base_point,
                             const WeakLogParams& params) {
    if (U.is_zero()) throw std::invalid_argument("weaklog_sample: zero potential");
    if (base_point.size() != U.num_vars())
        throw std::invalid_argument("weaklog_sample: base point dimension mismatch");
    if (params.r0 <= 0) throw std::invalid_argument("weaklog_sample: r0 must be positive");
    if (std::fabs(U.eval(base_point)) > params.base_tolerance)
        throw std::invalid_argument("weaklog_sample: base point is not on the zero locus");

    const std::size_t n = U.num_vars();
    const Polynomial vu = apply_field(V, U);

    WeakLogReport report;
    report.samples_per_scale = params.samples_per_scale;
    report.scales.resize(static_cast<std::size_t>(params.num_scales) + 1);
    for (int k = 0; k <= params.num_scales; ++k)
        report.scales[static_cast<std::size_t>(k)] = params.r0 * std::ldexp(1.0, -k);

    std::vector<double> point(n);
    for (int k = 0; k < params.num_scales; ++k) {
        // Per-scale sub-seed: shells are independent of execution order.
        Rng rng(params.seed ^ static_cast<std::uint64_t>(k));
        const double r_out = report.scales[static_cast<std::size_t>(k)];
        const double r_in = report.scales[static_cast<std::size_t>(k) + 1];
        const double pow_in = std::pow(r_in, static_cast<double>(n));
        const double pow_out = std::pow(r_out, static_cast<double>(n));
        double sup = 0.0;
        long attempts_left = static_cast<long>(params.samples_per_scale) * 1000;
        for (int s = 0; s < params.samples_per_scale; ++s) {
            double u_abs = 0.0;
            while (true) {
                if (attempts_left-- <= 0)
                    throw std::runtime_error(
                        "weaklog_sample: degenerate region, all samples hit the zero locus");
                std::vector<double> dir = rng.unit_vector(n);
                double r = std::pow(pow_in + rng.uniform01() * (pow_out - pow_in),
                                    1.0 / static_cast<double>(n));
                for (std::size_t i = 0; i < n; ++i) point[i] = base_point[i] + r * dir[i];
                u_abs = std::fabs(U.eval(point));
                if (u_abs >= params.zero_floor) break;
                ++report.discarded_samples;
            }
            double p_abs = std::fabs(vu.eval(point)) / u_abs;
            if (p_abs > sup) sup = p_abs;
        }
        report.per_scale_sup.push_back(sup);
        if (sup > report.global_sup_estimate) report.global_sup_estimate = sup;
    }

    // Growth heuristic: flagged when the sup keeps increasing by at least the
    // configured factor across each of the last three scale steps.
    const auto& sups = report.per_scale_sup;
    if (sups.size() >= 4) {
        bool growing = true;
        for (std::size_t k = sups.size() - 3; k < sups.size(); ++k) {
            if (!(sups[k - 1] > 0.0) || sups[k] < params.growth_factor * sups[k - 1]) {
                growing = false;
                break;
            }
        }
        report.growth_flag = growing;
    }
    return report;
}

std::vector<double> geometric_grid(double s_max, double s_min, int points) {
    if (points < 2 || s_max <= 0 || s_min <= 0 || s_min >= s_max)
        throw std::invalid_argument("geometric_grid: need points >= 2 and 0 < s_min < s_max");
    std::vector<double> grid(static_cast<std::size_t>(points));
    double ratio = std::log(s_min / s_max) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] = s_max * std::exp(ratio * i);
    grid.front() = s_max;
    grid.back() = s_min;
    return grid;
}

CurveWitness divergence_witness(const PolyVectorField& V, const Polynomial& U,
                                const std::vector<Polynomial>& curve,
                                const WitnessParams& params) {
    if (curve.size() != U.num_vars())
        throw std::invalid_argument("divergence_witness: curve dimension mismatch");
    for (const auto& c : curve)
        if (c.vars() != curve[0].vars() || c.num_vars() != 1)
            throw std::invalid_argument("divergence_witness: curve must be univariate");

    const Polynomial u_on_curve = U.substitute(curve);
    if (u_on_curve.is_zero())
        throw std::invalid_argument("divergence_witness: curve lies in the zero locus");
    const Polynomial vu_on_curve = apply_field(V, U).substitute(curve);

    CurveWitness witness;
    witness.curve = curve;
    for (double s : geometric_grid(params.s_max, params.s_min, params.points)) {
        double u = u_on_curve.eval({s});
        if (std::fabs(u) < params.zero_floor) {
            ++witness.skipped_points;
            continue;
        }
        witness.p_values.emplace_back(s, std::fabs(vu_on_curve.eval({s}) / u));
    }

    // Divergent: strictly increasing over the final five grid points (s -> 0)
    // with overall growth beyond the configured ratio.
    const auto& pv = witness.p_values;
    if (pv.size() >= 5) {
        std::size_t first = pv.size() - 5;
        bool increasing = true;
        for (std::size_t i = first + 1; i < pv.size(); ++i)
            if (pv[i].second <= pv[i - 1].second) {
                increasing = false;
                break;
            }
        witness.divergent = increasing && pv[first].second > 0.0 &&
                            pv.back().second >= params.divergence_ratio * pv[first].second;
    }
    return witness;
}

}  // namespace wlog
