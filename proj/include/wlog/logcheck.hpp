#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wlog/vector_field.hpp"

namespace wlog {

/// Outcome of the exact divisibility test V(U) = P * U.
struct LogVerdict {
    std::optional<Polynomial> P;  // set iff logarithmic; then P*U == V(U) exactly
    Polynomial vu;                // the computed V(U)

    bool logarithmic() const { return P.has_value(); }
};

/// Decides logarithmic status exactly: Logarithmic(P) iff U divides V(U).
LogVerdict check_logarithmic(const PolyVectorField& V, const Polynomial& U);

struct WeakLogParams {
    double r0 = 1.0;
    int num_scales = 12;       // halving radii down to r0 * 2^-12
    int samples_per_scale = 4096;
    std::uint64_t seed = 0;
    double growth_factor = 1.8;  // shell-to-shell sup ratio that flags growth
    double zero_floor = 1e-300;  // |U| below this is treated as on the locus
    double base_tolerance = 1e-12;
};

/// Multiscale sampling report for |P| = |V(U)/U| near a zero-locus point.
/// Certifies only apparent unboundedness; "no growth detected" is not a
/// boundedness proof.
struct WeakLogReport {
    std::vector<double> scales;         // num_scales+1 radii, halving
    std::vector<double> per_scale_sup;  // one per shell (scales.size()-1)
    double global_sup_estimate = 0.0;
    bool growth_flag = false;
    int samples_per_scale = 0;
    long discarded_samples = 0;  // zero-locus guard hits
};

WeakLogReport weaklog_sample(const PolyVectorField& V, const Polynomial& U,
                             const std::vector<double>& base_point,
                             const WeakLogParams& params = {});

struct WitnessParams {
    double s_max = 1e-1;
    double s_min = 1e-3;
    int points = 9;               // geometric grid from s_max down to s_min
    double divergence_ratio = 8.0;  // growth over the final 5 points that flags divergence
    double zero_floor = 1e-300;
};

/// |P| sampled along a parametric curve s -> gamma(s) approaching the locus.
struct CurveWitness {
    std::vector<Polynomial> curve;               // components in one parameter
    std::vector<std::pair<double, double>> p_values;  // (s, |P(gamma(s))|)
    bool divergent = false;
    int skipped_points = 0;  // grid points discarded by the zero-locus guard
};

CurveWitness divergence_witness(const PolyVectorField& V, const Polynomial& U,
                                const std::vector<Polynomial>& curve,
                                const WitnessParams& params = {});

/// Geometric grid from s_max down to s_min inclusive.
std::vector<double> geometric_grid(double s_max, double s_min, int points);

}  // namespace wlog
