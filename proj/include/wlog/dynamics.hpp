#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wlog/vector_field.hpp"

namespace wlog {

/// Flattened polynomial for the integrator hot path.
class CompiledPoly {
public:
    CompiledPoly() = default;
    explicit CompiledPoly(const Polynomial& p);
    double eval(const std::vector<double>& x) const;

private:
    std::size_t n_ = 0;
    std::vector<double> coeffs_;
    std::vector<int> exps_;  // n_ entries per term
};

/// Potential: a polynomial over named variables, or one of the builtin smooth
/// counterexample potentials with closed-form value and gradient. Builtins
/// return exactly 0 (value and gradient) at their flat coordinates, the
/// unique smooth extension.
class PotentialSpec {
public:
    enum class Kind { Polynomial, Wintner, Laloy };

    static PotentialSpec polynomial(const Polynomial& p);
    static PotentialSpec builtin(const std::string& name);  // "wintner" | "laloy"

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    const Polynomial& poly() const;
    std::string name() const;

    double value(const std::vector<double>& x) const;
    void gradient(const std::vector<double>& x, std::vector<double>& out) const;

private:
    Kind kind_ = Kind::Polynomial;
    std::size_t dim_ = 0;
    Polynomial poly_;
    CompiledPoly value_;
    std::vector<CompiledPoly> grad_;
};

/// Kinetic metric g: identity, constant SPD, or a symmetric polynomial matrix
/// checked for positive definiteness at every evaluated state.
class KineticMetric {
public:
    enum class Kind { Identity, ConstantSPD, PolynomialMetric };

    static KineticMetric identity(std::size_t n);
    static KineticMetric constant(std::size_t n, const std::vector<double>& row_major);
    static KineticMetric polynomial(const std::vector<std::vector<Polynomial>>& entries);

    Kind kind() const { return kind_; }
    std::size_t dim() const { return n_; }
    bool position_dependent() const { return kind_ == Kind::PolynomialMetric; }

    /// g(x) row-major; SPD is re-verified for polynomial metrics.
    void eval(const std::vector<double>& x, std::vector<double>& g) const;
    /// d g / d x_c (x), zero matrices for constant metrics.
    void eval_partial(std::size_t c, const std::vector<double>& x,
                      std::vector<double>& dg) const;

    double norm(const std::vector<double>& x, const std::vector<double>& v) const;
    double inner(const std::vector<double>& x, const std::vector<double>& v,
                 const std::vector<double>& w) const;
    /// Metric distance from p, exact for constant metrics, a lambda_min(g(p))
    /// scaling of the Euclidean norm otherwise.
    double distance(const std::vector<double>& p, const std::vector<double>& x) const;
    double min_eigenvalue_at(const std::vector<double>& x) const;

private:
    Kind kind_ = Kind::Identity;
    std::size_t n_ = 0;
    std::vector<double> constant_g_;  // row-major
    std::vector<std::vector<Polynomial>> poly_g_;
    std::vector<CompiledPoly> compiled_g_;                 // n*n entries
    std::vector<std::vector<CompiledPoly>> compiled_dg_;   // per coordinate
};

struct MechanicalSystem {
    PotentialSpec potential;
    KineticMetric metric;

    std::size_t dim() const { return potential.dim(); }
};

MechanicalSystem make_system(PotentialSpec potential, KineticMetric metric);

/// Euler-Lagrange acceleration a^b = -Gamma^b_ij v^i v^j - factor g^{bc} d_c U.
void accel(const MechanicalSystem& system, const std::vector<double>& x,
           const std::vector<double>& v, double pot_factor, std::vector<double>& out);

enum class Method { Verlet, RK4 };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct IntegrateOptions {
    Method method = Method::Verlet;
    double dt = 1e-3;
    double T = 10.0;
    double pot_factor = 1.0;    // multiplies the potential (epsilon^-2 runs)
    int max_frames = 2000;      // recorded frames; aggregates use every step
    double conserve_tol = 1e-5;
    double escape_radius = -1.0;  // metric distance from x0; <= 0 disables
};

struct Trajectory {
    double dt = 0.0;
    std::string method;
    std::vector<double> times;
    std::vector<std::vector<double>> positions;
    std::vector<std::vector<double>> velocities;
    std::vector<double> energies;
    std::vector<double> potentials;  // raw U along the path

    double initial_energy = 0.0;
    double energy_drift_rel = 0.0;
    bool non_conservative = false;
    bool truncated = false;  // non-finite state; frames end at the failure

    double max_speed_g = 0.0;
    double max_U = 0.0;
    double max_excursion = 0.0;  // Euclidean distance from x0
    std::vector<double> per_coord_max_excursion;
    double escape_time = -1.0;  // first metric-distance crossing; -1 = none

    /// Linear interpolation between recorded frames.
    std::vector<double> position_at(double tau) const;
};

Trajectory integrate(const MechanicalSystem& system, const std::vector<double>& x0,
                     const std::vector<double>& v0, const IntegrateOptions& options);

/// Cumulative trapezoidal integral of <V(x), xdot>_g over trajectory frames;
/// y(0) = 0 exactly.
std::vector<std::pair<double, double>> holonomy(const Trajectory& traj,
                                                const PolyVectorField& V,
                                                const KineticMetric& metric);

/// Slope at 0 of a sampled function with y(0) = 0, fourth-order one-sided
/// stencil (iterated Richardson of the forward difference).
double initial_slope(const std::vector<std::pair<double, double>>& samples);

struct EpsilonFamilyParams {
    std::vector<double> epsilons;  // default 2^0 .. 2^-8
    double T = 2.0;
    double dt_base = 1e-3;  // per-member step dt_base * eps resolves the eps^-2 force
    double escape_radius = 0.5;
    double speed_bound_tol = 1e-6;
    double potential_bound_tol = 1e-9;
    bool step_halving_check = true;
    double step_halving_tol = 1e-6;
    int frames = 2000;

    static std::vector<double> default_epsilons();
};

struct EpsMemberReport {
    double eps = 0.0;
    double dt = 0.0;
    double max_speed_g = 0.0;
    double max_U = 0.0;
    bool speed_bound_ok = false;
    bool potential_bound_ok = false;
    double escape_time = -1.0;
    std::vector<std::pair<double, double>> holonomy;
    double ydot0 = 0.0;
    double step_halving_dist = 0.0;
    bool step_halving_ok = true;
    Trajectory trajectory;
};

struct EpsilonFamilyReport {
    std::vector<double> epsilons;
    std::vector<double> v0;   // V(p)
    double v0_norm_g = 0.0;   // ||V(p)||_g at p
    std::vector<EpsMemberReport> members;
    std::vector<double> pairwise_sup_distance;  // consecutive rescaled trajectories
};

/// The eps-scaled family: initial position p on the zero locus, initial
/// velocity V(p), potential scaled by eps^-2, rescaled horizon T.
EpsilonFamilyReport epsilon_family(const MechanicalSystem& system,
                                   const std::vector<double>& p, const PolyVectorField& V,
                                   const EpsilonFamilyParams& params = {});

struct LimitCurveEvidence {
    std::vector<double> pairwise_sup_distance;
    bool cauchy_trend = false;
    double finest_max_U = 0.0;
    double finest_bound = 0.0;  // eps^2 ||V(p)||^2 / 2 for the finest member
    bool confined = false;
};

LimitCurveEvidence limit_curve_evidence(const EpsilonFamilyReport& report);

struct StabilityProbeParams {
    std::vector<double> energies;
    double T = 1e3;
    double dt = 1e-3;
    double conserve_tol = 1e-4;
};

struct StabilityRun {
    double energy = 0.0;
    std::vector<double> direction;
    double max_excursion = 0.0;
    std::vector<double> per_coord_max_excursion;
    bool non_conservative = false;
};

struct StabilityReport {
    std::vector<StabilityRun> runs;
    // per energy level, max over the direction bundle
    std::vector<double> energies;
    std::vector<double> max_excursion;
    std::vector<std::vector<double>> per_coord_max;
};

/// Deterministic bundle of unit directions: coordinate axes both ways plus
/// the two diagonal directions.
std::vector<std::vector<double>> direction_bundle(std::size_t n);

/// Integrates shells of initial conditions (speed sqrt(2E) over the bundle)
/// from p and reports maximal excursions: finite-horizon trapping evidence,
/// never a stability proof.
StabilityReport stability_probe(const MechanicalSystem& system, const std::vector<double>& p,
                                const StabilityProbeParams& params);

/// First t in (0, scan_max] with pot(t) >= energy, scanning with scan_step;
/// -1 when none is found. Used as the barrier oracle for trapping bounds.
double first_barrier_crossing(const std::function<double(double)>& pot, double energy,
                              double scan_max, double scan_step);

}  // namespace wlog
