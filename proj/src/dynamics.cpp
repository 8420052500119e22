#include "wlog/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wlog {

namespace {

constexpr double kFlatGuard = 1e-8;  // builtins are exactly flat below this

// Lower-triangular Cholesky; false when the matrix is not positive definite.
bool cholesky(std::size_t n, const std::vector<double>& a, std::vector<double>& l) {
    l.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
            if (i == j) {
                if (s <= 0.0) return false;
                l[i * n + i] = std::sqrt(s);
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    return true;
}

void cholesky_solve(std::size_t n, const std::vector<double>& l, const std::vector<double>& b,
                    std::vector<double>& x) {
    x = b;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) x[i] -= l[i * n + k] * x[k];
        x[i] /= l[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k) x[ii] -= l[k * n + ii] * x[k];
        x[ii] /= l[ii * n + ii];
    }
}

// Smallest eigenvalue of a small symmetric matrix by Jacobi rotations.
double jacobi_min_eigenvalue(std::size_t n, std::vector<double> a) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
        if (off < 1e-26) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::fabs(apq) < 1e-18) continue;
                double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    double lam = a[0];
    for (std::size_t i = 1; i < n; ++i) lam = std::min(lam, a[i * n + i]);
    return lam;
}

double wintner_value(double x) {
    if (std::fabs(x) < kFlatGuard) return 0.0;
    return std::exp(-1.0 / (x * x)) * std::cos(1.0 / x);
}

double wintner_derivative(double x) {
    if (std::fabs(x) < kFlatGuard) return 0.0;
    double inv = 1.0 / x;
    double e = std::exp(-inv * inv);
    return e * (2.0 * inv * inv * inv * std::cos(inv) + inv * inv * std::sin(inv));
}

// The y-part of the Laloy potential: exp(-y^-2) (cos(y^-1) + y^2).
double laloy_g_value(double y) {
    if (std::fabs(y) < kFlatGuard) return 0.0;
    double inv = 1.0 / y;
    return std::exp(-inv * inv) * (std::cos(inv) + y * y);
}

double laloy_g_derivative(double y) {
    if (std::fabs(y) < kFlatGuard) return 0.0;
    double inv = 1.0 / y;
    double e = std::exp(-inv * inv);
    return e * (2.0 * inv * inv * inv * (std::cos(inv) + y * y) + inv * inv * std::sin(inv) +
                2.0 * y);
}

}  // namespace

CompiledPoly::CompiledPoly(const Polynomial& p) : n_(p.num_vars()) {
    for (const auto& [e, c] : p.terms()) {
        coeffs_.push_back(to_double(c));
        exps_.insert(exps_.end(), e.begin(), e.end());
    }
}

double CompiledPoly::eval(const std::vector<double>& x) const {
    double acc = 0.0;
    const int* e = exps_.data();
    for (double c : coeffs_) {
        double t = c;
        for (std::size_t i = 0; i < n_; ++i, ++e)
            for (int k = 0; k < *e; ++k) t *= x[i];
        acc += t;
    }
    return acc;
}

PotentialSpec PotentialSpec::polynomial(const Polynomial& p) {
    PotentialSpec spec;
    spec.kind_ = Kind::Polynomial;
    spec.dim_ = p.num_vars();
    spec.poly_ = p;
    spec.value_ = CompiledPoly(p);
    for (std::size_t i = 0; i < p.num_vars(); ++i)
        spec.grad_.emplace_back(p.partial(i));
    return spec;
}

PotentialSpec PotentialSpec::builtin(const std::string& name) {
    PotentialSpec spec;
    if (name == "wintner") {
        spec.kind_ = Kind::Wintner;
        spec.dim_ = 1;
    } else if (name == "laloy") {
        spec.kind_ = Kind::Laloy;
        spec.dim_ = 2;
    } else {
        throw std::invalid_argument("unknown builtin potential: " + name);
    }
    return spec;
}

const Polynomial& PotentialSpec::poly() const {
    if (kind_ != Kind::Polynomial) throw std::logic_error("builtin potential has no polynomial");
    return poly_;
}

std::string PotentialSpec::name() const {
    switch (kind_) {
        case Kind::Wintner: return "wintner";
        case Kind::Laloy: return "laloy";
        default: return poly_.str();
    }
}

double PotentialSpec::value(const std::vector<double>& x) const {
    switch (kind_) {
        case Kind::Wintner: return wintner_value(x[0]);
        case Kind::Laloy: return wintner_value(x[0]) - laloy_g_value(x[1]);
        default: return value_.eval(x);
    }
}

void PotentialSpec::gradient(const std::vector<double>& x, std::vector<double>& out) const {
    out.resize(dim_);
    switch (kind_) {
        case Kind::Wintner:
            out[0] = wintner_derivative(x[0]);
            return;
        case Kind::Laloy:
            out[0] = wintner_derivative(x[0]);
            out[1] = -laloy_g_derivative(x[1]);
            return;
        default:
            for (std::size_t i = 0; i < dim_; ++i) out[i] = grad_[i].eval(x);
    }
}

KineticMetric KineticMetric::identity(std::size_t n) {
    KineticMetric m;
    m.kind_ = Kind::Identity;
    m.n_ = n;
    return m;
}

KineticMetric KineticMetric::constant(std::size_t n, const std::vector<double>& row_major) {
    if (row_major.size() != n * n) throw std::invalid_argument("metric: wrong matrix size");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::fabs(row_major[i * n + j] - row_major[j * n + i]) > 1e-12)
                throw std::invalid_argument("metric: matrix is not symmetric");
    std::vector<double> l;
    if (!cholesky(n, row_major, l))
        throw std::invalid_argument("metric: matrix is not positive definite");
    KineticMetric m;
    m.kind_ = Kind::ConstantSPD;
    m.n_ = n;
    m.constant_g_ = row_major;
    return m;
}

KineticMetric KineticMetric::polynomial(const std::vector<std::vector<Polynomial>>& entries) {
    std::size_t n = entries.size();
    if (n == 0) throw std::invalid_argument("metric: empty matrix");
    for (const auto& row : entries)
        if (row.size() != n) throw std::invalid_argument("metric: matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (entries[i][j].vars() != entries[0][0].vars())
                throw std::invalid_argument("metric: variable-set mismatch");
            if (entries[i][j] != entries[j][i])
                throw std::invalid_argument("metric: entries are not symmetric");
        }
    if (entries[0][0].num_vars() != n)
        throw std::invalid_argument("metric: entries must depend on the position variables");
    KineticMetric m;
    m.kind_ = Kind::PolynomialMetric;
    m.n_ = n;
    m.poly_g_ = entries;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.compiled_g_.emplace_back(entries[i][j]);
    m.compiled_dg_.resize(n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.compiled_dg_[c].emplace_back(entries[i][j].partial(c));
    return m;
}

void KineticMetric::eval(const std::vector<double>& x, std::vector<double>& g) const {
    g.assign(n_ * n_, 0.0);
    switch (kind_) {
        case Kind::Identity:
            for (std::size_t i = 0; i < n_; ++i) g[i * n_ + i] = 1.0;
            return;
        case Kind::ConstantSPD:
            g = constant_g_;
            return;
        case Kind::PolynomialMetric: {
            for (std::size_t k = 0; k < n_ * n_; ++k) g[k] = compiled_g_[k].eval(x);
            std::vector<double> l;
            if (!cholesky(n_, g, l))
                throw std::runtime_error("metric is not positive definite at the evaluated state");
            return;
        }
    }
}

void KineticMetric::eval_partial(std::size_t c, const std::vector<double>& x,
                                 std::vector<double>& dg) const {
    dg.assign(n_ * n_, 0.0);
    if (kind_ != Kind::PolynomialMetric) return;
    for (std::size_t k = 0; k < n_ * n_; ++k) dg[k] = compiled_dg_[c][k].eval(x);
}

double KineticMetric::inner(const std::vector<double>& x, const std::vector<double>& v,
                            const std::vector<double>& w) const {
    if (kind_ == Kind::Identity) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) s += v[i] * w[i];
        return s;
    }
    std::vector<double> g;
    eval(x, g);
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) s += v[i] * g[i * n_ + j] * w[j];
    return s;
}

double KineticMetric::norm(const std::vector<double>& x, const std::vector<double>& v) const {
    return std::sqrt(std::max(0.0, inner(x, v, v)));
}

double KineticMetric::min_eigenvalue_at(const std::vector<double>& x) const {
    std::vector<double> g;
    eval(x, g);
    return jacobi_min_eigenvalue(n_, g);
}

double KineticMetric::distance(const std::vector<double>& p, const std::vector<double>& x) const {
    std::vector<double> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = x[i] - p[i];
    if (kind_ == Kind::PolynomialMetric) {
        double lam = min_eigenvalue_at(p);
        double e = 0.0;
        for (double di : d) e += di * di;
        return std::sqrt(lam * e);
    }
    return norm(p, d);
}

MechanicalSystem make_system(PotentialSpec potential, KineticMetric metric) {
    if (potential.dim() != metric.dim())
        throw std::invalid_argument("system: potential and metric dimensions disagree");
    return MechanicalSystem{std::move(potential), std::move(metric)};
}

void accel(const MechanicalSystem& system, const std::vector<double>& x,
           const std::vector<double>& v, double pot_factor, std::vector<double>& out) {
    const std::size_t n = system.dim();
    std::vector<double> grad;
    system.potential.gradient(x, grad);
    out.resize(n);

    switch (system.metric.kind()) {
        case KineticMetric::Kind::Identity:
            for (std::size_t i = 0; i < n; ++i) out[i] = -pot_factor * grad[i];
            return;
        case KineticMetric::Kind::ConstantSPD: {
            std::vector<double> g, l, rhs(n);
            system.metric.eval(x, g);
            cholesky(n, g, l);
            for (std::size_t i = 0; i < n; ++i) rhs[i] = -pot_factor * grad[i];
            cholesky_solve(n, l, rhs, out);
            return;
        }
        case KineticMetric::Kind::PolynomialMetric: {
            std::vector<double> g, l;
            system.metric.eval(x, g);
            if (!cholesky(n, g, l))
                throw std::runtime_error("metric is not positive definite at the evaluated state");
            std::vector<std::vector<double>> dg(n);
            for (std::size_t c = 0; c < n; ++c) system.metric.eval_partial(c, x, dg[c]);
            // Christoffel symbols of the first kind contracted with v twice
            std::vector<double> rhs(n, 0.0);
            for (std::size_t b = 0; b < n; ++b) {
                double gamma_vv = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        gamma_vv += 0.5 *
                                    (dg[i][b * n + j] + dg[j][b * n + i] - dg[b][i * n + j]) *
                                    v[i] * v[j];
                rhs[b] = -(gamma_vv + pot_factor * grad[b]);
            }
            cholesky_solve(n, l, rhs, out);
            return;
        }
    }
}

std::string method_name(Method m) { return m == Method::Verlet ? "verlet" : "rk4"; }

Method method_from_name(const std::string& name) {
    if (name == "verlet") return Method::Verlet;
    if (name == "rk4") return Method::RK4;
    throw std::invalid_argument("unknown method: " + name + " (expected verlet or rk4)");
}

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

std::vector<double> Trajectory::position_at(double tau) const {
    if (positions.empty()) throw std::logic_error("empty trajectory");
    if (tau <= times.front()) return positions.front();
    if (tau >= times.back()) return positions.back();
    auto it = std::upper_bound(times.begin(), times.end(), tau);
    std::size_t hi = static_cast<std::size_t>(it - times.begin());
    std::size_t lo = hi - 1;
    double w = (tau - times[lo]) / (times[hi] - times[lo]);
    std::vector<double> p(positions[lo].size());
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = positions[lo][i] + w * (positions[hi][i] - positions[lo][i]);
    return p;
}

Trajectory integrate(const MechanicalSystem& system, const std::vector<double>& x0,
                     const std::vector<double>& v0, const IntegrateOptions& options) {
    const std::size_t n = system.dim();
    if (x0.size() != n || v0.size() != n)
        throw std::invalid_argument("integrate: state dimension mismatch");
    if (options.dt <= 0 || options.T <= 0)
        throw std::invalid_argument("integrate: dt and T must be positive");
    if (options.method == Method::Verlet && system.metric.position_dependent())
        throw std::invalid_argument("integrate: verlet requires a position-independent metric");

    const long steps = std::lround(options.T / options.dt);
    const long record_every = std::max(1L, steps / std::max(1, options.max_frames));

    // Escape distances: exact for constant metrics, eigenvalue-scaled
    // Euclidean norm for polynomial ones.
    double escape_scale = -1.0;
    if (options.escape_radius > 0 && system.metric.position_dependent())
        escape_scale = std::sqrt(system.metric.min_eigenvalue_at(x0));

    Trajectory traj;
    traj.dt = options.dt;
    traj.method = method_name(options.method);
    traj.per_coord_max_excursion.assign(n, 0.0);

    std::vector<double> x = x0, v = v0, a, a_next;
    accel(system, x, v, options.pot_factor, a);

    double u0 = system.potential.value(x0);
    traj.initial_energy = 0.5 * system.metric.inner(x0, v0, v0) + options.pot_factor * u0;
    traj.max_U = u0;

    auto record_frame = [&](double t) {
        traj.times.push_back(t);
        traj.positions.push_back(x);
        traj.velocities.push_back(v);
        double u = system.potential.value(x);
        traj.energies.push_back(0.5 * system.metric.inner(x, v, v) + options.pot_factor * u);
        traj.potentials.push_back(u);
    };

    auto update_aggregates = [&](double t) {
        double u = system.potential.value(x);
        double h = 0.5 * system.metric.inner(x, v, v) + options.pot_factor * u;
        double drift = std::fabs(h - traj.initial_energy) /
                       std::max(std::fabs(traj.initial_energy), 1.0);
        traj.energy_drift_rel = std::max(traj.energy_drift_rel, drift);
        traj.max_U = std::max(traj.max_U, u);
        traj.max_speed_g = std::max(traj.max_speed_g, system.metric.norm(x, v));
        double e2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = x[i] - x0[i];
            e2 += d * d;
            traj.per_coord_max_excursion[i] =
                std::max(traj.per_coord_max_excursion[i], std::fabs(d));
        }
        traj.max_excursion = std::max(traj.max_excursion, std::sqrt(e2));
        if (options.escape_radius > 0 && traj.escape_time < 0) {
            double dist = escape_scale > 0 ? escape_scale * std::sqrt(e2)
                                           : system.metric.distance(x0, x);
            if (dist > options.escape_radius) traj.escape_time = t;
        }
    };

    record_frame(0.0);
    update_aggregates(0.0);

    std::vector<double> k1x, k1v, k2x, k2v, k3x, k3v, k4x, k4v, xt, vt;
    const double dt = options.dt;
    for (long s = 1; s <= steps; ++s) {
        if (options.method == Method::Verlet) {
            for (std::size_t i = 0; i < n; ++i) x[i] += dt * v[i] + 0.5 * dt * dt * a[i];
            accel(system, x, v, options.pot_factor, a_next);
            for (std::size_t i = 0; i < n; ++i) v[i] += 0.5 * dt * (a[i] + a_next[i]);
            a.swap(a_next);
        } else {
            k1x = v;
            accel(system, x, v, options.pot_factor, k1v);
            xt.resize(n);
            vt.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                xt[i] = x[i] + 0.5 * dt * k1x[i];
                vt[i] = v[i] + 0.5 * dt * k1v[i];
            }
            k2x = vt;
            accel(system, xt, vt, options.pot_factor, k2v);
            for (std::size_t i = 0; i < n; ++i) {
                xt[i] = x[i] + 0.5 * dt * k2x[i];
                vt[i] = v[i] + 0.5 * dt * k2v[i];
            }
            k3x = vt;
            accel(system, xt, vt, options.pot_factor, k3v);
            for (std::size_t i = 0; i < n; ++i) {
                xt[i] = x[i] + dt * k3x[i];
                vt[i] = v[i] + dt * k3v[i];
            }
            k4x = vt;
            accel(system, xt, vt, options.pot_factor, k4v);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += dt / 6.0 * (k1x[i] + 2 * k2x[i] + 2 * k3x[i] + k4x[i]);
                v[i] += dt / 6.0 * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]);
            }
            accel(system, x, v, options.pot_factor, a);
        }
        if (!all_finite(x) || !all_finite(v)) {
            traj.truncated = true;
            break;
        }
        double t = static_cast<double>(s) * dt;
        update_aggregates(t);
        if (s % record_every == 0 || s == steps) record_frame(t);
    }
    traj.non_conservative = traj.energy_drift_rel > options.conserve_tol;
    return traj;
}

std::vector<std::pair<double, double>> holonomy(const Trajectory& traj,
                                                const PolyVectorField& V,
                                                const KineticMetric& metric) {
    if (V.num_vars() != metric.dim())
        throw std::invalid_argument("holonomy: dimension mismatch");
    std::vector<std::pair<double, double>> out;
    out.reserve(traj.times.size());
    double y = 0.0;
    double prev_f = 0.0, prev_t = 0.0;
    for (std::size_t j = 0; j < traj.times.size(); ++j) {
        std::vector<double> vx = V.eval(traj.positions[j]);
        double f = metric.inner(traj.positions[j], vx, traj.velocities[j]);
        if (j > 0) y += 0.5 * (prev_f + f) * (traj.times[j] - prev_t);
        out.emplace_back(traj.times[j], y);
        prev_f = f;
        prev_t = traj.times[j];
    }
    return out;
}

double initial_slope(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 5) {
        if (samples.size() < 2) throw std::invalid_argument("initial_slope: too few samples");
        return samples[1].second / (samples[1].first - samples[0].first);
    }
    double h = samples[1].first - samples[0].first;
    double y1 = samples[1].second, y2 = samples[2].second, y3 = samples[3].second,
           y4 = samples[4].second;
    return (48.0 * y1 - 36.0 * y2 + 16.0 * y3 - 3.0 * y4) / (12.0 * h);
}

std::vector<double> EpsilonFamilyParams::default_epsilons() {
    std::vector<double> eps;
    for (int k = 0; k <= 8; ++k) eps.push_back(std::ldexp(1.0, -k));
    return eps;
}

EpsilonFamilyReport epsilon_family(const MechanicalSystem& system,
                                   const std::vector<double>& p, const PolyVectorField& V,
                                   const EpsilonFamilyParams& params) {
    if (V.num_vars() != system.dim())
        throw std::invalid_argument("epsilon_family: field dimension mismatch");
    if (std::fabs(system.potential.value(p)) > 1e-12)
        throw std::invalid_argument("epsilon_family: U(p) must vanish");

    EpsilonFamilyReport report;
    report.epsilons = params.epsilons.empty() ? EpsilonFamilyParams::default_epsilons()
                                              : params.epsilons;
    report.v0 = V.eval(p);
    report.v0_norm_g = system.metric.norm(p, report.v0);
    if (report.v0_norm_g == 0.0)
        throw std::invalid_argument("epsilon_family: V(p) must be non null");

    Method method = system.metric.position_dependent() ? Method::RK4 : Method::Verlet;

    for (double eps : report.epsilons) {
        IntegrateOptions opt;
        opt.method = method;
        opt.dt = params.dt_base * eps;
        opt.T = params.T;
        opt.pot_factor = 1.0 / (eps * eps);
        opt.max_frames = params.frames;
        opt.escape_radius = params.escape_radius;

        EpsMemberReport member;
        member.eps = eps;
        member.dt = opt.dt;
        member.trajectory = integrate(system, p, report.v0, opt);
        member.max_speed_g = member.trajectory.max_speed_g;
        member.max_U = member.trajectory.max_U;
        member.speed_bound_ok =
            member.max_speed_g <= report.v0_norm_g + params.speed_bound_tol;
        member.potential_bound_ok =
            member.max_U <=
            eps * eps * report.v0_norm_g * report.v0_norm_g / 2.0 + params.potential_bound_tol;
        member.escape_time = member.trajectory.escape_time;
        member.holonomy = holonomy(member.trajectory, V, system.metric);
        member.ydot0 = initial_slope(member.holonomy);

        if (params.step_halving_check) {
            IntegrateOptions half = opt;
            half.dt = opt.dt / 2.0;
            Trajectory fine = integrate(system, p, report.v0, half);
            double sup = 0.0;
            for (int j = 0; j <= 100; ++j) {
                double tau = params.T * j / 100.0;
                auto a = member.trajectory.position_at(tau);
                auto b = fine.position_at(tau);
                double d2 = 0.0;
                for (std::size_t i = 0; i < a.size(); ++i)
                    d2 += (a[i] - b[i]) * (a[i] - b[i]);
                sup = std::max(sup, std::sqrt(d2));
            }
            member.step_halving_dist = sup;
            member.step_halving_ok =
                sup <= params.step_halving_tol * (1.0 + member.trajectory.max_excursion) +
                           1e-12;
        }
        report.members.push_back(std::move(member));
    }

    for (std::size_t m = 0; m + 1 < report.members.size(); ++m) {
        double sup = 0.0;
        for (int j = 0; j <= 400; ++j) {
            double tau = params.T * j / 400.0;
            auto a = report.members[m].trajectory.position_at(tau);
            auto b = report.members[m + 1].trajectory.position_at(tau);
            double d2 = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
            sup = std::max(sup, std::sqrt(d2));
        }
        report.pairwise_sup_distance.push_back(sup);
    }
    return report;
}

LimitCurveEvidence limit_curve_evidence(const EpsilonFamilyReport& report) {
    if (report.members.size() < 3)
        throw std::invalid_argument("limit_curve_evidence: need at least three epsilons");
    LimitCurveEvidence ev;
    ev.pairwise_sup_distance = report.pairwise_sup_distance;
    const auto& d = ev.pairwise_sup_distance;
    bool tiny = true, decreasing = true;
    for (double x : d) tiny = tiny && x <= 1e-9;
    for (std::size_t k = 0; k + 1 < d.size(); ++k)
        if (d[k + 1] > 1.25 * d[k] + 1e-12) decreasing = false;
    bool overall = !d.empty() && d.back() <= 0.75 * d.front() + 1e-12;
    ev.cauchy_trend = tiny || (decreasing && overall);

    const EpsMemberReport& finest = report.members.back();
    ev.finest_max_U = finest.max_U;
    ev.finest_bound = finest.eps * finest.eps * report.v0_norm_g * report.v0_norm_g / 2.0;
    ev.confined = ev.finest_max_U <= ev.finest_bound + 1e-9;
    return ev;
}

std::vector<std::vector<double>> direction_bundle(std::size_t n) {
    std::vector<std::vector<double>> dirs;
    if (n == 1) {
        dirs.push_back({1.0});
        dirs.push_back({-1.0});
        return dirs;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> d(n, 0.0);
        d[i] = 1.0;
        dirs.push_back(d);
        d[i] = -1.0;
        dirs.push_back(d);
    }
    double inv = 1.0 / std::sqrt(static_cast<double>(n));
    dirs.push_back(std::vector<double>(n, inv));
    dirs.push_back(std::vector<double>(n, -inv));
    return dirs;
}

StabilityReport stability_probe(const MechanicalSystem& system, const std::vector<double>& p,
                                const StabilityProbeParams& params) {
    StabilityReport report;
    Method method = system.metric.position_dependent() ? Method::RK4 : Method::Verlet;
    for (double energy : params.energies) {
        double best = 0.0;
        std::vector<double> coord_best(system.dim(), 0.0);
        for (const auto& dir : direction_bundle(system.dim())) {
            double dn = system.metric.norm(p, dir);
            std::vector<double> v0(dir.size());
            for (std::size_t i = 0; i < dir.size(); ++i)
                v0[i] = std::sqrt(2.0 * energy) * dir[i] / dn;
            IntegrateOptions opt;
            opt.method = method;
            opt.dt = params.dt;
            opt.T = params.T;
            opt.conserve_tol = params.conserve_tol;
            opt.max_frames = 500;
            Trajectory traj = integrate(system, p, v0, opt);

            StabilityRun run;
            run.energy = energy;
            run.direction = dir;
            run.max_excursion = traj.max_excursion;
            run.per_coord_max_excursion = traj.per_coord_max_excursion;
            run.non_conservative = traj.non_conservative;
            best = std::max(best, traj.max_excursion);
            for (std::size_t i = 0; i < coord_best.size(); ++i)
                coord_best[i] = std::max(coord_best[i], traj.per_coord_max_excursion[i]);
            report.runs.push_back(std::move(run));
        }
        report.energies.push_back(energy);
        report.max_excursion.push_back(best);
        report.per_coord_max.push_back(coord_best);
    }
    return report;
}

double first_barrier_crossing(const std::function<double(double)>& pot, double energy,
                              double scan_max, double scan_step) {
    for (double t = scan_step; t <= scan_max; t += scan_step)
        if (pot(t) >= energy) return t;
    return -1.0;
}

}  // namespace wlog
