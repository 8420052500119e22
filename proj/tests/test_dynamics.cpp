#include <doctest.h>

#include <cmath>

#include "wlog/dynamics.hpp"
#include "wlog/parser.hpp"

using namespace wlog;

namespace {
const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

MechanicalSystem poly_system(const std::string& u, const std::vector<std::string>& vars,
                             KineticMetric metric) {
    return make_system(PotentialSpec::polynomial(parse_polynomial(u, vars)), std::move(metric));
}

PolyVectorField field(const std::vector<std::string>& vars, const std::string& comps) {
    return PolyVectorField(vars, parse_polynomial_list(comps, vars));
}
}  // namespace

TEST_CASE("accel: gradient flow under the identity metric") {
    auto sys = poly_system("x^2+y^2", XYZ, KineticMetric::identity(3));
    std::vector<double> a;
    accel(sys, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 1.0, a);
    CHECK(a[0] == doctest::Approx(-2.0));
    CHECK(a[1] == doctest::Approx(0.0));
    CHECK(a[2] == doctest::Approx(0.0));
}

TEST_CASE("accel: equilibrium at a critical point") {
    auto sys = poly_system("x^2*y^2", XY, KineticMetric::constant(2, {2, 1, 1, 3}));
    std::vector<double> a;
    accel(sys, {0.0, 0.0}, {0.0, 0.0}, 1.0, a);
    CHECK(a[0] == doctest::Approx(0.0));
    CHECK(a[1] == doctest::Approx(0.0));
}

TEST_CASE("accel: constant diagonal metric rescales the force") {
    auto sys = poly_system("x^2+y^2", XY, KineticMetric::constant(2, {1, 0, 0, 4}));
    std::vector<double> a;
    accel(sys, {0.0, 1.0}, {0.0, 0.0}, 1.0, a);
    CHECK(a[0] == doctest::Approx(0.0));
    CHECK(a[1] == doctest::Approx(-0.5));
}

TEST_CASE("metric constructors validate their input") {
    CHECK_THROWS(KineticMetric::constant(2, {1, 0.5, 0.4, 1}));   // not symmetric
    CHECK_THROWS(KineticMetric::constant(2, {1, 2, 2, 1}));       // not SPD
    CHECK_THROWS(KineticMetric::polynomial(
        {{parse_polynomial("1", XY), parse_polynomial("x", XY)},
         {parse_polynomial("y", XY), parse_polynomial("1", XY)}}));  // asymmetric entries

    auto pm = KineticMetric::polynomial(
        {{parse_polynomial("x", XY), parse_polynomial("0", XY)},
         {parse_polynomial("0", XY), parse_polynomial("1", XY)}});
    std::vector<double> g;
    CHECK_THROWS(pm.eval({-1.0, 0.0}, g));  // loses positivity
}

TEST_CASE("integrate: free motion is a straight line with zero drift") {
    auto sys = poly_system("0", XYZ, KineticMetric::identity(3));
    IntegrateOptions opt;
    opt.dt = 1e-3;
    opt.T = 5.0;
    auto traj = integrate(sys, {1.0, 2.0, 3.0}, {0.5, -0.25, 1.0}, opt);
    CHECK(traj.energy_drift_rel == doctest::Approx(0.0).epsilon(1e-14));
    auto p = traj.position_at(4.0);
    CHECK(p[0] == doctest::Approx(1.0 + 0.5 * 4.0).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(2.0 - 0.25 * 4.0).epsilon(1e-12));
    CHECK(p[2] == doctest::Approx(3.0 + 1.0 * 4.0).epsilon(1e-12));
}

TEST_CASE("integrate: harmonic oscillator period 2 pi / sqrt(2)") {
    auto sys = poly_system("x^2", {"x"}, KineticMetric::identity(1));
    IntegrateOptions opt;
    opt.dt = 1e-4;
    opt.T = 10.0;
    opt.max_frames = 100000;  // every step
    auto traj = integrate(sys, {1.0}, {0.0}, opt);

    // period from successive downward zero crossings, linearly interpolated
    std::vector<double> crossings;
    for (std::size_t j = 1; j < traj.times.size(); ++j) {
        double a = traj.positions[j - 1][0], b = traj.positions[j][0];
        if (a > 0.0 && b <= 0.0) {
            double w = a / (a - b);
            crossings.push_back(traj.times[j - 1] + w * (traj.times[j] - traj.times[j - 1]));
        }
    }
    REQUIRE(crossings.size() >= 2);
    double period = crossings[1] - crossings[0];
    CHECK(std::fabs(period - 2.0 * M_PI / std::sqrt(2.0)) <= 1e-4);
}

TEST_CASE("energy conservation and order under step halving") {
    auto sys = poly_system("x^2+y^2+z^2", XYZ, KineticMetric::identity(3));
    std::vector<double> x0{1.0, 0.5, -0.25}, v0{0.0, 0.4, 0.3};

    IntegrateOptions opt;
    opt.method = Method::Verlet;
    opt.dt = 1e-3;
    opt.T = 10.0;
    auto verlet = integrate(sys, x0, v0, opt);
    CHECK(verlet.energy_drift_rel <= 1e-6);
    CHECK(!verlet.non_conservative);

    opt.dt = 5e-4;
    auto verlet_half = integrate(sys, x0, v0, opt);
    double ratio = verlet.energy_drift_rel / verlet_half.energy_drift_rel;
    CHECK(ratio >= 2.8);  // second order
    CHECK(ratio <= 5.5);

    opt.method = Method::RK4;
    opt.dt = 1e-3;
    auto rk = integrate(sys, x0, v0, opt);
    CHECK(rk.energy_drift_rel <= 1e-5);

    opt.dt = 2e-2;
    auto rk_coarse = integrate(sys, x0, v0, opt);
    opt.dt = 1e-2;
    auto rk_fine = integrate(sys, x0, v0, opt);
    // at least fourth order; on linear problems rk4's energy error is one
    // order better still (|R(i w dt)| = 1 - (w dt)^6/72 + ...), ratio ~ 32
    double rk_ratio = rk_coarse.energy_drift_rel / rk_fine.energy_drift_rel;
    CHECK(rk_ratio >= 10.0);
    CHECK(rk_ratio <= 40.0);
}

TEST_CASE("integrate: deterministic and truncates on numeric blowup") {
    auto sys = poly_system("x^2+y^2", XY, KineticMetric::identity(2));
    IntegrateOptions opt;
    opt.dt = 1e-3;
    opt.T = 3.0;
    auto a = integrate(sys, {0.1, 0.2}, {0.3, -0.4}, opt);
    auto b = integrate(sys, {0.1, 0.2}, {0.3, -0.4}, opt);
    CHECK(a.positions == b.positions);  // bit-identical
    CHECK(a.energies == b.energies);

    auto runaway = poly_system("0-x^2", {"x"}, KineticMetric::identity(1));
    IntegrateOptions ropt;
    ropt.dt = 1e-2;
    ropt.T = 600.0;
    ropt.conserve_tol = 1e300;
    auto t = integrate(runaway, {1.0}, {0.0}, ropt);
    CHECK(t.truncated);
}

TEST_CASE("verlet refuses position-dependent metrics, rk4 conserves on them") {
    auto pm = KineticMetric::polynomial(
        {{parse_polynomial("1+y^2", XY), parse_polynomial("0", XY)},
         {parse_polynomial("0", XY), parse_polynomial("1", XY)}});
    auto sys = poly_system("x^2+y^2", XY, pm);

    IntegrateOptions opt;
    opt.method = Method::Verlet;
    CHECK_THROWS(integrate(sys, {0.1, 0.1}, {0.0, 0.0}, opt));

    opt.method = Method::RK4;
    opt.dt = 1e-3;
    opt.T = 5.0;
    auto traj = integrate(sys, {0.3, 0.1}, {0.2, -0.1}, opt);
    CHECK(traj.energy_drift_rel <= 1e-7);  // Christoffel terms balance the books
}

TEST_CASE("holonomy: constant field along straight motion") {
    auto sys = poly_system("0", XY, KineticMetric::identity(2));
    IntegrateOptions opt;
    opt.dt = 1e-3;
    opt.T = 2.0;
    auto traj = integrate(sys, {0.0, 0.0}, {0.5, 0.25}, opt);

    auto y = holonomy(traj, field(XY, "2,3"), sys.metric);
    CHECK(y.front().second == 0.0);
    double expected = (2.0 * 0.5 + 3.0 * 0.25) * y.back().first;
    CHECK(y.back().second == doctest::Approx(expected).epsilon(1e-12));

    auto zero = holonomy(traj, field(XY, "0,0"), sys.metric);
    for (const auto& [t, v] : zero) CHECK(v == 0.0);
}

TEST_CASE("epsilon family: the z-axis experiment") {
    auto sys = poly_system("x^2+y^2", XYZ, KineticMetric::identity(3));
    EpsilonFamilyParams params;
    auto rep = epsilon_family(sys, {0.0, 0.0, 0.0}, field(XYZ, "x,2*y,1"), params);

    CHECK(rep.v0_norm_g == doctest::Approx(1.0));
    REQUIRE(rep.members.size() == 9);
    for (const auto& m : rep.members) {
        CHECK(m.speed_bound_ok);
        CHECK(m.potential_bound_ok);
        CHECK(m.max_U == doctest::Approx(0.0).epsilon(1e-15));
        REQUIRE(m.escape_time >= 0.0);
        CHECK(std::fabs(m.escape_time - 0.5) <= 2e-3);
        CHECK(std::fabs(m.ydot0 - 1.0) <= 1e-3);
        CHECK(m.step_halving_ok);
    }
    for (double d : rep.pairwise_sup_distance) CHECK(d <= 1e-9);

    auto ev = limit_curve_evidence(rep);
    CHECK(ev.cauchy_trend);
    CHECK(ev.confined);
}

TEST_CASE("epsilon family: x^2 y^2 escape along the x-axis") {
    auto sys = poly_system("x^2*y^2", XY, KineticMetric::identity(2));
    EpsilonFamilyParams params;
    params.step_halving_check = false;
    auto rep = epsilon_family(sys, {0.0, 0.0}, field(XY, "1,0"), params);
    for (const auto& m : rep.members) {
        CHECK(m.escape_time >= 0.0);
        CHECK(m.escape_time <= 1.0);
        CHECK(m.speed_bound_ok);
        CHECK(m.potential_bound_ok);
    }
    for (double d : rep.pairwise_sup_distance) CHECK(d <= 1e-9);
}

TEST_CASE("epsilon family: oscillatory run off the invariant axis") {
    // U = x^2 (x^2 + y^2) from p = (0,1) with transverse kick: stiff
    // oscillation in x, slow drift in y. No closed form; the report must
    // show the energy bounds, a decreasing Cauchy trend and the holonomy
    // Lipschitz bound |ydot| <= max ||V|| * max ||xdot||.
    auto sys = poly_system("x^2*(x^2+y^2)", XY, KineticMetric::identity(2));
    EpsilonFamilyParams params;
    params.epsilons = {1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
    params.step_halving_check = false;
    auto rep = epsilon_family(sys, {0.0, 1.0}, field(XY, "1,0"), params);

    for (const auto& m : rep.members) {
        CHECK(m.speed_bound_ok);
        CHECK(m.potential_bound_ok);
        CHECK(m.escape_time >= 0.0);  // the drift leaves the 0.5 ball

        double vmax = 0.0;
        for (const auto& pos : m.trajectory.positions)
            vmax = std::max(vmax, sys.metric.norm(pos, field(XY, "1,0").eval(pos)));
        double bound = vmax * m.max_speed_g + 1e-3;
        for (std::size_t j = 1; j < m.holonomy.size(); ++j) {
            double slope = std::fabs(m.holonomy[j].second - m.holonomy[j - 1].second) /
                           (m.holonomy[j].first - m.holonomy[j - 1].first);
            CHECK(slope <= bound);
        }
    }
    auto ev = limit_curve_evidence(rep);
    CHECK(ev.cauchy_trend);
    CHECK(ev.confined);
}

TEST_CASE("epsilon family rejects bad initial data") {
    auto sys = poly_system("x^2+y^2", XYZ, KineticMetric::identity(3));
    EpsilonFamilyParams params;
    CHECK_THROWS(epsilon_family(sys, {1.0, 0.0, 0.0}, field(XYZ, "x,2*y,1"), params));
    CHECK_THROWS(epsilon_family(sys, {0.0, 0.0, 0.0}, field(XYZ, "x,2*y,0"), params));
}

TEST_CASE("time rescaling: eps-scaled run reproduces the slow run") {
    auto sys = poly_system("x^2+y^2", XY, KineticMetric::identity(2));
    const double eps = 0.25;
    std::vector<double> p{0.3, -0.2}, v{0.4, 0.1};

    IntegrateOptions slow;
    slow.dt = 1e-4;
    slow.T = 4.0;
    std::vector<double> v_eps{eps * v[0], eps * v[1]};
    auto unscaled = integrate(sys, p, v_eps, slow);

    IntegrateOptions fast;
    fast.dt = 1e-4 * eps;
    fast.T = 1.0;
    fast.pot_factor = 1.0 / (eps * eps);
    auto scaled = integrate(sys, p, v, fast);

    for (int j = 0; j <= 10; ++j) {
        double tau = j * 0.1;
        auto a = scaled.position_at(tau);
        auto b = unscaled.position_at(tau / eps);
        CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-9));
        CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-9));
    }
}

TEST_CASE("stability probe: wintner trapping at small energy (short horizon)") {
    auto sys = make_system(PotentialSpec::builtin("wintner"), KineticMetric::identity(1));
    double barrier = first_barrier_crossing(
        [&](double t) { return sys.potential.value({t}); }, 1e-6, 2.0, 1e-5);
    REQUIRE(barrier > 0.0);
    CHECK(barrier == doctest::Approx(2.0 / M_PI).epsilon(1e-3));

    StabilityProbeParams params;
    params.energies = {1e-6};
    params.T = 100.0;
    params.dt = 1e-3;
    auto rep = stability_probe(sys, {0.0}, params);
    CHECK(rep.max_excursion[0] <= barrier + 5e-3);
}

TEST_CASE("stability probe: free axis of x^2+y^2 in R^3 escapes linearly") {
    auto sys = poly_system("x^2+y^2", XYZ, KineticMetric::identity(3));
    StabilityProbeParams params;
    params.energies = {1e-4};
    params.T = 10.0;
    params.dt = 1e-3;
    auto rep = stability_probe(sys, {0.0, 0.0, 0.0}, params);
    double speed = std::sqrt(2.0 * 1e-4);
    CHECK(rep.max_excursion[0] >= 0.9 * speed * params.T);
}

TEST_CASE("builtin potentials: flat extension at the singular coordinates") {
    auto w = PotentialSpec::builtin("wintner");
    CHECK(w.value({0.0}) == 0.0);
    std::vector<double> g;
    w.gradient({0.0}, g);
    CHECK(g[0] == 0.0);

    auto l = PotentialSpec::builtin("laloy");
    CHECK(l.value({0.0, 0.0}) == 0.0);
    l.gradient({0.0, 0.5}, g);
    CHECK(g[0] == 0.0);
    CHECK(g[1] != 0.0);

    // gradient matches finite differences away from the flat point
    for (double x : {0.4, 0.7, 1.3}) {
        w.gradient({x}, g);
        double h = 1e-7;
        double fd = (w.value({x + h}) - w.value({x - h})) / (2 * h);
        CHECK(g[0] == doctest::Approx(fd).epsilon(1e-5));
    }
}
