#include "wlog/registry.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "wlog/blowup.hpp"
#include "wlog/dynamics.hpp"
#include "wlog/logcheck.hpp"
#include "wlog/parser.hpp"
#include "wlog/report.hpp"

namespace wlog {

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

PolyVectorField field(const std::vector<std::string>& vars, const std::string& comps) {
    return PolyVectorField(vars, parse_polynomial_list(comps, vars));
}

void expect(RegistryResult& r, const std::string& name, const std::string& provenance,
            bool pass, const std::string& detail = "") {
    r.expectations.push_back({name, provenance, pass, detail});
}

// Plain RK4 flow of a vector field (not a mechanical system).
std::vector<double> flow_rk4(const PolyVectorField& V, std::vector<double> x, double T,
                             double dt) {
    long steps = std::lround(T / dt);
    std::size_t n = x.size();
    std::vector<double> k1, k2, k3, k4, t(n);
    for (long s = 0; s < steps; ++s) {
        k1 = V.eval(x);
        for (std::size_t i = 0; i < n; ++i) t[i] = x[i] + 0.5 * dt * k1[i];
        k2 = V.eval(t);
        for (std::size_t i = 0; i < n; ++i) t[i] = x[i] + 0.5 * dt * k2[i];
        k3 = V.eval(t);
        for (std::size_t i = 0; i < n; ++i) t[i] = x[i] + dt * k3[i];
        k4 = V.eval(t);
        for (std::size_t i = 0; i < n; ++i)
            x[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return x;
}

// Frozen SPD metrics for the metric-independence runs.
KineticMetric frozen_spd3() {
    return KineticMetric::constant(
        3, {1.25, 0.30, 0.10, 0.30, 0.80, -0.20, 0.10, -0.20, 1.50});
}

KineticMetric frozen_spd2() { return KineticMetric::constant(2, {1.2, 0.3, 0.3, 0.7}); }

KineticMetric diag_metric(const std::vector<double>& d) {
    std::vector<double> g(d.size() * d.size(), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) g[i * d.size() + i] = d[i];
    return KineticMetric::constant(d.size(), g);
}

struct InstabilityExpectations {
    bool bounds_all = true;
    bool escape_all = true;
    bool slope_all = true;
    bool pairwise_zero = true;
    double worst_slope_err = 0.0;
    double max_pairwise = 0.0;
};

InstabilityExpectations check_family(const EpsilonFamilyReport& rep) {
    InstabilityExpectations e;
    for (const auto& m : rep.members) {
        e.bounds_all = e.bounds_all && m.speed_bound_ok && m.potential_bound_ok;
        e.escape_all = e.escape_all && m.escape_time >= 0 && m.escape_time <= 1.0;
        double err = std::fabs(m.ydot0 - rep.v0_norm_g * rep.v0_norm_g);
        e.worst_slope_err = std::max(e.worst_slope_err, err);
        e.slope_all = e.slope_all && err <= 1e-3;
    }
    for (double d : rep.pairwise_sup_distance) {
        e.max_pairwise = std::max(e.max_pairwise, d);
        e.pairwise_zero = e.pairwise_zero && d <= 1e-9;
    }
    return e;
}

void run_instability_entry(RegistryResult& r, const MechanicalSystem& identity_system,
                           const std::vector<KineticMetric>& variants,
                           const std::vector<std::string>& variant_names,
                           const std::vector<double>& p, const PolyVectorField& V,
                           double expected_escape_identity) {
    EpsilonFamilyParams params;
    auto rep = epsilon_family(identity_system, p, V, params);
    auto checks = check_family(rep);

    expect(r, "speed and potential energy bounds hold for every eps (identity metric)", "reference",
           checks.bounds_all);
    expect(r, "escape beyond radius 0.5 within tau <= 1 for every eps", "reference",
           checks.escape_all);
    {
        std::ostringstream d;
        d << "worst |ydot(0) - ||V(p)||^2| = " << fmt_double(checks.worst_slope_err);
        expect(r, "holonomy slope ydot(0) = ||V(p)||_g^2 within 1e-3", "reference",
               checks.slope_all, d.str());
    }
    expect(r, "all rescaled trajectories coincide (axis-invariant limit curve)", "derived",
           checks.pairwise_zero,
           "max pairwise sup distance = " + fmt_double(checks.max_pairwise));
    {
        bool escape_near = true;
        for (const auto& m : rep.members)
            escape_near = escape_near &&
                          std::fabs(m.escape_time - expected_escape_identity) <= 2e-3;
        expect(r, "identity-metric escape time tau = " + fmt_double(expected_escape_identity),
               "derived", escape_near);
    }
    auto evidence = limit_curve_evidence(rep);
    expect(r, "finest trajectory confined to U <= eps^2 ||V(p)||^2 / 2", "reference",
           evidence.confined);

    // Metric independence: identical yes/no escape verdicts across kinetic terms.
    EpsilonFamilyParams vparams;
    vparams.step_halving_check = false;
    bool verdicts_match = true;
    std::ostringstream detail;
    detail << "escape verdict: identity=yes";
    for (std::size_t i = 0; i < variants.size(); ++i) {
        MechanicalSystem sys{identity_system.potential, variants[i]};
        auto vrep = epsilon_family(sys, p, V, vparams);
        bool all_escape = true;
        for (const auto& m : vrep.members)
            all_escape = all_escape && m.escape_time >= 0 && m.escape_time <= 1.0;
        bool bounds_ok = check_family(vrep).bounds_all;
        verdicts_match = verdicts_match && all_escape && bounds_ok;
        detail << ", " << variant_names[i] << "=" << (all_escape ? "yes" : "NO");
    }
    expect(r, "escape verdict identical under identity, diagonal and fixed SPD metrics",
           "reference", verdicts_match, detail.str());
}

RegistryResult entry_euler_quasihom() {
    RegistryResult r{"euler-quasihom"};
    Polynomial u = parse_polynomial("x^4+y^4-z^6", XYZ);
    auto w = quasi_homogeneity(u);
    bool weights_ok = w && w->weights == std::vector<Rat>{Rat(3), Rat(3), Rat(2)} &&
                      w->total == Rat(12);
    expect(r, "quasi-homogeneity weights (3,3,2), total 12", "derived", weights_ok);
    auto verdict = check_logarithmic(euler_field(XYZ, {Rat(3), Rat(3), Rat(2)}), u);
    expect(r, "Euler field is logarithmic with P = 12", "trivial",
           verdict.logarithmic() && *verdict.P == Polynomial::constant(XYZ, Rat(12)));
    expect(r, "V(U) = 12 U exactly", "trivial", verdict.vu == u.scale(Rat(12)));
    return r;
}

RegistryResult entry_example_2_1() {
    RegistryResult r{"example-2-1"};
    Polynomial u = parse_polynomial("x^2*(x^2+y^2)", XY);
    PolyVectorField v = field(XY, "0,1");
    auto verdict = check_logarithmic(v, u);
    expect(r, "d/dy is not logarithmic for x^2(x^2+y^2)", "reference", !verdict.logarithmic());

    auto witness = divergence_witness(v, u, {parse_polynomial("s", {"s"}),
                                             parse_polynomial("s", {"s"})});
    expect(r, "P diverges along the diagonal gamma(s) = (s,s)", "reference", witness.divergent);
    bool fifty = witness.p_values.size() >= 2 &&
                 witness.p_values.back().second >= 50.0 * witness.p_values.front().second;
    expect(r, "|P| grows at least 50x from s = 1e-1 to s = 1e-3", "reference", fifty);

    auto report = weaklog_sample(v, u, {0.0, 0.0});
    expect(r, "multiscale sampling flags unbounded growth of |P|", "reference",
           report.growth_flag,
           "sup on finest shell = " + fmt_double(report.per_scale_sup.back()));
    return r;
}

RegistryResult entry_example_2_2_whitney() {
    RegistryResult r{"example-2-2-whitney"};
    // U = x^2 y^2 (x-y)^2 (x-zy)^2; its zero locus contains the planes x=0,
    // y=0, x=y and the family x=zy. A logarithmic field must be tangent to
    // every regular sheet; the candidates below are tangent to the fixed
    // planes yet provably move the x=zy family, witnessed symbolically and
    // by their flows. Three candidates are exhibited, not a universal proof.
    std::vector<PolyVectorField> candidates{field(XYZ, "0,0,1"), field(XYZ, "x,y,1"),
                                            field(XYZ, "2*x,2*y,1")};
    Polynomial plane_x = parse_polynomial("x", XYZ);
    Polynomial plane_y = parse_polynomial("y", XYZ);
    Polynomial plane_diag = parse_polynomial("x-y", XYZ);
    Polynomial family = parse_polynomial("x-z*y", XYZ);

    auto tangent_to = [](const PolyVectorField& v, const Polynomial& f) {
        return apply_field(v, f).exact_divide_by(f).has_value();
    };

    int idx = 0;
    for (const auto& v : candidates) {
        ++idx;
        std::string tag = "candidate " + std::to_string(idx) + " " + v.str();
        bool fixed_planes = tangent_to(v, plane_x) && tangent_to(v, plane_y) &&
                            tangent_to(v, plane_diag);
        expect(r, tag + ": tangent to x=0, y=0, x=y", "derived", fixed_planes);
        expect(r, tag + ": NOT tangent to the x=zy family", "reference",
               !tangent_to(v, family));

        // flow check from a seed on {x = zy} with z0 = 1/2, off z in {0,1}
        std::vector<double> seed{0.15, 0.3, 0.5};
        auto moved = flow_rk4(v, seed, 0.1, 1e-3);
        double defect = std::fabs(moved[0] - moved[2] * moved[1]);
        expect(r, tag + ": flow moves the line x = z y (t = 0.1)", "derived",
               defect >= 1e-3, "|x - z y| after flow = " + fmt_double(defect));
    }
    return r;
}

RegistryResult entry_example_2_3() {
    RegistryResult r{"example-2-3"};
    Polynomial u = parse_polynomial("x^2+y^2", XYZ);
    PolyVectorField v = field(XYZ, "x,2*y,1");
    auto verdict = check_logarithmic(v, u);
    expect(r, "x dx + 2y dy + dz is not logarithmic for x^2+y^2", "reference",
           !verdict.logarithmic());
    expect(r, "V(U) = 2x^2 + 4y^2 exactly", "reference",
           verdict.vu == parse_polynomial("2*x^2+4*y^2", XYZ));

    auto report = weaklog_sample(v, u, {0.0, 0.0, 0.0});
    bool sup_ok = report.global_sup_estimate >= 3.9 && report.global_sup_estimate <= 4.0;
    expect(r, "sampled sup of |P| in [3.9, 4.0] (closed form 2(1+sin^2 theta))", "reference",
           sup_ok, "sup = " + fmt_double(report.global_sup_estimate));
    expect(r, "no growth across scales (weakly logarithmic behaviour)", "reference",
           !report.growth_flag);

    const std::vector<std::string> S{"s"};
    auto wx = divergence_witness(v, u,
                                 {parse_polynomial("s", S), parse_polynomial("0", S),
                                  parse_polynomial("0", S)});
    bool const2 = !wx.divergent;
    for (const auto& [s, val] : wx.p_values) const2 = const2 && std::fabs(val - 2.0) < 1e-9;
    expect(r, "P = 2 along gamma(s) = (s,0,0)", "reference", const2);

    auto wy = divergence_witness(v, u,
                                 {parse_polynomial("0", S), parse_polynomial("s", S),
                                  parse_polynomial("0", S)});
    bool const4 = !wy.divergent;
    for (const auto& [s, val] : wy.p_values) const4 = const4 && std::fabs(val - 4.0) < 1e-9;
    expect(r, "P = 4 along gamma(s) = (0,s,0)", "derived", const4);
    return r;
}

RegistryResult entry_cone() {
    RegistryResult r{"cone"};
    auto chart = make_chart(XYZ, Center{{0, 1, 2}}, 0);
    auto t = strict_transform(parse_polynomial("y^2+z^2-x^2", XYZ), chart);
    expect(r, "exceptional exponent 2", "reference", t.exceptional_exponent == 2);
    expect(r, "strict transform is the cylinder xi_y^2 + xi_z^2 - 1", "reference",
           t.strict == parse_polynomial("xi_y^2+xi_z^2-1", chart.chart_vars));
    expect(r, "total = x^2 * strict exactly", "trivial",
           Polynomial::variable(chart.chart_vars, 0).pow(2) * t.strict == t.total);
    return r;
}

RegistryResult entry_x6y2() {
    RegistryResult r{"x6y2"};
    auto trace = run_schedule(parse_polynomial("x^6+y^2", XYZ),
                              parse_schedule_text("blowup center=x,y pivot=x\n"
                                                  "blowup center=x,y_1 pivot=x\n"
                                                  "blowup center=x,y_2 pivot=x\n"));
    bool ok = trace.steps.size() == 3;
    const std::vector<std::string> c1{"x", "y_1", "z"}, c2{"x", "y_2", "z"},
        c3{"x", "y_3", "z"};
    ok = ok && trace.steps[0].transform.total == parse_polynomial("x^2*(x^4+y_1^2)", c1);
    expect(r, "step 1 total x^2 (x^4 + y_1^2)", "reference", ok);
    expect(r, "step 2 total x^4 (x^2 + y_2^2)", "reference",
           trace.steps.size() == 3 &&
               trace.steps[1].transform.total == parse_polynomial("x^4*(x^2+y_2^2)", c2));
    expect(r, "step 3 total x^6 (1 + y_3^2)", "reference",
           trace.steps.size() == 3 &&
               trace.steps[2].transform.total == parse_polynomial("x^6*(1+y_3^2)", c3));
    expect(r, "exceptional exponents 2, 4, 6", "reference",
           trace.steps.size() == 3 && trace.steps[0].transform.exceptional_exponent == 2 &&
               trace.steps[1].transform.exceptional_exponent == 4 &&
               trace.steps[2].transform.exceptional_exponent == 6);
    bool unit_ok = trace.monomial_unit && trace.monomial_unit->exponents == Exponents{6, 0, 0} &&
                   trace.monomial_unit->unit == parse_polynomial("1+y_3^2", c3) &&
                   trace.monomial_unit->certified_positive;
    expect(r, "monomial-times-unit form x^6 (1 + y_3^2), exponents (6,0,0)", "reference", unit_ok);
    return r;
}

RegistryResult entry_zaxis_instability() {
    RegistryResult r{"zaxis-instability"};
    MechanicalSystem sys =
        make_system(PotentialSpec::polynomial(parse_polynomial("x^2+y^2", XYZ)),
                    KineticMetric::identity(3));
    run_instability_entry(r, sys, {diag_metric({1, 2, 3}), frozen_spd3()},
                          {"diag(1,2,3)", "fixed SPD"}, {0.0, 0.0, 0.0},
                          field(XYZ, "x,2*y,1"), 0.5);
    return r;
}

RegistryResult entry_x2y2_instability() {
    RegistryResult r{"x2y2-instability"};
    MechanicalSystem sys = make_system(
        PotentialSpec::polynomial(parse_polynomial("x^2*y^2", XY)), KineticMetric::identity(2));
    run_instability_entry(r, sys, {diag_metric({1, 2}), frozen_spd2()},
                          {"diag(1,2)", "fixed SPD"}, {0.0, 0.0}, field(XY, "1,0"), 0.5);
    return r;
}

RegistryResult entry_wintner_stability() {
    RegistryResult r{"wintner-stability"};
    const double energy = 1e-6;
    MechanicalSystem sys =
        make_system(PotentialSpec::builtin("wintner"), KineticMetric::identity(1));
    double barrier = first_barrier_crossing(
        [&](double t) { return sys.potential.value({t}); }, energy, 2.0, 1e-5);
    StabilityProbeParams params;
    params.energies = {energy};
    params.T = 1e3;
    params.dt = 1e-3;
    auto report = stability_probe(sys, {0.0}, params);
    bool trapped = barrier > 0 && report.max_excursion[0] <= barrier + 5e-3;
    std::ostringstream d;
    d << "max excursion " << fmt_double(report.max_excursion[0]) << " vs barrier at "
      << fmt_double(barrier);
    expect(r, "shell energy 1e-6 stays within the first barrier over T = 1e3", "reference",
           trapped, d.str());
    expect(r, "the motion actually reaches out before turning (no trivial trapping)",
           "derived", report.max_excursion[0] >= 0.5);
    bool conservative = true;
    for (const auto& run : report.runs) conservative = conservative && !run.non_conservative;
    expect(r, "energy conserved along the probe", "derived", conservative);
    return r;
}

RegistryResult entry_laloy_stability() {
    RegistryResult r{"laloy-stability"};
    const double energy = 1e-6;
    MechanicalSystem sys =
        make_system(PotentialSpec::builtin("laloy"), KineticMetric::identity(2));
    double bx = first_barrier_crossing(
        [&](double t) { return sys.potential.value({t, 0.0}); }, energy, 2.0, 1e-5);
    double by = first_barrier_crossing(
        [&](double t) { return sys.potential.value({0.0, t}); }, energy, 2.0, 1e-5);
    StabilityProbeParams params;
    params.energies = {energy};
    params.T = 1e2;
    params.dt = 1e-3;
    auto report = stability_probe(sys, {0.0, 0.0}, params);
    std::ostringstream d;
    d << "per-coordinate max (" << fmt_double(report.per_coord_max[0][0]) << ", "
      << fmt_double(report.per_coord_max[0][1]) << ") vs barriers (" << fmt_double(bx) << ", "
      << fmt_double(by) << ")";
    bool trapped = bx > 0 && by > 0 && report.per_coord_max[0][0] <= bx + 5e-3 &&
                   report.per_coord_max[0][1] <= by + 5e-3;
    expect(r, "decoupled per-coordinate trapping over T = 1e2", "reference", trapped, d.str());
    bool conservative = true;
    for (const auto& run : report.runs) conservative = conservative && !run.non_conservative;
    expect(r, "energy conserved along the probe", "derived", conservative);
    return r;
}

}  // namespace

std::vector<std::string> registry_ids() {
    return {"euler-quasihom",    "example-2-1",       "example-2-2-whitney",
            "example-2-3",       "cone",              "x6y2",
            "zaxis-instability", "x2y2-instability",  "wintner-stability",
            "laloy-stability"};
}

RegistryResult run_registry_entry(const std::string& id) {
    RegistryResult r;
    if (id == "euler-quasihom")
        r = entry_euler_quasihom();
    else if (id == "example-2-1")
        r = entry_example_2_1();
    else if (id == "example-2-2-whitney")
        r = entry_example_2_2_whitney();
    else if (id == "example-2-3")
        r = entry_example_2_3();
    else if (id == "cone")
        r = entry_cone();
    else if (id == "x6y2")
        r = entry_x6y2();
    else if (id == "zaxis-instability")
        r = entry_zaxis_instability();
    else if (id == "x2y2-instability")
        r = entry_x2y2_instability();
    else if (id == "wintner-stability")
        r = entry_wintner_stability();
    else if (id == "laloy-stability")
        r = entry_laloy_stability();
    else
        throw std::invalid_argument("unknown registry id: " + id);
    r.pass = true;
    for (const auto& e : r.expectations) r.pass = r.pass && e.pass;
    return r;
}

std::string render_text(const RegistryResult& r) {
    std::ostringstream os;
    os << "[" << (r.pass ? "PASS" : "FAIL") << "] " << r.id << "\n";
    for (const auto& e : r.expectations) {
        os << "  [" << (e.pass ? "pass" : "FAIL") << "][" << e.provenance << "] " << e.name;
        if (!e.detail.empty()) os << "  -- " << e.detail;
        os << "\n";
    }
    return os.str();
}

}  // namespace wlog
