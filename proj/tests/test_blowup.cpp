#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wlog/blowup.hpp"
#include "wlog/logcheck.hpp"
#include "wlog/parser.hpp"

using namespace wlog;
using wlog::testing::random_poly;
using wlog::testing::random_tangent_field;

namespace {
const std::vector<std::string> XYZ{"x", "y", "z"};

PolyVectorField field(const std::vector<std::string>& vars, const std::string& comps) {
    return PolyVectorField(vars, parse_polynomial_list(comps, vars));
}

PolyVectorField basis_field(const std::vector<std::string>& vars, std::size_t at,
                            const Polynomial& coeff) {
    std::vector<Polynomial> comps(vars.size(), Polynomial::zero(vars));
    comps[at] = coeff;
    return PolyVectorField(vars, comps);
}
}  // namespace

TEST_CASE("make_chart naming and substitution") {
    auto c1 = make_chart(XYZ, Center{{1, 2}}, 1);
    CHECK(c1.chart_vars == std::vector<std::string>{"x", "y", "xi_z"});
    auto images = c1.substitution_images();
    CHECK(images[2] == parse_polynomial("y*xi_z", c1.chart_vars));
    CHECK(images[0] == parse_polynomial("x", c1.chart_vars));
    CHECK(!c1.codim1_flagged);

    auto c2 = make_chart(XYZ, Center{{0, 1, 2}}, 0);
    CHECK(c2.chart_vars == std::vector<std::string>{"x", "xi_y", "xi_z"});

    auto c3 = make_chart(XYZ, Center{{0}}, 0);
    CHECK(c3.codim1_flagged);
    CHECK(c3.chart_vars == XYZ);  // identity substitution
    CHECK(c3.substitution_images() == identity_images(XYZ));

    CHECK_THROWS(make_chart(XYZ, Center{{1, 2}}, 0));  // pivot outside center
}

TEST_CASE("total and strict transform of the cone") {
    auto chart = make_chart(XYZ, Center{{0, 1, 2}}, 0);
    Polynomial cone = parse_polynomial("y^2+z^2-x^2", XYZ);
    Polynomial total = total_transform(cone, chart);
    CHECK(total == parse_polynomial("x^2*xi_y^2+x^2*xi_z^2-x^2", chart.chart_vars));

    auto result = strict_transform(cone, chart);
    CHECK(result.exceptional_exponent == 2);
    CHECK(result.strict == parse_polynomial("xi_y^2+xi_z^2-1", chart.chart_vars));
    CHECK(Polynomial::variable(chart.chart_vars, 0).pow(2) * result.strict == result.total);
}

TEST_CASE("strict transform basics") {
    auto chart = make_chart(XYZ, Center{{0, 1}}, 0);
    auto r = strict_transform(parse_polynomial("x^6+y^2", XYZ), chart);
    CHECK(r.exceptional_exponent == 2);
    CHECK(r.strict == parse_polynomial("x^4+xi_y^2", chart.chart_vars));

    // center not inside the zero locus: nothing is factored out
    auto r2 = strict_transform(parse_polynomial("1+x", XYZ), chart);
    CHECK(r2.exceptional_exponent == 0);
    CHECK(r2.strict == r2.total);

    CHECK(total_transform(Polynomial::constant(XYZ, Rat(5)), chart) ==
          Polynomial::constant(chart.chart_vars, Rat(5)));
}

TEST_CASE("transform multiplicativity") {
    std::mt19937_64 rng(41);
    auto chart = make_chart(XYZ, Center{{0, 2}}, 2);
    for (int trial = 0; trial < 25; ++trial) {
        Polynomial f = random_poly(rng, XYZ, 4, 4, false);
        Polynomial g = random_poly(rng, XYZ, 4, 4, false);
        CHECK(total_transform(f * g, chart) ==
              total_transform(f, chart) * total_transform(g, chart));
        auto rf = strict_transform(f, chart);
        auto rg = strict_transform(g, chart);
        auto rfg = strict_transform(f * g, chart);
        CHECK(rfg.exceptional_exponent == rf.exceptional_exponent + rg.exceptional_exponent);
        // exactness: total = pivot^d * strict, pivot not dividing strict
        Polynomial pivot = Polynomial::variable(chart.chart_vars, chart.pivot);
        CHECK(pivot.pow(static_cast<unsigned>(rfg.exceptional_exponent)) * rfg.strict ==
              rfg.total);
        CHECK(rfg.strict.max_power_dividing(chart.pivot) == 0);
    }
}

TEST_CASE("generator table: the four chart identities") {
    // center (y1, y2, y3) with pivot y1, one horizontal coordinate w
    const std::vector<std::string> vars{"y1", "y2", "y3", "w"};
    Center center{{0, 1, 2}};
    auto chart = make_chart(vars, center, 0);
    const auto& cv = chart.chart_vars;  // (y1, xi_y2, xi_y3, w)

    auto xi = [&](std::size_t j) {
        return j == 0 ? Polynomial::constant(cv, Rat(1)) : Polynomial::variable(cv, j);
    };

    // (1) (y_j d_{y_i})^* = xi_j d_{xi_i}, i != pivot
    for (std::size_t j : {0u, 1u, 2u}) {
        for (std::size_t i : {1u, 2u}) {
            auto up = pullback_field(basis_field(vars, i, Polynomial::variable(vars, j)), chart);
            for (std::size_t k = 0; k < cv.size(); ++k) {
                if (k == i)
                    CHECK(up.components[k] == xi(j));
                else
                    CHECK(up.components[k].is_zero());
            }
        }
    }

    // (2) (y_j d_{y1})^* = xi_j (y1 d_{y1} - sum_i xi_i d_{xi_i})
    for (std::size_t j : {0u, 1u, 2u}) {
        auto up = pullback_field(basis_field(vars, 0, Polynomial::variable(vars, j)), chart);
        CHECK(up.components[0] == xi(j) * Polynomial::variable(cv, 0));
        for (std::size_t i : {1u, 2u})
            CHECK(up.components[i] == -(xi(j) * Polynomial::variable(cv, i)));
        CHECK(up.components[3].is_zero());
    }

    // (3) (d_{xi_i})_* = y1 d_{y_i}
    for (std::size_t i : {1u, 2u}) {
        auto down = pushout_field(basis_field(cv, i, Polynomial::constant(cv, Rat(1))), chart);
        for (std::size_t k = 0; k < vars.size(); ++k) {
            if (k == i)
                CHECK(down.components[k].equals(Polynomial::variable(vars, 0)));
            else
                CHECK(down.components[k].is_zero());
        }
    }

    // (4) (y1 d_{y1})_* = sum_i y_i d_{y_i} over the center
    auto down = pushout_field(basis_field(cv, 0, Polynomial::variable(cv, 0)), chart);
    for (std::size_t k : {0u, 1u, 2u})
        CHECK(down.components[k].equals(Polynomial::variable(vars, k)));
    CHECK(down.components[3].is_zero());
}

TEST_CASE("pullback worked example and tangency guard") {
    auto chart = make_chart(XYZ, Center{{0, 1}}, 0);
    auto up = pullback_field(field(XYZ, "x,2*y,1"), chart);
    CHECK(up.components[0] == parse_polynomial("x", chart.chart_vars));
    CHECK(up.components[1] == parse_polynomial("xi_y", chart.chart_vars));
    CHECK(up.components[2] == parse_polynomial("1", chart.chart_vars));

    CHECK_THROWS_AS(pullback_field(field(XYZ, "1,0,0"), chart), TangencyError);
}

TEST_CASE("pullback projects onto the original field (finite differences)") {
    std::mt19937_64 rng(43);
    const std::vector<std::string> vars{"a", "b", "c", "d"};
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::size_t> center{0, 1, 3};
        std::size_t pivot = center[static_cast<std::size_t>(
            std::uniform_int_distribution<int>(0, 2)(rng))];
        auto chart = make_chart(vars, Center{center}, pivot);
        PolyVectorField V = random_tangent_field(rng, vars, center, 3);
        PolyVectorField up = pullback_field(V, chart);
        auto images = chart.substitution_images();

        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> a(4);
            for (double& x : a) x = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
            if (std::fabs(a[pivot]) < 0.1) a[pivot] = 0.5;  // stay off the divisor

            std::vector<double> down(4);
            for (std::size_t i = 0; i < 4; ++i) down[i] = images[i].eval(a);
            std::vector<double> v_down = V.eval(down);
            std::vector<double> v_up = up.eval(a);

            // d_a(pi)(V*) by central differences of the chart map
            const double h = 1e-6;
            for (std::size_t i = 0; i < 4; ++i) {
                double pushed = 0.0;
                for (std::size_t j = 0; j < 4; ++j) {
                    std::vector<double> ap = a, am = a;
                    ap[j] += h;
                    am[j] -= h;
                    pushed += (images[i].eval(ap) - images[i].eval(am)) / (2 * h) * v_up[j];
                }
                CHECK(std::fabs(pushed - v_down[i]) <=
                      1e-6 * (std::fabs(v_down[i]) + 1.0));
            }
        }
    }
}

TEST_CASE("pushout inverts pullback on random tangent fields") {
    std::mt19937_64 rng(47);
    const std::vector<std::string> vars{"a", "b", "c", "d"};
    for (int trial = 0; trial < 200; ++trial) {
        int csize = std::uniform_int_distribution<int>(1, 4)(rng);
        std::vector<std::size_t> all{0, 1, 2, 3};
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<std::size_t> center(all.begin(), all.begin() + csize);
        std::sort(center.begin(), center.end());
        std::size_t pivot = center[static_cast<std::size_t>(
            std::uniform_int_distribution<int>(0, csize - 1)(rng))];

        auto chart = make_chart(vars, Center{center}, pivot);
        PolyVectorField V = random_tangent_field(rng, vars, center, 3);
        RatVectorField back = pushout_field(pullback_field(V, chart), chart);
        REQUIRE(back.is_polynomial());
        for (std::size_t i = 0; i < vars.size(); ++i)
            CHECK(back.components[i].equals(V.components[i]));
    }
}

TEST_CASE("pushout worked example and tangency guard") {
    auto chart = make_chart(XYZ, Center{{0, 1}}, 0);
    // pushout(pullback(x,2y,1)) = (x,2y,1) exactly
    auto down = pushout_field(pullback_field(field(XYZ, "x,2*y,1"), chart), chart);
    REQUIRE(down.is_polynomial());
    CHECK(down.as_polynomial().components[0] == parse_polynomial("x", XYZ));
    CHECK(down.as_polynomial().components[1] == parse_polynomial("2*y", XYZ));
    CHECK(down.as_polynomial().components[2] == parse_polynomial("1", XYZ));

    // field transverse to the exceptional hyperplane cannot be pushed out
    CHECK_THROWS_AS(pushout_field(field(chart.chart_vars, "1,0,0"), chart), TangencyError);
}

TEST_CASE("pushout accepts rational-function components") {
    // upstairs W = ( x/(1+xi), 0 ) over the chart of center {x,y}, pivot x:
    // downstairs (x^2/(x+y), x y/(x+y)), locally Lipschitz but not polynomial
    const std::vector<std::string> xy{"x", "y"};
    auto chart = make_chart(xy, Center{{0, 1}}, 0);
    const auto& cv = chart.chart_vars;  // (x, xi_y)
    RatVectorField W;
    W.vars = cv;
    W.components.push_back(RationalFunction(
        parse_polynomial("x", cv), parse_polynomial("1+xi_y", cv)));
    W.components.push_back(RationalFunction::zero(cv));

    auto down = pushout_field(W, chart);
    CHECK(!down.is_polynomial());
    CHECK(down.components[0].equals(
        RationalFunction(parse_polynomial("x^2", xy), parse_polynomial("x+y", xy))));
    CHECK(down.components[1].equals(
        RationalFunction(parse_polynomial("x*y", xy), parse_polynomial("x+y", xy))));

    // numeric agreement with the chain rule away from the divisor
    double x = 0.7, xi = 0.4;
    double y = x * xi;
    double up0 = x / (1.0 + xi);
    double down0 = down.components[0].eval({x, y});
    double down1 = down.components[1].eval({x, y});
    CHECK(down0 == doctest::Approx(up0).epsilon(1e-12));          // dx/dt
    CHECK(down1 == doctest::Approx(up0 * xi).epsilon(1e-12));     // dy/dt = xi xdot + x xidot
}

TEST_CASE("logarithmic transport across blowups") {
    // V(U) = P U stays exact upstairs with P∘pi, on 50 random constructions.
    std::mt19937_64 rng(53);
    const std::vector<std::string> vars{"x", "y", "z"};
    int done = 0;
    while (done < 50) {
        // quasi-homogeneous U for random small weights
        std::vector<Rat> w{Rat(std::uniform_int_distribution<int>(1, 3)(rng)),
                           Rat(std::uniform_int_distribution<int>(1, 3)(rng)),
                           Rat(std::uniform_int_distribution<int>(1, 3)(rng))};
        Exponents base{std::uniform_int_distribution<int>(0, 3)(rng),
                       std::uniform_int_distribution<int>(0, 3)(rng),
                       std::uniform_int_distribution<int>(0, 3)(rng)};
        Rat lambda = w[0] * base[0] + w[1] * base[1] + w[2] * base[2];
        if (lambda == 0) continue;
        Polynomial U = Polynomial::zero(vars);
        for (int e0 = 0; e0 <= 8; ++e0)
            for (int e1 = 0; e1 <= 8; ++e1)
                for (int e2 = 0; e2 <= 8; ++e2)
                    if (w[0] * e0 + w[1] * e1 + w[2] * e2 == lambda &&
                        std::uniform_int_distribution<int>(0, 2)(rng) == 0)
                        U.add_term({e0, e1, e2},
                                   Rat(std::uniform_int_distribution<int>(1, 5)(rng)));
        if (U.is_zero()) continue;

        std::vector<std::size_t> center{0, 1};
        std::size_t pivot = std::uniform_int_distribution<int>(0, 1)(rng) ? 1u : 0u;
        Polynomial f = random_poly(rng, vars, 2, 3);
        PolyVectorField W = random_tangent_field(rng, vars, center, 2);
        PolyVectorField E = euler_field(vars, w);
        std::vector<Polynomial> comps(3, Polynomial::zero(vars));
        for (std::size_t i = 0; i < 3; ++i)
            comps[i] = f * E.components[i] + U * W.components[i];
        PolyVectorField V(vars, comps);

        auto verdict = check_logarithmic(V, U);
        REQUIRE(verdict.logarithmic());
        Polynomial P = f.scale(lambda) + apply_field(W, U);
        CHECK(*verdict.P == P);

        auto chart = make_chart(vars, Center{center}, pivot);
        auto upstairs = check_logarithmic(pullback_field(V, chart), total_transform(U, chart));
        REQUIRE(upstairs.logarithmic());
        CHECK(*upstairs.P == total_transform(P, chart));
        ++done;
    }
}

TEST_CASE("monomial-times-unit normal form") {
    const std::vector<std::string> vars{"x", "y_3", "z"};
    auto form = to_monomial_unit(parse_polynomial("x^6*(1+y_3^2)", vars),
                                 Box::unit_cube(3));
    REQUIRE(form.has_value());
    CHECK(form->sign == 1);
    CHECK(form->exponents == Exponents{6, 0, 0});
    CHECK(form->unit == parse_polynomial("1+y_3^2", vars));
    CHECK(form->certified_positive);

    CHECK(!to_monomial_unit(parse_polynomial("x^4+y_3^2", vars), Box::unit_cube(3)).has_value());

    const std::vector<std::string> xy{"x", "y"};
    auto neg = to_monomial_unit(parse_polynomial("-x^2*y^4", xy), Box::unit_cube(2));
    REQUIRE(neg.has_value());
    CHECK(neg->sign == -1);
    CHECK(neg->exponents == Exponents{2, 4});
    CHECK(neg->unit == Polynomial::constant(xy, Rat(1)));

    // reconstruction identity sign * monomial * unit = input, property-style
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial f = random_poly(rng, xy, 5, 4, /*allow_zero=*/false);
        auto form = to_monomial_unit(f, Box::unit_cube(2));
        if (!form) continue;
        Polynomial rebuilt =
            Polynomial::monomial(xy, form->exponents, Rat(form->sign)) * form->unit;
        CHECK(rebuilt == f);
    }

    // sign change on the box defeats the unit claim
    CHECK(!to_monomial_unit(parse_polynomial("1-2*x", xy), Box::unit_cube(2)).has_value());
}

TEST_CASE("run_schedule reproduces the three-step principalization") {
    Schedule schedule = parse_schedule_text(
        "# principalization of x^6 + y^2\n"
        "blowup center=x,y pivot=x\n"
        "blowup center=x,y_1 pivot=x\n"
        "blowup center=x,y_2 pivot=x\n");
    auto trace = run_schedule(parse_polynomial("x^6+y^2", XYZ), schedule);
    REQUIRE(trace.steps.size() == 3);

    const std::vector<std::string> c1{"x", "y_1", "z"};
    const std::vector<std::string> c2{"x", "y_2", "z"};
    const std::vector<std::string> c3{"x", "y_3", "z"};
    CHECK(trace.steps[0].chart.chart_vars == c1);
    CHECK(trace.steps[0].transform.total == parse_polynomial("x^2*(x^4+y_1^2)", c1));
    CHECK(trace.steps[0].transform.exceptional_exponent == 2);
    CHECK(trace.steps[1].transform.total == parse_polynomial("x^4*(x^2+y_2^2)", c2));
    CHECK(trace.steps[1].transform.exceptional_exponent == 4);
    CHECK(trace.steps[2].transform.total == parse_polynomial("x^6*(1+y_3^2)", c3));
    CHECK(trace.steps[2].transform.exceptional_exponent == 6);
    CHECK(trace.steps[2].transform.strict == parse_polynomial("1+y_3^2", c3));
    CHECK(trace.steps[2].cumulative_monomial == Exponents{6, 0, 0});

    REQUIRE(trace.monomial_unit.has_value());
    CHECK(trace.monomial_unit->exponents == Exponents{6, 0, 0});
    CHECK(trace.monomial_unit->certified_positive);
}

TEST_CASE("run_schedule edge cases") {
    // monomial input, empty schedule: normal form is immediate
    auto trace = run_schedule(parse_polynomial("x^2*y^4", {"x", "y"}), {});
    CHECK(trace.steps.empty());
    REQUIRE(trace.monomial_unit.has_value());
    CHECK(trace.monomial_unit->exponents == Exponents{2, 4});

    // single blowup of x^2+y^2 in three variables: unit reached at once
    auto trace2 = run_schedule(parse_polynomial("x^2+y^2", XYZ),
                               parse_schedule_text("blowup center=x,y pivot=x"));
    REQUIRE(trace2.steps.size() == 1);
    const std::vector<std::string> cv{"x", "y_1", "z"};
    CHECK(trace2.steps[0].transform.total == parse_polynomial("x^2*(1+y_1^2)", cv));
    CHECK(trace2.steps[0].transform.strict == parse_polynomial("1+y_1^2", cv));
    REQUIRE(trace2.monomial_unit.has_value());
    CHECK(trace2.monomial_unit->exponents == Exponents{2, 0, 0});

    // stale variable names are rejected with the step index
    CHECK_THROWS_WITH_AS(run_schedule(parse_polynomial("x^6+y^2", XYZ),
                                      parse_schedule_text("blowup center=x,y pivot=x\n"
                                                          "blowup center=x,y pivot=x\n")),
                         doctest::Contains("step 2"), std::runtime_error);
}

TEST_CASE("schedule parsing rejects malformed input") {
    CHECK_THROWS(parse_schedule_text("blowup"));
    CHECK_THROWS(parse_schedule_text("blowdown center=x pivot=x"));
    CHECK_THROWS(parse_schedule_text("blowup center=x"));
    CHECK(parse_schedule_text("# only a comment\n\n").empty());
}
