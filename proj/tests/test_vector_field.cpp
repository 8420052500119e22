#include <doctest.h>

#include "helpers.hpp"
#include "wlog/parser.hpp"
#include "wlog/vector_field.hpp"

using namespace wlog;
using wlog::testing::random_poly;
using wlog::testing::random_tangent_field;

namespace {
const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

PolyVectorField field(const std::vector<std::string>& vars, const std::string& comps) {
    return PolyVectorField(vars, parse_polynomial_list(comps, vars));
}
}  // namespace

TEST_CASE("apply_field worked examples") {
    CHECK(apply_field(field(XYZ, "x,2*y,1"), parse_polynomial("x^2+y^2", XYZ)) ==
          parse_polynomial("2*x^2+4*y^2", XYZ));
    CHECK(apply_field(field(XY, "0,0"), parse_polynomial("x^3+y", XY)).is_zero());
    Polynomial u = parse_polynomial("x^4+y^4-z^6", XYZ);
    CHECK(apply_field(field(XYZ, "3*x,3*y,2*z"), u) == u.scale(Rat(12)));
}

TEST_CASE("apply_field is a derivation") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        PolyVectorField V(XYZ, {random_poly(rng, XYZ, 3, 3), random_poly(rng, XYZ, 3, 3),
                                random_poly(rng, XYZ, 3, 3)});
        Polynomial f = random_poly(rng, XYZ, 4, 4);
        Polynomial g = random_poly(rng, XYZ, 4, 4);
        CHECK(apply_field(V, f * g) == apply_field(V, f) * g + f * apply_field(V, g));
        CHECK(apply_field(V, f + g) == apply_field(V, f) + apply_field(V, g));

        // linear in the field as well
        PolyVectorField W(XYZ, {random_poly(rng, XYZ, 3, 3), random_poly(rng, XYZ, 3, 3),
                                random_poly(rng, XYZ, 3, 3)});
        PolyVectorField sum(XYZ, {V.components[0] + W.components[0],
                                  V.components[1] + W.components[1],
                                  V.components[2] + W.components[2]});
        CHECK(apply_field(sum, f) == apply_field(V, f) + apply_field(W, f));
    }
}

TEST_CASE("euler_field") {
    PolyVectorField e1 = euler_field(XY, {Rat(1), Rat(1)});
    CHECK(e1.components[0] == parse_polynomial("x", XY));
    CHECK(e1.components[1] == parse_polynomial("y", XY));

    PolyVectorField e2 = euler_field(XYZ, {Rat(3), Rat(3), Rat(2)});
    Polynomial u = parse_polynomial("x^4+y^4-z^6", XYZ);
    CHECK(apply_field(e2, u) == u.scale(Rat(12)));

    CHECK(euler_field(XYZ, {Rat(0), Rat(0), Rat(0)}).is_zero());
}

TEST_CASE("quasi_homogeneity worked examples") {
    auto w = quasi_homogeneity(parse_polynomial("x^4+y^4-z^6", XYZ));
    REQUIRE(w.has_value());
    CHECK(w->weights == std::vector<Rat>{Rat(3), Rat(3), Rat(2)});
    CHECK(w->total == Rat(12));

    auto h = quasi_homogeneity(parse_polynomial("x^2*y^2", XY));
    REQUIRE(h.has_value());
    CHECK(h->weights == std::vector<Rat>{Rat(1), Rat(1)});
    CHECK(h->total == Rat(4));

    CHECK(!quasi_homogeneity(parse_polynomial("x+x^2+x^5", {"x"})).has_value());
}

TEST_CASE("quasi_homogeneity feeds the Euler identity") {
    std::mt19937_64 rng(31);
    int successes = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Polynomial f = random_poly(rng, XYZ, 5, 4, /*allow_zero=*/false);
        auto w = quasi_homogeneity(f);
        if (!w) continue;
        ++successes;
        CHECK(apply_field(euler_field(XYZ, w->weights), f) == f.scale(w->total));
        for (const auto& [e, c] : f.terms()) {
            Rat s(0);
            for (std::size_t i = 0; i < e.size(); ++i) s += w->weights[i] * e[i];
            CHECK(s == w->total);
        }
    }
    CHECK(successes > 0);  // single monomials alone guarantee hits
}

TEST_CASE("tangency to coordinate centers") {
    CHECK(is_tangent_to_center(field(XYZ, "x,2*y,1"), {0, 1}));
    CHECK(!is_tangent_to_center(field(XY, "1,0"), {0}));
    CHECK(is_tangent_to_center(field(XY, "0,x"), {0, 1}));
    CHECK(is_tangent_to_center(field(XYZ, "y,x,z"), {0, 1}));
    CHECK(!is_tangent_to_center(field(XYZ, "y,z,x"), {0, 1}));
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::size_t> center{0, 2};
        CHECK(is_tangent_to_center(random_tangent_field(rng, XYZ, center, 3), center));
    }
}
