#pragma once

#include <random>
#include <vector>

#include "wlog/polynomial.hpp"
#include "wlog/vector_field.hpp"

namespace wlog::testing {

/// Random sparse polynomial: up to max_terms terms of total degree <= max_deg,
/// small integer-ish rational coefficients.
inline Polynomial random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars,
                              int max_deg, int max_terms, bool allow_zero = true) {
    std::uniform_int_distribution<int> nterms(allow_zero ? 0 : 1, max_terms);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    Polynomial p = Polynomial::zero(vars);
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        Exponents e(vars.size(), 0);
        int budget = std::uniform_int_distribution<int>(0, max_deg)(rng);
        for (int d = 0; d < budget; ++d)
            e[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)] += 1;
        int c = coeff(rng);
        if (c == 0) c = 1;
        p.add_term(e, Rat(c, den(rng)));
    }
    if (!allow_zero && p.is_zero()) p.add_term(Exponents(vars.size(), 0), Rat(1));
    return p;
}

inline Rat random_rat(std::mt19937_64& rng, int num_range = 20, int den_range = 7) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return Rat(num(rng), den(rng));
}

inline std::vector<Rat> random_rat_point(std::mt19937_64& rng, std::size_t n) {
    std::vector<Rat> p(n);
    for (auto& x : p) x = random_rat(rng);
    return p;
}

/// Random polynomial field tangent to the given coordinate center: center
/// components lie in the ideal generated by the center variables.
inline PolyVectorField random_tangent_field(std::mt19937_64& rng,
                                            const std::vector<std::string>& vars,
                                            const std::vector<std::size_t>& center,
                                            int max_deg) {
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        bool in_center = std::find(center.begin(), center.end(), i) != center.end();
        if (!in_center) {
            comps.push_back(random_poly(rng, vars, max_deg, 3));
            continue;
        }
        Polynomial c = Polynomial::zero(vars);
        for (std::size_t j : center)
            c = c + Polynomial::variable(vars, j) * random_poly(rng, vars, max_deg - 1, 2);
        comps.push_back(c);
    }
    return PolyVectorField(vars, std::move(comps));
}

}  // namespace wlog::testing
