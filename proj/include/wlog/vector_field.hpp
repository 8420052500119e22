#pragma once

#include <optional>
#include <vector>

#include "wlog/polynomial.hpp"
#include "wlog/rational_function.hpp"

namespace wlog {

/// Weights of a quasi-homogeneous polynomial: f(t^{w_1}x_1,...) = t^total f.
struct WeightVector {
    std::vector<Rat> weights;
    Rat total;
};

/// Polynomial vector field: one component per variable, shared variable set.
struct PolyVectorField {
    std::vector<std::string> vars;
    std::vector<Polynomial> components;

    PolyVectorField() = default;
    PolyVectorField(std::vector<std::string> v, std::vector<Polynomial> comps);

    std::size_t num_vars() const { return vars.size(); }
    bool is_zero() const;
    std::string str() const;
    std::vector<double> eval(const std::vector<double>& point) const;
};

/// Vector field with rational-function components (pushouts live here).
struct RatVectorField {
    std::vector<std::string> vars;
    std::vector<RationalFunction> components;

    bool is_polynomial() const;
    PolyVectorField as_polynomial() const;
    std::string str() const;
};

/// Directional derivative V(f) = sum_i V^i d_i f. Exact, linear in both
/// arguments, satisfies the Leibniz rule.
Polynomial apply_field(const PolyVectorField& V, const Polynomial& f);

/// The Euler field sum_i w_i x_i d_i of a weight vector.
PolyVectorField euler_field(const std::vector<std::string>& vars,
                            const std::vector<Rat>& weights);

/// Detects quasi-homogeneity by solving sum_i w_i a_i = const over all term
/// exponent rows; returns the primitive integer solution with positive total
/// weight, or nullopt when only trivial solutions exist.
std::optional<WeightVector> quasi_homogeneity(const Polynomial& f);

/// True iff V is tangent to the coordinate subspace {x_i = 0 : i in center}:
/// substituting zero for all center variables kills every center component.
bool is_tangent_to_center(const PolyVectorField& V, const std::vector<std::size_t>& center);

}  // namespace wlog
