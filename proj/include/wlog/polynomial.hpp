#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wlog/rational.hpp"

namespace wlog {

using Exponents = std::vector<int>;

/// Graded-lexicographic order, larger first: higher total degree wins,
/// ties broken lexicographically in declared variable order.
struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
        long da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da > db;
        return a > b;
    }
};

/// Sparse multivariate polynomial with exact rational coefficients over a
/// fixed, ordered, named variable set. Immutable in spirit: all operations
/// return new values. No stored coefficient is zero; the zero polynomial
/// has an empty term map.
class Polynomial {
public:
    using TermMap = std::map<Exponents, Rat, GrlexGreater>;

    Polynomial() = default;
    explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i] == vars_[j])
                    throw std::invalid_argument("duplicate variable name: " + vars_[i]);
    }

    static Polynomial zero(std::vector<std::string> vars) { return Polynomial(std::move(vars)); }
    static Polynomial constant(std::vector<std::string> vars, const Rat& c);
    /// The i-th coordinate variable as a polynomial.
    static Polynomial variable(std::vector<std::string> vars, std::size_t i);
    static Polynomial monomial(std::vector<std::string> vars, Exponents exps, const Rat& c);

    std::size_t num_vars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Coefficient of the all-zero exponent vector (0 if absent).
    Rat constant_term() const;
    Rat coeff(const Exponents& e) const;
    long total_degree() const;  // -1 for the zero polynomial

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    bool operator==(const Polynomial& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial scale(const Rat& c) const;
    Polynomial pow(unsigned e) const;

    /// Exact formal partial derivative with respect to variable i.
    Polynomial partial(std::size_t i) const;

    /// Exact composition: every variable is replaced by its image, all images
    /// over one common target variable set.
    Polynomial substitute(const std::vector<Polynomial>& images) const;

    /// Single-divisor multivariate division in graded-lex order; returns the
    /// quotient iff the division is exact (zero remainder), nullopt otherwise.
    std::optional<Polynomial> exact_divide_by(const Polynomial& divisor) const;

    double eval(const std::vector<double>& point) const;
    Rat eval_exact(const std::vector<Rat>& point) const;

    /// Largest d with x_i^d dividing the polynomial (0 for the zero poly).
    int max_power_dividing(std::size_t i) const;
    /// Divide by x_i^d; every term must carry at least that power.
    Polynomial shift_down(std::size_t i, int d) const;
    /// Exponent-wise minimum over all terms: the single-monomial content.
    Exponents monomial_content() const;

    /// Canonical ASCII form, graded-lex term order (e.g. "x^4 + x^2*y^2").
    std::string str() const;

    /// Builds a polynomial from raw terms, dropping zero coefficients.
    static Polynomial from_terms(std::vector<std::string> vars,
                                 const std::vector<std::pair<Exponents, Rat>>& terms);

    void add_term(const Exponents& e, const Rat& c);  // accumulate, drop zeros

private:
    void require_same_vars(const Polynomial& o) const;

    std::vector<std::string> vars_;
    TermMap terms_;
};

/// Identity substitution images for a variable set (used to build partial maps).
std::vector<Polynomial> identity_images(const std::vector<std::string>& vars);

}  // namespace wlog
