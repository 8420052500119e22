#pragma once

#include <string>

#include "wlog/polynomial.hpp"

namespace wlog {

/// Quotient of polynomials over a shared variable set. Normalization cancels
/// the common single-monomial content of numerator and denominator and folds
/// constant denominators into the numerator; full multivariate GCD is out of
/// scope at desk scale.
class RationalFunction {
public:
    RationalFunction() = default;
    explicit RationalFunction(Polynomial num);
    RationalFunction(Polynomial num, Polynomial den);

    static RationalFunction zero(const std::vector<std::string>& vars) {
        return RationalFunction(Polynomial::zero(vars));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const std::vector<std::string>& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    /// Valid when is_polynomial(); the denominator is 1 after normalization.
    const Polynomial& as_polynomial() const;

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator*(const Polynomial& p) const;
    RationalFunction operator-() const;

    /// Equality as rational functions: cross multiplication, exact.
    bool equals(const RationalFunction& o) const;
    bool equals(const Polynomial& p) const;

    double eval(const std::vector<double>& point) const;

    /// Composition with rational images, one per variable.
    RationalFunction substitute(const std::vector<RationalFunction>& images) const;

    std::string str() const;

private:
    void normalize();

    Polynomial num_;
    Polynomial den_;
};

}  // namespace wlog
