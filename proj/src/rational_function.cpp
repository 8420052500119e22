#include "wlog/rational_function.hpp"

namespace wlog {

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.vars(), Rat(1))) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.vars() != den_.vars())
        throw std::invalid_argument("rational function: variable-set mismatch");
    if (den_.is_zero()) throw std::invalid_argument("rational function: zero denominator");
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial::constant(num_.vars(), Rat(1));
        return;
    }
    Exponents cn = num_.monomial_content();
    Exponents cd = den_.monomial_content();
    for (std::size_t i = 0; i < cn.size(); ++i) {
        int d = std::min(cn[i], cd[i]);
        if (d > 0) {
            num_ = num_.shift_down(i, d);
            den_ = den_.shift_down(i, d);
        }
    }
    if (den_.is_constant()) {
        Rat c = den_.constant_term();
        num_ = num_.scale(Rat(1) / c);
        den_ = Polynomial::constant(num_.vars(), Rat(1));
    }
}

const Polynomial& RationalFunction::as_polynomial() const {
    if (!is_polynomial()) throw std::logic_error("rational function is not polynomial");
    return num_;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const Polynomial& p) const {
    return RationalFunction(num_ * p, den_);
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_); }

bool RationalFunction::equals(const RationalFunction& o) const {
    return num_ * o.den_ == o.num_ * den_;
}

bool RationalFunction::equals(const Polynomial& p) const {
    return num_ == p * den_;
}

double RationalFunction::eval(const std::vector<double>& point) const {
    return num_.eval(point) / den_.eval(point);
}

RationalFunction RationalFunction::substitute(const std::vector<RationalFunction>& images) const {
    if (images.size() != vars().size())
        throw std::invalid_argument("substitute: one image per variable required");
    const std::vector<std::string>& tvars = images.empty() ? vars() : images[0].vars();
    auto compose_poly = [&](const Polynomial& p) {
        RationalFunction acc = RationalFunction::zero(tvars);
        for (const auto& [e, c] : p.terms()) {
            RationalFunction term(Polynomial::constant(tvars, c));
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) term = term * images[i];
            acc = acc + term;
        }
        return acc;
    };
    RationalFunction n = compose_poly(num_);
    RationalFunction d = compose_poly(den_);
    if (d.is_zero()) throw std::domain_error("substitute: denominator vanishes identically");
    return RationalFunction(n.num() * d.den(), n.den() * d.num());
}

std::string RationalFunction::str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

}  // namespace wlog
