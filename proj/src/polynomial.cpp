#include "wlog/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wlog {

Polynomial Polynomial::constant(std::vector<std::string> vars, const Rat& c) {
    Polynomial p(std::move(vars));
    if (c != 0) p.terms_[Exponents(p.vars_.size(), 0)] = c;
    return p;
}

Polynomial Polynomial::variable(std::vector<std::string> vars, std::size_t i) {
    if (i >= vars.size()) throw std::out_of_range("variable index out of range");
    Polynomial p(std::move(vars));
    Exponents e(p.vars_.size(), 0);
    e[i] = 1;
    p.terms_[e] = Rat(1);
    return p;
}

Polynomial Polynomial::monomial(std::vector<std::string> vars, Exponents exps, const Rat& c) {
    Polynomial p(std::move(vars));
    if (exps.size() != p.vars_.size()) throw std::invalid_argument("exponent vector length mismatch");
    for (int e : exps)
        if (e < 0) throw std::invalid_argument("negative exponent");
    if (c != 0) p.terms_[std::move(exps)] = c;
    return p;
}

Polynomial Polynomial::from_terms(std::vector<std::string> vars,
                                  const std::vector<std::pair<Exponents, Rat>>& terms) {
    Polynomial p(std::move(vars));
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

void Polynomial::add_term(const Exponents& e, const Rat& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("exponent vector length mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Exponents& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rat Polynomial::constant_term() const { return coeff(Exponents(vars_.size(), 0)); }

Rat Polynomial::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

long Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    long d = 0;
    for (int e : terms_.begin()->first) d += e;  // leading term has max degree
    return d;
}

void Polynomial::require_same_vars(const Polynomial& o) const {
    if (vars_ != o.vars_) throw std::invalid_argument("variable-set mismatch");
}

Polynomial Polynomial::operator-() const {
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    require_same_vars(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    require_same_vars(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_same_vars(o);
    Polynomial r(vars_);
    Exponents e(vars_.size());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::scale(const Rat& c) const {
    Polynomial r(vars_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result = Polynomial::constant(vars_, Rat(1));
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        if (e >>= 1u) base = base * base;
    }
    return result;
}

Polynomial Polynomial::partial(std::size_t i) const {
    if (i >= vars_.size()) throw std::out_of_range("partial: index out of range");
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponents d = e;
        d[i] -= 1;
        r.add_term(d, c * e[i]);
    }
    return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != vars_.size())
        throw std::invalid_argument("substitute: one image per variable required");
    for (std::size_t i = 1; i < images.size(); ++i)
        if (images[i].vars() != images[0].vars())
            throw std::invalid_argument("substitute: inconsistent target variable sets");
    const std::vector<std::string>& tvars = images.empty() ? vars_ : images[0].vars();
    Polynomial r = Polynomial::zero(tvars);
    for (const auto& [e, c] : terms_) {
        Polynomial term = Polynomial::constant(tvars, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term = term * images[i].pow(static_cast<unsigned>(e[i]));
        r = r + term;
    }
    return r;
}

std::optional<Polynomial> Polynomial::exact_divide_by(const Polynomial& divisor) const {
    require_same_vars(divisor);
    if (divisor.is_zero()) throw std::invalid_argument("exact_divide: zero divisor");
    Polynomial quotient(vars_);
    Polynomial rem = *this;
    const auto& dlead = *divisor.terms_.begin();
    Exponents qe(vars_.size());
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms_.begin();
        bool divisible = true;
        for (std::size_t i = 0; i < qe.size(); ++i) {
            qe[i] = rlead.first[i] - dlead.first[i];
            if (qe[i] < 0) {
                divisible = false;
                break;
            }
        }
        if (!divisible) return std::nullopt;
        Rat qc = rlead.second / dlead.second;
        quotient.add_term(qe, qc);
        rem = rem - divisor * Polynomial::monomial(vars_, qe, qc);
    }
    return quotient;
}

double Polynomial::eval(const std::vector<double>& point) const {
    if (point.size() != vars_.size()) throw std::invalid_argument("eval: dimension mismatch");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = to_double(c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        }
        acc += t;
    }
    return acc;
}

Rat Polynomial::eval_exact(const std::vector<Rat>& point) const {
    if (point.size() != vars_.size()) throw std::invalid_argument("eval: dimension mismatch");
    Rat acc(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t *= rat_pow(point[i], static_cast<unsigned>(e[i]));
        acc += t;
    }
    return acc;
}

int Polynomial::max_power_dividing(std::size_t i) const {
    if (terms_.empty()) return 0;
    int d = INT32_MAX;
    for (const auto& [e, c] : terms_) d = std::min(d, e[i]);
    return d;
}

Polynomial Polynomial::shift_down(std::size_t i, int d) const {
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] < d) throw std::invalid_argument("shift_down: insufficient power");
        Exponents ne = e;
        ne[i] -= d;
        r.terms_[ne] = c;
    }
    return r;
}

Exponents Polynomial::monomial_content() const {
    Exponents m(vars_.size(), 0);
    if (terms_.empty()) return m;
    m = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
    return m;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_vars = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
        bool printed = false;
        if (!has_vars || a != 1) {
            os << rat_to_string(a);
            printed = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (printed) os << "*";
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
            printed = true;
        }
    }
    return os.str();
}

std::vector<Polynomial> identity_images(const std::vector<std::string>& vars) {
    std::vector<Polynomial> images;
    images.reserve(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) images.push_back(Polynomial::variable(vars, i));
    return images;
}

}  // namespace wlog
