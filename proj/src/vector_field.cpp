#include "wlog/vector_field.hpp"

#include <numeric>
#include <sstream>

namespace wlog {

PolyVectorField::PolyVectorField(std::vector<std::string> v, std::vector<Polynomial> comps)
    : vars(std::move(v)), components(std::move(comps)) {
    if (components.size() != vars.size())
        throw std::invalid_argument("vector field: one component per variable required");
    for (const auto& c : components)
        if (c.vars() != vars) throw std::invalid_argument("vector field: variable-set mismatch");
}

bool PolyVectorField::is_zero() const {
    for (const auto& c : components)
        if (!c.is_zero()) return false;
    return true;
}

std::string PolyVectorField::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (i) os << ", ";
        os << components[i].str();
    }
    os << ")";
    return os.str();
}

std::vector<double> PolyVectorField::eval(const std::vector<double>& point) const {
    std::vector<double> out(components.size());
    for (std::size_t i = 0; i < components.size(); ++i) out[i] = components[i].eval(point);
    return out;
}

bool RatVectorField::is_polynomial() const {
    for (const auto& c : components)
        if (!c.is_polynomial()) return false;
    return true;
}

PolyVectorField RatVectorField::as_polynomial() const {
    std::vector<Polynomial> comps;
    comps.reserve(components.size());
    for (const auto& c : components) comps.push_back(c.as_polynomial());
    return PolyVectorField(vars, std::move(comps));
}

std::string RatVectorField::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (i) os << ", ";
        os << components[i].str();
    }
    os << ")";
    return os.str();
}

Polynomial apply_field(const PolyVectorField& V, const Polynomial& f) {
    if (V.vars != f.vars()) throw std::invalid_argument("apply_field: variable-set mismatch");
    Polynomial acc = Polynomial::zero(f.vars());
    for (std::size_t i = 0; i < V.components.size(); ++i)
        acc = acc + V.components[i] * f.partial(i);
    return acc;
}

PolyVectorField euler_field(const std::vector<std::string>& vars,
                            const std::vector<Rat>& weights) {
    if (weights.size() != vars.size())
        throw std::invalid_argument("euler_field: weights length mismatch");
    std::vector<Polynomial> comps;
    comps.reserve(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i)
        comps.push_back(Polynomial::variable(vars, i).scale(weights[i]));
    return PolyVectorField(vars, std::move(comps));
}

namespace {

// Nullspace basis of an m x n rational matrix via reduced row echelon form.
std::vector<std::vector<Rat>> nullspace(std::vector<std::vector<Rat>> a, std::size_t n) {
    std::vector<int> pivot_col_of_row;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < a.size(); ++col) {
        std::size_t sel = row;
        while (sel < a.size() && a[sel][col] == 0) ++sel;
        if (sel == a.size()) continue;
        std::swap(a[sel], a[row]);
        Rat p = a[row][col];
        for (std::size_t j = 0; j < n; ++j) a[row][j] /= p;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col_of_row) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rat> v(n, Rat(0));
        v[free_col] = Rat(1);
        for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r)
            v[static_cast<std::size_t>(pivot_col_of_row[r])] = -a[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves the square rational system g x = b by Gaussian elimination.
std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> g,
                                             std::vector<Rat> b) {
    std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && g[sel][col] == 0) ++sel;
        if (sel == n) return std::nullopt;
        std::swap(g[sel], g[col]);
        std::swap(b[sel], b[col]);
        Rat p = g[col][col];
        for (std::size_t j = 0; j < n; ++j) g[col][j] /= p;
        b[col] /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || g[i][col] == 0) continue;
            Rat f = g[i][col];
            for (std::size_t j = 0; j < n; ++j) g[i][j] -= f * g[col][j];
            b[i] -= f * b[col];
        }
    }
    return b;
}

// Primitive integer rescaling: clears denominators, divides by the gcd of
// numerators. Sign is preserved.
std::vector<Rat> make_primitive(const std::vector<Rat>& v) {
    BigInt l(1);
    for (const Rat& r : v) l = boost::multiprecision::lcm(l, denominator(r));
    std::vector<Rat> scaled;
    BigInt g(0);
    for (const Rat& r : v) {
        Rat s = r * Rat(l);
        scaled.push_back(s);
        g = boost::multiprecision::gcd(g, numerator(s));
    }
    if (g != 0)
        for (Rat& r : scaled) r /= Rat(g);
    return scaled;
}

}  // namespace

std::optional<WeightVector> quasi_homogeneity(const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("quasi_homogeneity: zero polynomial");
    std::size_t n = f.num_vars();
    const Exponents& ref = f.terms().begin()->first;
    std::vector<std::vector<Rat>> rows;
    for (const auto& [e, c] : f.terms()) {
        std::vector<Rat> row(n);
        bool nonzero = false;
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = Rat(e[i] - ref[i]);
            if (row[i] != 0) nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
    }
    std::vector<std::vector<Rat>> basis;
    if (rows.empty()) {
        // single monomial (up to repeated rows): every weight vector works
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Rat> v(n, Rat(0));
            v[i] = Rat(1);
            basis.push_back(std::move(v));
        }
    } else {
        basis = nullspace(std::move(rows), n);
    }
    if (basis.empty()) return std::nullopt;

    auto total_of = [&](const std::vector<Rat>& w) {
        Rat t(0);
        for (std::size_t i = 0; i < n; ++i) t += w[i] * ref[i];
        return t;
    };

    // Canonical representative: the projection of the all-ones vector onto
    // the solution space, so homogeneous input yields uniform weights.
    std::size_t k = basis.size();
    std::vector<std::vector<Rat>> gram(k, std::vector<Rat>(k, Rat(0)));
    std::vector<Rat> rhs(k, Rat(0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t t = 0; t < n; ++t) gram[i][j] += basis[i][t] * basis[j][t];
        for (std::size_t t = 0; t < n; ++t) rhs[i] += basis[i][t];
    }
    std::vector<Rat> w(n, Rat(0));
    if (auto coeffs = solve_square(gram, rhs)) {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t t = 0; t < n; ++t) w[t] += (*coeffs)[i] * basis[i][t];
    }
    bool w_zero = std::all_of(w.begin(), w.end(), [](const Rat& r) { return r == 0; });
    if (w_zero || total_of(w) == 0) {
        w.clear();
        for (const auto& b : basis) {
            if (total_of(b) != 0) {
                w = b;
                break;
            }
        }
        if (w.empty()) return std::nullopt;
    }
    if (total_of(w) < 0)
        for (Rat& r : w) r = -r;
    w = make_primitive(w);
    WeightVector wv;
    wv.weights = w;
    wv.total = total_of(w);
    return wv;
}

bool is_tangent_to_center(const PolyVectorField& V, const std::vector<std::size_t>& center) {
    if (center.empty()) throw std::invalid_argument("tangency: empty center");
    std::vector<Polynomial> images = identity_images(V.vars);
    for (std::size_t i : center) images[i] = Polynomial::zero(V.vars);
    for (std::size_t i : center) {
        if (i >= V.num_vars()) throw std::out_of_range("tangency: center index out of range");
        if (!V.components[i].substitute(images).is_zero()) return false;
    }
    return true;
}

}  // namespace wlog
