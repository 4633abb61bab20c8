#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadrics/monomial.hpp"
#include "quadrics/rational.hpp"

namespace quadrics {

// Multivariate polynomial over Q with dense exponent keys, stored in
// canonical graded-lex order.  Zero coefficients are never kept.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexBefore>;

    explicit Polynomial(int nvars) : nvars_(nvars) {
        if (nvars < 1) throw std::invalid_argument("Polynomial: nvars < 1");
    }

    static Polynomial zero(int nvars) { return Polynomial(nvars); }
    static Polynomial constant(int nvars, const Rational& c) {
        Polynomial p(nvars);
        p.add_term(Monomial::one(nvars), c);
        return p;
    }
    static Polynomial variable(int nvars, int i) {
        Polynomial p(nvars);
        p.add_term(Monomial::variable(nvars, i), 1);
        return p;
    }
    static Polynomial term(Monomial m, const Rational& c) {
        Polynomial p(m.nvars());
        p.add_term(std::move(m), c);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return int(terms_.size()); }
    const TermMap& terms() const { return terms_; }

    // Max total degree; -1 for the zero polynomial.
    int degree() const {
        return terms_.empty() ? -1 : terms_.begin()->first.degree();
    }

    bool is_homogeneous(int* degree_out = nullptr) const {
        if (terms_.empty()) {
            if (degree_out) *degree_out = -1;
            return true;
        }
        int d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return false;
        if (degree_out) *degree_out = d;
        return true;
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(Monomial m, const Rational& c) {
        if (m.nvars() != nvars_)
            throw std::invalid_argument("Polynomial: variable count mismatch");
        if (is_zero_coeff(c)) return;
        auto [it, inserted] = terms_.emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (is_zero_coeff(it->second)) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_ring(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_ring(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& c) {
        if (is_zero_coeff(c)) {
            terms_.clear();
        } else {
            for (auto& [m, v] : terms_) v *= c;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_ring(b);
        Polynomial out(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                out.add_term(ma.times(mb), ca * cb);
        return out;
    }

    Polynomial times_variable(int i) const {
        Polynomial out(nvars_);
        for (const auto& [m, c] : terms_) out.add_term(m.times_variable(i), c);
        return out;
    }

    Polynomial pow(int e) const {
        if (e < 0) throw std::invalid_argument("Polynomial::pow: negative exponent");
        Polynomial acc = constant(nvars_, 1);
        for (int i = 0; i < e; ++i) acc = acc * (*this);
        return acc;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) {
        return !(a == b);
    }

    // Coefficient row with respect to the canonical basis of one degree.
    // The polynomial must be homogeneous of that degree (or zero).
    std::vector<Rational> coefficient_row(const MonomialBasis& basis) const {
        std::vector<Rational> row(basis.size(), Rational(0));
        for (const auto& [m, c] : terms_) {
            if (m.degree() != basis.degree() || m.nvars() != basis.nvars())
                throw std::invalid_argument(
                    "coefficient_row: term outside target degree");
            row[basis.index_of(m)] = c;
        }
        return row;
    }

    static Polynomial from_row(const MonomialBasis& basis,
                               const std::vector<Rational>& row) {
        if (int(row.size()) != basis.size())
            throw std::invalid_argument("from_row: length mismatch");
        Polynomial p(basis.nvars());
        for (int i = 0; i < basis.size(); ++i)
            if (!is_zero_coeff(row[i])) p.add_term(basis.at(i), row[i]);
        return p;
    }

private:
    static bool is_zero_coeff(const Rational& c) { return sgn(c) == 0; }
    void check_ring(const Polynomial& o) const {
        if (o.nvars_ != nvars_)
            throw std::invalid_argument("Polynomial: mixed variable counts");
    }

    int nvars_;
    TermMap terms_;
};

// Invertible linear substitution x_i -> sum_j m[i][j] x_j.  The inverse
// is computed on construction; singular matrices are rejected.
class LinearChange {
public:
    using Matrix = std::vector<std::vector<Rational>>;

    explicit LinearChange(Matrix m) : mat_(std::move(m)) {
        n_ = int(mat_.size());
        for (const auto& row : mat_)
            if (int(row.size()) != n_)
                throw std::invalid_argument("LinearChange: matrix not square");
        auto inv = invert(mat_);
        if (!inv) throw std::invalid_argument("LinearChange: singular matrix");
        inv_ = std::move(*inv);
    }

    static LinearChange identity(int n) {
        Matrix m(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i) m[i][i] = 1;
        return LinearChange(std::move(m));
    }

    int nvars() const { return n_; }
    const Matrix& matrix() const { return mat_; }
    const Matrix& inverse_matrix() const { return inv_; }

    LinearChange inverse() const {
        LinearChange out = *this;
        std::swap(out.mat_, out.inv_);
        return out;
    }

    // (T . p)(x) = p(T x): substitute each variable by its image row.
    Polynomial apply(const Polynomial& p) const {
        if (p.nvars() != n_)
            throw std::invalid_argument("LinearChange: ring mismatch");
        std::vector<Polynomial> images;
        images.reserve(n_);
        for (int i = 0; i < n_; ++i) {
            Polynomial li(n_);
            for (int j = 0; j < n_; ++j)
                li += Polynomial::variable(n_, j) * mat_[i][j];
            images.push_back(li);
        }
        Polynomial out(n_);
        for (const auto& [m, c] : p.terms()) {
            Polynomial t = Polynomial::constant(n_, c);
            for (int i = 0; i < n_; ++i)
                if (m.exp(i) > 0) t = t * images[i].pow(m.exp(i));
            out += t;
        }
        return out;
    }

    static std::optional<Matrix> invert(Matrix a) {
        int n = int(a.size());
        Matrix inv(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i) inv[i][i] = 1;
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (sgn(a[r][col]) != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return std::nullopt;
            std::swap(a[col], a[piv]);
            std::swap(inv[col], inv[piv]);
            Rational d = a[col][col];
            for (int j = 0; j < n; ++j) {
                a[col][j] /= d;
                inv[col][j] /= d;
            }
            for (int r = 0; r < n; ++r) {
                if (r == col || sgn(a[r][col]) == 0) continue;
                Rational f = a[r][col];
                for (int j = 0; j < n; ++j) {
                    a[r][j] -= f * a[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
        return inv;
    }

private:
    int n_ = 0;
    Matrix mat_, inv_;
};

// Default variable display names: x,y,z(,w) for small rings, x1..xn
// beyond that.
inline std::vector<std::string> default_variable_names(int nvars) {
    std::vector<std::string> names;
    if (nvars <= 4) {
        const char* small[] = {"x", "y", "z", "w"};
        for (int i = 0; i < nvars; ++i) names.push_back(small[i]);
    } else {
        for (int i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
    }
    return names;
}

inline std::string to_string(const Polynomial& p,
                             const std::vector<std::string>& names) {
    if (int(names.size()) != p.nvars())
        throw std::invalid_argument("to_string: name list has wrong length");
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational abs = sgn(c) < 0 ? Rational(-c) : c;
        if (first) {
            if (sgn(c) < 0) out << "-";
            first = false;
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        bool need_sep = false;
        if (abs != 1 || m.degree() == 0) {
            out << abs.get_str();
            need_sep = true;
        }
        for (int i = 0; i < p.nvars(); ++i) {
            if (m.exp(i) == 0) continue;
            if (need_sep) out << "*";
            out << names[i];
            if (m.exp(i) > 1) out << "^" << m.exp(i);
            need_sep = true;
        }
    }
    return out.str();
}

inline std::string to_string(const Polynomial& p) {
    return to_string(p, default_variable_names(p.nvars()));
}

}  // namespace quadrics
