#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "quadrics/monomial.hpp"
#include "quadrics/polynomial.hpp"
#include "quadrics/rational.hpp"

namespace quadrics {

namespace detail {

// Divide an integer row by the gcd of its entries and make the leading
// nonzero entry positive.  Returns false when the row is zero.
inline bool strip_content(std::vector<Integer>& v) {
    Integer g = 0;
    int lead = -1;
    for (int i = 0; i < int(v.size()); ++i) {
        if (sgn(v[i]) == 0) continue;
        if (lead < 0) lead = i;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].get_mpz_t());
        if (g == 1 && sgn(v[lead]) > 0) break;
    }
    if (lead < 0) return false;
    if (sgn(v[lead]) < 0) g = -g;
    if (g != 1)
        for (auto& x : v)
            if (sgn(x) != 0)
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return true;
}

inline int first_nonzero(const std::vector<Integer>& v, int from = 0) {
    for (int i = from; i < int(v.size()); ++i)
        if (sgn(v[i]) != 0) return i;
    return -1;
}

// v <- (p/g) v - (v[c]/g) row, where p = row[c] and g = gcd(p, v[c]).
// Afterwards v[c] == 0.  row[j] == 0 for j < c (c is row's leading column),
// but v may have nonzero entries there; they are scaled by p/g.
inline void cross_eliminate(std::vector<Integer>& v,
                            const std::vector<Integer>& row, int c) {
    Integer p = row[c], vc = v[c], g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), vc.get_mpz_t());
    Integer pf = p / g, vf = vc / g;
    if (pf != 1)
        for (int j = 0; j < c; ++j) v[j] *= pf;
    for (int j = c; j < int(v.size()); ++j) v[j] = pf * v[j] - vf * row[j];
}

inline std::vector<Integer> clear_denominators(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& q : v)
        if (sgn(q) != 0)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> out(v.size());
    for (int i = 0; i < int(v.size()); ++i) {
        if (sgn(v[i]) == 0) continue;
        out[i] = Integer(v[i].get_num()) * (l / Integer(v[i].get_den()));
    }
    return out;
}

}  // namespace detail

// A subspace of the degree-t graded piece of K[x_1..x_n], stored as the
// (unique) reduced row echelon basis.  The full piece is represented by
// a flag so that large identity matrices never materialize.
class Subspace {
public:
    Subspace(int nvars, int degree)
        : nvars_(nvars), degree_(degree),
          ncols_(int(graded_dim(nvars, degree))) {}

    static Subspace zero(int nvars, int degree) { return Subspace(nvars, degree); }

    static Subspace full(int nvars, int degree) {
        Subspace s(nvars, degree);
        s.full_ = true;
        return s;
    }

    // rows must already be in reduced row echelon form.
    static Subspace from_rref(int nvars, int degree,
                              std::vector<std::vector<Rational>> rows,
                              std::vector<int> pivots) {
        Subspace s(nvars, degree);
        if (int(rows.size()) == s.ncols_) return full(nvars, degree);
        s.rows_ = std::move(rows);
        s.pivots_ = std::move(pivots);
        return s;
    }

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    int ambient_dim() const { return ncols_; }
    bool is_full() const { return full_; }
    int dim() const { return full_ ? ncols_ : int(rows_.size()); }

    const std::vector<std::vector<Rational>>& rows() const {
        if (full_)
            throw std::logic_error("Subspace::rows on full piece; check is_full");
        return rows_;
    }
    const std::vector<int>& pivots() const {
        if (full_) throw std::logic_error("Subspace::pivots on full piece");
        return pivots_;
    }

    // Residual of v after eliminating all pivot coordinates; zero iff v
    // lies in the subspace.  Linear in v with kernel exactly this space.
    std::vector<Rational> reduce(std::vector<Rational> v) const {
        if (int(v.size()) != ncols_)
            throw std::invalid_argument("Subspace::reduce: length mismatch");
        if (full_) return std::vector<Rational>(ncols_, Rational(0));
        for (int r = 0; r < int(rows_.size()); ++r) {
            const Rational& c = v[pivots_[r]];
            if (sgn(c) == 0) continue;
            Rational f = c;  // pivot entries are 1
            for (int j = pivots_[r]; j < ncols_; ++j)
                if (sgn(rows_[r][j]) != 0) v[j] -= f * rows_[r][j];
        }
        return v;
    }

    bool contains(const std::vector<Rational>& v) const {
        if (full_) return int(v.size()) == ncols_;
        auto r = reduce(v);
        return std::all_of(r.begin(), r.end(),
                           [](const Rational& q) { return sgn(q) == 0; });
    }

    bool contains(const Polynomial& p) const {
        return contains(p.coefficient_row(MonomialBasis::get(nvars_, degree_)));
    }

    // When false and witness != nullptr, *witness is a vector of the
    // other space outside this one.
    bool contains_subspace(const Subspace& other,
                           std::vector<Rational>* witness = nullptr) const {
        if (other.ncols_ != ncols_)
            throw std::invalid_argument("contains_subspace: ambient mismatch");
        if (full_) return true;
        if (other.full_) {
            for (int i = 0; i < ncols_; ++i) {
                std::vector<Rational> unit(ncols_, Rational(0));
                unit[i] = 1;
                if (!contains(unit)) {
                    if (witness) *witness = std::move(unit);
                    return false;
                }
            }
            return true;
        }
        for (const auto& row : other.rows_) {
            if (!contains(row)) {
                if (witness) *witness = row;
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        if (a.nvars_ != b.nvars_ || a.degree_ != b.degree_) return false;
        if (a.full_ != b.full_) return false;
        return a.full_ || a.rows_ == b.rows_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    std::vector<Polynomial> basis_polynomials() const {
        const auto& basis = MonomialBasis::get(nvars_, degree_);
        std::vector<Polynomial> out;
        if (full_) {
            out.reserve(ncols_);
            for (int i = 0; i < ncols_; ++i)
                out.push_back(Polynomial::term(basis.at(i), 1));
            return out;
        }
        out.reserve(rows_.size());
        for (const auto& row : rows_) out.push_back(Polynomial::from_row(basis, row));
        return out;
    }

private:
    int nvars_, degree_, ncols_;
    bool full_ = false;
    std::vector<std::vector<Rational>> rows_;
    std::vector<int> pivots_;
};

// Incremental fraction-free row echelon builder.  Rows are kept as
// content-free integer vectors; insertion uses cross-multiplication
// only, so no rational arithmetic happens until the final
// normalization.  Insertion order never changes the resulting reduced
// echelon form, which is what makes Subspace comparisons canonical.
class RationalEchelon {
public:
    explicit RationalEchelon(int ncols)
        : ncols_(ncols), pivot_row_(ncols, -1) {}

    int ncols() const { return ncols_; }
    int rank() const { return int(rows_.size()); }
    bool is_full() const { return rank() == ncols_; }

    bool insert(std::vector<Integer> v) {
        if (int(v.size()) != ncols_)
            throw std::invalid_argument("RationalEchelon: row length mismatch");
        if (is_full()) return false;
        if (!detail::strip_content(v)) return false;
        for (;;) {
            int c = detail::first_nonzero(v);
            if (c < 0) return false;
            int r = pivot_row_[c];
            if (r < 0) {
                pivot_row_[c] = int(rows_.size());
                pivcol_.push_back(c);
                rows_.push_back(std::move(v));
                return true;
            }
            detail::cross_eliminate(v, rows_[r], c);
            detail::strip_content(v);
        }
    }

    bool insert(const std::vector<Rational>& v) {
        return insert(detail::clear_denominators(v));
    }

    bool insert(const Polynomial& p, const MonomialBasis& basis) {
        return insert(p.coefficient_row(basis));
    }

    bool would_vanish(std::vector<Integer> v) const {
        for (;;) {
            int c = detail::first_nonzero(v);
            if (c < 0) return true;
            int r = pivot_row_[c];
            if (r < 0) return false;
            detail::cross_eliminate(v, rows_[r], c);
            detail::strip_content(v);
        }
    }

    std::vector<int> pivots() const {
        std::vector<int> p = pivcol_;
        std::sort(p.begin(), p.end());
        return p;
    }

    // Reduced echelon normalization: back-eliminate above each pivot
    // (still fraction-free), then scale rows rationally to pivot 1.
    std::vector<std::vector<Rational>> rref(std::vector<int>* pivots_out = nullptr) const {
        std::vector<int> order(rows_.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return pivcol_[a] < pivcol_[b]; });
        std::vector<std::vector<Integer>> work;
        std::vector<int> piv;
        work.reserve(rows_.size());
        for (int idx : order) {
            work.push_back(rows_[idx]);
            piv.push_back(pivcol_[idx]);
        }
        for (int i = int(work.size()) - 1; i >= 0; --i) {
            for (int k = i + 1; k < int(work.size()); ++k) {
                int c = piv[k];
                if (sgn(work[i][c]) == 0) continue;
                detail::cross_eliminate(work[i], work[k], c);
            }
            detail::strip_content(work[i]);
        }
        std::vector<std::vector<Rational>> out(work.size());
        for (int i = 0; i < int(work.size()); ++i) {
            out[i].resize(ncols_);
            const Integer& p = work[i][piv[i]];
            for (int j = 0; j < ncols_; ++j)
                if (sgn(work[i][j]) != 0) out[i][j] = rational(work[i][j], p);
        }
        if (pivots_out) *pivots_out = piv;
        return out;
    }

    Subspace to_subspace(int nvars, int degree) const {
        if (is_full()) return Subspace::full(nvars, degree);
        std::vector<int> piv;
        auto rows = rref(&piv);
        return Subspace::from_rref(nvars, degree, std::move(rows), std::move(piv));
    }

private:
    int ncols_;
    std::vector<int> pivot_row_;   // column -> row index or -1
    std::vector<int> pivcol_;      // row index -> pivot column
    std::vector<std::vector<Integer>> rows_;
};

inline Subspace span(const std::vector<Polynomial>& polys, int nvars, int degree) {
    const auto& basis = MonomialBasis::get(nvars, degree);
    RationalEchelon ech(basis.size());
    for (const auto& p : polys) {
        if (p.is_zero()) continue;
        int d = 0;
        if (!p.is_homogeneous(&d) || d != degree)
            throw std::invalid_argument("span: inhomogeneous or wrong-degree element");
        ech.insert(p, basis);
        if (ech.is_full()) break;
    }
    return ech.to_subspace(nvars, degree);
}

// Kernel of the graded map K^n -> R_t sending the i-th source basis
// vector to images[i].  Returned as the reduced echelon basis of the
// relation space, canonical for the given source ordering.  Implemented
// by echeloning [image | unit] rows: rows whose image part vanished
// carry exactly the relations in their unit part.
inline std::vector<std::vector<Rational>> kernel(
    const std::vector<Polynomial>& images, int nvars, int target_degree) {
    const auto& basis = MonomialBasis::get(nvars, target_degree);
    int n_src = int(images.size());
    int n_head = basis.size();
    RationalEchelon ech(n_head + n_src);
    for (int i = 0; i < n_src; ++i) {
        int d = 0;
        if (!images[i].is_zero() &&
            (!images[i].is_homogeneous(&d) || d != target_degree))
            throw std::invalid_argument("kernel: image of wrong degree");
        std::vector<Rational> row(n_head + n_src, Rational(0));
        auto head = images[i].coefficient_row(basis);
        std::move(head.begin(), head.end(), row.begin());
        row[n_head + i] = 1;
        ech.insert(row);
    }
    std::vector<int> piv;
    auto rows = ech.rref(&piv);
    std::vector<std::vector<Rational>> out;
    for (int i = 0; i < int(rows.size()); ++i) {
        if (piv[i] < n_head) continue;
        out.emplace_back(rows[i].begin() + n_head, rows[i].end());
    }
    return out;
}

struct NotContained : std::runtime_error {
    NotContained(std::string what, Polynomial w)
        : std::runtime_error(std::move(what)), witness(std::move(w)) {}
    Polynomial witness;
};

// dim(A/B) for nested subspaces of one graded piece; throws
// NotContained with an explicit witness when B is not inside A.
inline int quotient_dim(const Subspace& outer, const Subspace& inner) {
    std::vector<Rational> w;
    if (!outer.contains_subspace(inner, &w)) {
        const auto& basis = MonomialBasis::get(outer.nvars(), outer.degree());
        throw NotContained("quotient_dim: second space not inside first",
                           Polynomial::from_row(basis, w));
    }
    return outer.dim() - inner.dim();
}

// ---------------------------------------------------------------------------
// Modular layer

inline std::vector<std::uint32_t> mod_row(const std::vector<Rational>& v,
                                          const PrimeField& F) {
    std::vector<std::uint32_t> out(v.size(), 0);
    for (int i = 0; i < int(v.size()); ++i)
        if (sgn(v[i]) != 0) out[i] = F.reduce(v[i]);
    return out;
}

inline std::vector<std::uint32_t> mod_row(const Polynomial& p,
                                          const MonomialBasis& basis,
                                          const PrimeField& F) {
    std::vector<std::uint32_t> out(basis.size(), 0);
    for (const auto& [m, c] : p.terms()) out[basis.index_of(m)] = F.reduce(c);
    return out;
}

// Dense row echelon over F_p.  Rows are normalized to leading 1 on
// insertion; rank is exact over F_p and a lower bound for the rational
// rank of the same rows.
class ModEchelon {
public:
    ModEchelon(const PrimeField& F, int ncols)
        : F_(F), ncols_(ncols), pivot_row_(ncols, -1) {}

    const PrimeField& field() const { return F_; }
    int ncols() const { return ncols_; }
    int rank() const { return int(rows_.size()); }
    bool is_full() const { return rank() == ncols_; }

    bool insert(std::vector<std::uint32_t> v) {
        if (int(v.size()) != ncols_)
            throw std::invalid_argument("ModEchelon: row length mismatch");
        if (is_full()) return false;
        for (int c = 0; c < ncols_; ++c) {
            if (v[c] == 0) continue;
            int r = pivot_row_[c];
            if (r < 0) {
                std::uint32_t inv = F_.inv(v[c]);
                for (int j = c; j < ncols_; ++j)
                    if (v[j]) v[j] = F_.mul(v[j], inv);
                pivot_row_[c] = int(rows_.size());
                pivcol_.push_back(c);
                rows_.push_back(std::move(v));
                return true;
            }
            std::uint32_t f = v[c];
            const auto& row = rows_[r];
            for (int j = c; j < ncols_; ++j)
                if (row[j]) v[j] = F_.sub(v[j], F_.mul(f, row[j]));
        }
        return false;
    }

    const std::vector<std::vector<std::uint32_t>>& echelon_rows() const {
        return rows_;
    }

    // Canonical reduced form mod p, for screened space comparisons.
    std::vector<std::vector<std::uint32_t>> rref() const {
        std::vector<int> order(rows_.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return pivcol_[a] < pivcol_[b]; });
        std::vector<std::vector<std::uint32_t>> work;
        std::vector<int> piv;
        for (int idx : order) {
            work.push_back(rows_[idx]);
            piv.push_back(pivcol_[idx]);
        }
        for (int i = int(work.size()) - 1; i >= 0; --i)
            for (int k = i + 1; k < int(work.size()); ++k) {
                int c = piv[k];
                if (work[i][c] == 0) continue;
                std::uint32_t f = work[i][c];
                for (int j = c; j < ncols_; ++j)
                    if (work[k][j])
                        work[i][j] = F_.sub(work[i][j], F_.mul(f, work[k][j]));
            }
        return work;
    }

private:
    PrimeField F_;
    int ncols_;
    std::vector<int> pivot_row_;
    std::vector<int> pivcol_;
    std::vector<std::vector<std::uint32_t>> rows_;
};

inline int rank_mod(const std::vector<Polynomial>& polys, int nvars, int degree,
                    const PrimeField& F) {
    const auto& basis = MonomialBasis::get(nvars, degree);
    ModEchelon ech(F, basis.size());
    for (const auto& p : polys) {
        if (p.is_zero()) continue;
        ech.insert(mod_row(p, basis, F));
        if (ech.is_full()) break;
    }
    return ech.rank();
}

// Spanning rows (not canonical) of the relation space mod p.
inline std::vector<std::vector<std::uint32_t>> kernel_mod(
    const std::vector<std::vector<std::uint32_t>>& image_rows, int n_head,
    const PrimeField& F) {
    int n_src = int(image_rows.size());
    ModEchelon ech(F, n_head + n_src);
    for (int i = 0; i < n_src; ++i) {
        if (int(image_rows[i].size()) != n_head)
            throw std::invalid_argument("kernel_mod: row length mismatch");
        std::vector<std::uint32_t> row(n_head + n_src, 0);
        std::copy(image_rows[i].begin(), image_rows[i].end(), row.begin());
        row[n_head + i] = 1;
        ech.insert(std::move(row));
    }
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& row : ech.echelon_rows()) {
        bool head_zero = true;
        for (int j = 0; j < n_head && head_zero; ++j) head_zero = row[j] == 0;
        if (head_zero) out.emplace_back(row.begin() + n_head, row.end());
    }
    return out;
}

}  // namespace quadrics
