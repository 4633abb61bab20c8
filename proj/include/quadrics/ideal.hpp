#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quadrics/linalg.hpp"
#include "quadrics/options.hpp"
#include "quadrics/polynomial.hpp"

namespace quadrics {

struct NotArtinian : std::runtime_error {
    NotArtinian(int cap)
        : std::runtime_error("quotient not Artinian up to degree cap " +
                             std::to_string(cap)),
          cap(cap) {}
    int cap;
};

class Ideal;
using IdealPtr = std::shared_ptr<const Ideal>;

// A homogeneous ideal, represented either by an explicit generator list
// or as a product (left ideal) * (explicit generators).  Graded pieces
// are computed on demand and cached:
//
//   plain:    I_t = R_1 * I_{t-1} + span(generators of degree t)
//   product:  (A*B)_t = sum over generators g of B of A_{t-deg g} * g
//
// When a computed piece at the generation degree k turns out to be all
// of R_k, the ideal is provably equal to m^k (it sits inside m^k by
// degree reasons and contains every degree-k monomial).  That fact is
// recorded and every later piece becomes closed form, which is what
// keeps high powers of submaximal ideals cheap.
class Ideal {
public:
    static IdealPtr make(int nvars, std::vector<Polynomial> gens) {
        for (const auto& g : gens) {
            if (g.nvars() != nvars)
                throw std::invalid_argument("Ideal: generator in wrong ring");
            int d = 0;
            if (!g.is_homogeneous(&d))
                throw std::invalid_argument("Ideal: inhomogeneous generator");
            if (g.is_zero() || d == 0)
                throw std::invalid_argument("Ideal: zero or unit generator");
        }
        if (gens.empty()) throw std::invalid_argument("Ideal: no generators");
        return IdealPtr(new Ideal(nvars, std::move(gens), nullptr, std::nullopt));
    }

    // m^k, with the power-of-maximal flag set from the start.
    static IdealPtr maximal_power(int nvars, int k) {
        if (k < 1) throw std::invalid_argument("maximal_power: k < 1");
        const auto& basis = MonomialBasis::get(nvars, k);
        std::vector<Polynomial> gens;
        gens.reserve(basis.size());
        for (int i = 0; i < basis.size(); ++i)
            gens.push_back(Polynomial::term(basis.at(i), 1));
        return IdealPtr(new Ideal(nvars, std::move(gens), nullptr, k));
    }

    static IdealPtr product(IdealPtr left, std::vector<Polynomial> right_gens) {
        if (!left) throw std::invalid_argument("product: null left factor");
        for (const auto& g : right_gens) {
            int d = 0;
            if (g.nvars() != left->nvars() || !g.is_homogeneous(&d) ||
                g.is_zero() || d == 0)
                throw std::invalid_argument("product: bad right generator");
        }
        if (right_gens.empty()) throw std::invalid_argument("product: no generators");
        int nv = left->nvars();
        return IdealPtr(new Ideal(nv, std::move(right_gens), std::move(left),
                                  std::nullopt));
    }

    int nvars() const { return nvars_; }
    bool is_plain() const { return left_ == nullptr; }

    // For plain ideals: the generator list as given.  For products this
    // is the right-hand factor's generator list.
    const std::vector<Polynomial>& generators() const { return gens_; }

    // Smallest degree in which the ideal can be nonzero.
    int min_degree() const { return min_degree_; }

    // All degrees are relative to an equigenerated question: the set of
    // generator degrees of a plain ideal.
    std::set<int> generator_degrees() const {
        std::set<int> out;
        for (const auto& g : gens_) out.insert(g.degree());
        return out;
    }

    bool equigenerated(int* degree_out = nullptr) const {
        auto degs = generator_degrees();
        if (degs.size() != 1) return false;
        if (degree_out) *degree_out = *degs.begin();
        return true;
    }

    // Once set, the ideal is known to equal m^k exactly.
    std::optional<int> maximal_power_flag() const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        return mpower_k_;
    }

    const Subspace& piece(int t) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        auto it = pieces_.find(t);
        if (it != pieces_.end()) return it->second;
        Subspace s = compute_piece(t);
        bool full = s.is_full();
        auto [pos, _] = pieces_.emplace(t, std::move(s));
        if (full && t <= min_degree_ && !mpower_k_) mpower_k_ = t;
        return pos->second;
    }

    int piece_dim(int t, const Options& opt) const {
        if (t < min_degree_) return 0;
        {
            std::lock_guard<std::recursive_mutex> lock(mu_);
            if (mpower_k_ && t >= *mpower_k_)
                return int(graded_dim(nvars_, t));
            auto it = pieces_.find(t);
            if (it != pieces_.end()) return it->second.dim();
        }
        if (opt.certified()) return piece(t).dim();
        return mod_piece(t, opt).rank();
    }

    // dim (m * I)_t = dim R_1 * I_{t-1}; used for minimal generator
    // counts without forming a new ideal object.
    int times_maximal_dim(int t, const Options& opt) const {
        if (t - 1 < min_degree_) return 0;
        if (opt.certified() || piece_cached(t - 1)) {
            const Subspace& prev = piece(t - 1);
            if (prev.is_full()) return int(graded_dim(nvars_, t));
            const auto& basis_lo = MonomialBasis::get(nvars_, t - 1);
            const auto& basis_hi = MonomialBasis::get(nvars_, t);
            RationalEchelon ech(basis_hi.size());
            insert_shifted_rows(ech, prev.rows(), basis_lo, basis_hi);
            return ech.rank();
        }
        std::lock_guard<std::recursive_mutex> lock(mu_);
        const ModEchelon& prev = mod_piece(t - 1, opt);
        const auto& basis_lo = MonomialBasis::get(nvars_, t - 1);
        const auto& basis_hi = MonomialBasis::get(nvars_, t);
        if (prev.is_full()) return int(graded_dim(nvars_, t));
        ModEchelon ech(prev.field(), basis_hi.size());
        insert_shifted_rows_mod(ech, prev.echelon_rows(), basis_lo, basis_hi);
        return ech.rank();
    }

    // Canonical reduced rows of the degree-t piece mod the screening
    // prime (screened comparisons only).
    std::vector<std::vector<std::uint32_t>> mod_rref(int t, const Options& opt) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        return mod_piece(t, opt).rref();
    }

    // Smallest t with I_t = R_t, i.e. the Artinian bound of R/I.  The
    // degree cap applies to input ideals (generated in degree >= 2);
    // for derived ideals such as powers it shifts along with the
    // generation degree, otherwise the cap itself would reject them.
    int artinian_bound(const Options& opt) const {
        {
            std::lock_guard<std::recursive_mutex> lock(mu_);
            auto& slot = opt.certified() ? bound_certified_ : bound_screened_;
            if (slot) return *slot;
        }
        int cap = opt.artinian_cap(nvars_) + std::max(0, min_degree_ - 2);
        for (int t = 1; t <= cap; ++t) {
            if (piece_dim(t, opt) == graded_dim(nvars_, t)) {
                std::lock_guard<std::recursive_mutex> lock(mu_);
                auto& slot = opt.certified() ? bound_certified_ : bound_screened_;
                slot = t;
                return t;
            }
        }
        throw NotArtinian(cap);
    }

    long long colength(const Options& opt) const {
        int bound = artinian_bound(opt);
        long long sum = 0;
        for (int t = 0; t < bound; ++t)
            sum += graded_dim(nvars_, t) - piece_dim(t, opt);
        return sum;
    }

private:
    Ideal(int nvars, std::vector<Polynomial> gens, IdealPtr left,
          std::optional<int> mpower)
        : nvars_(nvars), gens_(std::move(gens)), left_(std::move(left)),
          mpower_k_(mpower) {
        int gmin = gens_.front().degree();
        for (const auto& g : gens_) gmin = std::min(gmin, g.degree());
        min_degree_ = gmin + (left_ ? left_->min_degree() : 0);
    }

    bool piece_cached(int t) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        return pieces_.count(t) > 0 || (mpower_k_ && t >= *mpower_k_);
    }

    static void insert_shifted_row(RationalEchelon& ech,
                                   const std::vector<Rational>& row, int var,
                                   const MonomialBasis& lo,
                                   const MonomialBasis& hi) {
        std::vector<Rational> out(hi.size(), Rational(0));
        for (int j = 0; j < lo.size(); ++j)
            if (sgn(row[j]) != 0)
                out[hi.index_of(lo.at(j).times_variable(var))] = row[j];
        ech.insert(out);
    }

    void insert_shifted_rows(RationalEchelon& ech,
                             const std::vector<std::vector<Rational>>& rows,
                             const MonomialBasis& lo,
                             const MonomialBasis& hi) const {
        for (const auto& row : rows) {
            for (int i = 0; i < nvars_ && !ech.is_full(); ++i)
                insert_shifted_row(ech, row, i, lo, hi);
            if (ech.is_full()) break;
        }
    }

    void insert_shifted_rows_mod(ModEchelon& ech,
                                 const std::vector<std::vector<std::uint32_t>>& rows,
                                 const MonomialBasis& lo,
                                 const MonomialBasis& hi) const {
        for (const auto& row : rows) {
            for (int i = 0; i < nvars_ && !ech.is_full(); ++i) {
                std::vector<std::uint32_t> out(hi.size(), 0);
                for (int j = 0; j < lo.size(); ++j)
                    if (row[j]) out[hi.index_of(lo.at(j).times_variable(i))] = row[j];
                ech.insert(std::move(out));
            }
            if (ech.is_full()) break;
        }
    }

    Subspace compute_piece(int t) const {
        if (t < min_degree_ || t < 0) return Subspace::zero(nvars_, std::max(t, 0));
        if (mpower_k_ && t >= *mpower_k_) return Subspace::full(nvars_, t);
        const auto& basis = MonomialBasis::get(nvars_, t);
        RationalEchelon ech(basis.size());
        if (left_) {
            for (const auto& g : gens_) {
                int gd = g.degree();
                const Subspace& L = left_->piece(t - gd);
                if (L.dim() == 0) continue;
                const auto& basis_lo = MonomialBasis::get(nvars_, t - gd);
                if (L.is_full()) {
                    for (int j = 0; j < basis_lo.size() && !ech.is_full(); ++j)
                        ech.insert(Polynomial::term(basis_lo.at(j), 1) * g, basis);
                } else {
                    for (const auto& row : L.rows()) {
                        if (ech.is_full()) break;
                        ech.insert(Polynomial::from_row(basis_lo, row) * g, basis);
                    }
                }
                if (ech.is_full()) break;
            }
        } else {
            if (t > min_degree_) {
                const Subspace& prev = piece(t - 1);
                if (prev.is_full()) return Subspace::full(nvars_, t);
                insert_shifted_rows(ech, prev.rows(),
                                    MonomialBasis::get(nvars_, t - 1), basis);
            }
            for (const auto& g : gens_) {
                if (ech.is_full()) break;
                if (g.degree() == t) ech.insert(g, basis);
            }
        }
        return ech.to_subspace(nvars_, t);
    }

    const ModEchelon& mod_piece(int t, const Options& opt) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        std::uint32_t p = opt.screening_prime();
        auto cache_it = mod_.find(p);
        if (cache_it == mod_.end())
            cache_it = mod_.emplace(p, ModPieces{PrimeField(p), {}}).first;
        ModPieces& mp = cache_it->second;
        auto it = mp.ech.find(t);
        if (it != mp.ech.end()) return it->second;

        const auto& basis = MonomialBasis::get(nvars_, t);
        ModEchelon ech(mp.F, basis.size());
        if (t >= min_degree_ && !(mpower_k_ && t >= *mpower_k_)) {
            if (left_) {
                for (const auto& g : gens_) {
                    int gd = g.degree();
                    if (t - gd < left_->min_degree()) continue;
                    const auto& basis_lo = MonomialBasis::get(nvars_, t - gd);
                    auto mul_insert = [&](const std::vector<std::uint32_t>& lrow) {
                        std::vector<std::uint32_t> out(basis.size(), 0);
                        for (int j = 0; j < basis_lo.size(); ++j) {
                            if (!lrow[j]) continue;
                            for (const auto& [m, c] : g.terms()) {
                                int idx = basis.index_of(basis_lo.at(j).times(m));
                                out[idx] = mp.F.add(
                                    out[idx], mp.F.mul(lrow[j], mp.F.reduce(c)));
                            }
                        }
                        ech.insert(std::move(out));
                    };
                    auto lflag = left_->maximal_power_flag();
                    if (lflag && t - gd >= *lflag) {
                        // left piece is all of R_{t-gd}
                        for (int j = 0; j < basis_lo.size() && !ech.is_full(); ++j) {
                            std::vector<std::uint32_t> unit(basis_lo.size(), 0);
                            unit[j] = 1;
                            mul_insert(unit);
                        }
                    } else {
                        const ModEchelon& L = left_->mod_piece(t - gd, opt);
                        if (L.is_full()) {
                            for (int j = 0; j < basis_lo.size() && !ech.is_full();
                                 ++j) {
                                std::vector<std::uint32_t> unit(basis_lo.size(), 0);
                                unit[j] = 1;
                                mul_insert(unit);
                            }
                        } else {
                            for (const auto& lrow : L.echelon_rows()) {
                                if (ech.is_full()) break;
                                mul_insert(lrow);
                            }
                        }
                    }
                    if (ech.is_full()) break;
                }
            } else {
                if (t > min_degree_) {
                    const ModEchelon& prev = mod_piece(t - 1, opt);
                    insert_shifted_rows_mod(ech, prev.echelon_rows(),
                                            MonomialBasis::get(nvars_, t - 1),
                                            basis);
                }
                for (const auto& g : gens_) {
                    if (ech.is_full()) break;
                    if (g.degree() == t) ech.insert(mod_row(g, basis, mp.F));
                }
            }
        }
        bool full = ech.is_full();
        auto [pos, _] = mp.ech.emplace(t, std::move(ech));
        if (full && t <= min_degree_ && !mpower_k_) mpower_k_ = t;
        return pos->second;
    }

    int nvars_;
    std::vector<Polynomial> gens_;
    IdealPtr left_;
    int min_degree_;

    mutable std::recursive_mutex mu_;
    mutable std::optional<int> mpower_k_;
    mutable std::map<int, Subspace> pieces_;
    struct ModPieces {
        PrimeField F;
        std::map<int, ModEchelon> ech;
    };
    mutable std::map<std::uint32_t, ModPieces> mod_;
    mutable std::optional<int> bound_certified_, bound_screened_;
};

inline IdealPtr apply_change(const IdealPtr& I, const LinearChange& T) {
    if (!I->is_plain())
        throw std::logic_error("apply_change: only plain ideals supported");
    std::vector<Polynomial> gens;
    gens.reserve(I->generators().size());
    for (const auto& g : I->generators()) gens.push_back(T.apply(g));
    return Ideal::make(I->nvars(), std::move(gens));
}

// Powers of a fixed base ideal with shared caches.  The chain
// I^n = I * I^{n-1} switches to closed form as soon as some power is a
// proven power of the maximal ideal and m*I = m^{g+1} holds (g the
// common generator degree): then I * m^k = m^{k-1} (m I) = m^{k+g}.
class IdealPowers {
public:
    IdealPowers(IdealPtr base, const Options& opt)
        : base_(std::move(base)), opt_(opt) {
        cache_[1] = base_;
    }

    const IdealPtr& base() const { return base_; }

    const IdealPtr& get(int n) {
        if (n < 1) throw std::invalid_argument("IdealPowers: n < 1");
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        const IdealPtr& prev = get(n - 1);
        // nudge the flag: computing the generation-degree piece is
        // enough to detect a maximal-ideal power
        prev->piece_dim(prev->min_degree(), opt_);
        auto flag = prev->maximal_power_flag();
        IdealPtr next;
        int g = 0;
        if (flag && base_->equigenerated(&g) && maximal_absorbs()) {
            next = Ideal::maximal_power(base_->nvars(), *flag + g);
        } else {
            next = Ideal::product(prev, base_->generators());
        }
        return cache_.emplace(n, std::move(next)).first->second;
    }

    // m * I == m^{g+1}, verified by one small rank computation.
    bool maximal_absorbs() {
        if (absorbs_) return *absorbs_;
        int g = 0;
        if (!base_->equigenerated(&g)) {
            absorbs_ = false;
            return false;
        }
        long long want = graded_dim(base_->nvars(), g + 1);
        absorbs_ = base_->times_maximal_dim(g + 1, opt_) == want;
        return *absorbs_;
    }

private:
    IdealPtr base_;
    Options opt_;
    std::map<int, IdealPtr> cache_;
    std::optional<bool> absorbs_;
};

// Equality of ideals by comparing graded pieces through the joint
// Artinian bound.  In screened mode dimension checks (and canonical
// bases mod p) replace rational comparisons and the result says so.
struct IdealEquality {
    enum class Status { equal, not_equal, inconclusive };
    Status status = Status::inconclusive;
    bool screened = false;
    int degree = -1;                     // first degree where the pieces differ
    std::optional<Polynomial> witness;   // element of one ideal outside the other
    std::string note;

    explicit operator bool() const { return status == Status::equal; }
};

namespace detail {
inline std::optional<Polynomial> element_outside(const Subspace& a,
                                                 const Subspace& b) {
    const auto& basis = MonomialBasis::get(a.nvars(), a.degree());
    if (a.is_full()) {
        for (int i = 0; i < basis.size(); ++i) {
            Polynomial unit = Polynomial::term(basis.at(i), 1);
            if (!b.contains(unit)) return unit;
        }
        return std::nullopt;
    }
    for (const auto& row : a.rows()) {
        if (!b.contains(row)) return Polynomial::from_row(basis, row);
    }
    return std::nullopt;
}
}  // namespace detail

inline IdealEquality ideal_equals(const IdealPtr& A, const IdealPtr& B,
                                  const Options& opt) {
    IdealEquality out;
    out.screened = !opt.certified();
    if (A->nvars() != B->nvars())
        throw std::invalid_argument("ideal_equals: different rings");
    auto fa = A->maximal_power_flag(), fb = B->maximal_power_flag();
    if (fa && fb) {
        out.status = (*fa == *fb) ? IdealEquality::Status::equal
                                  : IdealEquality::Status::not_equal;
        out.note = "both sides are proven powers of the maximal ideal";
        out.screened = false;
        if (out.status == IdealEquality::Status::not_equal)
            out.degree = std::min(*fa, *fb);
        return out;
    }
    int ba, bb;
    try {
        ba = A->artinian_bound(opt);
        bb = B->artinian_bound(opt);
    } catch (const NotArtinian& e) {
        out.status = IdealEquality::Status::inconclusive;
        out.note = e.what();
        return out;
    }
    int lo = std::min(A->min_degree(), B->min_degree());
    int hi = std::max(ba, bb);
    for (int t = lo; t < hi; ++t) {
        if (opt.certified()) {
            const Subspace& a = A->piece(t);
            const Subspace& b = B->piece(t);
            if (a == b) continue;
            out.status = IdealEquality::Status::not_equal;
            out.degree = t;
            out.witness = detail::element_outside(a, b);
            if (!out.witness) out.witness = detail::element_outside(b, a);
            return out;
        }
        int da = A->piece_dim(t, opt), db = B->piece_dim(t, opt);
        if (da != db || A->mod_rref(t, opt) != B->mod_rref(t, opt)) {
            out.status = IdealEquality::Status::not_equal;
            out.degree = t;
            return out;
        }
    }
    out.status = IdealEquality::Status::equal;
    return out;
}

// Hilbert function of the Artinian quotient R/I, recorded through the
// bound (the final zero entry included).
struct HilbertFunction {
    std::vector<long long> values;  // h(0) .. h(bound); h(bound) == 0
    int bound = 0;
    long long colength = 0;
    bool screened = false;
};

inline HilbertFunction hilbert_function(const IdealPtr& I, const Options& opt) {
    HilbertFunction out;
    out.screened = !opt.certified();
    out.bound = I->artinian_bound(opt);
    for (int t = 0; t <= out.bound; ++t) {
        long long h = graded_dim(I->nvars(), t) - I->piece_dim(t, opt);
        out.values.push_back(h);
        out.colength += h;
    }
    return out;
}

// Degrees and counts of a minimal homogeneous generating set:
// nu_t = dim I_t - dim (m I)_t.
struct GeneratorProfile {
    std::map<int, int> by_degree;
    int total = 0;
    bool screened = false;
};

inline GeneratorProfile minimal_generators(const IdealPtr& I, const Options& opt) {
    GeneratorProfile out;
    out.screened = !opt.certified();
    int bound = I->artinian_bound(opt);
    for (int t = 1; t <= bound; ++t) {
        int nu = I->piece_dim(t, opt) - I->times_maximal_dim(t, opt);
        if (nu < 0)
            throw std::logic_error("minimal_generators: negative count");
        if (nu > 0) {
            out.by_degree[t] = nu;
            out.total += nu;
        }
    }
    return out;
}

// Socle of R/I by degree: S_t = { v in R_t : v * m inside I }, returned
// as the canonical basis of a complement of I_t inside S_t.  All
// computations here are rational; the degrees involved are small.
struct SocleProfile {
    std::map<int, Subspace> complements;  // only degrees with nonzero socle
    int type = 0;
    int linear_dim = 0;
};

inline SocleProfile socle_profile(const IdealPtr& I, const Options& opt) {
    SocleProfile out;
    int nv = I->nvars();
    int bound = I->artinian_bound(opt);
    for (int t = 0; t < bound; ++t) {
        const auto& basis = MonomialBasis::get(nv, t);
        const auto& basis_hi = MonomialBasis::get(nv, t + 1);
        const Subspace& next = I->piece(t + 1);
        int n_head = nv * basis_hi.size();
        RationalEchelon ech(n_head + basis.size());
        for (int j = 0; j < basis.size(); ++j) {
            std::vector<Rational> row(n_head + basis.size(), Rational(0));
            for (int i = 0; i < nv; ++i) {
                std::vector<Rational> img(basis_hi.size(), Rational(0));
                img[basis_hi.index_of(basis.at(j).times_variable(i))] = 1;
                auto residual = next.reduce(std::move(img));
                for (int c = 0; c < basis_hi.size(); ++c)
                    row[i * basis_hi.size() + c] = residual[c];
            }
            row[n_head + j] = 1;
            ech.insert(row);
        }
        std::vector<int> piv;
        auto rows = ech.rref(&piv);
        const Subspace& cur = I->piece(t);
        RationalEchelon comp(basis.size());
        for (int i = 0; i < int(rows.size()); ++i) {
            if (piv[i] < n_head) continue;
            std::vector<Rational> v(rows[i].begin() + n_head, rows[i].end());
            comp.insert(cur.reduce(std::move(v)));
        }
        Subspace c = comp.to_subspace(nv, t);
        if (c.dim() > 0) {
            out.type += c.dim();
            if (t == 1) out.linear_dim = c.dim();
            out.complements.emplace(t, std::move(c));
        }
    }
    return out;
}

}  // namespace quadrics
