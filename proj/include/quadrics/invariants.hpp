#pragma once

#include <cstdlib>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadrics/ideal.hpp"

namespace quadrics {

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalContradiction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -------------------------------------------------------------------
// Cohen-Macaulay type via the socle

inline int cm_type(const IdealPtr& I, const Options& opt) {
    return socle_profile(I, opt).type;
}

inline bool is_gorenstein(const IdealPtr& I, const Options& opt) {
    return cm_type(I, opt) == 1;
}

// Canonical basis of { linear h : h * m inside I } modulo I_1.
inline Subspace linear_socle(const IdealPtr& I, const Options& opt) {
    auto soc = socle_profile(I, opt);
    auto it = soc.complements.find(1);
    if (it != soc.complements.end()) return it->second;
    return Subspace::zero(I->nvars(), 1);
}

// -------------------------------------------------------------------
// Syzygetic defect profile
//
// For I minimally generated by nu forms of one degree g, compare the
// symmetric square of the generator space against I^2 degree by degree:
//
//   delta_t = dim Sym2(F)_t - dim (Z1 F)_t - dim (I^2)_t
//
// where (Z1)_s is the space of linear syzygies in internal degree s and
// Z1 F its image in Sym2(F).  All delta_t vanishing means I is
// syzygetic.  The profile is computed from degree 2g through the
// Artinian bound of I^2 plus a window of max(nvars, 3) degrees, hard
// capped at 4g + 2*nvars; hitting the cap downgrades the verdict.

enum class SyzygeticStatus { syzygetic, not_syzygetic, unverified };

inline const char* to_string(SyzygeticStatus s) {
    switch (s) {
        case SyzygeticStatus::syzygetic: return "syzygetic";
        case SyzygeticStatus::not_syzygetic: return "not syzygetic";
        default: return "probably syzygetic, unverified";
    }
}

struct DeltaProfile {
    int generator_degree = 0;
    int nu = 0;
    std::vector<std::pair<int, long long>> delta;  // (degree, delta_t)
    SyzygeticStatus status = SyzygeticStatus::unverified;
    int last_degree = 0;  // last degree actually computed
    bool screened = false;
};

namespace detail {
inline int pair_index(int i, int j, int nu) {
    // index of the unordered pair (i, j), i <= j, in lexicographic order
    return i * nu - i * (i - 1) / 2 + (j - i);
}

// Replace a dependent or redundant equigenerated generating set by a basis
// of the generation-degree piece; invariants of the ideal are unchanged.
inline IdealPtr minimalized(const IdealPtr& I) {
    int g = 0;
    if (!I->equigenerated(&g)) return I;
    const auto& piece = I->piece(g);
    if (piece.dim() == int(I->generators().size())) return I;
    return Ideal::make(I->nvars(), piece.basis_polynomials());
}
}  // namespace detail

inline DeltaProfile delta_profile(IdealPowers& pows, const Options& opt) {
    const IdealPtr& I = pows.base();
    int nv = I->nvars();
    int g = 0;
    if (!I->equigenerated(&g))
        throw PreconditionError("delta_profile: generators not of a single degree");
    const auto& gens = I->generators();
    int nu = int(gens.size());
    if (I->piece(g).dim() != nu)
        throw PreconditionError("delta_profile: listed generators are dependent");
    auto prof = minimal_generators(I, opt);
    if (prof.total != nu)
        throw PreconditionError("delta_profile: generating set not minimal");

    DeltaProfile out;
    out.generator_degree = g;
    out.nu = nu;
    out.screened = !opt.certified();

    const IdealPtr& I2 = pows.get(2);
    int bound2 = I2->artinian_bound(opt);
    int window = std::max(nv, 3);
    int t_end = bound2 + window;
    int cap = 4 * g + 2 * nv;
    int t_stop = std::min(t_end, cap);
    int npairs = nu * (nu + 1) / 2;

    std::optional<PrimeField> F;
    if (!opt.certified()) F.emplace(opt.screening_prime());

    for (int t = 2 * g; t <= t_stop; ++t) {
        long long n_low = graded_dim(nv, t - 2 * g);
        long long sym2 = npairs * n_low;
        const auto& basis_low = MonomialBasis::get(nv, t - 2 * g);
        long long z1f = 0;
        if (t > 2 * g) {  // in degree 2g the only syzygies are trivial
            // source basis (i, m) -> m * f_i, target degree t - g
            long long sym_cols = npairs * n_low;
            if (opt.certified()) {
                std::vector<Polynomial> images;
                images.reserve(nu * basis_low.size());
                for (int i = 0; i < nu; ++i)
                    for (int j = 0; j < basis_low.size(); ++j)
                        images.push_back(gens[i] *
                                         Polynomial::term(basis_low.at(j), 1));
                auto z1 = kernel(images, nv, t - g);
                RationalEchelon ech{int(sym_cols)};
                for (const auto& z : z1) {
                    for (int j = 0; j < nu && !ech.is_full(); ++j) {
                        std::vector<Rational> row(sym_cols, Rational(0));
                        for (int i = 0; i < nu; ++i)
                            for (int m = 0; m < basis_low.size(); ++m) {
                                const Rational& c = z[i * basis_low.size() + m];
                                if (sgn(c) == 0) continue;
                                int lo = std::min(i, j), hi = std::max(i, j);
                                row[detail::pair_index(lo, hi, nu) * n_low + m] += c;
                            }
                        ech.insert(row);
                    }
                    if (ech.is_full()) break;
                }
                z1f = ech.rank();
            } else {
                const auto& basis_tgt = MonomialBasis::get(nv, t - g);
                std::vector<std::vector<std::uint32_t>> images;
                images.reserve(nu * basis_low.size());
                for (int i = 0; i < nu; ++i)
                    for (int j = 0; j < basis_low.size(); ++j)
                        images.push_back(mod_row(
                            gens[i] * Polynomial::term(basis_low.at(j), 1),
                            basis_tgt, *F));
                auto z1 = kernel_mod(images, basis_tgt.size(), *F);
                ModEchelon ech(*F, int(sym_cols));
                for (const auto& z : z1) {
                    for (int j = 0; j < nu && !ech.is_full(); ++j) {
                        std::vector<std::uint32_t> row(sym_cols, 0);
                        for (int i = 0; i < nu; ++i)
                            for (int m = 0; m < basis_low.size(); ++m) {
                                std::uint32_t c = z[i * basis_low.size() + m];
                                if (!c) continue;
                                int lo = std::min(i, j), hi = std::max(i, j);
                                int idx =
                                    detail::pair_index(lo, hi, nu) * int(n_low) + m;
                                row[idx] = F->add(row[idx], c);
                            }
                        ech.insert(std::move(row));
                    }
                    if (ech.is_full()) break;
                }
                z1f = ech.rank();
            }
        }
        long long i2 = I2->piece_dim(t, opt);
        long long d = sym2 - z1f - i2;
        if (d < 0)
            throw InternalContradiction(
                "delta_profile: negative defect in degree " + std::to_string(t));
        out.delta.emplace_back(t, d);
        out.last_degree = t;
        if (d > 0) {
            out.status = SyzygeticStatus::not_syzygetic;
            return out;
        }
    }
    out.status = (t_end <= cap) ? SyzygeticStatus::syzygetic
                                : SyzygeticStatus::unverified;
    return out;
}

inline DeltaProfile delta_profile(const IdealPtr& I, const Options& opt) {
    IdealPowers pows(I, opt);
    return delta_profile(pows, opt);
}

inline SyzygeticStatus is_syzygetic(const IdealPtr& I, const Options& opt) {
    return delta_profile(I, opt).status;
}

// -------------------------------------------------------------------
// Hilbert-Samuel coefficients by exact interpolation
//
// lambda(R/I^n) eventually agrees with
//
//   P(n) = sum_{i=0..d} (-1)^i e_i binom(n + d - 1 - i, d - i)
//
// The coefficients are recovered by solving the (d+1)-point
// interpolation exactly on a sliding window; stabilization means two
// consecutive windows produce identical coefficient vectors.

struct HilbertSamuelData {
    std::vector<long long> lengths;    // lengths[n-1] = lambda(R/I^n)
    std::vector<Integer> coefficients; // e_0 .. e_d
    long long e0 = 0, e1 = 0;
    int stabilized_at = 0;  // first n of the earlier of the two agreeing windows
    bool screened = false;
};

struct NoStabilization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
// Exact solve of the interpolation system on window start s.
inline std::vector<Rational> hs_fit(const std::vector<long long>& lengths, int s,
                                    int d) {
    LinearChange::Matrix m(d + 1, std::vector<Rational>(d + 1));
    for (int r = 0; r <= d; ++r) {
        long long n = s + r;
        for (int i = 0; i <= d; ++i) {
            long b = long(binomial(n + d - 1 - i, d - i));
            m[r][i] = Rational((i % 2 == 0) ? b : -b);
        }
    }
    auto inv = LinearChange::invert(m);
    if (!inv) throw InternalContradiction("hs_fit: singular window system");
    std::vector<Rational> e(d + 1, Rational(0));
    for (int i = 0; i <= d; ++i)
        for (int r = 0; r <= d; ++r)
            e[i] += (*inv)[i][r] * Rational(long(lengths[s + r - 1]));
    return e;
}
}  // namespace detail

inline HilbertSamuelData hilbert_samuel(IdealPowers& pows, const Options& opt) {
    const IdealPtr& I = pows.base();
    int d = I->nvars();
    int horizon = opt.hilbert_samuel_horizon(d);
    HilbertSamuelData out;
    out.screened = !opt.certified();
    std::optional<std::vector<Rational>> prev_fit;
    int prev_start = 0;
    for (int n = 1; n <= horizon; ++n) {
        out.lengths.push_back(pows.get(n)->colength(opt));
        int s = n - d;  // window s .. s+d ends at n
        if (s < 1) continue;
        auto fit = detail::hs_fit(out.lengths, s, d);
        if (prev_fit && *prev_fit == fit) {
            out.stabilized_at = prev_start;
            out.coefficients.reserve(d + 1);
            for (const auto& q : fit) {
                if (!is_integer(q))
                    throw InternalContradiction(
                        "hilbert_samuel: non-integral coefficient");
                out.coefficients.push_back(Integer(q.get_num()));
            }
            out.e0 = out.coefficients[0].get_si();
            out.e1 = d >= 1 ? out.coefficients[1].get_si() : 0;
            if (out.e0 <= 0)
                throw InternalContradiction("hilbert_samuel: e0 not positive");
            return out;
        }
        prev_fit = std::move(fit);
        prev_start = s;
    }
    std::ostringstream msg;
    msg << "hilbert_samuel: no stabilization through n = " << horizon
        << "; lengths:";
    for (auto l : out.lengths) msg << " " << l;
    throw NoStabilization(msg.str());
}

inline HilbertSamuelData hilbert_samuel(const IdealPtr& I, const Options& opt) {
    IdealPowers pows(I, opt);
    return hilbert_samuel(pows, opt);
}

// s_0 = e_1 - e_0 + lambda(R/I)
struct SallyData {
    long long e0 = 0, e1 = 0, colength = 0, s0 = 0;
};

inline SallyData sally_multiplicity(IdealPowers& pows, const Options& opt,
                                    const HilbertSamuelData* hs = nullptr) {
    SallyData out;
    HilbertSamuelData local;
    if (!hs) {
        local = hilbert_samuel(pows, opt);
        hs = &local;
    }
    out.e0 = hs->e0;
    out.e1 = hs->e1;
    out.colength = pows.base()->colength(opt);
    out.s0 = out.e1 - out.e0 + out.colength;
    return out;
}

// Hilbert function of the special fiber: n -> dim (I^n)_{g n}.
struct FiberHilbert {
    std::vector<long long> values;  // n = 0 .. n_max
    bool screened = false;
};

inline FiberHilbert fiber_hilbert(IdealPowers& pows, const Options& opt,
                                  int n_max = 0) {
    const IdealPtr& I = pows.base();
    int g = 0;
    if (!I->equigenerated(&g))
        throw PreconditionError("fiber_hilbert: generators not of a single degree");
    if (n_max <= 0) n_max = I->nvars();
    FiberHilbert out;
    out.screened = !opt.certified();
    out.values.push_back(1);
    for (int n = 1; n <= n_max; ++n)
        out.values.push_back(pows.get(n)->piece_dim(g * n, opt));
    return out;
}

// -------------------------------------------------------------------
// Reductions
//
// J (generated by nvars forms of the generation degree, inside I) is a
// reduction with reduction number r when I^{r+1} = J I^r.  The
// certificate records the length sequence lambda(I^{n+1} / J I^n) for
// n = 0..r and its sum, which can be compared against e_1.

struct ReductionCertificate {
    std::vector<Polynomial> reduction;
    int r = -1;
    std::vector<long long> lambda_seq;  // n = 0 .. r
    long long sum = 0;
    long long e1 = 0;
    bool huckaba_equality = false;
    bool screened = false;
    bool verified = false;
    std::string note;
};

namespace detail {

// lambda(A/B) for ideals with B known to sit inside A; in certified
// mode the containment is re-checked piecewise via quotient_dim.
inline long long colength_between(const IdealPtr& A, const IdealPtr& B,
                                  const Options& opt) {
    int hi = std::max(A->artinian_bound(opt), B->artinian_bound(opt));
    long long sum = 0;
    for (int t = std::min(A->min_degree(), B->min_degree()); t < hi; ++t) {
        if (opt.certified()) {
            sum += quotient_dim(A->piece(t), B->piece(t));
        } else {
            long long q = A->piece_dim(t, opt) - B->piece_dim(t, opt);
            if (q < 0)
                throw InternalContradiction(
                    "colength_between: negative screened quotient");
            sum += q;
        }
    }
    return sum;
}

inline bool ideals_agree(const IdealPtr& A, const IdealPtr& B,
                         const Options& opt) {
    // dimension comparison is sound here because the callers guarantee
    // B inside A
    int ha, hb;
    try {
        ha = A->artinian_bound(opt);
        hb = B->artinian_bound(opt);
    } catch (const NotArtinian&) {
        return false;
    }
    int hi = std::max(ha, hb);
    for (int t = std::min(A->min_degree(), B->min_degree()); t < hi; ++t)
        if (A->piece_dim(t, opt) != B->piece_dim(t, opt)) return false;
    return true;
}

}  // namespace detail

inline ReductionCertificate verify_reduction(IdealPowers& pows,
                                             std::vector<Polynomial> J,
                                             long long e1, const Options& opt) {
    const IdealPtr& I = pows.base();
    int nv = I->nvars();
    int g = 0;
    if (!I->equigenerated(&g))
        throw PreconditionError("verify_reduction: base not equigenerated");
    if (int(J.size()) != nv)
        throw PreconditionError("verify_reduction: need exactly nvars forms");
    for (const auto& j : J) {
        int dj = 0;
        if (!j.is_homogeneous(&dj) || dj != g)
            throw PreconditionError("verify_reduction: form of wrong degree");
        if (!I->piece(g).contains(j))
            throw PreconditionError("verify_reduction: form not inside the ideal");
    }
    if (span(J, nv, g).dim() != nv)
        throw PreconditionError("verify_reduction: forms are dependent");

    ReductionCertificate cert;
    cert.reduction = J;
    cert.e1 = e1;
    cert.screened = !opt.certified();
    IdealPtr Jid = Ideal::make(nv, J);
    for (int rt = 0; rt <= opt.reduction_r_max; ++rt) {
        IdealPtr JIr = rt == 0 ? Jid : Ideal::product(pows.get(rt), J);
        if (!detail::ideals_agree(pows.get(rt + 1), JIr, opt)) continue;
        cert.r = rt;
        cert.verified = true;
        for (int n = 0; n <= rt; ++n) {
            IdealPtr JIn = n == 0 ? Jid : Ideal::product(pows.get(n), J);
            cert.lambda_seq.push_back(
                detail::colength_between(pows.get(n + 1), JIn, opt));
        }
        if (cert.lambda_seq.back() != 0)
            throw InternalContradiction(
                "verify_reduction: nonzero length at the reduction number");
        for (auto l : cert.lambda_seq) cert.sum += l;
        cert.huckaba_equality = (cert.sum == e1);
        return cert;
    }
    cert.note = "no power through r_max = " +
                std::to_string(opt.reduction_r_max) + " satisfies I^{r+1} = J I^r";
    return cert;
}

inline ReductionCertificate find_minimal_reduction(IdealPowers& pows,
                                                   long long e1,
                                                   const Options& opt) {
    const IdealPtr& I = pows.base();
    int nv = I->nvars();
    int g = 0;
    if (!I->equigenerated(&g))
        throw PreconditionError("find_minimal_reduction: base not equigenerated");
    const auto& gens = I->generators();
    std::mt19937_64 rng(opt.seed);
    ReductionCertificate last;
    for (int attempt = 0; attempt < opt.reduction_attempts; ++attempt) {
        std::vector<Polynomial> J;
        for (int i = 0; i < nv; ++i) {
            Polynomial f(nv);
            for (const auto& gpoly : gens) {
                long c = long(rng() % 7) - 3;  // coefficients in [-3, 3]
                if (c != 0) f += gpoly * Rational(c);
            }
            J.push_back(std::move(f));
        }
        bool degenerate = false;
        for (const auto& j : J) degenerate = degenerate || j.is_zero();
        if (degenerate || span(J, nv, g).dim() != nv) continue;
        last = verify_reduction(pows, std::move(J), e1, opt);
        if (last.verified) {
            last.note = "random reduction found on attempt " +
                        std::to_string(attempt + 1);
            return last;
        }
    }
    if (last.note.empty())
        last.note = "no candidate reduction verified";
    last.note += " (after " + std::to_string(opt.reduction_attempts) +
                 " random attempts)";
    return last;
}

inline ReductionCertificate verify_reduction(const IdealPtr& I,
                                             std::vector<Polynomial> J,
                                             const Options& opt) {
    IdealPowers pows(I, opt);
    auto hs = hilbert_samuel(pows, opt);
    return verify_reduction(pows, std::move(J), hs.e1, opt);
}

inline ReductionCertificate find_minimal_reduction(const IdealPtr& I,
                                                   const Options& opt) {
    IdealPowers pows(I, opt);
    auto hs = hilbert_samuel(pows, opt);
    return find_minimal_reduction(pows, hs.e1, opt);
}

}  // namespace quadrics
