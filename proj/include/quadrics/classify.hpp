#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quadrics/invariants.hpp"

namespace quadrics {

using Matrix = LinearChange::Matrix;

namespace detail {

inline Matrix mat_identity(int n) {
    Matrix m(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    int n = int(a.size()), k = int(b.size()), m = k ? int(b[0].size()) : 0;
    Matrix out(n, std::vector<Rational>(m, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (sgn(a[i][l]) == 0) continue;
            for (int j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

inline Matrix mat_transpose(const Matrix& a) {
    int n = int(a.size()), m = n ? int(a[0].size()) : 0;
    Matrix out(m, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) out[j][i] = a[i][j];
    return out;
}

inline bool mat_symmetric(const Matrix& a) {
    int n = int(a.size());
    for (int i = 0; i < n; ++i) {
        if (int(a[i].size()) != n) return false;
        for (int j = 0; j < i; ++j)
            if (a[i][j] != a[j][i]) return false;
    }
    return true;
}

inline std::string mat_to_string(const Matrix& a) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < int(a.size()); ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < int(a[i].size()); ++j)
            os << (j ? " " : "") << to_string(a[i][j]);
    }
    os << "]";
    return os.str();
}

// Image of p in K[x_{r+1}..x_d]: kill the first r variables.
inline Polynomial restrict_tail(const Polynomial& p, int r) {
    Polynomial out(p.nvars() - r);
    for (const auto& [m, c] : p.terms()) {
        const auto& e = m.exponents();
        bool head = false;
        for (int i = 0; i < r; ++i) head = head || e[i] > 0;
        if (head) continue;
        out.add_term(Monomial(Exponents(e.begin() + r, e.end())), c);
    }
    return out;
}

// Embedding of a K[x_{r+1}..x_d] polynomial back into nvars variables.
inline Polynomial lift_tail(const Polynomial& p, int r, int nvars) {
    Polynomial out(nvars);
    for (const auto& [m, c] : p.terms()) {
        Exponents e(nvars, 0);
        const auto& src = m.exponents();
        std::copy(src.begin(), src.end(), e.begin() + r);
        out.add_term(Monomial(std::move(e)), c);
    }
    return out;
}

// Preconditions shared by the classification entry points: quadric
// generators, Artinian quotient (= codimension nvars here), and the
// expected minimal generator count.
inline GeneratorProfile require_quadratic_artinian(const IdealPtr& I,
                                                   const Options& opt,
                                                   const char* who) {
    int g = 0;
    if (!I->equigenerated(&g) || g != 2)
        throw PreconditionError(std::string(who) +
                                ": ideal must be generated by quadrics");
    try {
        I->artinian_bound(opt);
    } catch (const NotArtinian&) {
        throw PreconditionError(std::string(who) +
                                ": not of maximal codimension (R/I infinite)");
    }
    return minimal_generators(I, opt);
}

}  // namespace detail

// ---------------------------------------------------------------------
// Bilinear form of a Gorenstein algebra with Hilbert function (1,d,1):
// entries[i][j] is the scalar with x_i x_j = entries[i][j] * h in (R/I)_2,
// where h is the class of the unique standard monomial of degree two.
struct BilinearMatrix {
    Matrix entries;
    Polynomial socle_generator = Polynomial::zero(1);  // h, a monomial
    int standard_index = -1;  // its position in the degree-2 monomial basis
};

inline BilinearMatrix bilinear_matrix(const IdealPtr& I, const Options& opt) {
    int d = I->nvars();
    detail::require_quadratic_artinian(I, opt, "bilinear_matrix");
    auto hf = hilbert_function(I, opt);
    std::vector<long long> expected = {1, d, 1, 0};
    if (hf.values != expected)
        throw PreconditionError("bilinear_matrix: Hilbert function is not (1,d,1)");
    auto soc = socle_profile(I, opt);
    if (soc.type != 1)
        throw PreconditionError("bilinear_matrix: ideal is not Gorenstein");

    const Subspace& I2 = I->piece(2);
    const auto& basis = MonomialBasis::get(d, 2);
    std::vector<char> is_pivot(basis.size(), 0);
    for (int p : I2.pivots()) is_pivot[p] = 1;
    int s = -1;
    for (int i = 0; i < basis.size(); ++i)
        if (!is_pivot[i]) {
            if (s >= 0)
                throw PreconditionError(
                    "bilinear_matrix: degree-2 quotient not one-dimensional");
            s = i;
        }

    BilinearMatrix out;
    out.standard_index = s;
    out.socle_generator = Polynomial::term(basis.at(s), 1);
    out.entries.assign(d, std::vector<Rational>(d, Rational(0)));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            std::vector<Rational> row(basis.size(), Rational(0));
            row[basis.index_of(
                Monomial::variable(d, i).times(Monomial::variable(d, j)))] = 1;
            auto residual = I2.reduce(std::move(row));
            for (int c = 0; c < basis.size(); ++c)
                if (c != s && sgn(residual[c]) != 0)
                    throw InternalContradiction(
                        "bilinear_matrix: residual outside the standard line");
            out.entries[i][j] = residual[s];
            out.entries[j][i] = residual[s];
        }
    return out;
}

// ---------------------------------------------------------------------
// Exact congruence diagonalization (Lagrange): T^t B T = diag, signature
// read off the diagonal signs.  Singular forms are rejected with a
// kernel witness.
struct SingularForm : std::runtime_error {
    std::vector<Rational> kernel;
    explicit SingularForm(std::vector<Rational> k)
        : std::runtime_error("signature: bilinear form is singular"),
          kernel(std::move(k)) {}
};

struct SignatureResult {
    Matrix transform;                // invertible; transform^t B transform diagonal
    std::vector<Rational> diagonal;
    int positive = 0, negative = 0;  // ordered pair for the given matrix
    std::pair<int, int> canonical;   // unordered signature, min first
};

inline SignatureResult signature(const Matrix& B) {
    int d = int(B.size());
    if (!detail::mat_symmetric(B))
        throw PreconditionError("signature: matrix not symmetric");
    Matrix M = B;
    Matrix T = detail::mat_identity(d);

    // col_b += c * col_a mirrored on rows, i.e. M <- E^t M E.
    auto add_col = [&](int a, int b, const Rational& c) {
        for (int i = 0; i < d; ++i) M[i][b] += c * M[i][a];
        for (int j = 0; j < d; ++j) M[b][j] += c * M[a][j];
        for (int i = 0; i < d; ++i) T[i][b] += c * T[i][a];
    };
    auto swap_cols = [&](int a, int b) {
        for (int i = 0; i < d; ++i) std::swap(M[i][a], M[i][b]);
        std::swap(M[a], M[b]);
        for (int i = 0; i < d; ++i) std::swap(T[i][a], T[i][b]);
    };

    for (int k = 0; k < d; ++k) {
        if (sgn(M[k][k]) == 0) {
            int l = -1;
            for (int i = k + 1; i < d; ++i)
                if (sgn(M[i][i]) != 0) {
                    l = i;
                    break;
                }
            if (l >= 0) {
                swap_cols(k, l);
            } else {
                int oi = -1, oj = -1;
                for (int i = k; i < d && oi < 0; ++i)
                    for (int j = i + 1; j < d; ++j)
                        if (sgn(M[i][j]) != 0) {
                            oi = i;
                            oj = j;
                            break;
                        }
                if (oi < 0) {
                    std::vector<Rational> kern(d);
                    for (int i = 0; i < d; ++i) kern[i] = T[i][k];
                    for (int i = 0; i < d; ++i) {
                        Rational dot(0);
                        for (int j = 0; j < d; ++j) dot += B[i][j] * kern[j];
                        if (sgn(dot) != 0)
                            throw InternalContradiction(
                                "signature: kernel witness fails B v = 0");
                    }
                    throw SingularForm(std::move(kern));
                }
                add_col(oj, oi, Rational(1));  // M[oi][oi] becomes 2 M[oi][oj]
                if (oi != k) swap_cols(k, oi);
            }
        }
        for (int j = k + 1; j < d; ++j)
            if (sgn(M[k][j]) != 0) add_col(k, j, -M[k][j] / M[k][k]);
    }

    SignatureResult out;
    out.transform = T;
    out.diagonal.resize(d);
    for (int k = 0; k < d; ++k) {
        out.diagonal[k] = M[k][k];
        if (sgn(M[k][k]) > 0) ++out.positive;
        if (sgn(M[k][k]) < 0) ++out.negative;
    }
    auto check = detail::mat_mul(detail::mat_mul(detail::mat_transpose(T), B), T);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (check[i][j] != (i == j ? out.diagonal[i] : Rational(0)))
                throw InternalContradiction("signature: T^t B T is not diagonal");
    out.canonical = {std::min(out.positive, out.negative),
                     std::max(out.positive, out.negative)};
    return out;
}

inline SignatureResult signature(const BilinearMatrix& B) {
    return signature(B.entries);
}

// ---------------------------------------------------------------------
// Normal form of a Gorenstein submaximal ideal: the representative
// (x_i x_j, x_1^2 - eps_k x_k^2) whose number of eps_k = +1 equals
// max(p,q) - 1.  The unordered signature {p,q} is the invariant: the
// bilinear matrix is only defined up to the scaling of h, and h -> -h
// swaps p and q without changing the ideal.
struct GorensteinNormalForm {
    BilinearMatrix form;
    SignatureResult sig;
    std::pair<int, int> canonical;  // = sig.canonical
    int plus_binomials = 0;         // #{k : eps_k = +1}
    std::vector<Polynomial> representative;
    IdealPtr representative_ideal;
};

inline GorensteinNormalForm gorenstein_normal_form(const IdealPtr& I,
                                                   const Options& opt) {
    GorensteinNormalForm out;
    out.form = bilinear_matrix(I, opt);
    out.sig = signature(out.form);
    out.canonical = out.sig.canonical;
    int d = I->nvars();
    out.plus_binomials = out.canonical.second - 1;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            out.representative.push_back(Polynomial::term(
                Monomial::variable(d, i).times(Monomial::variable(d, j)), 1));
    for (int k = 1; k < d; ++k) {
        Polynomial b = Polynomial::term(
            Monomial::variable(d, 0).times(Monomial::variable(d, 0)), 1);
        // x_1^2 - eps_k x_k^2 with eps_k = +1 for the first plus_binomials k.
        Rational coeff = k <= out.plus_binomials ? Rational(-1) : Rational(1);
        b += Polynomial::term(
            Monomial::variable(d, k).times(Monomial::variable(d, k)), coeff);
        out.representative.push_back(std::move(b));
    }
    out.representative_ideal = Ideal::make(d, out.representative);
    return out;
}

// ---------------------------------------------------------------------
// Dual-basis presentation: y_j = sum_k (B^{-1})[k][j] x_k, and the ideal
// regenerated as (x_i y_j, i != j; x_1 y_1 - x_k y_k) must equal I.
struct DualBasisPresentation {
    BilinearMatrix form;
    Matrix inverse;                     // B^{-1}
    std::vector<Polynomial> dual_basis; // y_1 .. y_d
    std::vector<Polynomial> generators; // nonzero regenerating forms
    IdealPtr regenerated;
    IdealEquality equality;
};

namespace detail {

inline std::vector<Polynomial> polarized_generators(
    const std::vector<Polynomial>& ys) {
    int d = int(ys.size());
    std::vector<Polynomial> gens;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            Polynomial g = Polynomial::variable(d, i) * ys[j];
            if (!g.is_zero()) gens.push_back(std::move(g));
        }
    Polynomial x1y1 = Polynomial::variable(d, 0) * ys[0];
    for (int k = 1; k < d; ++k) {
        Polynomial g = x1y1 - Polynomial::variable(d, k) * ys[k];
        if (!g.is_zero()) gens.push_back(std::move(g));
    }
    return gens;
}

}  // namespace detail

inline DualBasisPresentation dual_basis_presentation(const IdealPtr& I,
                                                     const Options& opt) {
    DualBasisPresentation out;
    out.form = bilinear_matrix(I, opt);
    int d = I->nvars();
    auto inv = LinearChange::invert(out.form.entries);
    if (!inv) {
        throw InternalContradiction(
            "dual_basis_presentation: singular bilinear form on a Gorenstein "
            "ideal; B = " +
            detail::mat_to_string(out.form.entries));
    }
    out.inverse = std::move(*inv);
    for (int j = 0; j < d; ++j) {
        Polynomial y(d);
        for (int k = 0; k < d; ++k)
            if (sgn(out.inverse[k][j]) != 0)
                y += Polynomial::variable(d, k) * out.inverse[k][j];
        out.dual_basis.push_back(std::move(y));
    }
    out.generators = detail::polarized_generators(out.dual_basis);
    out.regenerated = Ideal::make(d, out.generators);
    out.equality = ideal_equals(out.regenerated, I, opt);
    if (out.equality.status != IdealEquality::Status::equal) {
        std::string msg =
            "dual_basis_presentation: regenerated ideal differs from input; "
            "B = " + detail::mat_to_string(out.form.entries);
        if (out.equality.degree >= 0)
            msg += "; first difference in degree " +
                   std::to_string(out.equality.degree);
        if (out.equality.witness)
            msg += "; witness " +
                   to_string(*out.equality.witness,
                             default_variable_names(d));
        throw InternalContradiction(msg);
    }
    return out;
}

// Fixture builder: the ideal (x_i y_j, i != j; x_1 y_1 - x_k y_k) for
// y_j = sum_k M[k][j] x_k with M invertible.  Gorenstein submaximal by
// construction.
inline IdealPtr polarized_ideal(const Matrix& M) {
    int d = int(M.size());
    if (d < 2) throw PreconditionError("polarized_ideal: need at least 2 variables");
    if (!detail::mat_symmetric(M))
        throw PreconditionError("polarized_ideal: form matrix must be symmetric");
    if (!LinearChange::invert(M))
        throw PreconditionError("polarized_ideal: matrix is singular");
    std::vector<Polynomial> ys;
    for (int j = 0; j < d; ++j) {
        Polynomial y(d);
        for (int k = 0; k < d; ++k)
            if (sgn(M[k][j]) != 0) y += Polynomial::variable(d, k) * M[k][j];
        ys.push_back(std::move(y));
    }
    return Ideal::make(d, detail::polarized_generators(ys));
}

// ---------------------------------------------------------------------
// Type decomposition of a submaximal ideal: I = (x_1..x_r) m + I' after a
// change of variables whose first r coordinates span the linear socle;
// the core I' is Gorenstein submaximal in d - r variables and
// type(I) = r + 1.
struct Decomposition {
    int r = 0;
    int type = 0;
    LinearChange change = LinearChange::identity(0);  // input -> split coords
    IdealPtr transformed;  // ideal in split coordinates
    IdealPtr core;         // I' in d - r variables
    GorensteinNormalForm core_form;
    IdealPtr reassembled;  // (x_1..x_r) m + lift(core), split coordinates
    IdealEquality reassembly;
};

namespace detail {

// Rows: the given ones first, then unit vectors completing them to a
// basis.  Rows are assumed independent.
inline Matrix complete_basis(std::vector<std::vector<Rational>> rows, int n) {
    RationalEchelon ech(n);
    for (const auto& r : rows) ech.insert(r);
    for (int i = 0; i < n && int(rows.size()) < n; ++i) {
        std::vector<Rational> unit(n, Rational(0));
        unit[i] = 1;
        if (ech.insert(unit)) rows.push_back(std::move(unit));
    }
    return rows;
}

}  // namespace detail

inline Decomposition submaximal_decompose(const IdealPtr& I,
                                          const Options& opt) {
    int d = I->nvars();
    auto prof =
        detail::require_quadratic_artinian(I, opt, "submaximal_decompose");
    long long expected = binomial(d + 1, 2) - 1;
    if (prof.total != expected)
        throw PreconditionError(
            "submaximal_decompose: need " + std::to_string(expected) +
            " minimal generators, found " + std::to_string(prof.total));

    auto soc = socle_profile(I, opt);
    Decomposition out;
    out.r = soc.linear_dim;
    out.type = soc.type;
    if (out.type != out.r + 1)
        throw InternalContradiction(
            "submaximal_decompose: type " + std::to_string(out.type) +
            " != linear socle dimension + 1 = " + std::to_string(out.r + 1));

    if (out.r == 0) {
        out.change = LinearChange::identity(d);
        out.transformed = I;
        out.core = I;
        out.core_form = gorenstein_normal_form(I, opt);
        out.reassembled = I;
        out.reassembly = ideal_equals(out.reassembled, out.transformed, opt);
        return out;
    }

    if (d - out.r < 2)
        throw InternalContradiction(
            "submaximal_decompose: residual ring in fewer than 2 variables");
    Matrix A = detail::complete_basis(soc.complements.at(1).rows(), d);
    auto Ainv = LinearChange::invert(A);
    if (!Ainv)
        throw InternalContradiction("submaximal_decompose: socle basis completion failed");
    out.change = LinearChange(std::move(*Ainv));
    out.transformed = apply_change(I, out.change);

    std::vector<Polynomial> core_gens;
    for (const auto& g : out.transformed->generators()) {
        Polynomial q = detail::restrict_tail(g, out.r);
        if (!q.is_zero()) core_gens.push_back(std::move(q));
    }
    out.core = Ideal::make(d - out.r, core_gens);

    auto core_prof =
        detail::require_quadratic_artinian(out.core, opt, "decomposition core");
    long long core_expected = binomial(d - out.r + 1, 2) - 1;
    if (core_prof.total != core_expected)
        throw InternalContradiction(
            "submaximal_decompose: core has " + std::to_string(core_prof.total) +
            " minimal generators, expected " + std::to_string(core_expected));
    if (cm_type(out.core, opt) != 1)
        throw InternalContradiction("submaximal_decompose: core is not Gorenstein");
    out.core_form = gorenstein_normal_form(out.core, opt);

    std::vector<Polynomial> parts;
    for (int a = 0; a < out.r; ++a)
        for (int b = a; b < d; ++b)
            parts.push_back(Polynomial::term(
                Monomial::variable(d, a).times(Monomial::variable(d, b)), 1));
    for (const auto& g : out.core->generators())
        parts.push_back(detail::lift_tail(g, out.r, d));
    out.reassembled = Ideal::make(d, parts);
    out.reassembly = ideal_equals(out.reassembled, out.transformed, opt);
    if (out.reassembly.status != IdealEquality::Status::equal)
        throw InternalContradiction(
            "submaximal_decompose: (x_1..x_r)m + core does not reassemble the "
            "ideal");
    return out;
}

// ---------------------------------------------------------------------
// d = 3 case analyses.

// Non-Gorenstein 5-quadric orbit data, following the constructive proof:
// change x to the socle line, reduce the residual pencil of binary
// quadrics, and normalize over Q when the needed square roots exist.
struct PencilAnalysis {
    char orbit = '?';  // 'A' = (x^2,xy,xz,y^2,z^2), 'B' = (x^2,xy,xz,yz,ay^2+cz^2)
    LinearChange change = LinearChange::identity(0);  // input -> representative
    Rational a, c;                // orbit B parameters (a = 1 by construction)
    bool normalized_over_Q = false;
    std::vector<Polynomial> representative;
    IdealPtr representative_ideal;
    std::vector<Polynomial> canonical_reduction;  // in representative coords
    std::vector<std::string> transcript;
};

struct FiveQuadricsReport {
    bool gorenstein = false;
    HilbertFunction hf;
    int type = 0;
    SyzygeticStatus syzygetic = SyzygeticStatus::unverified;
    long long nu_square = 0;
    bool square_is_m4 = false;
    HilbertSamuelData hs;
    SallyData sally;
    ReductionCertificate reduction;
    std::optional<GorensteinNormalForm> form;  // Gorenstein branch
    std::optional<PencilAnalysis> orbit;       // non-Gorenstein branch
};

namespace detail {

// The two echelon rows of the transformed degree-2 piece that live in the
// y,z monomials.  Positions in the degree-2 basis: x^2 xy xz y^2 yz z^2.
struct Pencil {
    // coefficients (y^2, yz, z^2) of the two reduced rows, by pivot
    std::optional<std::vector<Rational>> row_y2, row_yz, row_z2;
};

inline Pencil extract_pencil(const IdealPtr& T) {
    const Subspace& sp = T->piece(2);
    if (sp.dim() != 5 || sp.is_full())
        throw InternalContradiction("pencil: transformed piece is not 5-dimensional");
    for (int need = 0; need < 3; ++need) {
        bool found = false;
        for (int p : sp.pivots()) found = found || p == need;
        if (!found)
            throw InternalContradiction(
                "pencil: x*m is missing from the transformed ideal");
    }
    Pencil out;
    const auto& rows = sp.rows();
    const auto& piv = sp.pivots();
    for (int i = 0; i < int(rows.size()); ++i) {
        if (piv[i] < 3) continue;
        std::vector<Rational> tail = {rows[i][3], rows[i][4], rows[i][5]};
        if (piv[i] == 3) out.row_y2 = tail;
        if (piv[i] == 4) out.row_yz = tail;
        if (piv[i] == 5) out.row_z2 = tail;
    }
    return out;
}

inline Polynomial binary_quadric(const std::vector<Rational>& yz_coeffs) {
    const auto& basis = MonomialBasis::get(3, 2);
    std::vector<Rational> row(basis.size(), Rational(0));
    row[3] = yz_coeffs[0];
    row[4] = yz_coeffs[1];
    row[5] = yz_coeffs[2];
    return Polynomial::from_row(basis, row);
}

inline PencilAnalysis pencil_analysis(const IdealPtr& I,
                                      const SocleProfile& soc,
                                      const Options& opt) {
    auto names = default_variable_names(3);
    PencilAnalysis out;
    if (soc.linear_dim != 1)
        throw InternalContradiction(
            "pencil_analysis: linear socle dimension " +
            std::to_string(soc.linear_dim) + ", expected 1");

    Matrix A = complete_basis(soc.complements.at(1).rows(), 3);
    auto Ainv = LinearChange::invert(A);
    if (!Ainv)
        throw InternalContradiction("pencil_analysis: socle completion failed");
    Matrix total = std::move(*Ainv);
    out.transcript.push_back(
        "socle line h = " +
        to_string(Polynomial::from_row(MonomialBasis::get(3, 1),
                                       soc.complements.at(1).rows()[0]),
                  names) +
        "; new coordinates with x = h");

    auto transformed = apply_change(I, LinearChange(total));
    Pencil pen = extract_pencil(transformed);
    if (pen.row_y2)
        out.transcript.push_back("pencil row " +
                                 to_string(binary_quadric(*pen.row_y2), names));
    if (pen.row_yz)
        out.transcript.push_back("pencil row " +
                                 to_string(binary_quadric(*pen.row_yz), names));
    if (pen.row_z2)
        out.transcript.push_back("pencil row " +
                                 to_string(binary_quadric(*pen.row_z2), names));

    if (!pen.row_y2)
        throw InternalContradiction(
            "pencil_analysis: every member of the pencil is divisible by z "
            "(ideal cannot be Artinian)");

    auto compose = [&](const Matrix& rows, const std::string& note) {
        auto inv = LinearChange::invert(rows);
        if (!inv)
            throw InternalContradiction("pencil_analysis: singular renaming");
        total = mat_mul(total, *inv);
        transformed = apply_change(I, LinearChange(total));
        pen = extract_pencil(transformed);
        out.transcript.push_back(note);
    };

    if (pen.row_y2 && pen.row_z2) {
        // q1 = y^2 + alpha*yz, q2 = z^2
        Rational alpha = (*pen.row_y2)[1];
        if (sgn(alpha) == 0) {
            out.orbit = 'A';
            out.normalized_over_Q = true;
            out.transcript.push_back(
                "pencil = {y^2, z^2}: monomial orbit (x^2, xy, xz, y^2, z^2)");
        } else {
            // q1 = y(y + alpha z): reverse roles via Z = y + alpha z
            compose({{Rational(1), 0, 0}, {0, Rational(1), 0}, {0, Rational(1), alpha}},
                    "mixed term in the y^2 row: rename Z = y + " +
                        to_string(alpha) + "*z, putting the pencil into "
                        "{yz, y^2 + c*z^2} shape");
        }
    } else if (pen.row_y2 && pen.row_yz) {
        Rational beta = (*pen.row_yz)[2];
        if (sgn(beta) != 0)
            compose({{Rational(1), 0, 0}, {0, Rational(1), beta}, {0, 0, Rational(1)}},
                    "yz row is (y + " + to_string(beta) +
                        "*z)z: rename Y = y + " + to_string(beta) + "*z");
    }

    if (out.orbit != 'A') {
        // Expect the pencil {y^2 + c z^2, yz} exactly.
        if (!pen.row_y2 || !pen.row_yz)
            throw InternalContradiction("pencil_analysis: normalization failed");
        if (sgn((*pen.row_y2)[1]) != 0 || sgn((*pen.row_yz)[2]) != 0)
            throw InternalContradiction("pencil_analysis: residual mixed terms");
        Rational c = (*pen.row_y2)[2];
        if (sgn(c) == 0)
            throw InternalContradiction(
                "pencil_analysis: degenerate pencil {y^2, yz} (ideal cannot "
                "be Artinian)");
        out.orbit = 'B';
        out.a = 1;
        Rational root;
        if (rational_square_root(c, &root)) {
            compose({{Rational(1), 0, 0}, {0, Rational(1), 0}, {0, 0, root}},
                    "c = " + to_string(c) + " = (" + to_string(root) +
                        ")^2: rescale z to reach (a, c) = (1, 1)");
            out.c = 1;
            out.normalized_over_Q = true;
        } else if (rational_square_root(-c, &root)) {
            compose({{Rational(1), 0, 0}, {0, Rational(1), 0}, {0, 0, root}},
                    "c = " + to_string(c) + " = -(" + to_string(root) +
                        ")^2: rescale z to reach (a, c) = (1, -1)");
            out.c = -1;
            out.normalized_over_Q = true;
        } else {
            out.c = c;
            out.normalized_over_Q = false;
            out.transcript.push_back(
                "c = " + to_string(c) +
                " is not a rational square up to sign: normalization over Q "
                "incomplete, parameters (1, " + to_string(c) + ") recorded");
        }
    }

    // Assemble the representative and check it against the transformed ideal.
    std::vector<Polynomial> gens;
    auto mono = [&](int i, int j) {
        return Polynomial::term(
            Monomial::variable(3, i).times(Monomial::variable(3, j)), 1);
    };
    gens.push_back(mono(0, 0));
    gens.push_back(mono(0, 1));
    gens.push_back(mono(0, 2));
    if (out.orbit == 'A') {
        gens.push_back(mono(1, 1));
        gens.push_back(mono(2, 2));
        out.canonical_reduction = {mono(0, 0), mono(1, 1), mono(2, 2)};
    } else {
        Polynomial q = mono(1, 1) * out.a + mono(2, 2) * out.c;
        gens.push_back(mono(1, 2));
        gens.push_back(q);
        out.canonical_reduction = {mono(0, 0), mono(1, 2), q};
    }
    out.representative = gens;
    out.representative_ideal = Ideal::make(3, gens);
    out.change = LinearChange(total);
    auto moved = apply_change(I, out.change);
    if (!(moved->piece(2) == out.representative_ideal->piece(2)))
        throw InternalContradiction(
            "pencil_analysis: representative does not match the transformed "
            "ideal");

    if (out.orbit == 'B' && out.c == Rational(1)) {
        Polynomial yz = mono(1, 2);
        Polynomial q = mono(1, 1) + mono(2, 2);
        Polynomial u = Polynomial::variable(3, 1) + Polynomial::variable(3, 2);
        Polynomial v = Polynomial::variable(3, 1) - Polynomial::variable(3, 2);
        if (!(span({yz, q}, 3, 2) == span({u * u, v * v}, 3, 2)))
            throw InternalContradiction(
                "pencil_analysis: span{yz, y^2+z^2} != span{(y+z)^2, (y-z)^2}");
        out.transcript.push_back(
            "span{y*z, y^2 + z^2} = span{(y + z)^2, (y - z)^2}");
    }
    return out;
}

}  // namespace detail

inline FiveQuadricsReport classify_five_quadrics(const IdealPtr& I,
                                                 const Options& opt) {
    if (I->nvars() != 3)
        throw PreconditionError("classify_five_quadrics: three variables required");
    auto prof =
        detail::require_quadratic_artinian(I, opt, "classify_five_quadrics");
    if (prof.total != 5)
        throw PreconditionError(
            "classify_five_quadrics: five minimal generators required, found " +
            std::to_string(prof.total));

    FiveQuadricsReport rep;
    rep.hf = hilbert_function(I, opt);
    std::vector<long long> expected = {1, 3, 1, 0};
    if (rep.hf.values != expected)
        throw InternalContradiction(
            "classify_five_quadrics: Hilbert function is not (1,3,1)");

    auto soc = socle_profile(I, opt);
    rep.type = soc.type;
    rep.gorenstein = (soc.type == 1);

    IdealPowers pows(I, opt);
    rep.hs = hilbert_samuel(pows, opt);
    rep.sally = sally_multiplicity(pows, opt, &rep.hs);
    rep.syzygetic = delta_profile(pows, opt).status;
    rep.nu_square = minimal_generators(pows.get(2), opt).total;
    rep.square_is_m4 =
        bool(ideal_equals(pows.get(2), Ideal::maximal_power(3, 4), opt));

    if (rep.gorenstein) {
        rep.form = gorenstein_normal_form(I, opt);
        rep.reduction = find_minimal_reduction(pows, rep.hs.e1, opt);
    } else {
        rep.orbit = detail::pencil_analysis(I, soc, opt);
        LinearChange back = rep.orbit->change.inverse();
        std::vector<Polynomial> J;
        for (const auto& j : rep.orbit->canonical_reduction)
            J.push_back(back.apply(j));
        rep.reduction = verify_reduction(pows, std::move(J), rep.hs.e1, opt);
        if (!rep.reduction.verified)
            rep.reduction = find_minimal_reduction(pows, rep.hs.e1, opt);
    }
    return rep;
}

// ---------------------------------------------------------------------
// Almost complete intersections of 4 quadrics in 3 variables.
struct FourQuadricsReport {
    HilbertFunction hf;
    SyzygeticStatus syzygetic = SyzygeticStatus::unverified;
    HilbertSamuelData hs;
    SallyData sally;
    ReductionCertificate reduction;
    long long u = -1, v = -1;       // lambda(I^2/JI), lambda(I^3/JI^2) when red = 3
    bool sally_identity = false;    // e1 - e0 + lambda == u + v
    std::string branch;
};

inline FourQuadricsReport analyze_four_quadrics(const IdealPtr& I,
                                                const Options& opt) {
    if (I->nvars() != 3)
        throw PreconditionError("analyze_four_quadrics: three variables required");
    auto prof =
        detail::require_quadratic_artinian(I, opt, "analyze_four_quadrics");
    if (prof.total != 4)
        throw PreconditionError(
            "analyze_four_quadrics: four minimal generators required, found " +
            std::to_string(prof.total));

    FourQuadricsReport rep;
    rep.hf = hilbert_function(I, opt);
    std::vector<long long> expected = {1, 3, 2, 0};
    if (rep.hf.values != expected || rep.hf.colength != 6)
        throw InternalContradiction(
            "analyze_four_quadrics: Hilbert function is not (1,3,2)");

    IdealPowers pows(I, opt);
    rep.hs = hilbert_samuel(pows, opt);
    rep.sally = sally_multiplicity(pows, opt, &rep.hs);
    rep.syzygetic = delta_profile(pows, opt).status;
    if (rep.syzygetic == SyzygeticStatus::syzygetic)
        throw InternalContradiction(
            "analyze_four_quadrics: almost complete intersection reported "
            "syzygetic");

    // Candidate reductions among the canonical minimal generators first,
    // then random combinations.
    auto gens = I->piece(2).basis_polynomials();
    for (std::size_t i = 0; i + 2 < gens.size() && !rep.reduction.verified; ++i)
        for (std::size_t j = i + 1; j + 1 < gens.size() && !rep.reduction.verified;
             ++j)
            for (std::size_t k = j + 1; k < gens.size(); ++k) {
                std::vector<Polynomial> J = {gens[i], gens[j], gens[k]};
                if (span(J, 3, 2).dim() != 3) continue;
                auto cert = verify_reduction(pows, std::move(J), rep.hs.e1, opt);
                if (cert.verified) {
                    cert.note = "reduction among the minimal generators";
                    rep.reduction = std::move(cert);
                    break;
                }
            }
    if (!rep.reduction.verified)
        rep.reduction = find_minimal_reduction(pows, rep.hs.e1, opt);
    if (!rep.reduction.verified)
        throw InternalContradiction(
            "analyze_four_quadrics: no verified reduction; " +
            rep.reduction.note);
    if (rep.reduction.r != 1 && rep.reduction.r != 3) {
        std::string seq;
        for (auto l : rep.reduction.lambda_seq)
            seq += (seq.empty() ? "" : ", ") + std::to_string(l);
        throw InternalContradiction(
            "analyze_four_quadrics: reduction number " +
            std::to_string(rep.reduction.r) + " outside {1, 3}; lambda "
            "sequence " + seq);
    }
    if (rep.reduction.r == 3) {
        rep.u = rep.reduction.lambda_seq[1];
        rep.v = rep.reduction.lambda_seq[2];
        rep.sally_identity =
            (rep.hs.e1 - rep.hs.e0 + rep.hf.colength == rep.u + rep.v);
        rep.branch = "reduction number 3: R[It] satisfies R_1";
    } else {
        rep.branch = "reduction number 1: Cohen-Macaulay branch";
    }
    return rep;
}

// ---------------------------------------------------------------------
// Umbrella classification: dispatches on the generator count.
struct ClassificationResult {
    bool gorenstein = false;
    std::optional<Decomposition> decomposition;     // submaximal inputs
    std::optional<DualBasisPresentation> dual;      // Gorenstein inputs
    std::optional<FiveQuadricsReport> five;         // d = 3, nu = 5
    std::optional<FourQuadricsReport> four;         // d = 3, nu = 4
};

inline ClassificationResult classify(const IdealPtr& raw, const Options& opt) {
    IdealPtr I = detail::minimalized(raw);
    int d = I->nvars();
    auto prof = detail::require_quadratic_artinian(I, opt, "classify");
    ClassificationResult out;
    if (d == 3 && prof.total == 4) {
        out.four = analyze_four_quadrics(I, opt);
        return out;
    }
    if (prof.total != binomial(d + 1, 2) - 1)
        throw PreconditionError(
            "classify: expected a submaximal ideal (" +
            std::to_string(binomial(d + 1, 2) - 1) +
            " generators) or a d = 3 almost complete intersection (4), found " +
            std::to_string(prof.total));
    out.decomposition = submaximal_decompose(I, opt);
    out.gorenstein = (out.decomposition->r == 0);
    if (out.gorenstein) out.dual = dual_basis_presentation(I, opt);
    if (d == 3) out.five = classify_five_quadrics(I, opt);
    return out;
}

}  // namespace quadrics
