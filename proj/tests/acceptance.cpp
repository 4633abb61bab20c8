// Acceptance suite: ten end-to-end criteria, one line of output each.
// Exit status 0 iff every criterion passes within its time budget.
//
// usage: acceptance [corpus-dir]    (default: ./corpus)

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "quadrics/report.hpp"

using namespace quadrics;

namespace {

std::string g_corpus = "corpus";

struct Checker {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

IdealFile fixture(const std::string& name) {
    return load_ideal_file(g_corpus + "/" + name + ".ideal");
}

std::pair<int, int> parse_signature(const std::string& s) {
    auto comma = s.find(',');
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

Polynomial random_quadric(std::mt19937_64& rng, int nv) {
    const auto& basis = MonomialBasis::get(nv, 2);
    std::vector<Rational> row(basis.size());
    for (auto& c : row) c = long(rng() % 7) - 3;
    return Polynomial::from_row(basis, row);
}

LinearChange random_change(std::mt19937_64& rng, int nv) {
    for (;;) {
        Matrix m(nv, std::vector<Rational>(nv));
        for (auto& row : m)
            for (auto& e : row) e = long(rng() % 7) - 3;
        if (auto inv = LinearChange::invert(m)) return LinearChange(m);
    }
}

Matrix random_symmetric_invertible(std::mt19937_64& rng, int nv) {
    for (;;) {
        Matrix m(nv, std::vector<Rational>(nv, Rational(0)));
        for (int i = 0; i < nv; ++i)
            for (int j = i; j < nv; ++j) m[i][j] = m[j][i] = long(rng() % 9) - 4;
        if (LinearChange::invert(m)) return m;
    }
}

// --- criterion bodies --------------------------------------------------

void c1_hilbert_functions(Checker& c) {
    for (const char* name : {"gor3_minus", "gor3_mixed", "gor3_rotated",
                             "orbitA", "orbitB_definite"}) {
        auto f = fixture(name);
        Options opt = f.options(Options{});
        auto hf = hilbert_function(f.ideal(), opt);
        c.expect(hf.values == std::vector<long long>{1, 3, 1, 0},
                 std::string(name) + ": hilbert function is not (1,3,1)");
        c.expect(hf.colength == 5, std::string(name) + ": colength != 5");
    }
}

void c2_multiplicities(Checker& c) {
    for (const char* name :
         {"gor3_minus", "gor3_mixed", "gor3_rotated", "orbitA",
          "orbitB_definite", "orbitB_indefinite", "orbitB_irrational",
          "dual3_dense"}) {
        auto f = fixture(name);
        Options opt = f.options(Options{});
        auto rep = run_invariants(f.ideal(), opt);
        c.expect(rep.hs.e0 == 8, std::string(name) + ": e0 != 8");
        c.expect(rep.hs.e1 == 4, std::string(name) + ": e1 != 4");
        c.expect(rep.sally.s0 == 1, std::string(name) + ": s0 != 1");
    }
}

void c3_gorenstein_chain(Checker& c) {
    for (const char* name : {"gor3_minus", "gor3_mixed", "gor3_rotated"}) {
        auto f = fixture(name);
        Options opt = f.options(Options{});
        IdealPowers pows(f.ideal(), opt);
        c.expect(bool(ideal_equals(pows.get(2), Ideal::maximal_power(3, 4), opt)),
                 std::string(name) + ": I^2 != m^4");
        c.expect(minimal_generators(pows.get(2), opt).total == 15,
                 std::string(name) + ": nu(I^2) != 15");
        auto delta = delta_profile(pows, opt);
        c.expect(delta.status == SyzygeticStatus::syzygetic,
                 std::string(name) + ": not syzygetic");
        bool window_zero = !delta.delta.empty();
        for (auto [t, v] : delta.delta) window_zero = window_zero && v == 0;
        c.expect(window_zero,
                 std::string(name) + ": nonzero delta inside the window");
        c.expect(delta.last_degree >= 7,
                 std::string(name) + ": window stops before degree 7");
        auto red = find_minimal_reduction(f.ideal(), opt);
        c.expect(red.verified && red.r == 2,
                 std::string(name) + ": no verified reduction with r = 2");
    }
}

void c4_orbit_reductions(Checker& c) {
    for (const char* name : {"orbitA", "orbitB_definite", "orbitB_indefinite",
                             "orbitB_irrational"}) {
        auto f = fixture(name);
        Options opt = f.options(Options{});
        auto five = classify_five_quadrics(f.ideal(), opt);
        c.expect(five.nu_square == 13,
                 std::string(name) + ": nu(I^2) != 13");
        c.expect(five.syzygetic == SyzygeticStatus::not_syzygetic,
                 std::string(name) + ": expected not syzygetic");
        c.expect(five.reduction.verified,
                 std::string(name) + ": canonical reduction not verified");
        c.expect(five.reduction.lambda_seq == std::vector<long long>{3, 1, 0},
                 std::string(name) + ": lambda sequence != (3,1,0)");
        c.expect(five.reduction.sum == 4 && five.reduction.e1 == 4,
                 std::string(name) + ": huckaba sum or e1 != 4");
        c.expect(five.reduction.huckaba_equality,
                 std::string(name) + ": huckaba equality fails");
    }
}

void c5_high_dimension(Checker& c) {
    struct Row {
        const char* name;
        int d;
        bool screened;
    };
    for (Row row : {Row{"gor4_minus", 4, false}, Row{"gor5_minus", 5, false},
                    Row{"gor6_minus", 6, true}}) {
        auto f = fixture(row.name);
        Options opt;
        if (row.screened) opt.mode = Mode::screened;
        auto I = f.ideal();
        IdealPowers pows(I, opt);
        auto hs = hilbert_samuel(pows, opt);
        long long e0 = 1LL << row.d;
        long long e1 = (row.d - 1) * (1LL << (row.d - 2));
        c.expect(hs.e0 == e0, std::string(row.name) + ": e0 != 2^d");
        c.expect(hs.e1 == e1,
                 std::string(row.name) + ": e1 != (d-1) 2^(d-2)");
        auto delta = delta_profile(pows, opt);
        c.expect(delta.status == SyzygeticStatus::not_syzygetic,
                 std::string(row.name) + ": expected not syzygetic");
        auto red = find_minimal_reduction(pows, hs.e1, opt);
        c.expect(red.verified && red.r == row.d / 2,
                 std::string(row.name) + ": reduction number != floor(d/2)");
        c.expect(
            bool(ideal_equals(pows.get(2), Ideal::maximal_power(row.d, 4), opt)),
            std::string(row.name) + ": I^2 != m^4");
    }
}

void c6_signature_invariance(Checker& c) {
    std::mt19937_64 rng(20260816);
    Options opt;
    for (const char* name : {"gor3_minus", "gor3_mixed", "gor4_minus",
                             "gor4_mixed13", "gor4_mixed22"}) {
        auto f = fixture(name);
        auto expected = parse_signature(f.expectations.at("signature"));
        auto I = f.ideal();
        c.expect(signature(bilinear_matrix(I, opt)).canonical == expected,
                 std::string(name) + ": signature differs from the fixture");
        for (int k = 0; k < 20; ++k) {
            auto T = random_change(rng, f.nvars());
            auto moved = apply_change(I, T);
            c.expect(signature(bilinear_matrix(moved, opt)).canonical == expected,
                     std::string(name) + ": signature moved under change " +
                         std::to_string(k));
        }
    }
}

void c7_polarized_round_trip(Checker& c) {
    std::mt19937_64 rng(7);
    Options opt;
    for (int k = 0; k < 10; ++k) {
        int d = k < 5 ? 3 : 4;
        Matrix B = random_symmetric_invertible(rng, d);
        auto I = polarized_ideal(B);
        std::string tag = "instance " + std::to_string(k);
        c.expect(is_gorenstein(I, opt), tag + ": not gorenstein");
        c.expect(minimal_generators(I, opt).total == binomial(d + 1, 2) - 1,
                 tag + ": not submaximal");
        auto dual = dual_basis_presentation(I, opt);
        c.expect(dual.equality.status == IdealEquality::Status::equal,
                 tag + ": dual basis does not regenerate the ideal");
        c.expect(bool(ideal_equals(Ideal::product(I, I->generators()),
                                   Ideal::maximal_power(d, 4), opt)),
                 tag + ": I^2 != m^4");
    }
}

void c8_decompositions(Checker& c) {
    struct Row {
        const char* name;
        int r;
    };
    for (Row row : {Row{"decomp4_r1", 1}, Row{"decomp4_r2", 2},
                    Row{"decomp5_r1", 1}, Row{"decomp5_r2", 2}}) {
        auto f = fixture(row.name);
        Options opt = f.options(Options{});
        auto dec = submaximal_decompose(f.ideal(), opt);
        c.expect(dec.r == row.r, std::string(row.name) + ": wrong r");
        c.expect(dec.type == row.r + 1, std::string(row.name) + ": wrong type");
        c.expect(dec.core->nvars() == f.nvars() - row.r,
                 std::string(row.name) + ": core has wrong dimension");
        c.expect(is_gorenstein(dec.core, opt),
                 std::string(row.name) + ": core is not gorenstein");
        c.expect(dec.reassembly.status == IdealEquality::Status::equal,
                 std::string(row.name) + ": reassembly differs from the input");
    }
}

void c9_four_quadrics(Checker& c) {
    Options opt;
    auto f1 = fixture("quad4_red1");
    auto rep1 = analyze_four_quadrics(f1.ideal(), opt);
    c.expect(rep1.hf.colength == 6, "quad4_red1: colength != 6");
    c.expect(rep1.hf.values == std::vector<long long>{1, 3, 2, 0},
             "quad4_red1: hilbert function is not (1,3,2)");
    c.expect(rep1.syzygetic == SyzygeticStatus::not_syzygetic,
             "quad4_red1: expected not syzygetic");
    c.expect(rep1.reduction.verified && rep1.reduction.r == 1,
             "quad4_red1: no verified reduction with r = 1");

    auto f3 = fixture("quad4_red3");
    auto rep3 = analyze_four_quadrics(f3.ideal(), opt);
    c.expect(rep3.hf.colength == 6, "quad4_red3: colength != 6");
    c.expect(rep3.syzygetic == SyzygeticStatus::not_syzygetic,
             "quad4_red3: expected not syzygetic");
    c.expect(rep3.reduction.verified && rep3.reduction.r == 3,
             "quad4_red3: no verified reduction with r = 3");
    c.expect(rep3.u == 1 && rep3.v == 1, "quad4_red3: u or v != 1");
    c.expect(rep3.hs.e1 - rep3.hs.e0 + rep3.hf.colength == rep3.u + rep3.v,
             "quad4_red3: e1 - e0 + colength != u + v");
    c.expect(rep3.sally_identity, "quad4_red3: sally identity not verified");
}

void c10_property_suites(Checker& c) {
    std::mt19937_64 rng(10);

    // echelon canonicity + rank-nullity
    for (int k = 0; k < 200; ++k) {
        int n = 2 + int(rng() % 7);
        std::vector<Polynomial> ps;
        for (int i = 0; i < n; ++i) ps.push_back(random_quadric(rng, 3));
        auto shuffled = ps;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto a = span(ps, 3, 2);
        auto b = span(shuffled, 3, 2);
        bool canonical = a.is_full() == b.is_full() && a.dim() == b.dim() &&
                         (a.is_full() ||
                          (a.rows() == b.rows() && a.pivots() == b.pivots()));
        c.expect(canonical,
                 "echelon form depends on insertion order (instance " +
                     std::to_string(k) + ")");
        auto rels = kernel(ps, 3, 2);
        c.expect(a.dim() + int(rels.size()) == n,
                 "rank-nullity fails (instance " + std::to_string(k) + ")");
        for (const auto& rel : rels) {
            Polynomial sum = Polynomial::zero(3);
            for (int i = 0; i < n; ++i) sum += ps[i] * rel[i];
            c.expect(sum.is_zero(), "kernel vector is not a relation");
        }
    }

    // ring axioms + change-of-variables round trips
    for (int k = 0; k < 200; ++k) {
        auto a = random_quadric(rng, 3);
        auto b = random_quadric(rng, 3);
        auto d = random_quadric(rng, 3);
        c.expect(a * b == b * a, "multiplication is not commutative");
        c.expect((a + b) * d == a * d + b * d,
                 "multiplication does not distribute");
        c.expect((a * b) * d == a * (b * d),
                 "multiplication is not associative");
        c.expect(a - a == Polynomial::zero(3), "subtraction is broken");
        auto T = random_change(rng, 3);
        c.expect(T.inverse().apply(T.apply(a)) == a,
                 "change of variables does not round-trip");
    }

    // modular rank screening agrees with rational rank on every fixture
    Options opt;
    PrimeField field(opt.screening_prime());
    for (const auto& entry :
         std::filesystem::directory_iterator(g_corpus)) {
        if (entry.path().extension() != ".ideal") continue;
        auto f = load_ideal_file(entry.path().string());
        auto rational = span(f.generators, f.nvars(), 2).dim();
        auto modular = rank_mod(f.generators, f.nvars(), 2, field);
        c.expect(rational == modular,
                 f.name + ": modular rank disagrees with rational rank");
    }
}

struct Criterion {
    int id;
    const char* label;
    double budget_seconds;
    std::function<void(Checker&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_corpus = argv[1];

    const std::vector<Criterion> criteria = {
        {1, "five-quadric hilbert functions (1,3,1), colength 5", 5,
         c1_hilbert_functions},
        {2, "e0 = 8, e1 = 4, s0 = 1 on every d=3 five-quadric", 40,
         c2_multiplicities},
        {3, "gorenstein chain: I^2 = m^4, nu = 15, syzygetic, red 2", 30,
         c3_gorenstein_chain},
        {4, "orbits: nu(I^2) = 13, lambda(I^2/JI) = 1, huckaba sum = e1 = 4",
         20, c4_orbit_reductions},
        {5, "d = 4,5,6: e0 = 2^d, e1 = (d-1)2^(d-2), red = d/2, I^2 = m^4",
         2460, c5_high_dimension},
        {6, "signatures match fixtures, invariant under 20 random changes", 60,
         c6_signature_invariance},
        {7, "10 random polarized ideals: gorenstein, dual regenerates", 120,
         c7_polarized_round_trip},
        {8, "decompositions recover r, gorenstein core, type r+1", 120,
         c8_decompositions},
        {9, "four quadrics: colength 6, red in {1,3}, u = v = 1", 20,
         c9_four_quadrics},
        {10, "property suites: canonicity, rank-nullity, ring axioms, ranks",
         60, c10_property_suites},
    };

    int failed = 0;
    for (const auto& crit : criteria) {
        Checker c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            crit.run(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        if (secs > crit.budget_seconds)
            c.failures.push_back("exceeded time budget of " +
                                 std::to_string(crit.budget_seconds) + "s");
        bool ok = c.failures.empty();
        failed += !ok;
        std::printf("[%2d] %s  %6.2fs  %s\n", crit.id, ok ? "PASS" : "FAIL",
                    secs, crit.label);
        for (const auto& f : c.failures)
            std::printf("        %s\n", f.c_str());
    }
    std::printf("%d/10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
