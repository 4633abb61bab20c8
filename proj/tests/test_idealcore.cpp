#include <catch2/catch_amalgamated.hpp>

#include "quadrics/invariants.hpp"
#include "quadrics/parse.hpp"

using namespace quadrics;

static IdealPtr make(int nv, std::initializer_list<const char*> gens) {
    std::vector<Polynomial> ps;
    for (auto g : gens) ps.push_back(parse_polynomial(g, nv));
    return Ideal::make(nv, ps);
}

static const Options opt;

TEST_CASE("graded pieces of a quadric ideal", "[idealcore]") {
    auto I = make(3, {"x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2"});
    CHECK(I->nvars() == 3);
    CHECK(I->piece(0).dim() == 0);
    CHECK(I->piece(1).dim() == 0);
    CHECK(I->piece(2).dim() == 5);
    CHECK(I->piece(3).dim() == 10);
    CHECK(I->piece(3).is_full());
    CHECK(I->piece(4).is_full());
    CHECK(I->artinian_bound(opt) == 3);
    CHECK(I->colength(opt) == 5);

    int g = 0;
    CHECK(I->equigenerated(&g));
    CHECK(g == 2);
    auto mixed = make(3, {"x^2", "y^3", "z^2"});
    CHECK_FALSE(mixed->equigenerated(&g));
}

TEST_CASE("maximal ideal powers have closed-form pieces", "[idealcore]") {
    auto m2 = Ideal::maximal_power(3, 2);
    CHECK(m2->piece(2).is_full());
    CHECK(m2->piece_dim(5, opt) == graded_dim(3, 5));
    CHECK(m2->piece_dim(1, opt) == 0);
    CHECK(m2->colength(opt) == 4);
    auto m4 = Ideal::maximal_power(5, 4);
    CHECK(m4->piece_dim(4, opt) == graded_dim(5, 4));
    CHECK(m4->piece_dim(7, opt) == graded_dim(5, 7));
}

TEST_CASE("non-Artinian quotients are rejected with the cap", "[idealcore]") {
    auto I = make(3, {"x^2", "x*y"});
    CHECK_THROWS_AS(I->artinian_bound(opt), NotArtinian);
    CHECK_THROWS_AS(hilbert_function(I, opt), NotArtinian);
    try {
        I->artinian_bound(opt);
    } catch (const NotArtinian& e) {
        CHECK(std::string(e.what()).find("cap") != std::string::npos);
    }
}

TEST_CASE("changes of variables preserve all dimensions", "[idealcore]") {
    auto I = make(3, {"x^2", "x*y", "x*z", "y^2", "z^2"});
    LinearChange T{{{1, 2, 0}, {0, 1, 3}, {1, 0, 1}}};
    auto moved = apply_change(I, T);
    for (int t = 0; t <= 4; ++t)
        CHECK(moved->piece_dim(t, opt) == I->piece_dim(t, opt));
    auto back = apply_change(moved, T.inverse());
    CHECK(bool(ideal_equals(back, I, opt)));
}

TEST_CASE("ideal equality produces witnesses", "[idealcore]") {
    auto A = make(3, {"x^2", "y^2", "z^2", "x*y"});
    auto B = make(3, {"x^2", "y^2", "z^2", "x*z"});
    auto eq = ideal_equals(A, B, opt);
    CHECK_FALSE(bool(eq));
    REQUIRE(eq.witness.has_value());
    int d = 0;
    REQUIRE(eq.witness->is_homogeneous(&d));
    bool in_a = A->piece(d).contains(*eq.witness);
    bool in_b = B->piece(d).contains(*eq.witness);
    CHECK(in_a != in_b);

    CHECK(bool(ideal_equals(
        make(3, {"x^2", "y^2", "z^2"}),
        make(3, {"x^2 + y^2", "x^2 - y^2", "z^2"}), opt)));

    // ideals that are not Artinian cannot be compared degreewise
    auto inconclusive =
        ideal_equals(make(3, {"x^2", "y^2"}), make(3, {"x^2", "z^2"}), opt);
    CHECK(inconclusive.status == IdealEquality::Status::inconclusive);
    CHECK_FALSE(bool(inconclusive));
}

TEST_CASE("powers agree with explicit products", "[idealcore]") {
    auto I = make(3, {"x^2", "y^2", "z^2", "x*y + x*z"});
    IdealPowers pows(I, opt);
    CHECK(pows.get(1) == I);
    auto direct = Ideal::product(I, I->generators());
    CHECK(bool(ideal_equals(pows.get(2), direct, opt)));
    auto cube = Ideal::product(direct, I->generators());
    CHECK(bool(ideal_equals(pows.get(3), cube, opt)));
}

TEST_CASE("power growth hits the maximal-ideal closed form", "[idealcore]") {
    // I^2 = m^4 forces I^n = m^(2n); the cached chain must agree with the
    // closed form and with one honest product.
    auto I = make(3, {"x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2"});
    IdealPowers pows(I, opt);
    CHECK(bool(ideal_equals(pows.get(2), Ideal::maximal_power(3, 4), opt)));
    CHECK(bool(ideal_equals(pows.get(3), Ideal::maximal_power(3, 6), opt)));
    auto honest = Ideal::product(pows.get(2), I->generators());
    for (int t = 6; t <= 9; ++t)
        CHECK(pows.get(3)->piece_dim(t, opt) == honest->piece_dim(t, opt));
    CHECK(pows.get(5)->piece_dim(10, opt) == graded_dim(3, 10));
}

TEST_CASE("colength between nested ideals", "[idealcore]") {
    auto I = make(3, {"x^2", "x*y", "x*z", "y^2", "z^2"});
    auto J = make(3, {"x^2", "y^2", "z^2"});
    CHECK(detail::colength_between(I, J, opt) == 3);
    CHECK(detail::colength_between(I, I, opt) == 0);
}

TEST_CASE("hilbert function and generator profile", "[idealcore]") {
    auto I = make(3, {"x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2"});
    auto hf = hilbert_function(I, opt);
    CHECK(hf.values == std::vector<long long>{1, 3, 1, 0});
    CHECK(hf.colength == 5);

    auto gens = minimal_generators(I, opt);
    CHECK(gens.total == 5);
    CHECK(gens.by_degree.at(2) == 5);

    auto redundant = make(3, {"x^2", "y^2", "x^2 + y^2", "z^2"});
    CHECK(minimal_generators(redundant, opt).total == 3);
}

TEST_CASE("socle profiles by degree", "[idealcore]") {
    auto gor = make(3, {"x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2"});
    auto soc = socle_profile(gor, opt);
    CHECK(soc.type == 1);
    CHECK(soc.linear_dim == 0);
    REQUIRE(soc.complements.count(2) == 1);
    CHECK(soc.complements.at(2).dim() == 1);

    auto orbitA = make(3, {"x^2", "x*y", "x*z", "y^2", "z^2"});
    auto soc2 = socle_profile(orbitA, opt);
    CHECK(soc2.type == 2);
    CHECK(soc2.linear_dim == 1);
    REQUIRE(soc2.complements.count(1) == 1);
    CHECK(soc2.complements.at(1).contains(parse_polynomial("x", 3)));

    auto m2 = Ideal::maximal_power(3, 2);
    auto soc3 = socle_profile(m2, opt);
    CHECK(soc3.type == 3);
    CHECK(soc3.linear_dim == 3);
}

TEST_CASE("screened dimensions match certified ones", "[idealcore]") {
    Options screened;
    screened.mode = Mode::screened;
    for (auto I : {make(3, {"x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2"}),
                   make(3, {"x^2", "x*y", "x*z", "y*z", "y^2 + 2*z^2"}),
                   make(3, {"x^2", "y^2", "z^2", "x*y + x*z"})}) {
        auto exact = hilbert_function(I, opt);
        auto probable = hilbert_function(I, screened);
        CHECK(probable.values == exact.values);
        CHECK(probable.screened);
        CHECK_FALSE(exact.screened);
    }
}
