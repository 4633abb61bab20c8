#include <catch2/catch_amalgamated.hpp>

#include "quadrics/parse.hpp"
#include "quadrics/polynomial.hpp"

using namespace quadrics;

static Polynomial P(const std::string& s, int nvars = 3) {
    return parse_polynomial(s, default_variable_names(nvars));
}

TEST_CASE("rational helpers", "[polycore]") {
    CHECK(rational(2, 4) == rational(1, 2));
    CHECK(rational(1, -2) == rational(-1, 2));
    CHECK(to_string(rational(-6, 4)) == "-3/2");
    CHECK(to_string(rational(5)) == "5");

    Rational root;
    CHECK(rational_square_root(rational(9, 4), &root));
    CHECK(root == rational(3, 2));
    CHECK(rational_square_root(Rational(0), &root));
    CHECK(root == 0);
    CHECK_FALSE(rational_square_root(Rational(2), &root));
    CHECK_FALSE(rational_square_root(Rational(-4), &root));

    CHECK(binomial(6, 2) == 15);
    CHECK(binomial(4, 0) == 1);
    CHECK(binomial(3, 5) == 0);
}

TEST_CASE("monomials and graded bases", "[polycore]") {
    auto m = Monomial::variable(3, 0).times(Monomial::variable(3, 2));
    CHECK(m.degree() == 2);
    CHECK(m.exp(0) == 1);
    CHECK(m.exp(1) == 0);
    CHECK(m.times_variable(1).degree() == 3);

    for (int d = 0; d <= 4; ++d) {
        const auto& basis = MonomialBasis::get(3, d);
        CHECK(basis.size() == graded_dim(3, d));
        for (int i = 0; i < basis.size(); ++i)
            CHECK(basis.index_of(basis.at(i)) == i);
    }
    CHECK(graded_dim(3, 2) == 6);
    CHECK(graded_dim(5, 4) == 70);
}

TEST_CASE("polynomial arithmetic", "[polycore]") {
    auto f = P("x^2 - y^2");
    auto g = P("x^2 + y^2");
    CHECK(f + g == P("2*x^2"));
    CHECK(f - f == Polynomial::zero(3));
    CHECK(f * g == P("x^4 - y^4"));
    CHECK(P("x + y") * P("x - y") == f);
    CHECK(P("x + y").pow(2) == P("x^2 + 2*x*y + y^2"));
    CHECK(f * Rational(0) == Polynomial::zero(3));
    CHECK((-f) + f == Polynomial::zero(3));

    int d = 0;
    CHECK(f.is_homogeneous(&d));
    CHECK(d == 2);
    CHECK_FALSE(P("x^2 + y").is_homogeneous());

    CHECK(P("x*y + x*y") == P("2*x*y"));
    CHECK(P("x*y - x*y").is_zero());
    CHECK_THROWS_AS(P("x", 2) + P("x", 3), std::invalid_argument);
}

TEST_CASE("coefficient rows round-trip", "[polycore]") {
    const auto& basis = MonomialBasis::get(3, 2);
    auto f = P("x^2 - 3*y*z + 1/2*z^2");
    auto row = f.coefficient_row(basis);
    CHECK(Polynomial::from_row(basis, row) == f);
    CHECK_THROWS_AS(P("x^3").coefficient_row(basis), std::invalid_argument);
}

TEST_CASE("parser grammar", "[polycore]") {
    CHECK(P("(x + y)*(x - y)") == P("x^2 - y^2"));
    CHECK(P("-x^2 + 2*x*y - y^2") == -(P("x - y").pow(2)));
    CHECK(P("3/4*x*y") == P("x*y") * rational(3, 4));
    CHECK(P("x^2*y^0") == P("x^2"));
    CHECK(P("2^3*x") == P("8*x"));

    CHECK_THROWS_AS(P("2x"), ParseError);      // implicit product
    CHECK_THROWS_AS(P("x^"), ParseError);
    CHECK_THROWS_AS(P("x + "), ParseError);
    CHECK_THROWS_AS(P("q + x"), ParseError);   // unknown variable
    CHECK_THROWS_AS(P("(x + y"), ParseError);
    CHECK_THROWS_AS(P("x^-2"), ParseError);
    CHECK_THROWS_AS(P(""), ParseError);

    try {
        P("x + 2y");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("offset") != std::string::npos);
    }
}

TEST_CASE("printer round-trips through the parser", "[polycore]") {
    for (const char* s : {"x^2 - y^2", "-x*y + 3*z^2", "x^2 + 2*x*y + y^2",
                          "1/2*x^2 - 2/3*y*z", "x^4 - y^4"}) {
        auto f = P(s);
        CHECK(P(to_string(f)) == f);
    }
    CHECK(to_string(Polynomial::zero(3)) == "0");
    auto names = std::vector<std::string>{"u", "v"};
    auto f = parse_polynomial("u^2 - v^2", names);
    CHECK(to_string(f, names) == "u^2 - v^2");
}

TEST_CASE("linear changes of variables", "[polycore]") {
    LinearChange swap{{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
    CHECK(swap.apply(P("x^2 - y^2", 2)) == P("y^2 - x^2", 2));

    LinearChange T{{{1, 2, 0}, {0, 1, 3}, {1, 0, 1}}};
    auto f = P("x^2 - y*z + z^2");
    CHECK(T.inverse().apply(T.apply(f)) == f);
    CHECK(T.apply(Polynomial::constant(3, 5)) == Polynomial::constant(3, 5));

    // substitution convention: x_i -> sum_j m[i][j] x_j
    CHECK(T.apply(P("x")) == P("x + 2*y"));

    LinearChange id = LinearChange::identity(3);
    CHECK(id.apply(f) == f);

    LinearChange::Matrix singular = {{1, 2}, {2, 4}};
    CHECK_THROWS_AS(LinearChange{singular}, std::invalid_argument);
    CHECK_THROWS_AS(T.apply(P("x", 2)), std::invalid_argument);
}

TEST_CASE("default variable names", "[polycore]") {
    CHECK(default_variable_names(3) == std::vector<std::string>{"x", "y", "z"});
    CHECK(default_variable_names(4) ==
          std::vector<std::string>{"x", "y", "z", "w"});
    CHECK(default_variable_names(5)[0] == "x1");
    CHECK(default_variable_names(5)[4] == "x5");
}
