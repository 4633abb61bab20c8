#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quadrics/polynomial.hpp"

namespace quadrics {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// Recursive descent parser for polynomial expressions:
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ['^' integer]
//   base   := rational | variable | '(' expr ')'
//
// Multiplication is always explicit ('2x' is an error, '2*x' is not).
// Rational literals are 'a' or 'a/b' with integer a, b.
class PolynomialParser {
public:
    PolynomialParser(std::string_view text, std::vector<std::string> names)
        : text_(text), names_(std::move(names)) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_space();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return p;
    }

private:
    int nvars() const { return int(names_.size()); }

    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Polynomial expr() {
        bool negate = eat('-');
        Polynomial acc = term();
        if (negate) acc = -acc;
        for (;;) {
            if (eat('+')) {
                acc += term();
            } else if (eat('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial b = base();
        if (eat('^')) {
            skip_space();
            std::size_t at = pos_;
            long e = integer_literal("exponent");
            if (e < 0) throw ParseError("negative exponent", at);
            return b.pow(int(e));
        }
        return b;
    }

    Polynomial base() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return variable();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    Polynomial rational_literal() {
        Integer num = bignum_literal("number");
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::size_t at = pos_;
            Integer den = bignum_literal("denominator");
            if (den == 0) throw ParseError("zero denominator", at);
            return Polynomial::constant(nvars(), rational(num, den));
        }
        return Polynomial::constant(nvars(), rational(num, Integer(1)));
    }

    Polynomial variable() {
        std::size_t at = pos_;
        std::string id;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
            id += text_[pos_++];
        }
        for (int i = 0; i < nvars(); ++i)
            if (names_[i] == id) return Polynomial::variable(nvars(), i);
        throw ParseError("unknown variable '" + id + "'", at);
    }

    long integer_literal(const char* what) {
        Integer z = bignum_literal(what);
        if (!z.fits_slong_p()) throw ParseError("integer too large", pos_);
        return z.get_si();
    }

    Integer bignum_literal(const char* what) {
        skip_space();
        std::size_t start = pos_;
        std::string digits;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
            digits += text_[pos_++];
        if (digits.empty())
            throw ParseError(std::string("expected ") + what, start);
        return Integer(digits);
    }

    std::string_view text_;
    std::vector<std::string> names_;
    std::size_t pos_ = 0;
};

inline Polynomial parse_polynomial(std::string_view text,
                                   const std::vector<std::string>& names) {
    return PolynomialParser(text, names).parse();
}

inline Polynomial parse_polynomial(std::string_view text, int nvars) {
    return parse_polynomial(text, default_variable_names(nvars));
}

}  // namespace quadrics
