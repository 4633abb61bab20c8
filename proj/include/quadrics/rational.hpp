#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadrics {

// Exact arithmetic types. Every scalar in the library is an arbitrary
// precision rational; prime-field elements appear only in the modular
// rank screening layer (see linalg.hpp).
using Integer = mpz_class;
using Rational = mpq_class;

// mpq_class(num, den) does not canonicalize; this does.
inline Rational rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// True iff q = (a/b)^2 for some rational a/b; when so, *root is the
// nonnegative square root.
inline bool rational_square_root(const Rational& q, Rational* root = nullptr) {
    if (sgn(q) < 0) return false;
    if (sgn(q) == 0) {
        if (root) *root = 0;
        return true;
    }
    Integer num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    if (root) *root = rational(rn, rd);
    return true;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Arithmetic in F_p for a word-sized prime.  Used for rank
// pre-screening only; final certified answers always come from the
// rational path.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p < 2) throw std::invalid_argument("PrimeField: modulus too small");
    }

    std::uint32_t modulus() const { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t s = std::uint64_t(a) + b;
        return std::uint32_t(s >= p_ ? s - p_ : s);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : std::uint32_t(std::uint64_t(a) + p_ - b);
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return std::uint32_t((std::uint64_t(a) * b) % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        return pow(a, p_ - 2);
    }

    // Reduction of exact scalars.  A rational whose denominator is
    // divisible by p cannot be reduced; the caller then retries with a
    // fresh prime.
    struct BadPrime : std::runtime_error {
        using std::runtime_error::runtime_error;
    };

    std::uint32_t reduce(const Integer& z) const {
        unsigned long r = mpz_fdiv_ui(z.get_mpz_t(), p_);
        return std::uint32_t(r);
    }
    std::uint32_t reduce(const Rational& q) const {
        std::uint32_t den = reduce(Integer(q.get_den()));
        if (den == 0) throw BadPrime("denominator divisible by screening prime");
        return mul(reduce(Integer(q.get_num())), inv(den));
    }

private:
    std::uint32_t p_;
};

// Deterministic 31-bit prime generator: same seed, same prime.
inline std::uint32_t random_prime_31(std::uint64_t seed, int skip = 0) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    int found = 0;
    for (;;) {
        std::uint32_t cand = std::uint32_t((rng() % (1u << 30)) + (1u << 30)) | 1u;
        Integer z(static_cast<unsigned long>(cand));
        if (mpz_probab_prime_p(z.get_mpz_t(), 30) > 0) {
            if (found++ == skip) return cand;
        }
    }
}

}  // namespace quadrics
