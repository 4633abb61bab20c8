#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quadrics {

using Exponents = std::vector<int>;

inline long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// dim_K R_t for R = K[x_1..x_n]
inline long long graded_dim(int nvars, int degree) {
    if (degree < 0) return 0;
    return binomial(degree + nvars - 1, nvars - 1);
}

// A monomial in a fixed polynomial ring, dense exponent vector with
// cached total degree.
class Monomial {
public:
    explicit Monomial(Exponents e)
        : exps_(std::move(e)),
          degree_(std::accumulate(exps_.begin(), exps_.end(), 0)) {
        for (int x : exps_)
            if (x < 0) throw std::invalid_argument("Monomial: negative exponent");
    }

    static Monomial one(int nvars) { return Monomial(Exponents(nvars, 0)); }
    static Monomial variable(int nvars, int i) {
        Exponents e(nvars, 0);
        e.at(i) = 1;
        return Monomial(std::move(e));
    }

    int nvars() const { return int(exps_.size()); }
    int degree() const { return degree_; }
    int exp(int i) const { return exps_.at(i); }
    const Exponents& exponents() const { return exps_; }

    Monomial times(const Monomial& o) const {
        Exponents e(exps_);
        for (int i = 0; i < int(e.size()); ++i) e[i] += o.exps_[i];
        return Monomial(std::move(e));
    }
    Monomial times_variable(int i) const {
        Exponents e(exps_);
        ++e.at(i);
        return Monomial(std::move(e));
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.exps_ == b.exps_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) {
        return !(a == b);
    }

private:
    Exponents exps_;
    int degree_;
};

// Graded lexicographic order with x_1 > x_2 > ... > x_n, strongest
// first: returns true when a precedes b in the canonical listing
// (higher degree first, then lexicographically larger).
struct GradedLexBefore {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.degree() != b.degree()) return a.degree() > b.degree();
        return a.exponents() > b.exponents();
    }
};

// All monomials of one degree in canonical order, with index lookup.
// Column i of any coefficient matrix in degree t refers to at(i).
class MonomialBasis {
public:
    MonomialBasis(int nvars, int degree) : nvars_(nvars), degree_(degree) {
        if (nvars < 1) throw std::invalid_argument("MonomialBasis: nvars < 1");
        if (degree < 0) throw std::invalid_argument("MonomialBasis: degree < 0");
        Exponents cur(nvars, 0);
        enumerate(cur, 0, degree);
        for (int i = 0; i < int(list_.size()); ++i)
            index_.emplace(list_[i].exponents(), i);
    }

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    int size() const { return int(list_.size()); }
    const Monomial& at(int i) const { return list_.at(i); }

    int index_of(const Monomial& m) const {
        auto it = index_.find(m.exponents());
        if (it == index_.end())
            throw std::invalid_argument("MonomialBasis: monomial of wrong degree");
        return it->second;
    }

    // Shared registry; bases are immutable once built.
    static const MonomialBasis& get(int nvars, int degree) {
        static std::mutex mu;
        static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[{nvars, degree}];
        if (!slot) slot = std::make_unique<MonomialBasis>(nvars, degree);
        return *slot;
    }

private:
    void enumerate(Exponents& cur, int var, int remaining) {
        if (var == nvars_ - 1) {
            cur[var] = remaining;
            list_.push_back(Monomial(cur));
            cur[var] = 0;
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[var] = e;
            enumerate(cur, var + 1, remaining - e);
        }
        cur[var] = 0;
    }

    int nvars_, degree_;
    std::vector<Monomial> list_;
    std::map<Exponents, int> index_;
};

}  // namespace quadrics
