#pragma once

#include <cstdint>

#include "quadrics/rational.hpp"

namespace quadrics {

// How dimension checks are performed.
//
//  - certified: every rank/dimension is an exact rational computation.
//  - screened:  ranks of large graded pieces come from a single random
//    31-bit prime.  A full-rank answer mod p is still a proof (rank can
//    only drop under reduction); a deficient rank is probabilistic and
//    results carry a `screened` flag.
enum class Mode { certified, screened };

struct Options {
    Mode mode = Mode::certified;
    std::uint64_t seed = 25117;  // drives prime choice and random reductions
    std::uint32_t prime = 0;     // 0 = derive from seed

    // Degree cap for the Artinian bound search, as a multiple of the
    // variable count plus a constant: cap = 4*nvars + 4.
    int artinian_cap_slope = 4;
    int artinian_cap_offset = 4;

    int max_power = 0;          // Hilbert-Samuel horizon; 0 = nvars + 6
    int reduction_r_max = 6;    // largest reduction number attempted
    int reduction_attempts = 40;

    bool certified() const { return mode == Mode::certified; }
    int artinian_cap(int nvars) const {
        return artinian_cap_slope * nvars + artinian_cap_offset;
    }
    int hilbert_samuel_horizon(int nvars) const {
        return max_power > 0 ? max_power : nvars + 6;
    }
    std::uint32_t screening_prime() const {
        return prime != 0 ? prime : random_prime_31(seed);
    }
};

}  // namespace quadrics
