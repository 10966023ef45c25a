#pragma once

#include "gelfond/poly.hpp"
#include "gelfond/rational.hpp"

#include <cstdint>
#include <random>

namespace gelfond {

// Deterministic generator: the bounded-integer mapping is fixed here rather
// than left to the standard library's distributions, so reports are stable
// across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    // Stream for trial i of a campaign seeded with seed.
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
        Rng r(0);
        r.eng_.seed(seq);
        return r;
    }

    std::uint64_t next() { return eng_(); }
    // Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do x = eng_();
        while (x >= limit);
        return lo + static_cast<long>(x % span);
    }
    bool coin() { return (eng_() & 1u) != 0; }
    Rational rational(long num_bound, long den_bound) {
        Rational q(uniform(-num_bound, num_bound), uniform(1, den_bound));
        q.canonicalize();
        return q;
    }
    Rational nonzero_rational(long num_bound, long den_bound) {
        Rational q;
        do q = rational(num_bound, den_bound);
        while (q == 0);
        return q;
    }
    // Integer polynomial of exact degree d with coefficients in [-b, b].
    RatPoly int_poly(int d, long b) {
        std::vector<Rational> c(d + 1);
        for (int i = 0; i <= d; ++i) c[i] = uniform(-b, b);
        while (c[d] == 0) c[d] = uniform(-b, b);
        return RatPoly(std::move(c));
    }
    RatPoly rat_poly(int d, long b, long den) {
        std::vector<Rational> c(d + 1);
        for (int i = 0; i <= d; ++i) c[i] = rational(b, den);
        while (c[d] == 0) c[d] = rational(b, den);
        return RatPoly(std::move(c));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace gelfond
