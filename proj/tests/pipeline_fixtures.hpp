#pragma once

// Synthetic inputs for the pipeline runners. Points sit at exact rational
// distance 2^-k from roots of P (or on them when k = 0), so every small-value
// hypothesis is an exact statement about rationals.

#include "gelfond/pipelines.hpp"

#include <vector>

namespace gelfond::fixtures {

inline Rational two_pow_neg(unsigned k) { return pow_q(Rational(2), -long(k)); }

inline Rational near(const Rational& root, unsigned k) { return k == 0 ? root : root + two_pow_neg(k); }

inline std::vector<Rational> first_primes(unsigned count) {
    std::vector<Rational> out;
    for (long p = 2; out.size() < count; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (prime) out.push_back(p);
    }
    return out;
}

struct Fixture {
    RatPoly P;
    PipelineParams params;
};

// Maps {id, T -> T+1}, E near {1/2, 3/2}, P = ((2T-1)(2T-3)(2T-5))^2, s = 2, t = 1.
inline Fixture propR_fixture(unsigned k) {
    Fixture f;
    RatPoly g = linear(-1, 2) * linear(-3, 2) * linear(-5, 2);
    f.P = g * g;
    auto& p = f.params;
    p.n = 6;
    p.s = 2;
    p.t = 1;
    p.X = PosReal::rational(pow_q(Rational(2), 20));
    p.kappa = 40;
    p.maps = {AffineMap::identity(), AffineMap(1, 1)};
    p.E = EvalPointSet::exact({near(Rational(1, 2), k), near(Rational(3, 2), k)});
    return f;
}

// A = first s primes, E = {1 + 2^-k}, P = T^m prod (T - p)^2, l = 0, t = 1, n = 2s + m.
inline Fixture propRbis_fixture(unsigned s, unsigned m, unsigned k) {
    Fixture f;
    auto primes = first_primes(s);
    RatPoly g = monomial_t(m);
    for (const auto& p : primes) g = g * linear(-p, 1) * linear(-p, 1);
    f.P = g;
    auto& p = f.params;
    p.n = 2 * s + m;
    p.t = 1;
    p.ell = 0;
    p.A = ScaleSet(primes);
    // X^(1/10) = c_A^n.
    p.X = PosReal::rational(pow_q(primes.back(), 10 * long(p.n)));
    p.kappa = 6;
    p.E = EvalPointSet::exact({near(Rational(1), k)});
    return f;
}

// A = {1, 2, 3}, E = {1/5 + 2^-k, 7/3, 11/4}, P = (5T - 1)^4, n = 4.
inline Fixture propRter_fixture(unsigned k) {
    Fixture f;
    f.P = linear(-1, 5).pow(4);
    auto& p = f.params;
    p.n = 4;
    p.X = PosReal::rational(pow_q(Rational(2), 120));
    p.kappa = 6;
    p.epsilon = Rational(1, 10);
    p.A = ScaleSet({Rational(1), Rational(2), Rational(3)});
    p.E = EvalPointSet::exact({near(Rational(1, 5), k), Rational(7, 3), Rational(11, 4)});
    return f;
}

}  // namespace gelfond::fixtures
