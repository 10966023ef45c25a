#pragma once

#include "gelfond/polycore.hpp"

#include <utility>
#include <vector>

namespace gelfond {

// P = sign * content * prod factor^mult. Factors are irreducible primitive
// integer polynomials with positive leading coefficient, sorted by degree and
// then lexicographically by coefficients (low to high).
struct Factorization {
    Rational content;
    int sign = 1;
    std::vector<std::pair<RatPoly, unsigned>> factors;

    RatPoly product() const;
    std::size_t distinct() const { return factors.size(); }
};

Factorization factor_q(const RatPoly& p);
bool is_irreducible(const RatPoly& p);

// Primitive gcd with positive leading coefficient; gcd(0, G) = pp(G).
RatPoly gcd_q(const RatPoly& a, const RatPoly& b);
RatPoly gcd_q(const std::vector<RatPoly>& ps);

// Yun decomposition: P ~ prod_i part_i^i with squarefree, pairwise coprime parts
// (returned as (part, i), primitive, constant parts omitted).
std::vector<std::pair<RatPoly, unsigned>> squarefree_decomposition(const RatPoly& p);

// Canonical order used for factor lists.
bool canonical_less(const RatPoly& a, const RatPoly& b);

}  // namespace gelfond
