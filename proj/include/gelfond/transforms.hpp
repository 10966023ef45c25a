#pragma once

#include "gelfond/polycore.hpp"

#include <string>

namespace gelfond {

// λ_{a,b}: P(T) -> P(aT + b), a > 0. Acts on points by ξ -> aξ + b, so that
// (λP)(ξ) = P(λ·ξ).
class AffineMap {
public:
    AffineMap() = default;
    AffineMap(Rational a, Rational b);  // throws DomainError unless a > 0
    static AffineMap identity() { return {}; }
    static AffineMap scale(const Rational& a) { return {a, 0}; }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    bool is_identity() const { return a_ == 1 && b_ == 0; }
    friend bool operator==(const AffineMap& x, const AffineMap& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    std::string str() const;

private:
    Rational a_ = 1, b_ = 0;
};

RatPoly apply_map(const AffineMap& m, const RatPoly& p);
Rational map_height(const AffineMap& m);  // H(1, a, b)
// compose(λ, λ') = λ_{aa', ab'+b}: the point action is a left action,
// (λλ')·ξ = λ·(λ'·ξ). On polynomials this reverses the order:
// apply_map(λ, apply_map(λ', P)) = apply_map(compose(λ', λ), P).
AffineMap compose(const AffineMap& l, const AffineMap& r);
AffineMap invert(const AffineMap& m);
Rational act(const AffineMap& m, const Rational& x);
GaussRat act(const AffineMap& m, const GaussRat& x);
ComplexEnclosure act(const AffineMap& m, const ComplexEnclosure& z);

// Degree, height-ratio and content-ratio brackets for λP with n >= deg P.
Verdict check_lemmaH1(const AffineMap& m, const RatPoly& p, unsigned n);
// The exact H(λλ') <= 2 H(λ) H(λ') check.
Verdict check_compose_height(const AffineMap& l, const AffineMap& r);

// True iff λR is a rational multiple of R, for R irreducible. Throws
// PreconditionError when R is reducible.
bool translate_associate_test(const AffineMap& m, const RatPoly& r);
// Closed form: (a, b) = (1, 0), or a != 1 and R ∝ (a-1)T + b.
bool translate_associate_predicted(const AffineMap& m, const RatPoly& r);

// Map text format: "a b".
AffineMap parse_map(const std::string& line);
std::string format_map(const AffineMap& m);

}  // namespace gelfond
