#pragma once

#include "gelfond/factor.hpp"
#include "gelfond/transforms.hpp"

#include <optional>
#include <vector>

namespace gelfond {

// Finite set of positive rationals together with their exponent vectors over
// a coprime base of all numerators and denominators. The rank of those
// vectors decides multiplicative independence without factoring.
class ScaleSet {
public:
    ScaleSet() = default;
    explicit ScaleSet(std::vector<Rational> elements);  // distinct, > 0
    static ScaleSet parse(const std::string& text);     // whitespace separated

    const std::vector<Rational>& elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    const Rational& operator[](std::size_t i) const { return elems_[i]; }
    bool independent() const { return rank_ == static_cast<int>(elems_.size()); }
    int rank() const { return rank_; }
    const std::vector<Integer>& base() const { return base_; }
    // Exponents of element i over base().
    const std::vector<std::vector<Integer>>& exponents() const { return exps_; }

    // x = prod a_i^{k_i} with integer k_i, if such k exist (one solution).
    std::optional<std::vector<Integer>> coordinates(const Rational& x) const;
    bool in_group(const Rational& x) const { return coordinates(x).has_value(); }
    // a^x for x in Z^s.
    Rational power(const std::vector<long>& x) const;
    Rational c_A() const;  // max height over the elements

private:
    std::vector<Rational> elems_;
    std::vector<Integer> base_;
    std::vector<std::vector<Integer>> exps_;
    int rank_ = 0;
};

// Σ_i log|P(ξ_i)| - s·log cont(P), the log of the normalized value product.
Interval log_value_product(const RatPoly& p, const EvalPointSet& pts, long bits);

struct LinearizeResult {
    RatPoly R;           // primitive irreducible factor, or R^k for part b
    unsigned k = 1;      // exponent for part b
    Verdict hypothesis;  // preconditions of the step
    Verdict verdict;     // the concluding inequality
};

// Part a: first factor (canonical order) of P whose normalized value product
// is certifiably below (X^deg R · H(R)^n)^{-c/(2ρ)}.
LinearizeResult linearize_a(const RatPoly& p, unsigned n, const PosReal& X, const Rational& c, const Rational& rho,
                            const EvalPointSet& pts, const Precision& prec = Precision::defaults());
// Largest k with deg R^k <= ρn and H(R^k) <= X^{2ρ}.
unsigned power_up_exponent(const RatPoly& r, unsigned n, const PosReal& X, const Rational& rho,
                           const Precision& prec = Precision::defaults());
// Part b: Q = R^k with the X^{-cn/4} bound attached.
LinearizeResult linearize_b(const RatPoly& r, unsigned n, const PosReal& X, const EvalPointSet& pts, const Rational& c,
                            const Rational& rho, const Precision& prec = Precision::defaults());

// gcd of P(aT) over a in A, primitive with positive leading coefficient.
RatPoly gcd_translates(const RatPoly& p, const ScaleSet& A);

struct GcdBoundParams {
    unsigned s = 0, ell = 0;
    Rational N;    // binom(s, ℓ+2) / (2^{ℓ+1} (ℓ+1)!)
    Rational c_A;  // max H(a)
    Rational rho;  // 2(ℓ+1)/(s-ℓ)
    Interval c1(long bits) const;  // 8 + (4ℓ+1) log c_A

    static GcdBoundParams make(const ScaleSet& A, unsigned ell);
};

Rational gcd_bound_N(unsigned s, unsigned ell);

struct ThmGResult {
    RatPoly Q;
    GcdBoundParams params;
    Verdict verdict;  // degree check and log-height check
};

ThmGResult verify_thmG(const RatPoly& p, const ScaleSet& A, unsigned ell, const Precision& prec = Precision::defaults());

// Irreducibles R, R' are G-equivalent when R' ∝ R(aT) with a in the group
// generated by A. Candidate a: a^deg = (lc(R')/R'(0)) / (lc(R)/R(0)).
std::optional<Rational> g_equivalence(const RatPoly& r1, const RatPoly& r2, const ScaleSet& A);

struct GPureDecomposition {
    Rational scalar;  // P = scalar * prod parts
    std::vector<RatPoly> parts;
    RatPoly product() const;
};

// Simple-root layers first, then G-classes inside each layer. Parts are
// primitive with positive leading coefficient, ordered by layer and then by
// the canonical order of each class's first factor.
GPureDecomposition gpure_decompose(const RatPoly& p, const ScaleSet& A);

// Degree and height bounds for an irreducible R dividing λ(P^{[i]}) for all
// λ in maps and 0 <= i < t.
Verdict check_lemmaH3(const RatPoly& p, const std::vector<AffineMap>& maps, const RatPoly& r, unsigned s, unsigned t,
                      unsigned n, const Precision& prec = Precision::defaults());

}  // namespace gelfond
