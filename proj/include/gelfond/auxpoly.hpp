#pragma once

#include "gelfond/matrix.hpp"
#include "gelfond/polycore.hpp"

#include <optional>

namespace gelfond {

// Rows of b are the basis vectors; reduced in place with parameter 3/4.
// Throws DomainError on linearly dependent rows.
void lll_reduce(IntMatrix& b);

struct SmallValueConstraint {
    std::vector<long> i;  // i_1..i_m
    unsigned j = 0;
    ComplexEnclosure point;  // Σ i_k ξ_k
    std::string label() const;
};

struct SearchCaps {
    unsigned max_n = 48;
    unsigned long box_budget = 2000000;  // candidates tried by the box fallback
    unsigned box_max_n = 10;
    long extra_bits = 64;
};

struct SmallValueSpec {
    unsigned n = 1;
    Rational beta, tau, nu;
    std::vector<Rational> sigma;
    std::vector<ComplexEnclosure> xi;
    SearchCaps caps;

    // n, exponents positive; |sigma| = |xi| >= 1.
    void validate() const;
    // σ_1+...+σ_m+τ < 1 and 1 < ν < 1+β-Σσ-τ.
    bool dirichlet_hypothesis() const;
    // All (i_1..i_m, j) with i_k^{q} <= n^{p} for σ_k = p/q, likewise j.
    std::vector<SmallValueConstraint> constraints() const;

    // Fields n, beta, sigma[], tau, nu, xi[], optional caps. Exponents are
    // strings (rational or decimal) or numbers; a point is a string, or an
    // object {re, im, bits} where bits gives a 2^-bits ball around decimals.
    static SmallValueSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct ConstraintRows {
    // One row per real linear form c -> Re/Im P^{[j]}(point); n + 1 entries.
    std::vector<std::vector<Interval>> rows;
    std::vector<std::string> labels;
    long bits = 0;
    std::size_t constraint_count = 0;
    Check magnitude;  // entries <= 2^n max(1, Σ n^{σ_k}|ξ_k|)^n
};

ConstraintRows build_constraint_rows(const SmallValueSpec& spec, const std::vector<SmallValueConstraint>& cs,
                                     long bits);
ConstraintRows build_constraint_rows(const SmallValueSpec& spec, long bits);

struct ConstraintValue {
    std::string label;
    Interval abs_value{64};
    bool exact_zero = false;
};

struct AuxCertificate {
    RatPoly P;
    int degree = -1;
    Rational height;
    std::vector<ConstraintValue> values;
    Verdict verdict;
    std::string method;  // "lll", "box" or "external"
    nlohmann::json to_json() const;
};

// Raised when the search budget is exhausted; carries the best candidate.
struct AuxNotFound : std::runtime_error {
    AuxNotFound(const std::string& what, std::optional<AuxCertificate> best, bool exhaustive)
        : std::runtime_error(what), best(std::move(best)), exhaustive(exhaustive) {}
    std::optional<AuxCertificate> best;
    bool exhaustive;  // the box covered every polynomial within the height budget
};

AuxCertificate verify_smallvalue(const RatPoly& p, const SmallValueSpec& spec,
                                 const Precision& prec = Precision::defaults());
AuxCertificate construct_aux_poly(const SmallValueSpec& spec, const Precision& prec = Precision::defaults());

}  // namespace gelfond
